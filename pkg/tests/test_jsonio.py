import json

import numpy as np
import pytest

from hodgeboundary import jsonio
from hodgeboundary.case1111 import SPACE, Type1Param, type1_closed_forms, type1_N
from hodgeboundary.cyclespace import OrbitData
from hodgeboundary.degeneration import NilDirection
from hodgeboundary.errors import SchemaError
from hodgeboundary.gaussq import GaussQ
from hodgeboundary.symplin import Subspace, matrix

from conftest import gq


def roundtrip(obj):
    return json.loads(jsonio.dumps(obj))


def test_scalar_roundtrip():
    for x in (gq("1/3", "-7/2"), GaussQ(0), gq(5, 0)):
        assert jsonio.decode_scalar(roundtrip(jsonio.encode_scalar(x))) == x
    assert jsonio.encode_scalar(gq("1/3", 2)) == {"re": "1/3", "im": "2"}
    assert jsonio.decode_scalar({"re": 0.5, "im": -1}) == 0.5 - 1j
    assert jsonio.decode_scalar({"re": "2"}) == GaussQ(2)
    assert jsonio.encode_scalar(float("inf")) == {"re": None, "im": 0.0}


@pytest.mark.parametrize("bad", [
    {"re": "1/0"}, {"re": "x"}, {"re": "1", "im": 2}, {"im": "1"},
    {"re": True, "im": 0}, {"re": "1", "extra": "0"}, [1, 2], "1",
])
def test_scalar_rejects(bad):
    with pytest.raises(SchemaError):
        jsonio.decode_scalar(bad)


def test_matrix_roundtrip_and_shape_checks():
    A = matrix([[1, gq("1/2", 1)], [0, -3]])
    assert np.array_equal(jsonio.decode_matrix(roundtrip(jsonio.encode_matrix(A))), A)
    F = np.array([[1 + 2j, 0.25]])
    assert np.allclose(jsonio.decode_matrix(roundtrip(jsonio.encode_matrix(F))), F)
    with pytest.raises(SchemaError):
        jsonio.decode_matrix([[{"re": "1"}], []])
    with pytest.raises(SchemaError):
        jsonio.decode_matrix([[{"re": "1"}]], rows=2)
    with pytest.raises(SchemaError):
        jsonio.decode_matrix({"0": []})


def test_subspace_roundtrip(S2):
    S = Subspace.span(S2, [S2.e(1) + S2.e(3) * gq(0, 1), S2.e(2)])
    back = jsonio.decode_subspace(roundtrip(jsonio.encode_subspace(S)))
    assert back == S and back.exact
    zero = Subspace.zero(S2, True)
    assert jsonio.decode_subspace(roundtrip(jsonio.encode_subspace(zero))).dim == 0
    with pytest.raises(SchemaError):
        jsonio.decode_subspace({"ambient_n": 0, "basis": []})
    with pytest.raises(SchemaError):
        jsonio.decode_subspace({"ambient_n": 2, "basis": [[{"re": "1"}]] * 3})


def test_filtration_roundtrip_and_completion():
    cf = type1_closed_forms(Type1Param(gq(1, -2), gq("1/2", 1)))
    enc = roundtrip(jsonio.encode_filtration(cf.F))
    assert set(enc["pieces"]) == {"0", "1"}
    F = jsonio.decode_filtration(enc)
    assert F == cf.F and F[-1] == cf.F[1].perp() and F[0] == F[0].perp()
    enc["h"]["0"] = 3
    with pytest.raises(SchemaError):
        jsonio.decode_filtration(enc)


def test_orbit_roundtrip_and_family_shortcut():
    cf = type1_closed_forms(Type1Param(gq(0, -1), 0))
    nd = NilDirection(SPACE, type1_N())
    back_nd, back_F = jsonio.decode_orbit(roundtrip(jsonio.encode_orbit(nd, cf.F)))
    assert np.array_equal(back_nd.N, nd.N) and back_F == cf.F
    nd2, F2 = jsonio.decode_orbit({"family": "I", "v": {"re": "0", "im": "-1"}, "w": {"re": "0"}})
    assert F2 == cf.F and jsonio.orbit_is_exact(nd2, F2)
    nd3, F3 = jsonio.decode_orbit({"family": "II", "m": 2, "sign": "+", "w": {"re": 0.5, "im": 0}})
    assert not jsonio.orbit_is_exact(nd3, F3)
    assert not jsonio.orbit_is_exact(*jsonio.orbit_to_float(nd2, F2))


@pytest.mark.parametrize("bad", [
    {"family": "III"},
    {"family": "II", "m": 2, "sign": "*", "w": {"re": 0}},
    {"family": "II", "m": "2", "sign": "+", "w": {"re": 0}},
    {"family": "I", "v": {"re": "0", "im": "-1"}},
    {"N": []},
    [],
])
def test_orbit_rejects(bad):
    with pytest.raises(SchemaError):
        jsonio.decode_orbit(bad)


def test_boundary_objects_roundtrip():
    cf = type1_closed_forms(Type1Param(gq(2, -1), gq(1, 1)))
    od = OrbitData(NilDirection(SPACE, type1_N()), cf.F)
    sat = od.satake("even")
    back = jsonio.decode_satake(roundtrip(jsonio.encode_satake(sat)))
    assert back.U == sat.U and back.core == sat.core and back.conjugated == sat.conjugated
    sieg = od.f_tilde("even")
    back = jsonio.decode_siegel_orbit(roundtrip(jsonio.encode_siegel_orbit(sieg)))
    assert back.F0 == sieg.F0 and np.array_equal(back.N.N, sieg.N.N)


def test_continuity_config():
    fam, base, sched, tol = jsonio.decode_continuity({"family": "I", "v": {"re": 0, "im": -1}, "w": {"re": 0}, "n_exp": 2})
    assert fam == "I" and base.v == -1j and sched.n_exp == 2 and sched.m_exp == 1 and tol == 1e-6
    with pytest.raises(SchemaError):
        jsonio.decode_continuity({"family": "I", "v": {"re": 0, "im": -1}, "w": {"re": 0}, "steps": 2.5})
    with pytest.raises(SchemaError):
        jsonio.decode_continuity({"family": "I", "v": {"re": 0, "im": -1}, "w": {"re": 0}, "tolerance": -1})


def test_dumps_is_canonical():
    a = jsonio.dumps({"b": 1, "a": [1.5]})
    assert a == jsonio.dumps({"a": [1.5], "b": 1}) and a.endswith("\n")
    with pytest.raises(ValueError):
        jsonio.dumps({"x": float("nan")})
    with pytest.raises(SchemaError):
        jsonio.loads("{not json")

import numpy as np
import pytest

from hodgeboundary.case1111 import (
    SPACE,
    ChartPoint,
    Type1Param,
    Type2Param,
    chart_filtration,
    type1_closed_forms,
    type1_filtration,
    type1_N,
    type1_xi1,
    type2_closed_forms,
    type2_N,
    type3_N,
)
from hodgeboundary.cyclespace import (
    CyclePoint,
    CycleStatus,
    OrbitData,
    SatakePoint,
    SiegelOrbit,
    base_cycle,
    boundary_cycle,
    boundary_data,
    cycle_radical,
    cycle_signature,
    f_tilde,
    f_tilde_subspace,
    gamma_act,
    in_cycle_space,
    p_even,
    p_odd,
    parity_part,
    period_matrix,
    siegel_from_period_matrix,
    zeta,
)
from hodgeboundary.degeneration import NilDirection, parities, r_split_delta
from hodgeboundary.errors import NotAnOrbit, NotSymplectic, WrongParity
from hodgeboundary.gaussq import GaussQ
from hodgeboundary.hodge import Filtration, even_odd_parts, hodge_decomposition
from hodgeboundary.symplin import (
    Signature,
    Subspace,
    SympSpace,
    conj,
    expm_nilpotent,
    matrix,
    random_integral_symplectic,
    to_exact,
    to_float,
    vector,
)

from conftest import gq

I = GaussQ(0, 1)
E = [None] + [SPACE.e(j) for j in range(1, 5)]


def span(*vs):
    return Subspace.span(SPACE, list(vs))


def nd1():
    return NilDirection(SPACE, type1_N())


def nd2(m):
    return NilDirection(SPACE, to_float(type2_N(m)))


def interior_point():
    return chart_filtration(ChartPoint(matrix([[I, 0], [0, -I]]), 0))


def test_base_cycle_type1_w0():
    v = gq(0, -1)
    F = type1_filtration(v, 0).transform(expm_nilpotent(type1_N(), I))
    C = base_cycle(F)
    u1 = type1_xi1(v, 0)
    assert C.V.contains(conj(u1))
    assert in_cycle_space(C) == CycleStatus.INTERIOR
    assert cycle_signature(C.V) == Signature(2, 0, 0)
    assert cycle_signature(C.W) == Signature(0, 2, 0)


def test_signature_of_even_part_on_random_chart_points():
    rng = np.random.default_rng(3)
    seen = 0
    while seen < 50:
        t = rng.normal(size=3) + 1j * rng.normal(size=3)
        p = ChartPoint(np.array([[t[0], t[1]], [t[1], t[2]]]), complex(*rng.normal(size=2)))
        if not p.in_D:
            continue
        seen += 1
        C = base_cycle(chart_filtration(p))
        assert cycle_signature(C.V) == Signature(2, 0, 0)


def test_genus1_cycle():
    S1 = SympSpace.standard(1)
    F0 = Subspace.span(S1, [vector([I, 1])])
    C = base_cycle(Filtration.siegel(S1, F0))
    assert C.V == F0


def test_cycle_point_statuses():
    C = base_cycle(interior_point())
    assert in_cycle_space(C) == CycleStatus.INTERIOR
    assert in_cycle_space(C.swapped()) == CycleStatus.OUTSIDE
    with pytest.raises(ValueError):
        CyclePoint(C.V, C.V)


def test_boundary_cycle_type1():
    v, w = gq(1, -2), gq(-1, 3)
    nd = nd1()
    C = boundary_cycle(nd, type1_filtration(v, w))
    assert in_cycle_space(C) == CycleStatus.CLOSURE
    assert cycle_radical(C.V) == nd.image()
    assert C.V == span(E[1], vector([0, v.conjugate(), 0, 1]))


def test_boundary_cycle_type2():
    p = Type2Param(6, -1, 1.5 - 0.5j)
    nd = nd2(6)
    C = boundary_cycle(nd, type2_closed_forms(p).F)
    assert in_cycle_space(C) == CycleStatus.CLOSURE
    assert C.W == span(E[1], E[2])
    assert cycle_radical(C.W) == nd.image()


def test_boundary_cycle_without_degeneration():
    F = interior_point()
    assert boundary_cycle(NilDirection.zero(SPACE), F).V == base_cycle(F).V
    bd = boundary_data(NilDirection.zero(SPACE), F)
    assert bd.sl2 is None


def test_p_even_type1_base():
    sp = p_even(nd1(), type1_filtration(gq(0, -1), 0))
    assert sp.U == span(E[1], vector([0, I, 0, 1]))
    assert sp.core == span(E[1])
    assert sp.valid and not sp.conjugated


@pytest.mark.parametrize("m,sign,w", [(1, 1, 0.2 + 1j), (2, -1, -1 - 1j), (7, 1, 0.0)])
def test_p_odd_type2(m, sign, w):
    sp = p_odd(nd2(m), type2_closed_forms(Type2Param(m, sign, w)).F)
    assert sp.U == span(E[1], E[2]) == sp.core
    assert sp.conjugated


def test_p_even_invariance_under_orbit():
    F = type1_filtration(gq(2, -1), gq(1, 1))
    U = p_even(nd1(), F).U
    assert p_even(nd1(), F.transform(expm_nilpotent(type1_N(), gq(3, 7)))).U == U
    assert p_even(nd1().scaled(gq("5/3")), F).U == U


def test_wrong_parity_and_non_orbits():
    F = type1_filtration(gq(0, -1), gq(1, 2))
    with pytest.raises(WrongParity):
        p_odd(nd1(), F)
    with pytest.raises(WrongParity):
        p_even(nd2(2), type2_closed_forms(Type2Param(2, 1, 0.5)).F)
    with pytest.raises(WrongParity):
        p_even(NilDirection(SPACE, type3_N()), F)
    with pytest.raises(NotAnOrbit):
        p_even(nd1(), type1_filtration(gq(0, 1), gq(1, 2)))


def test_f_tilde_subspace_closed_forms():
    p = Type1Param(gq(1, -3), gq(2, -1))
    cf = type1_closed_forms(p)
    assert f_tilde_subspace(nd1(), cf.F_hat, "even") == Subspace.span(SPACE, list(cf.f_tilde_basis))
    q = Type2Param(3, -1, 0.7 + 0.4j)
    cf2 = type2_closed_forms(q)
    assert f_tilde_subspace(nd2(3), cf2.F_hat, "odd") == Subspace.span(SPACE, list(cf2.f_tilde_basis))


def test_p_tilde_consistency():
    p = Type1Param(gq(-1, -1), gq(3, 2))
    F_hat = type1_closed_forms(p).F_hat
    Ft = f_tilde_subspace(nd1(), F_hat, "even")
    for z in (gq(0, 1), gq(2, 5), gq(-1, "1/2")):
        g = expm_nilpotent(type1_N(), z)
        assert parity_part(F_hat.transform(g), "even") == Ft.image(g)


def test_f_tilde_orbit_and_zeta():
    F = type1_filtration(gq(0, -2), gq(1, 1))
    S = f_tilde(nd1(), F, "even")
    assert isinstance(S, SiegelOrbit) and not S.conjugated
    assert S.is_orbit()
    assert zeta(S).U == span(E[1], vector([0, gq(0, 2), 0, 1]))
    q = Type2Param(5, 1, -0.3 + 0.9j)
    S2 = f_tilde(nd2(5), type2_closed_forms(q).F, "odd")
    assert S2.conjugated and S2.is_orbit()
    assert zeta(S2).U == span(E[1], E[2])


def test_zeta_without_degeneration_is_even_part():
    F = interior_point()
    ev, _ = even_odd_parts(hodge_decomposition(F), SPACE)
    S = f_tilde(NilDirection.zero(SPACE), F, "even")
    assert zeta(S).U == ev == p_even(NilDirection.zero(SPACE), F).U


def test_period_matrix_roundtrip():
    tau = matrix([[gq(1, 2), gq(0, 1)], [gq(0, 1), gq(-1, 3)]])
    F0 = siegel_from_period_matrix(SPACE, tau)
    assert np.array_equal(period_matrix(F0), tau)


def test_type1_p_tilde_frozen():
    # (v, w) = (-i, 1 + 2i) at z = i
    od = OrbitData(nd1(), type1_filtration(gq(0, -1), gq(1, 2)))
    assert np.array_equal(od.p_tilde_matrix("even", I), matrix([[gq(0, 5), gq(1, -2)], [gq(1, -2), I]]))


def test_gamma_action():
    F = type1_filtration(gq(1, -1), gq(0, 1))
    nd = nd1()
    U = p_even(nd, F).U
    ndg, Fg = gamma_act(np.eye(4, dtype=int), nd, F)
    assert p_even(ndg, Fg).U == U
    # exp(N) with N integral stabilises the orbit
    ndg, Fg = gamma_act(np.array(np.round(to_float(expm_nilpotent(type1_N(), 1)).real), dtype=int), nd, F)
    assert p_even(ndg, Fg).U == U
    rng = np.random.default_rng(8)
    for _ in range(5):
        g = random_integral_symplectic(2, rng)
        ndg, Fg = gamma_act(g, nd, F)
        assert parities(ndg, Fg) == {"even"}
        assert p_even(ndg, Fg).U == U.image(to_exact(g))
    with pytest.raises(NotSymplectic):
        gamma_act(np.diag([2, 1, 1, 1]), nd, F)


def test_satake_point_violations():
    sp = SatakePoint(span(E[1], E[3]), span(E[1]))
    assert "isotropic" in sp.violations()
    sp = SatakePoint(span(E[1], E[2]), span(E[1]))
    assert "kernel" in sp.violations()


def test_orbit_data_caches_pipeline():
    od = OrbitData(nd1(), type1_filtration(gq(0, -1), gq(1, 2)))
    assert od.delta is od.delta
    assert od.parities == {"even"}
    assert od.delta.F_hat == r_split_delta(nd1(), od.F).F_hat

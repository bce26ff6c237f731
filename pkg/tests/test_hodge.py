import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hodgeboundary.case1111 import SPACE, ChartPoint, chart_filtration, type1_filtration, type1_N
from hodgeboundary.errors import NotInCompactDual, NotInPeriodDomain
from hodgeboundary.gaussq import GaussQ
from hodgeboundary.hodge import (
    CY_1111,
    Filtration,
    HodgeNumbers,
    even_odd_parts,
    f_counts,
    hodge_decomposition,
    in_compact_dual,
    in_period_domain,
    polarization_factor,
    random_siegel_point,
)
from hodgeboundary.symplin import Subspace, SympSpace, expm_nilpotent, hermitian_signature, matrix, vector

from conftest import gq

I = GaussQ(0, 1)


def chart(t11, t12, t22, lam=0):
    return chart_filtration(ChartPoint(matrix([[t11, t12], [t12, t22]]), lam))


def test_polarization_factor():
    assert polarization_factor(0) == I
    assert polarization_factor(1) == -I
    assert polarization_factor(-1) == -I
    assert polarization_factor(-2) == I


def test_hodge_numbers_validation():
    with pytest.raises(ValueError):
        HodgeNumbers({1: 1, 0: 1})
    assert CY_1111.total == 4 and CY_1111.p_max == 1 and CY_1111.p_min == -2
    assert CY_1111.dim_F(0) == 2
    assert HodgeNumbers.siegel(3).h == {0: 3, -1: 3}


def test_f_counts_1111():
    fc = f_counts(CY_1111)
    assert (fc.f_ev[0], fc.f_ev[-2], fc.f_od[1], fc.f_od[-1]) == (1, 2, 1, 2)
    assert fc.f_ev[CY_1111.p_max + 1] == 0
    assert fc.f_ev[-2] + fc.f_od[-2] == 4


def test_chart_points_in_compact_dual():
    F = chart(gq(1, 2), gq("1/2"), gq(-3, 1), gq(2, -1))
    assert in_compact_dual(F)
    assert in_period_domain(chart(I, 0, -I))
    assert not in_period_domain(chart(I, 0, I))


def test_compact_dual_failures():
    F = chart(I, 0, -I)
    pieces = dict(F.pieces)
    pieces[1] = Subspace.span(SPACE, [vector([0, 0, 1, 0])])
    bad = Filtration(SPACE, CY_1111, pieces)
    rep = in_compact_dual(bad)
    assert not rep and any(r.startswith("monotone") for r in rep.reasons)
    with pytest.raises(NotInCompactDual):
        in_period_domain(bad)
    with pytest.raises(NotInPeriodDomain):
        hodge_decomposition(chart(I, 0, I))


def test_type1_family_in_compact_dual():
    assert in_compact_dual(type1_filtration(gq(0, -1), gq(1, 2)))


def test_orbit_point_in_D_for_large_imaginary_part():
    F = type1_filtration(gq(0, -1), gq(1, 1))
    assert in_period_domain(F.transform(expm_nilpotent(type1_N(), 10 * I)))


def test_type1_w0_top_component():
    v = gq(0, -1)
    F = type1_filtration(v, 0)
    comps = hodge_decomposition(F.transform(expm_nilpotent(type1_N(), I)))
    assert comps[1] == Subspace.span(SPACE, [vector([0, v, 0, 1])])


def test_elliptic_curve_shape():
    S1 = SympSpace.standard(1)
    F0 = Subspace.span(S1, [vector([I, 1])])
    F = Filtration.siegel(S1, F0)
    comps = hodge_decomposition(F)
    assert comps[0] == F0
    assert comps[-1] == F0.conjugate()


def test_components_are_polarized():
    comps = hodge_decomposition(chart(I, 0, -I))
    for p, Hp in comps.items():
        sig = hermitian_signature(Hp, polarization_factor(p))
        assert sig.pos == Hp.dim == 1


def test_even_odd_parts_dimensions():
    ev, od = even_odd_parts(hodge_decomposition(chart(I, 0, -I)), SPACE)
    assert ev.dim == od.dim == 2


def test_random_chart_points_split():
    rng = np.random.default_rng(11)
    seen = 0
    for _ in range(400):
        t = rng.normal(size=3) + 1j * rng.normal(size=3)
        p = ChartPoint(np.array([[t[0], t[1]], [t[1], t[2]]]), complex(rng.normal(), rng.normal()))
        F = chart_filtration(p)
        assert in_compact_dual(F)
        assert in_period_domain(F) == p.in_D
        if p.in_D:
            comps = hodge_decomposition(F)
            assert sum(c.dim for c in comps.values()) == 4
            seen += 1
        if seen == 100:
            break
    assert seen == 100


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_siegel_points_in_D(seed):
    tau = random_siegel_point(2, np.random.default_rng(seed))
    F0 = Subspace.span(SPACE, list(np.vstack([tau, np.eye(2)]).T))
    assert in_period_domain(Filtration.siegel(SPACE, F0))

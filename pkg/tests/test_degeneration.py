import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hodgeboundary.case1111 import (
    SPACE,
    Type1Param,
    Type2Param,
    chart_filtration,
    ChartPoint,
    type1_filtration,
    type1_N,
    type2_filtration,
    type2_N,
    type2_xi1,
    type3_N,
)
from hodgeboundary.degeneration import (
    NilDirection,
    bracket,
    check_split_123,
    classify_parity,
    deligne_bigrading,
    horizontal,
    is_lmhs,
    is_nilpotent_orbit,
    parities,
    r_split_delta,
    sl2_complete,
    split_123,
    triple_defects,
    weight_filtration,
    x_action_check,
)
from hodgeboundary.errors import IndexTooHigh, NotInfinitesimallySymplectic, NotNilpotent
from hodgeboundary.gaussq import GaussQ
from hodgeboundary.hodge import hodge_decomposition
from hodgeboundary.symplin import Subspace, identity, inverse, matrix, to_float, vector, zeros

from conftest import gq

I = GaussQ(0, 1)
E = [None] + [SPACE.e(j) for j in range(1, 5)]


def span(*vs):
    return Subspace.span(SPACE, list(vs))


def nd1():
    return NilDirection(SPACE, type1_N())


def test_nil_direction_validation():
    assert nd1().nilpotency_index == 2 and nd1().compatible
    assert NilDirection(SPACE, type3_N()).nilpotency_index == 4
    with pytest.raises(NotNilpotent):
        NilDirection(SPACE, matrix(np.diag([1, 0, -1, 0]))).require()
    with pytest.raises(NotInfinitesimallySymplectic):
        NilDirection(SPACE, matrix([[0, 1, 0, 0], [0] * 4, [0] * 4, [0] * 4])).require()


def test_weight_filtration_zero():
    W = weight_filtration(NilDirection.zero(SPACE))
    assert W[-2].dim == 0
    assert W[-1].dim == 4 and W[0].dim == 4


def test_weight_filtration_type1():
    W = weight_filtration(nd1())
    assert W[-2] == span(E[1])
    assert W[-1] == span(E[1], E[2], E[4])
    assert W[0].dim == 4
    assert W.weights() == [0, -1, -2]


def test_weight_filtration_type2():
    W = weight_filtration(NilDirection(SPACE, type2_N(3)))
    assert W[-2] == span(E[1], E[2]) == W[-1]


def test_weight_filtration_type3_centered():
    W = weight_filtration(NilDirection(SPACE, type3_N()))
    assert [W[k].dim for k in range(-5, 3)] == [0, 1, 1, 2, 2, 3, 3, 4]


def test_type1_I00_generator():
    # (v, w) = (-i, 1 + 2i): gamma = -2 and e = (2(1 + 2i), 1, 1, 2)
    F = type1_filtration(gq(0, -1), gq(1, 2))
    big = deligne_bigrading(weight_filtration(nd1()), F)
    assert big.get(0, 0) == span(vector([gq(2, 4), 1, 1, 2]))
    assert sorted(big.types()) == [(-2, 1), (-1, -1), (0, 0), (1, -2)]
    assert not big.r_split


def test_pure_case_bigrading_is_hodge_decomposition():
    F = chart_filtration(ChartPoint(matrix([[I, 0], [0, -I]]), 0))
    big = deligne_bigrading(weight_filtration(NilDirection.zero(SPACE)), F)
    comps = hodge_decomposition(F)
    for p, Hp in comps.items():
        assert big.get(p, -1 - p) == Hp
    assert big.r_split


def test_type2_I1m1():
    p = Type2Param(2, 1, 0.5 + 0.25j)
    big = deligne_bigrading(weight_filtration(NilDirection(SPACE, to_float(type2_N(2)))), type2_filtration(p))
    assert big.get(1, -1) == span(type2_xi1(p))


def test_lmhs_type1():
    assert is_lmhs(nd1(), type1_filtration(gq(0, -1), gq(1, 2))).ok
    rep = is_lmhs(nd1(), type1_filtration(gq(0, 1), gq(1, 2)))
    assert rep.mhs and rep.morphism and not rep.polarized


def test_lmhs_pure_case():
    F = chart_filtration(ChartPoint(matrix([[I, 0], [0, -I]]), 0))
    assert is_lmhs(NilDirection.zero(SPACE), F).ok


def test_lmhs_rejects_index_above_two():
    with pytest.raises(IndexTooHigh):
        is_lmhs(NilDirection(SPACE, type3_N()), type1_filtration(gq(0, -1), 0))


def test_horizontality():
    assert horizontal(nd1(), type1_filtration(gq(0, -1), 0))


def test_r_split_delta_type1():
    F = type1_filtration(gq(0, -1), gq(1, 2))
    res = r_split_delta(nd1(), F)
    expect = zeros((4, 4))
    expect[0, 2] = GaussQ(4)
    assert np.array_equal(res.delta, expect)
    assert deligne_bigrading(weight_filtration(nd1()), res.F_hat).r_split


def test_r_split_delta_already_split():
    F = type1_filtration(gq(3, -2), gq(5, 0))
    res = r_split_delta(nd1(), F)
    assert np.array_equal(res.delta, zeros((4, 4)))
    assert res.F_hat == F


@pytest.mark.parametrize("m", [1, 2, 3, 5, 6, 7])
def test_r_split_delta_type2(m):
    p = Type2Param(m, 1, 1j)
    nd = NilDirection(SPACE, to_float(type2_N(m)))
    res = r_split_delta(nd, type2_filtration(p))
    # F_hat = exp((Im w / 2m) i N) F, so delta = -(1 / 2m) N
    assert np.allclose(res.delta, -to_float(type2_N(m)) / (2 * m), atol=1e-12)


def test_sl2_type1_w0():
    F = type1_filtration(gq(0, -1), 0)
    data = sl2_complete(nd1(), F)
    assert all(triple_defects(data).values())
    assert np.array_equal(bracket(data.H, data.N), data.N * GaussQ(-2))
    assert np.array_equal(data.X @ data.X, zeros((4, 4)))
    big = deligne_bigrading(weight_filtration(nd1()), F)
    P = np.stack([big.get(*pq).basis[:, 0] for pq in [(1, -2), (0, 0), (-1, -1), (-2, 1)]], axis=1)
    D = inverse(P) @ data.H @ P
    expect = zeros((4, 4))
    for j, ev in enumerate([0, 1, -1, 0]):
        expect[j, j] = GaussQ(ev)
    assert np.array_equal(D, expect)


def test_x_action_values_exact():
    F_hat = r_split_delta(nd1(), type1_filtration(gq(1, -2), gq(2, 1))).F_hat
    data = sl2_complete(nd1(), F_hat)
    zs = [GaussQ(0), GaussQ(1), GaussQ(0, 1), gq("3/5", "4/5"), gq("1/2", "-1/3")]
    rep = x_action_check(data, nd1(), F_hat, zs)
    assert rep.ok and rep.max_deviation == 0.0
    names = {c["identity"] for c in rep.checks}
    assert {"Xu=-exp(-iN)v", "||Xu||=||u||", "val-1"} <= names


def test_x_action_values_float():
    p = Type2Param(5, -1, 0.3 - 0.7j)
    nd = NilDirection(SPACE, to_float(type2_N(5)))
    F_hat = r_split_delta(nd, type2_filtration(p)).F_hat
    data = sl2_complete(nd, F_hat)
    rep = x_action_check(data, nd, F_hat, [0, 1, 1j, 0.6 + 0.8j, 0.2 - 0.1j])
    assert rep.ok and rep.max_deviation < 1e-12


def test_x_action_cross_pairings_genus2():
    # exp(zN) F0 has period matrix tau + z I: a rank-2 degeneration with I^{0,0} of dimension 2
    from hodgeboundary.hodge import Filtration
    from hodgeboundary.symplin import SympSpace

    S = SympSpace.standard(2)
    N = zeros((4, 4))
    N[0, 2] = N[1, 3] = GaussQ(1)
    nd = NilDirection(S, N)
    tau = matrix([[1, 2], [2, 0]])
    F0 = Subspace.span(S, np.vstack([tau, identity(2)]))
    F = Filtration.siegel(S, F0)
    assert is_lmhs(nd, F).ok
    data = sl2_complete(nd, F)
    rep = x_action_check(data, nd, F, [GaussQ(0), gq("3/5", "4/5"), gq("1/2", "1/2")])
    assert rep.ok
    assert sum(c["identity"] == "val-2" for c in rep.checks) == 6


def test_split_123():
    F_hat = type1_filtration(gq(0, -1), 0)
    assert check_split_123(nd1(), F_hat, I)
    assert check_split_123(nd1(), F_hat, gq(2, 3))
    parts = split_123(nd1(), F_hat, I)
    h1, h2, h3 = parts[1]
    assert h1 == span(vector([0, gq(0, -1), 0, 1])) and h2.dim == 0 and h3.dim == 0


def test_split_123_pure_case():
    F = chart_filtration(ChartPoint(matrix([[I, 0], [0, -I]]), 0))
    parts = split_123(NilDirection.zero(SPACE), F, I)
    comps = hodge_decomposition(F)
    for p, (h1, h2, h3) in parts.items():
        assert h1 == comps[p] and h2.dim == 0 and h3.dim == 0


def test_nilpotent_orbit_verdicts():
    v = is_nilpotent_orbit(nd1(), type1_filtration(gq(0, -1), gq(1, 2)))
    assert v.verdict and v.y_star == 0.0625
    assert not is_nilpotent_orbit(nd1(), type1_filtration(gq(0, 1), gq(1, 2)))
    F = chart_filtration(ChartPoint(matrix([[I, 0], [0, -I]]), 0))
    v0 = is_nilpotent_orbit(NilDirection.zero(SPACE), F)
    assert v0.verdict and v0.y_star == 0


def test_parity_classification():
    assert classify_parity(nd1(), type1_filtration(gq(0, -1), gq(1, 2))) == "even"
    nd2 = NilDirection(SPACE, to_float(type2_N(2)))
    assert classify_parity(nd2, type2_filtration(Type2Param(2, -1, 0.1 + 0.2j))) == "odd"
    assert parities(NilDirection(SPACE, type3_N()), type1_filtration(gq(0, -1), 0)) == set()
    assert parities(NilDirection.zero(SPACE), type1_filtration(gq(0, -1), 0)) == {"even", "odd"}


@settings(max_examples=15, deadline=None)
@given(st.fractions(-3, 3, max_denominator=4), st.fractions(-3, -1 / 4, max_denominator=4),
       st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4))
def test_delta_is_real_multiple_of_N(a, b, c, d):
    F = type1_filtration(GaussQ(a, b), GaussQ(c, d))
    res = r_split_delta(nd1(), F)
    gamma = d / b
    assert res.delta[0, 2] == GaussQ(-gamma * d)
    assert sum(1 for x in res.delta.flat if x) <= 1

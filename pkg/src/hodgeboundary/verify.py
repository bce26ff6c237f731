"""The verification battery: ten checks, each returning a CheckResult.

Every check draws its samples from ``numpy.random.default_rng((seed, k))``
so that checks are independent of each other and of execution order.  Any
exception raised inside a check is recorded as a failure.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .case1111 import (
    SPACE,
    Schedule,
    Type1Param,
    Type2Param,
    classify_1111,
    continuity_experiment,
    type1_closed_forms,
    type1_N,
    type1_p_tilde_matrix,
    type2_closed_forms,
    type2_N,
    type2_p_tilde_matrix,
    type3_N,
)
from .cyclespace import (
    CycleStatus,
    OrbitData,
    boundary_data,
    cycle_radical,
    gamma_act,
    in_cycle_space,
    zeta,
)
from .degeneration import NilDirection, deligne_bigrading, parities, x_action_check
from .gaussq import GaussQ
from .symplin import (
    SympSpace,
    Subspace,
    get_tolerance,
    hermitian_gram,
    inertia,
    max_abs,
    matrix,
    random_integral_symplectic,
    to_exact,
    to_float,
    tolerance,
)

TYPE2_M = (1, 2, 3, 5, 6, 7)


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    max_deviation: float = 0.0
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def fail(self, what: str) -> None:
        self.passed = False
        if len(self.failures) < 10:
            self.failures.append(what)

    def deviation(self, d: float, limit: float, what: str) -> None:
        d = float(d)
        self.max_deviation = max(self.max_deviation, d)
        if not d <= limit:
            self.fail(f"{what}: deviation {d:.3g} > {limit:.3g}")

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "max_deviation": self.max_deviation,
            "cases": self.cases,
            "failures": list(self.failures),
        }


# --------------------------------------------------------------------------
# samplers

def _rat(rng, lo=-5, hi=5, dmax=4) -> Fraction:
    return Fraction(int(rng.integers(lo, hi + 1)), int(rng.integers(1, dmax + 1)))


def _pos_rat(rng, hi=5, dmax=4) -> Fraction:
    return Fraction(int(rng.integers(1, hi + 1)), int(rng.integers(1, dmax + 1)))


def sample_type1(rng, count: int) -> list[Type1Param]:
    """Exact (v, w) with Im v < 0 and small Gaussian-rational entries."""
    return [Type1Param(GaussQ(_rat(rng), -_pos_rat(rng)), GaussQ(_rat(rng), _rat(rng))) for _ in range(count)]


def sample_type2(rng, count: int) -> list[Type2Param]:
    out = []
    for _ in range(count):
        m = int(rng.choice(TYPE2_M))
        sign = int(rng.choice([1, -1]))
        w = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        out.append(Type2Param(m, sign, w))
    return out


_PYTHAGOREAN = ((1, 0), (0, 1), (Fraction(3, 5), Fraction(4, 5)), (Fraction(5, 13), Fraction(12, 13)),
                (Fraction(8, 17), Fraction(15, 17)))


def sample_disk_exact(rng, count: int) -> list[GaussQ]:
    """Gaussian rationals in the closed unit disk, boundary points included."""
    out = []
    for _ in range(count):
        x, y = _PYTHAGOREAN[int(rng.integers(len(_PYTHAGOREAN)))]
        r = Fraction(int(rng.integers(0, 5)), 4)
        sx, sy = rng.choice([1, -1], size=2)
        out.append(GaussQ(r * x * int(sx), r * y * int(sy)))
    return out


def sample_disk_float(rng, count: int) -> list[complex]:
    r = np.sqrt(rng.uniform(0, 1, size=count))
    r[: min(2, count)] = 1.0
    th = rng.uniform(-math.pi, math.pi, size=count)
    return [complex(a * math.cos(t), a * math.sin(t)) for a, t in zip(r, th)]


def type1_orbit(p: Type1Param):
    cf = type1_closed_forms(p)
    return NilDirection(SPACE, type1_N()), cf.F


def type2_orbit(p: Type2Param):
    cf = type2_closed_forms(p)
    return NilDirection(SPACE, to_float(type2_N(p.m))), cf.F


def _family_points(rng, n1: int, n2: int):
    pts = [("I", p, *type1_orbit(p), "even") for p in sample_type1(rng, n1)]
    pts += [("II", p, *type2_orbit(p), "odd") for p in sample_type2(rng, n2)]
    return pts


def _dist(a, b) -> float:
    return max_abs(to_float(np.asarray(a)) - to_float(np.asarray(b)))


# --------------------------------------------------------------------------
# the ten checks

def check_type1_closed_forms(rng, res: CheckResult) -> None:
    for p in sample_type1(rng, 50):
        res.cases += 1
        cf = type1_closed_forms(p)
        nd = NilDirection(SPACE, type1_N())
        od = OrbitData(nd, cf.F)
        tag = f"(v, w) = ({p.v}, {p.w})"
        if not od.lmhs.ok:
            res.fail(f"{tag}: not an LMHS")
            continue
        if od.delta.F_hat != cf.F_hat:
            res.fail(f"{tag}: F_hat")
        if not np.array_equal(od.delta.delta, cf.delta):
            res.fail(f"{tag}: delta")
        e_space = deligne_bigrading(od.W, cf.F).get(0, 0)
        if e_space != Subspace.span(SPACE, [cf.e_gen]):
            res.fail(f"{tag}: I^(0,0) generator")
        if od.bigrading.get(0, 0) != Subspace.span(SPACE, [cf.e_hat]):
            res.fail(f"{tag}: I^(0,0) generator of F_hat")
        if od.satake("even").U != cf.p_even_subspace:
            res.fail(f"{tag}: p_even")
        z = GaussQ(_rat(rng), _pos_rat(rng))
        if not np.array_equal(od.p_tilde_matrix("even", z), type1_p_tilde_matrix(p, z)):
            res.fail(f"{tag}: p~ matrix at z = {z}")


def check_type2_closed_forms(rng, res: CheckResult) -> None:
    eps = get_tolerance()
    for p in sample_type2(rng, 50):
        res.cases += 1
        cf = type2_closed_forms(p)
        nd = NilDirection(SPACE, to_float(type2_N(p.m)))
        od = OrbitData(nd, cf.F)
        tag = f"(m, sign, w) = ({p.m}, {p.sign:+d}, {p.w:.4g})"
        if not od.lmhs.ok:
            res.fail(f"{tag}: not an LMHS")
            continue
        res.deviation(_dist(od.delta.delta, cf.delta), eps, f"{tag}: delta")
        if od.delta.F_hat != cf.F_hat:
            res.fail(f"{tag}: F_hat")
        if od.bigrading.get(-1, 1) != Subspace.span(SPACE, [cf.omega_hat]):
            res.fail(f"{tag}: I^(-1,1) of F_hat")
        if od.satake("odd").U != cf.p_odd_subspace:
            res.fail(f"{tag}: p_odd")
        z = complex(rng.uniform(-2, 2), rng.uniform(0.1, 3))
        got = od.p_tilde_matrix("odd", z)
        want = type2_p_tilde_matrix(p, z)
        res.deviation(_dist(got, want), eps, f"{tag}: p~ matrix")


def check_x_action(rng, res: CheckResult) -> None:
    for fam, p, nd, F, _ in _family_points(rng, 6, 6):
        res.cases += 1
        zs = sample_disk_exact(rng, 50) if fam == "I" else sample_disk_float(rng, 50)
        bd = boundary_data(nd, F)
        rep = x_action_check(bd.sl2, nd, bd.F_hat, zs, raise_on_fail=False)
        res.max_deviation = max(res.max_deviation, rep.max_deviation)
        if not rep.ok:
            bad = next(c for c in rep.checks if not c["ok"])
            res.fail(f"family {fam} {p}: {bad['identity']} at p = {bad['p']}")


def check_boundary_cycles(rng, res: CheckResult) -> None:
    for fam, p, nd, F, parity in _family_points(rng, 6, 6):
        res.cases += 1
        C = boundary_data(nd, F).cycle
        status = in_cycle_space(C)
        if status != CycleStatus.CLOSURE:
            res.fail(f"family {fam} {p}: status {status.value}")
            continue
        side, other = (C.V, C.W) if parity == "even" else (C.W, C.V)
        if cycle_radical(side) != nd.image():
            res.fail(f"family {fam} {p}: radical on the {parity} side is not im N")
        if cycle_radical(other).dim != 0:
            res.fail(f"family {fam} {p}: degenerate on the opposite side")


def _satake_U(nd, F, parity):
    return OrbitData(nd, F).satake(parity).U


def check_well_defined(rng, res: CheckResult) -> None:
    for fam, p, nd, F, parity in _family_points(rng, 2, 2):
        exact = fam == "I"
        base = _satake_U(nd, F, parity)
        for _ in range(20):
            res.cases += 1
            if exact:
                c = GaussQ(_rat(rng), _rat(rng))
            else:
                c = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if _satake_U(nd, F.transform(nd.exp(c)), parity) != base:
                res.fail(f"family {fam} {p}: exp(cN)F with c = {c}")
        for _ in range(20):
            res.cases += 1
            lam = _pos_rat(rng, hi=9, dmax=5)
            scaled = nd.scaled(GaussQ(lam) if exact else float(lam))
            if _satake_U(scaled, F, parity) != base:
                res.fail(f"family {fam} {p}: lambda = {lam}")


def check_zeta_factorization(rng, res: CheckResult) -> None:
    for fam, p, nd, F, parity in _family_points(rng, 10, 10):
        res.cases += 1
        od = OrbitData(nd, F)
        if zeta(od.f_tilde(parity)).U != od.satake(parity).U:
            res.fail(f"family {fam} {p}: zeta(p~) != p")


def check_gamma_equivariance(rng, res: CheckResult) -> None:
    for fam, p, nd, F, parity in _family_points(rng, 1, 1):
        U = _satake_U(nd, F, parity)
        for _ in range(20):
            res.cases += 1
            g = random_integral_symplectic(2, rng, steps=int(rng.integers(2, 6)))
            nd2, F2 = gamma_act(g, nd, F)
            ge = to_exact(g) if fam == "I" else to_float(g)
            if parities(nd2, F2) != parities(nd, F):
                res.fail(f"family {fam} {p}: parity changed under g")
                continue
            if _satake_U(nd2, F2, parity) != U.image(ge):
                res.fail(f"family {fam} {p}: p(Ad(g)N, gF) != g p(N, F)")


def check_continuity(rng, res: CheckResult) -> None:
    bases = (("I", Type1Param(-1j, 0)), ("II", Type2Param(2, 1, 0.5)))
    for fam, base in bases:
        for n_exp in (1, 2, 3):
            res.cases += 1
            sched = Schedule(n_exp=n_exp, m_exp=n_exp, steps=25)
            rep = continuity_experiment(fam, base, sched, tolerance=1e-6)
            tag = f"family {fam}, n_exp = {n_exp}"
            if rep.violations:
                res.fail(f"{tag}: {len(rep.violations)} schedule violations")
            res.deviation(rep.tail_max(5), 1e-6, tag)


def check_classification(rng, res: CheckResult) -> None:
    reps = [(type1_N(), "I"), (type3_N(), "III")]
    reps += [(type2_N(m), "II") for m in TYPE2_M]
    reps += [(matrix(np.zeros((4, 4), dtype=int)), "invalid"),
             (matrix([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]), "invalid"),
             (matrix([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, 0]]), "invalid")]
    for N, want in reps:
        res.cases += 1
        got = classify_1111(N)
        if got != want:
            res.fail(f"representative of type {want} classified as {got}")
    nontrivial = [(N, t) for N, t in reps if t != "invalid"]
    for k in range(50):
        g = to_exact(random_integral_symplectic(2, rng, steps=int(rng.integers(2, 7))))
        N, want = nontrivial[k % len(nontrivial)]
        res.cases += 1
        got = classify_1111(NilDirection(SPACE, N).conjugated_by(g))
        if got != want:
            res.fail(f"conjugate of type {want} classified as {got}")


def _random_exact_vectors(rng, dim: int, k: int):
    return [matrix([[GaussQ(int(rng.integers(-3, 4)), int(rng.integers(-2, 3)))] for _ in range(dim)])[:, 0]
            for _ in range(k)]


def check_linear_algebra(rng, res: CheckResult) -> None:
    for case in range(200):
        res.cases += 1
        n = int(rng.integers(1, 4))
        space = SympSpace.standard(n)
        dim = 2 * n
        A = Subspace.span(space, _random_exact_vectors(rng, dim, int(rng.integers(0, dim + 1))))
        B = Subspace.span(space, _random_exact_vectors(rng, dim, int(rng.integers(0, dim + 1))))
        tag = f"case {case}"
        if A.perp().perp() != A:
            res.fail(f"{tag}: perp is not an involution")
        if A.perp().dim != dim - A.dim:
            res.fail(f"{tag}: dim perp")
        if (A + B).dim + A.intersect(B).dim != A.dim + B.dim:
            res.fail(f"{tag}: dimension formula")
        G, _ = hermitian_gram(A, GaussQ(0, 1))
        sig = inertia(G)
        if A.dim:
            P = matrix([[GaussQ(int(rng.integers(-2, 3)), int(rng.integers(-1, 2))) for _ in range(A.dim)]
                        for _ in range(A.dim)])
            P = P + to_exact(np.eye(A.dim, dtype=int)) * GaussQ(7)
            G2 = P.T @ G @ np.vectorize(lambda x: x.conjugate(), otypes=[object])(P)
            if inertia(G2) != sig:
                res.fail(f"{tag}: signature depends on the basis")
        Af, Bf = A.to_float(), B.to_float()
        if (Af.perp().dim, (Af + Bf).dim, Af.intersect(Bf).dim) != (A.perp().dim, (A + B).dim, A.intersect(B).dim):
            res.fail(f"{tag}: exact and float dimensions disagree")
        Gf, scale = hermitian_gram(Af, 1j)
        if inertia(Gf, scale) != sig:
            res.fail(f"{tag}: exact and float signatures disagree")
        if Af.perp() != A.perp().to_float():
            res.fail(f"{tag}: exact and float perp disagree")


CHECKS = {
    "01-type1-closed-forms": check_type1_closed_forms,
    "02-type2-closed-forms": check_type2_closed_forms,
    "03-x-action": check_x_action,
    "04-boundary-cycles": check_boundary_cycles,
    "05-well-defined": check_well_defined,
    "06-zeta-factorization": check_zeta_factorization,
    "07-gamma-equivariance": check_gamma_equivariance,
    "08-continuity": check_continuity,
    "09-classification": check_classification,
    "10-linear-algebra": check_linear_algebra,
}


def run_check(name: str, seed: int = 0, eps: float | None = None) -> CheckResult:
    index = list(CHECKS).index(name)
    res = CheckResult(name)
    rng = np.random.default_rng((seed, index))
    start = time.perf_counter()
    with tolerance(get_tolerance() if eps is None else eps):
        try:
            CHECKS[name](rng, res)
        except Exception as err:  # a crash is a failed check, not a crashed battery
            res.fail(f"{type(err).__name__}: {err}")
    res.seconds = time.perf_counter() - start
    return res


def run_battery(seed: int = 0, eps: float | None = None, names=None) -> list[CheckResult]:
    """Run the selected checks (all by default), sorted by name."""
    names = sorted(CHECKS) if names is None else sorted(names)
    return [run_check(n, seed, eps) for n in names]

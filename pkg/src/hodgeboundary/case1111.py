"""The rank-4 case with Hodge numbers h^{p,-p-1} = 1 for p = 1, 0, -1, -2.

Contains the chart Sym(2, C) x C -> D-check, the type I/II/III classifier,
the two boundary families with their closed forms, and numerical continuity
experiments near their boundary points.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .cyclespace import (
    OrbitData,
    f_tilde,
    parity_part,
    period_matrix,
)
from .degeneration import NilDirection, is_nilpotent_orbit
from .errors import BadParam, ScheduleViolation
from .gaussq import GaussQ
from .hodge import CY_1111, Filtration, in_period_domain
from .symplin import (
    SympSpace,
    Subspace,
    conj,
    expm_nilpotent,
    form,
    is_exact,
    matrix,
    max_abs,
    rank,
    to_float,
    vector,
)

SPACE = SympSpace.standard(2)
I = GaussQ(0, 1)


def _scalar(x):
    """Exact GaussQ when possible, else Python complex."""
    c = GaussQ.coerce(x)
    return c if c is not None else complex(x)


def _is_exact(*xs) -> bool:
    return all(isinstance(x, GaussQ) for x in xs)


def _re(x):
    return x.real if isinstance(x, GaussQ) else x.real


def _im(x):
    return x.imag if isinstance(x, GaussQ) else x.imag


def _sign(x) -> int:
    x = x.re if isinstance(x, GaussQ) else x
    return int(x > 0) - int(x < 0)


def _filtration(F1_vectors, F0_vectors) -> Filtration:
    F1 = Subspace.span(SPACE, F1_vectors)
    F0 = Subspace.span(SPACE, F0_vectors)
    return Filtration.complete(SPACE, CY_1111, {1: F1, 0: F0})


# --------------------------------------------------------------------------
# chart

@dataclass(frozen=True)
class ChartPoint:
    tau: np.ndarray
    lam: object = 0

    def __post_init__(self):
        tau = matrix(self.tau)
        if tau.shape != (2, 2):
            raise ValueError("tau must be 2 x 2")
        if tau[0, 1] != tau[1, 0]:
            raise ValueError("tau must be symmetric")
        object.__setattr__(self, "tau", tau)
        lam = _scalar(self.lam)
        if not is_exact(tau):
            lam = complex(lam)
        object.__setattr__(self, "lam", lam)

    def omega(self) -> np.ndarray:
        t = self.tau
        return vector([t[0, 1], t[1, 1], 0, 1]) + vector([t[0, 0], t[1, 0], 1, 0]) * self.lam

    @property
    def in_D(self) -> bool:
        """det(Im tau) < 0 and -i<w, conj w> > 0 (chart criterion, an oracle)."""
        t = self.tau
        im = [[_im(t[j, k]) for k in range(2)] for j in range(2)]
        det = im[0][0] * im[1][1] - im[0][1] * im[1][0]
        w = self.omega()
        val = form(SPACE, w, conj(w)) * (GaussQ(0, -1) if is_exact(w) else -1j)
        return _sign(det) < 0 and _sign(_re(val)) > 0


def chart_filtration(p: ChartPoint) -> Filtration:
    t = p.tau
    c2 = vector([t[0, 1], t[1, 1], 0, 1])
    c1 = vector([t[0, 0], t[1, 0], 1, 0])
    return _filtration([p.omega()], [c2, c1])


# --------------------------------------------------------------------------
# nilpotent directions

def type1_N() -> np.ndarray:
    """N e_3 = e_1, N e_j = 0 otherwise."""
    N = np.zeros((4, 4), dtype=int)
    N[0, 2] = 1
    return matrix(N)


def type2_N(m: int) -> np.ndarray:
    """N e_3 = -e_1, N e_4 = -m e_2."""
    N = np.zeros((4, 4), dtype=int)
    N[0, 2] = -1
    N[1, 3] = -m
    return matrix(N)


def type3_N() -> np.ndarray:
    """A regular nilpotent: e_3 -> -e_4 -> -e_2 -> -e_1 -> 0."""
    return matrix([[0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, -1, 0]])


def classify_1111(N) -> str:
    """'I', 'II', 'III' or 'invalid'."""
    nd = N if isinstance(N, NilDirection) else NilDirection(SPACE, np.asarray(N))
    if nd.ambient.dim != 4:
        raise ValueError("classify_1111 needs rank 4")
    if nd.nilpotency_index is None or not nd.compatible or nd.is_zero:
        return "invalid"
    if nd.nilpotency_index == 2:
        r = rank(nd.N)
        return {1: "I", 2: "II"}.get(r, "invalid")
    if nd.nilpotency_index == 4:
        return "III"
    return "invalid"


# --------------------------------------------------------------------------
# type I

@dataclass(frozen=True)
class Type1Param:
    v: object
    w: object

    def __post_init__(self):
        v, w = _scalar(self.v), _scalar(self.w)
        if _sign(_im(v)) >= 0:
            raise BadParam("type I needs Im v < 0")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)

    @property
    def exact(self) -> bool:
        return _is_exact(self.v, self.w)

    @property
    def gamma(self):
        return _im(self.w) / _im(self.v)


def type1_xi0(w) -> np.ndarray:
    return vector([0, w, 1, 0])


def type1_xi1(v, w) -> np.ndarray:
    return vector([w, v, 0, 1])


def type1_filtration(v, w) -> Filtration:
    x1, x0 = type1_xi1(v, w), type1_xi0(w)
    return _filtration([x1], [x1, x0])


@dataclass(frozen=True)
class Type1ClosedForms:
    F: Filtration
    F_hat: Filtration
    gamma: object
    delta: np.ndarray
    e_gen: np.ndarray
    e_hat: np.ndarray
    p_even_subspace: Subspace
    f_tilde_basis: tuple


def type1_closed_forms(p: Type1Param) -> Type1ClosedForms:
    v, w, g = p.v, p.w, p.gamma
    N = type1_N()
    if not p.exact:
        N = to_float(N)
    F = type1_filtration(v, w)
    shift = g * _im(w)
    iu = I if p.exact else 1j
    F_hat = F.transform(expm_nilpotent(N, iu * shift))
    e = vector([-g * w, _re(w) - g * _re(v), 1, -g])
    e_hat = vector([-g * _re(w), _re(w) - g * _re(v), 1, -g])
    vbar = v.conjugate()
    Ue = Subspace.span(SPACE, [vector([1, 0, 0, 0]), vector([0, vbar, 0, 1])])
    xi1bar = conj(type1_xi1(v, w))
    return Type1ClosedForms(F, F_hat, g, N * (-shift), e, e_hat, Ue, (xi1bar, e_hat))


def type1_p_tilde_matrix(p: Type1Param, z) -> np.ndarray:
    """((z - gamma i Im w, conj w), (conj w, conj v)): the period matrix of e^{zN} F~."""
    z = _scalar(z)
    if _sign(_im(z)) <= 0:
        raise BadParam("Im z must be positive")
    iu = I if _is_exact(z, p.v, p.w) else 1j
    wb = p.w.conjugate()
    return matrix([[z - p.gamma * iu * _im(p.w), wb], [wb, p.v.conjugate()]])


# --------------------------------------------------------------------------
# type II

def _squarefree(m: int) -> bool:
    if m < 1:
        return False
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Type2Param:
    m: int
    sign: int
    w: complex

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or not _squarefree(int(self.m)):
            raise BadParam("m must be a square-free positive integer")
        s = {"+": 1, "-": -1}.get(self.sign, self.sign)
        if s not in (1, -1):
            raise BadParam("sign must be +1 or -1")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "sign", s)
        object.__setattr__(self, "w", complex(self.w))

    @property
    def root(self) -> float:
        return math.sqrt(self.m)

    @property
    def delta_coeff(self) -> float:
        """Im w / 2m: F_hat = exp(coeff * i N) F."""
        return self.w.imag / (2 * self.m)


def type2_xi0(p: Type2Param) -> np.ndarray:
    return np.array([-1, p.sign * 1j * p.root, 0, 0], dtype=complex)


def type2_xi1(p: Type2Param) -> np.ndarray:
    return np.array([0, p.w, p.sign * 1j * p.root, 1], dtype=complex)


def type2_filtration(p: Type2Param) -> Filtration:
    x1, x0 = type2_xi1(p), type2_xi0(p)
    return _filtration([x1], [x1, x0])


@dataclass(frozen=True)
class Type2ClosedForms:
    F: Filtration
    F_hat: Filtration
    delta_coeff: float
    delta: np.ndarray
    xi_hat: np.ndarray
    omega: np.ndarray
    omega_hat: np.ndarray
    p_odd_subspace: Subspace
    f_tilde_basis: tuple


def type2_closed_forms(p: Type2Param) -> Type2ClosedForms:
    N = to_float(type2_N(p.m))
    c = p.delta_coeff
    F = type2_filtration(p)
    F_hat = F.transform(expm_nilpotent(N, 1j * c))
    x1, x0 = type2_xi1(p), type2_xi0(p)
    # N xi_1 = +-i sqrt(m) xi_0 fixes the normalisation of the root below
    omega = -p.sign * 2j * p.root * np.conj(x1) + 2j * p.w.imag * np.conj(x0)
    xi_hat = expm_nilpotent(N, 1j * c) @ x1
    omega_hat = -p.sign * 2j * p.root * (expm_nilpotent(N, -1j * c) @ np.conj(x1))
    U = Subspace.span(SPACE, [vector([1, 0, 0, 0]), vector([0, 1, 0, 0])])
    return Type2ClosedForms(F, F_hat, c, N * (-c), xi_hat, omega, omega_hat, U, (xi_hat, omega_hat))


def type2_p_tilde_matrix(p: Type2Param, z) -> np.ndarray:
    """((-z, +-Im w / 2 sqrt m), (., Re w - m z)): the period matrix of e^{zN} F~."""
    z = complex(z)
    if z.imag <= 0:
        raise BadParam("Im z must be positive")
    off = p.sign * p.w.imag / (2 * p.root)
    return np.array([[-z, off], [off, p.w.real - p.m * z]], dtype=complex)


# --------------------------------------------------------------------------
# continuity experiments

def ell(z: complex) -> complex:
    """log z / 2 pi i on the principal branch."""
    return cmath.log(z) / (2j * math.pi)


@dataclass(frozen=True)
class Schedule:
    """z^(k) -> 0 along t_k = 2^-k, k = 1 .. steps.

    ``lawful``: z5 = t e^{i theta}, the constrained coordinates (z4 for
    family I; z1 and z2 for family II) are 0.5 e^{i phi} t^{n_exp}
    (resp. t^{m_exp}) and the remaining coordinates are free e^{i psi} t
    (zero by default).  Then |z4|^n < |z5| holds for every n <= n_exp.
    ``diagonal``: the constrained coordinates equal z5.
    ``frozen``: the constrained coordinates stay at 0.5 e^{i phi}, outside
    every U_n for small t.
    ``zero``: z1 .. z4 = 0, only z5 moves.
    """

    n_exp: int = 1
    m_exp: int = 1
    steps: int = 25
    kind: str = "lawful"
    theta: float = 0.3
    phi: float = 1.1
    psi: float = -0.7
    free: float = 0.0

    def __post_init__(self):
        if self.n_exp < 1 or self.m_exp < 1:
            raise BadParam("schedule exponents must be >= 1")
        if self.steps < 10:
            raise BadParam("schedule needs at least 10 steps")
        if self.kind not in ("lawful", "diagonal", "frozen", "zero"):
            raise BadParam(f"unknown schedule kind {self.kind!r}")
        if not -math.pi < self.theta < math.pi:
            raise BadParam("arg z5 must avoid the branch cut")

    def point(self, family: str, k: int) -> list[complex]:
        t = 2.0 ** (-k)
        z5 = t * cmath.exp(1j * self.theta)
        free = self.free * t * cmath.exp(1j * self.psi)

        def constrained(e):
            if self.kind == "lawful":
                return 0.5 * cmath.exp(1j * self.phi) * t ** e
            if self.kind == "diagonal":
                return z5
            if self.kind == "frozen":
                return 0.5 * cmath.exp(1j * self.phi)
            return 0j

        if self.kind == "zero":
            return [0j, 0j, 0j, 0j, z5]
        if family == "I":
            return [free, free * 0.5, free * 0.25, constrained(self.n_exp), z5]
        return [constrained(self.n_exp), constrained(self.m_exp), free, free * 0.5, z5]


@dataclass
class ContinuityReport:
    family: str
    deviations: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    converged: bool = False
    y_star: float | None = None

    @property
    def max_deviation(self) -> float:
        return max(self.deviations) if self.deviations else 0.0

    def tail_max(self, k: int = 5) -> float:
        return max(self.deviations[-k:]) if self.deviations else 0.0


def _perturbed(family: str, xi0, xi1, z) -> tuple:
    z1, z2, z3, z4, _ = z
    if family == "I":
        th0 = np.array([z1, z2, 0, 0])
        th1 = np.array([z2, z3, 0, 0])
    else:
        th0 = np.array([0, z2, z1, 0])
        th1 = np.array([0, z3, z2, 0])
    return xi0 + th0, xi1 + th1, z4


def _family_data(family: str, base):
    if family == "I":
        p = base if isinstance(base, Type1Param) else Type1Param(**base)
        p = Type1Param(complex(p.v), complex(p.w))
        N = to_float(type1_N())
        xi0 = to_float(type1_xi0(p.w))
        xi1 = to_float(type1_xi1(p.v, p.w))
        return N, xi0, xi1, "even"
    p = base if isinstance(base, Type2Param) else Type2Param(**base)
    return to_float(type2_N(p.m)), type2_xi0(p), type2_xi1(p), "odd"


def continuity_experiment(family: str, base, schedule: Schedule, tolerance: float = 1e-6,
                          strict: bool = False) -> ContinuityReport:
    """Compare p~ at e^{l(z5)N} F(z) with e^{l(z5)N} e^{i delta} F~ along a schedule.

    Deviation is the max-entry distance of period matrices.  A generated
    point with e^{l(z5)N} F(z) outside D is recorded as a violation (raised
    when ``strict``).
    """
    if family not in ("I", "II"):
        raise BadParam("family must be 'I' or 'II'")
    N, xi0, xi1, parity = _family_data(family, base)
    nd = NilDirection(SPACE, N)
    F = _filtration([xi1], [xi1, xi0])
    report = ContinuityReport(family)
    orbit = is_nilpotent_orbit(nd, F)
    report.y_star = orbit.y_star
    target = f_tilde(nd, F, parity)
    for k in range(1, schedule.steps + 1):
        z = schedule.point(family, k)
        a0, a1, z4 = _perturbed(family, xi0, xi1, z)
        Fz = _filtration([a1 + z4 * a0], [a1, a0])
        l5 = ell(z[4])
        g = expm_nilpotent(N, l5)
        Fl = Fz.transform(g)
        if not in_period_domain(Fl):
            report.violations.append(k)
            if strict:
                raise ScheduleViolation(f"step {k} leaves D")
            report.deviations.append(math.inf)
            continue
        got = period_matrix(parity_part(Fl, parity))
        want = period_matrix(target.at(l5))
        report.deviations.append(max_abs(got - want))
    tail = report.deviations[-5:]
    monotone = all(b <= a + tolerance for a, b in zip(tail, tail[1:]))
    report.converged = not report.violations and max(tail) < tolerance and monotone
    return report


def pipeline_p_tilde_matrix(nd: NilDirection, F: Filtration, parity: str, z) -> np.ndarray:
    """Period matrix of e^{zN} F~ built from the general pipeline."""
    return OrbitData(nd, F).p_tilde_matrix(parity, z)

"""Cycle spaces C_{V,W}, boundary cycles e^X C_0, the Satake-side maps
p^ev / p^od, the toroidal-side maps p~^ev / p~^od and the map zeta.

Sign convention: the cycle-space Hermitian form is h(x, y) = i<x, conj(y)>
(equivalently -i<conj(x), y>).  With it the even part H^ev of a Hodge
decomposition is positive and the odd part H^od negative, matching the
chart criterion -i<w, conj(w)> > 0 on F^1 = H^{1,-2} (p = 1 is odd).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from .degeneration import (
    NilDirection,
    Sl2Data,
    deligne_bigrading,
    is_lmhs,
    is_nilpotent_orbit,
    parities,
    r_split_delta,
    sl2_complete,
    weight_filtration,
)
from .errors import CheckFailed, NotAnOrbit, NotSymplectic, WrongParity
from .gaussq import GaussQ
from .hodge import Filtration, even_odd_parts, hodge_decomposition
from .symplin import (
    _orthonormal,
    Signature,
    SympSpace,
    Subspace,
    column_space,
    direct_sum,
    expm_nilpotent,
    get_tolerance,
    hermitian_gram,
    hermitian_signature,
    inverse,
    is_exact,
    is_isotropic,
    is_symplectic,
    nullspace,
    symplectic_inverse,
    to_exact,
    to_float,
)

I = GaussQ(0, 1)


def cycle_signature(V: Subspace) -> Signature:
    """Signature of i<x, conj(y)> on V."""
    return hermitian_signature(V, I)


def cycle_radical(V: Subspace) -> Subspace:
    """Radical of i<x, conj(y)> restricted to V."""
    if V.dim == 0:
        return V
    G, scale = hermitian_gram(V, I)
    if not is_exact(G):
        G = np.where(np.abs(G) <= get_tolerance() * scale, 0, G)
    B = V.basis if is_exact(G) else _orthonormal(to_float(V.basis))
    return column_space(V.ambient, B @ nullspace(G.T))


class CycleStatus(str, Enum):
    INTERIOR = "interior"
    CLOSURE = "closure"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class CyclePoint:
    """Complementary isotropic n-dimensional subspaces (V, W) of H_C."""

    V: Subspace
    W: Subspace

    def __post_init__(self):
        n = self.V.ambient.n
        if self.V.dim != n or self.W.dim != n:
            raise ValueError("V and W must have dimension n")
        if not (is_isotropic(self.V) and is_isotropic(self.W)):
            raise ValueError("V and W must be isotropic")
        if self.V.intersect(self.W).dim:
            raise ValueError("V and W must be complementary")

    def transform(self, g) -> "CyclePoint":
        return CyclePoint(self.V.image(g), self.W.image(g))

    def swapped(self) -> "CyclePoint":
        return CyclePoint(self.W, self.V)


def in_cycle_space(C: CyclePoint) -> CycleStatus:
    sv = cycle_signature(C.V)
    sw = cycle_signature(C.W)
    n = C.V.ambient.n
    if sv.pos == n and sw.neg == n:
        return CycleStatus.INTERIOR
    if sv.neg == 0 and sw.pos == 0:
        return CycleStatus.CLOSURE
    return CycleStatus.OUTSIDE


def base_cycle(F: Filtration) -> CyclePoint:
    """C_0 = C_{H^ev, H^od} for F in D."""
    comps = hodge_decomposition(F)
    ev, od = even_odd_parts(comps, F.ambient)
    return CyclePoint(ev, od)


# --------------------------------------------------------------------------
# boundary cycles

@dataclass(frozen=True)
class BoundaryData:
    """Every intermediate object of the pipeline delta -> F_hat -> sl2 -> X."""

    delta: np.ndarray
    F_hat: Filtration
    F0: Filtration
    sl2: Sl2Data | None
    base: CyclePoint
    cycle: CyclePoint


def boundary_data(nd: NilDirection, F: Filtration) -> BoundaryData:
    nd.require()
    if nd.is_zero:
        C = base_cycle(F)
        delta = np.zeros((nd.ambient.dim,) * 2, dtype=object if F.exact else complex)
        if F.exact:
            delta = to_exact(np.zeros((nd.ambient.dim,) * 2, dtype=int))
        return BoundaryData(delta, F, F, None, C, C)
    res = r_split_delta(nd, F)
    sl = sl2_complete(nd, res.F_hat)
    exact = is_exact(sl.X)
    F0 = res.F_hat.transform(expm_nilpotent(sl.N, I if exact else 1j))
    C0 = base_cycle(F0)
    eX = expm_nilpotent(sl.X, 1)
    return BoundaryData(res.delta, res.F_hat, F0, sl, C0, C0.transform(eX))


def boundary_cycle(nd: NilDirection, F: Filtration) -> CyclePoint:
    """e^X C_0 with C_0 the base cycle at F_0 = exp(iN) F_hat.

    For N = 0 this is the base cycle of F itself.
    """
    return boundary_data(nd, F).cycle


# --------------------------------------------------------------------------
# Satake side

@dataclass(frozen=True)
class SatakePoint:
    """Limiting isotropic subspace U containing the real subspace ``core``."""

    U: Subspace
    core: Subspace
    conjugated: bool = False

    def violations(self) -> list[str]:
        bad = []
        n = self.U.ambient.n
        if self.U.dim != n:
            bad.append("dim")
        if not is_isotropic(self.U):
            bad.append("isotropic")
        if not self.U.contains(self.core):
            bad.append("core-containment")
        if not self.core.is_real():
            bad.append("core-real")
        sig = cycle_signature(self.U)
        if self.conjugated:
            sig = Signature(sig.neg, sig.pos, sig.zero)
        if sig.neg != 0:
            bad.append("semidefinite")
        if sig.zero != self.core.dim:
            bad.append("kernel")
        return bad

    @property
    def valid(self) -> bool:
        return not self.violations()

    def transform(self, g) -> "SatakePoint":
        return SatakePoint(self.U.image(g), self.core.image(g), self.conjugated)


class OrbitData:
    """Lazily computed pipeline data of one orbit (N, F).

    Each stage (LMHS check, delta, bigrading of F_hat) is computed once and
    shared by the Satake and toroidal maps.
    """

    def __init__(self, nd: NilDirection, F: Filtration):
        self.nd = nd
        self.F = F

    @cached_property
    def W(self):
        return weight_filtration(self.nd)

    @cached_property
    def lmhs(self):
        return is_lmhs(self.nd, self.F)

    @cached_property
    def delta(self):
        return r_split_delta(self.nd, self.F, check=False)

    @cached_property
    def bigrading(self):
        """Deligne bigrading of (W, F_hat)."""
        return deligne_bigrading(self.W, self.delta.F_hat)

    @cached_property
    def parities(self) -> set:
        return parities(self.nd, self.delta.F_hat)

    def require_parity(self, parity: str) -> None:
        """Raise unless (N, F) is an orbit of the requested parity.

        For N^2 = 0, (N, F) generates a nilpotent orbit exactly when (W(N), F)
        is an LMHS polarized by N, so the LMHS report stands in for the grid scan.
        """
        if parity not in ("even", "odd"):
            raise ValueError(f"unknown parity {parity!r}")
        self.nd.require()
        if self.nd.nilpotency_index > 2:
            raise WrongParity("N^2 != 0: the orbit is neither even nor odd")
        if not self.lmhs.ok:
            raise NotAnOrbit(f"(N, F) does not generate a nilpotent orbit: {', '.join(self.lmhs.reasons)}")
        if parity not in self.parities:
            raise WrongParity(f"orbit is {'/'.join(sorted(self.parities)) or 'neither'}, not {parity}")

    def _parts(self, parity: str, with_zero: bool):
        keep = 0 if parity == "even" else 1
        return [s for (p, q), s in self.bigrading.I.items()
                if (p + q == -1 and p % 2 == keep) or (with_zero and p + q == 0)]

    def satake(self, parity: str) -> SatakePoint:
        self.require_parity(parity)
        core = self.nd.image()
        U, direct = direct_sum(self.nd.ambient, self._parts(parity, False) + [core])
        if not direct:
            raise CheckFailed("I^{p,-p-1} meets im N")
        if not U.exact and core.exact:
            core = core.to_float()
        point = SatakePoint(U, core, parity == "odd")
        bad = point.violations()
        if bad:
            raise CheckFailed(f"Satake point fails: {', '.join(bad)}")
        return point

    def f_tilde_subspace(self, parity: str) -> Subspace:
        """F~^0 built from F_hat."""
        return direct_sum(self.nd.ambient, self._parts(parity, True))[0]

    def f_tilde(self, parity: str) -> "SiegelOrbit":
        self.require_parity(parity)
        Ft = self.f_tilde_subspace(parity)
        delta = self.delta.delta
        exact = is_exact(delta) and Ft.exact
        Ft = Ft.image(expm_nilpotent(delta, I if exact else 1j))
        return SiegelOrbit(self.nd, Ft, parity == "odd")

    def p_tilde_matrix(self, parity: str, z) -> np.ndarray:
        """Period matrix of e^{zN} F~^0 (F~ built from F_hat)."""
        self.require_parity(parity)
        return period_matrix(self.f_tilde_subspace(parity).image(self.nd.exp(z)))


def p_even(nd: NilDirection, F: Filtration) -> SatakePoint:
    """(sum over even p of I^{p,-p-1}) + (im N)_C for the R-split LMHS of (N, F)."""
    return OrbitData(nd, F).satake("even")


def p_odd(nd: NilDirection, F: Filtration) -> SatakePoint:
    return OrbitData(nd, F).satake("odd")


# --------------------------------------------------------------------------
# toroidal side

def period_matrix(F0: Subspace) -> np.ndarray:
    """tau with F0 spanned by the columns of (tau; I)."""
    n = F0.ambient.n
    B = F0.basis
    try:
        return B[:n] @ inverse(B[n:])
    except (ValueError, np.linalg.LinAlgError) as err:
        raise ValueError("F0 is not a graph over the second Lagrangian") from err


def siegel_from_period_matrix(space: SympSpace, tau) -> Subspace:
    tau = np.asarray(tau)
    n = space.n
    exact = tau.dtype == object
    top = tau
    bottom = to_exact(np.eye(n, dtype=int)) if exact else np.eye(n, dtype=complex)
    return column_space(space, np.vstack([top, bottom]))


@dataclass(frozen=True)
class SiegelOrbit:
    """The orbit exp(C N) F0 in the (conjugate, if ``conjugated``) Siegel space.

    F0 is the 0-piece of a two-step weight -1 filtration F0 c F0^perp = H.
    """

    N: NilDirection
    F0: Subspace
    conjugated: bool = False

    def __post_init__(self):
        if self.F0.dim != self.N.ambient.n or not is_isotropic(self.F0):
            raise ValueError("F0 must be a Lagrangian subspace")

    def filtration(self) -> Filtration:
        return Filtration.siegel(self.N.ambient, self.F0)

    def at(self, z) -> Subspace:
        """e^{zN} F0."""
        return self.F0.image(self.N.exp(z))

    def period_matrix(self, z=0) -> np.ndarray:
        return period_matrix(self.at(z))

    def is_orbit(self):
        """Nilpotent-orbit test in H (or, when conjugated, of (-N, conj F0) in H)."""
        if self.conjugated:
            nd = self.N.scaled(-1)
            F = Filtration.siegel(self.N.ambient, self.F0.conjugate())
        else:
            nd = self.N
            F = self.filtration()
        return is_nilpotent_orbit(nd, F)


def f_tilde_subspace(nd: NilDirection, F_hat: Filtration, parity: str) -> Subspace:
    """F~^0 = (sum over p of the parity of I^{p,-p-1}) + (sum over p of I^{p,-p})."""
    keep = 0 if parity == "even" else 1
    big = deligne_bigrading(weight_filtration(nd), F_hat)
    parts = [s for (p, q), s in big.I.items() if (p + q == -1 and p % 2 == keep) or p + q == 0]
    return direct_sum(nd.ambient, parts)[0]


def f_tilde(nd: NilDirection, F: Filtration, parity: str) -> SiegelOrbit:
    """p~(sigma, exp(sigma_C) F) = (sigma, exp(sigma_C) e^{i delta} F~)."""
    return OrbitData(nd, F).f_tilde(parity)


def zeta(S: SiegelOrbit) -> SatakePoint:
    """(W_{-2})_C + (F0 cap ker N): the Satake point under a toroidal orbit.

    F0 cap ker N is the sum of the I^{p,-p-1} inside F~^0; both exp(C N) and
    exp(i delta) fix it pointwise, so the result depends only on the orbit.
    For N = 0 this is F0 itself.
    """
    core = S.N.image()
    U = S.F0.intersect(S.N.kernel()) + core
    if not U.exact and core.exact:
        core = core.to_float()
    return SatakePoint(U, core, S.conjugated)


def parity_part(F: Filtration, parity: str) -> Subspace:
    """Even or odd part of the Hodge decomposition (p^ev / p^od on D)."""
    ev, od = even_odd_parts(hodge_decomposition(F), F.ambient)
    return ev if parity == "even" else od


# --------------------------------------------------------------------------
# Gamma action

def gamma_act(g, nd: NilDirection, F: Filtration):
    """(Ad(g) N, g F) for an integral symplectic g."""
    g = np.asarray(g)
    if g.dtype == object:
        ok_int = all(x.im == 0 and x.re.denominator == 1 for x in g.flat)
    else:
        ok_int = np.issubdtype(g.dtype, np.integer) or np.allclose(g, np.round(np.real(g)))
    if not ok_int:
        raise NotSymplectic("g must have integer entries")
    gi = np.asarray(np.round(np.real(to_float(g))), dtype=int) if g.dtype != object else g
    if not is_symplectic(nd.ambient, to_exact(gi)):
        raise NotSymplectic("g does not preserve Q")
    ge = to_exact(gi)
    ginv = symplectic_inverse(nd.ambient, ge)
    N = nd.N if nd.exact else to_float(nd.N)
    gm = ge if nd.exact else to_float(ge)
    gim = ginv if nd.exact else to_float(ginv)
    return NilDirection(nd.ambient, gm @ N @ gim), F.transform(ge if F.exact else to_float(ge))

"""Hodge filtrations of weight -1: compact-dual and period-domain membership,
Hodge decompositions and the even/odd partial sums f^p.

Weight -1 conventions: h(p) = h^{p,-p-1} = h(-1-p), F^{-p} = (F^p)^perp and
the Hodge component H^{p,-p-1} = F^p cap conj(F^{-p-1}) is polarized by
i^{2p+1} <v, conj(v)> > 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import NotInCompactDual, NotInPeriodDomain
from .gaussq import GaussQ
from .symplin import SympSpace, Subspace, direct_sum, hermitian_signature

I = GaussQ(0, 1)


def polarization_factor(p: int) -> GaussQ:
    """i^{2p+1}: the sign making i^{2p+1}<v, conj v> positive on H^{p,-p-1}."""
    return I ** (2 * p + 1)


@dataclass(frozen=True)
class HodgeNumbers:
    h: Mapping[int, int]

    def __post_init__(self):
        h = {int(p): int(v) for p, v in self.h.items() if int(v) != 0}
        if any(v < 0 for v in h.values()):
            raise ValueError("Hodge numbers must be nonnegative")
        for p, v in h.items():
            if h.get(-1 - p, 0) != v:
                raise ValueError(f"h({p}) != h({-1 - p})")
        object.__setattr__(self, "h", dict(sorted(h.items(), reverse=True)))

    def __call__(self, p: int) -> int:
        return self.h.get(p, 0)

    def __hash__(self):
        return hash(tuple(self.h.items()))

    @property
    def total(self) -> int:
        return sum(self.h.values())

    @property
    def p_max(self) -> int:
        return max(self.h) if self.h else 0

    @property
    def p_min(self) -> int:
        return -1 - self.p_max

    def dim_F(self, p: int) -> int:
        return sum(v for r, v in self.h.items() if r >= p)

    @classmethod
    def siegel(cls, n: int) -> "HodgeNumbers":
        return cls({0: n, -1: n})


CY_1111 = HodgeNumbers({1: 1, 0: 1, -1: 1, -2: 1})


@dataclass(frozen=True)
class Filtration:
    """Decreasing filtration F^{p_max} c ... c F^{p_min} = H_C.

    ``pieces`` holds F^p for p_min <= p <= p_max; outside that range the
    filtration is zero above and everything below.
    """

    ambient: SympSpace
    h: HodgeNumbers
    pieces: Mapping[int, Subspace] = field(default_factory=dict)

    def __getitem__(self, p: int) -> Subspace:
        if p > self.h.p_max:
            return Subspace.zero(self.ambient, self.exact)
        if p < self.h.p_min:
            return Subspace.full(self.ambient, self.exact)
        return self.pieces[p]

    @property
    def exact(self) -> bool:
        return all(s.exact for s in self.pieces.values())

    @property
    def indices(self):
        return range(self.h.p_max, self.h.p_min - 1, -1)

    @classmethod
    def complete(cls, ambient: SympSpace, h: HodgeNumbers, upper: Mapping[int, Subspace]) -> "Filtration":
        """Fill in F^{-p} = (F^p)^perp from the pieces F^p, p >= 0."""
        pieces = dict(upper)
        for p in range(h.p_min, h.p_max + 1):
            if p in pieces:
                continue
            if -p in pieces:
                pieces[p] = pieces[-p].perp()
            elif p <= h.p_min:
                pieces[p] = Subspace.full(ambient)
            else:
                raise ValueError(f"missing F^{p}")
        return cls(ambient, h, {p: pieces[p] for p in range(h.p_max, h.p_min - 1, -1)})

    @classmethod
    def siegel(cls, ambient: SympSpace, F0: Subspace) -> "Filtration":
        """The two-step filtration F^0 c F^{-1} = H of a Siegel-space point."""
        return cls(ambient, HodgeNumbers.siegel(ambient.n), {0: F0, -1: Subspace.full(ambient, F0.exact)})

    def transform(self, g) -> "Filtration":
        return Filtration(self.ambient, self.h, {p: s.image(g) for p, s in self.pieces.items()})

    def conjugate(self) -> "Filtration":
        return Filtration(self.ambient, self.h, {p: s.conjugate() for p, s in self.pieces.items()})

    def to_float(self) -> "Filtration":
        return Filtration(self.ambient, self.h, {p: s.to_float() for p, s in self.pieces.items()})

    def __eq__(self, other):
        if not isinstance(other, Filtration):
            return NotImplemented
        return self.h == other.h and all(self[p] == other[p] for p in self.indices)

    __hash__ = None


class Membership:
    """Truth value plus the list of failed conditions."""

    __slots__ = ("ok", "reasons")

    def __init__(self, reasons):
        self.reasons = list(reasons)
        self.ok = not self.reasons

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"Membership(ok={self.ok}, reasons={self.reasons})"


def in_compact_dual(F: Filtration, h: HodgeNumbers | None = None) -> Membership:
    h = F.h if h is None else h
    reasons = []
    if h.total != F.ambient.dim:
        return Membership(["rank"])
    for p in range(h.p_max, h.p_min, -1):
        if not F[p - 1].contains(F[p]):
            reasons.append(f"monotone:{p}")
    for p in range(h.p_max + 1, h.p_min - 1, -1):
        if F[p].dim != h.dim_F(p):
            reasons.append(f"dim:{p}")
    for p in range(h.p_min, h.p_max + 1):
        if F[-p] != F[p].perp():
            reasons.append(f"selfdual:{p}")
    return Membership(reasons)


def _components(F: Filtration):
    return {p: F[p].intersect(F[-p - 1].conjugate()) for p in F.indices}


def _period_domain_reasons(F: Filtration, h: HodgeNumbers, comps) -> list[str]:
    reasons = []
    for p, Hp in comps.items():
        if Hp.dim != h(p):
            reasons.append(f"component-dim:{p}")
            continue
        sig = hermitian_signature(Hp, polarization_factor(p))
        if sig.pos != Hp.dim:
            reasons.append(f"positivity:{p}")
    _, direct = direct_sum(F.ambient, comps.values())
    if not direct or sum(c.dim for c in comps.values()) != F.ambient.dim:
        reasons.append("span")
    return reasons


def in_period_domain(F: Filtration, h: HodgeNumbers | None = None) -> bool:
    """Second Hodge-Riemann relation on every Hodge component."""
    h = F.h if h is None else h
    cd = in_compact_dual(F, h)
    if not cd:
        raise NotInCompactDual(", ".join(cd.reasons))
    return not _period_domain_reasons(F, h, _components(F))


def hodge_decomposition(F: Filtration) -> dict[int, Subspace]:
    """p -> H^{p,-p-1} for F in the period domain."""
    cd = in_compact_dual(F)
    if not cd:
        raise NotInCompactDual(", ".join(cd.reasons))
    comps = _components(F)
    reasons = _period_domain_reasons(F, F.h, comps)
    if reasons:
        raise NotInPeriodDomain(", ".join(reasons))
    return comps


@dataclass(frozen=True)
class FCounts:
    f_ev: dict
    f_od: dict


def f_counts(h: HodgeNumbers) -> FCounts:
    ps = range(h.p_min, h.p_max + 2)
    f_ev = {p: sum(h(r) for r in range(p, h.p_max + 1) if r % 2 == 0) for p in ps}
    f_od = {p: sum(h(r) for r in range(p, h.p_max + 1) if r % 2 != 0) for p in ps}
    return FCounts(f_ev, f_od)


def even_odd_parts(comps: Mapping[int, Subspace], ambient: SympSpace):
    """(H^ev, H^od) from a Hodge decomposition."""
    ev = [s for p, s in comps.items() if p % 2 == 0]
    od = [s for p, s in comps.items() if p % 2 != 0]
    return direct_sum(ambient, ev)[0], direct_sum(ambient, od)[0]


def random_siegel_point(n: int, rng: np.random.Generator):
    """A random symmetric complex matrix with positive definite imaginary part."""
    A = rng.normal(size=(n, n))
    B = rng.normal(size=(n, n))
    return (A + A.T) / 2 + 1j * (B @ B.T + n * np.eye(n))

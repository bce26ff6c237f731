"""JSON encodings for scalars, matrices, subspaces, filtrations, orbits and
boundary data.

Exact scalars are ``{"re": "p/q", "im": "p/q"}`` with decimal-string
rationals; float scalars use JSON numbers.  Matrices are row-major lists of
scalars.  A subspace stores its 2n x k basis matrix (columns are the basis
vectors).  Malformed input raises :class:`SchemaError`.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

import numpy as np

from .case1111 import (
    SPACE,
    ContinuityReport,
    Schedule,
    Type1Param,
    Type2Param,
    type1_closed_forms,
    type1_N,
    type2_closed_forms,
    type2_N,
)
from .cyclespace import CyclePoint, SatakePoint, SiegelOrbit
from .degeneration import Bigrading, NilDirection, WeightFiltration
from .errors import SchemaError
from .gaussq import GaussQ
from .hodge import Filtration, HodgeNumbers
from .symplin import SympSpace, Subspace, to_float

SCHEMAS = {
    "scalar": '{"re": "p/q", "im": "p/q"} (exact) or {"re": number, "im": number} (float)',
    "matrix": "[[scalar, ...], ...] (row-major)",
    "subspace": '{"ambient_n": int, "basis": matrix (2n x k, columns span the subspace)}',
    "filtration": '{"h": {"p": int, ...}, "pieces": {"p": subspace, ...}} (F^p for p >= 0; '
                  "the rest follows from F^-p = (F^p)^perp)",
    "orbit": '{"N": matrix, "F": filtration} or {"family": "I", "v": scalar, "w": scalar} '
             'or {"family": "II", "m": int, "sign": "+"|"-", "w": scalar}',
    "satake": '{"U": subspace, "core": subspace, "conjugated": bool}',
    "cycle": '{"V": subspace, "W": subspace}',
    "siegel_orbit": '{"N": matrix, "F0": subspace, "conjugated": bool}',
    "continuity": '{"family": "I"|"II", "v": scalar, "w": scalar, "m": int, "sign": "+"|"-", '
                  '"n_exp": int, "m_exp": int, "steps": int, "tolerance": number}',
}


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise SchemaError(msg)


def _field(obj: Any, key: str, kind=dict):
    _require(isinstance(obj, dict), f"expected an object holding {key!r}")
    _require(key in obj, f"missing field {key!r}")
    val = obj[key]
    if kind is not None:
        _require(isinstance(val, kind) and not (kind is int and isinstance(val, bool)),
                 f"field {key!r} must be {getattr(kind, '__name__', kind)}")
    return val


# --------------------------------------------------------------------------
# scalars and matrices

def _rational_string(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _number(x: float):
    return None if not math.isfinite(x) else float(x)


def encode_scalar(x) -> dict:
    if isinstance(x, GaussQ):
        return {"re": _rational_string(Fraction(x.re)), "im": _rational_string(Fraction(x.im))}
    z = complex(x)
    return {"re": _number(z.real), "im": _number(z.imag)}


def _parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as err:
        raise SchemaError(f"bad rational {s!r}") from err


def decode_scalar(obj):
    """GaussQ for string parts, complex for numeric parts."""
    _require(isinstance(obj, dict) and set(obj) <= {"re", "im"} and "re" in obj,
             "scalar must be an object with 're' and optional 'im'")
    re, im = obj["re"], obj.get("im", 0 if not isinstance(obj["re"], str) else "0")
    if isinstance(re, str) and isinstance(im, str):
        return GaussQ(_parse_rational(re), _parse_rational(im))
    ok = all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im))
    _require(ok, "scalar parts must both be strings (exact) or both numbers (float)")
    return complex(float(re), float(im))


def encode_matrix(A) -> list:
    A = np.asarray(A)
    return [[encode_scalar(x) for x in row] for row in A]


def decode_matrix(obj, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    _require(isinstance(obj, list) and all(isinstance(r, list) for r in obj), "matrix must be a list of rows")
    if rows is not None:
        _require(len(obj) == rows, f"matrix must have {rows} rows")
    widths = {len(r) for r in obj}
    _require(len(widths) <= 1, "matrix rows have different lengths")
    width = widths.pop() if widths else 0
    if cols is not None:
        _require(width == cols, f"matrix must have {cols} columns")
    entries = [[decode_scalar(x) for x in r] for r in obj]
    if all(isinstance(x, GaussQ) for r in entries for x in r):
        A = np.empty((len(obj), width), dtype=object)
        for i, r in enumerate(entries):
            for j, x in enumerate(r):
                A[i, j] = x
        return A
    return np.array([[complex(x) for x in r] for r in entries], dtype=complex).reshape(len(obj), width)


# --------------------------------------------------------------------------
# subspaces and filtrations

def encode_subspace(S: Subspace) -> dict:
    return {"ambient_n": S.ambient.n, "basis": encode_matrix(S.basis)}


def _space(n: int) -> SympSpace:
    _require(n >= 1, "ambient_n must be positive")
    return SympSpace.standard(n)


def decode_subspace(obj, space: SympSpace | None = None) -> Subspace:
    n = _field(obj, "ambient_n", int)
    if space is not None:
        _require(n == space.n, f"subspace lives in rank {2 * n}, expected {space.dim}")
    space = space or _space(n)
    B = decode_matrix(_field(obj, "basis", list), rows=space.dim)
    if B.shape[1] == 0:
        return Subspace.zero(space, True)
    return Subspace.span(space, B)


def encode_filtration(F: Filtration) -> dict:
    return {
        "h": {str(p): v for p, v in F.h.h.items()},
        "pieces": {str(p): encode_subspace(F[p]) for p in F.indices if p >= 0},
    }


def _int_key(k: str) -> int:
    try:
        return int(k)
    except ValueError as err:
        raise SchemaError(f"bad index {k!r}") from err


def decode_filtration(obj, space: SympSpace | None = None) -> Filtration:
    h_obj = _field(obj, "h", dict)
    try:
        h = HodgeNumbers({_int_key(k): v for k, v in h_obj.items()})
    except (ValueError, TypeError) as err:
        raise SchemaError(f"bad Hodge numbers: {err}") from err
    pieces_obj = _field(obj, "pieces", dict)
    pieces = {_int_key(k): v for k, v in pieces_obj.items()}
    if space is None:
        _require(bool(pieces), "filtration needs at least one piece")
        space = _space(_field(next(iter(pieces.values())), "ambient_n", int))
    _require(h.total == space.dim, "Hodge numbers do not add up to the rank")
    upper = {p: decode_subspace(v, space) for p, v in pieces.items()}
    try:
        return Filtration.complete(space, h, upper)
    except ValueError as err:
        raise SchemaError(str(err)) from err


# --------------------------------------------------------------------------
# orbits

def _family_param(obj):
    fam = _field(obj, "family", str)
    if fam == "I":
        return Type1Param(decode_scalar(_field(obj, "v")), decode_scalar(_field(obj, "w")))
    if fam == "II":
        sign = _field(obj, "sign", str)
        _require(sign in ("+", "-"), "sign must be '+' or '-'")
        w = decode_scalar(_field(obj, "w"))
        return Type2Param(_field(obj, "m", int), sign, complex(w))
    raise SchemaError("family must be 'I' or 'II'")


def decode_orbit(obj) -> tuple[NilDirection, Filtration]:
    """(N, F) from an explicit orbit or a family shortcut."""
    _require(isinstance(obj, dict), "orbit must be an object")
    if "family" in obj:
        p = _family_param(obj)
        if isinstance(p, Type1Param):
            cf = type1_closed_forms(p)
            N = type1_N() if p.exact else to_float(type1_N())
            return NilDirection(SPACE, N), cf.F
        return NilDirection(SPACE, to_float(type2_N(p.m))), type2_closed_forms(p).F
    F = decode_filtration(_field(obj, "F"))
    N = decode_matrix(_field(obj, "N", list), rows=F.ambient.dim, cols=F.ambient.dim)
    return NilDirection(F.ambient, N), F


def decode_nil(obj) -> NilDirection:
    """A NilDirection from {"N": matrix} (an orbit object also works)."""
    _require(isinstance(obj, dict), "expected an object")
    if "F" in obj or "family" in obj:
        return decode_orbit(obj)[0]
    N = decode_matrix(_field(obj, "N", list))
    _require(N.shape[0] == N.shape[1] and N.shape[0] % 2 == 0 and N.shape[0] > 0, "N must be 2n x 2n")
    return NilDirection(_space(N.shape[0] // 2), N)


def encode_orbit(nd: NilDirection, F: Filtration) -> dict:
    return {"N": encode_matrix(nd.N), "F": encode_filtration(F)}


def orbit_to_float(nd: NilDirection, F: Filtration):
    return NilDirection(nd.ambient, to_float(nd.N)), F.to_float()


def orbit_is_exact(nd: NilDirection, F: Filtration) -> bool:
    return nd.exact and F.exact


# --------------------------------------------------------------------------
# derived objects

def encode_weight_filtration(W: WeightFiltration) -> dict:
    return {"W": {str(k): encode_subspace(W[k]) for k in sorted(W.W)}}


def encode_bigrading(big: Bigrading) -> dict:
    return {
        "I": {f"{p},{q}": encode_subspace(s) for (p, q), s in sorted(big.I.items(), reverse=True)},
        "r_split": big.r_split,
    }


def encode_satake(S: SatakePoint) -> dict:
    return {"U": encode_subspace(S.U), "core": encode_subspace(S.core), "conjugated": S.conjugated}


def decode_satake(obj) -> SatakePoint:
    U = decode_subspace(_field(obj, "U"))
    core = decode_subspace(_field(obj, "core"), U.ambient)
    return SatakePoint(U, core, bool(_field(obj, "conjugated", bool)))


def encode_cycle(C: CyclePoint) -> dict:
    return {"V": encode_subspace(C.V), "W": encode_subspace(C.W)}


def decode_cycle(obj) -> CyclePoint:
    V = decode_subspace(_field(obj, "V"))
    W = decode_subspace(_field(obj, "W"), V.ambient)
    try:
        return CyclePoint(V, W)
    except ValueError as err:
        raise SchemaError(str(err)) from err


def encode_siegel_orbit(S: SiegelOrbit) -> dict:
    return {"N": encode_matrix(S.N.N), "F0": encode_subspace(S.F0), "conjugated": S.conjugated}


def decode_siegel_orbit(obj) -> SiegelOrbit:
    F0 = decode_subspace(_field(obj, "F0"))
    N = decode_matrix(_field(obj, "N", list), rows=F0.ambient.dim, cols=F0.ambient.dim)
    try:
        return SiegelOrbit(NilDirection(F0.ambient, N), F0, bool(_field(obj, "conjugated", bool)))
    except ValueError as err:
        raise SchemaError(str(err)) from err


# --------------------------------------------------------------------------
# continuity experiments

def decode_continuity(obj) -> tuple[str, object, Schedule, float]:
    """(family, base parameter, schedule, tolerance) from an experiment config."""
    fam = _field(obj, "family", str)
    _require(fam in ("I", "II"), "family must be 'I' or 'II'")
    if fam == "I":
        v = complex(decode_scalar(_field(obj, "v")))
        w = complex(decode_scalar(_field(obj, "w")))
        base = Type1Param(v, w)
    else:
        base = _family_param(obj)
    ints = {k: obj.get(k, d) for k, d in (("n_exp", 1), ("m_exp", 1), ("steps", 25))}
    for k, v in ints.items():
        _require(isinstance(v, int) and not isinstance(v, bool), f"field {k!r} must be int")
    tol = obj.get("tolerance", 1e-6)
    _require(isinstance(tol, (int, float)) and not isinstance(tol, bool) and tol > 0, "tolerance must be a positive number")
    return fam, base, Schedule(**ints), float(tol)


def encode_continuity_report(rep: ContinuityReport) -> dict:
    return {
        "family": rep.family,
        "deviations": [_number(d) for d in rep.deviations],
        "violations": list(rep.violations),
        "converged": rep.converged,
        "y_star": rep.y_star,
    }


def dumps(obj) -> str:
    """Canonical JSON text (sorted keys, fixed indentation)."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"invalid JSON: {err}") from err

"""Linear algebra over a symplectic lattice.

Matrices are numpy arrays.  Exact matrices have ``dtype=object`` with
:class:`GaussQ` entries; float matrices are ``complex128``.  Any operation
mixing the two runs in float.

Rank decisions in float mode use pivoted elimination with threshold
``eps * max|entry|`` where ``eps`` is the context tolerance (default 1e-9).
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import AmbientMismatch, NotSymplectic
from .gaussq import GaussQ

_EPS = contextvars.ContextVar("hodgeboundary_eps", default=1e-9)


def get_tolerance() -> float:
    return _EPS.get()


def set_tolerance(eps: float) -> None:
    if not eps > 0:
        raise ValueError("tolerance must be positive")
    _EPS.set(float(eps))


@contextlib.contextmanager
def tolerance(eps: float):
    """Temporarily change the float zero-test tolerance."""
    if not eps > 0:
        raise ValueError("tolerance must be positive")
    token = _EPS.set(float(eps))
    try:
        yield
    finally:
        _EPS.reset(token)


# --------------------------------------------------------------------------
# matrices

def is_exact(A) -> bool:
    return isinstance(A, np.ndarray) and A.dtype == object


def _exact_entry(x):
    if isinstance(x, GaussQ):
        return x
    c = GaussQ.coerce(x)
    if c is None:
        raise TypeError(f"cannot make {x!r} exact")
    return c


def to_exact(A) -> np.ndarray:
    A = np.asarray(A, dtype=object)
    out = np.empty(A.shape, dtype=object)
    for idx, x in np.ndenumerate(A):
        out[idx] = _exact_entry(x)
    return out


def to_float(A) -> np.ndarray:
    A = np.asarray(A)
    if A.dtype == object:
        out = np.empty(A.shape, dtype=complex)
        for idx, x in np.ndenumerate(A):
            out[idx] = complex(x)
        return out
    return A.astype(complex)


def _is_exact_scalar(x) -> bool:
    return isinstance(x, GaussQ) or GaussQ.coerce(x) is not None


def matrix(rows) -> np.ndarray:
    """Build a matrix, exact if every entry is exact-representable."""
    A = np.asarray(rows, dtype=object)
    if A.ndim == 1:
        A = A.reshape(-1, 1)
    if all(_is_exact_scalar(x) for x in A.flat):
        return to_exact(A)
    return to_float(A)


def vector(entries) -> np.ndarray:
    """A column vector (shape (k,))."""
    return matrix(list(entries)).reshape(-1)


def unify(*arrays):
    if any(not is_exact(a) for a in arrays):
        return tuple(to_float(a) for a in arrays)
    return arrays


def conj(A) -> np.ndarray:
    if is_exact(A):
        return np.conjugate(A)
    return np.conj(A)


def identity(k: int, exact: bool = True) -> np.ndarray:
    if exact:
        return to_exact(np.eye(k, dtype=int))
    return np.eye(k, dtype=complex)


def zeros(shape, exact: bool = True) -> np.ndarray:
    if exact:
        return to_exact(np.zeros(shape, dtype=int))
    return np.zeros(shape, dtype=complex)


def scalar_like(x, exact: bool):
    if exact:
        return _exact_entry(x)
    return complex(x)


def max_abs(A) -> float:
    if A.size == 0:
        return 0.0
    if is_exact(A):
        return max(float(abs(x.re)) + float(abs(x.im)) for x in A.flat)
    return float(np.max(np.abs(A)))


def is_zero(A, scale: float | None = None) -> bool:
    """Exact zero test, or ``max|A| <= eps*scale`` in float mode."""
    A = np.asarray(A)
    if is_exact(A):
        return not any(A.flat)
    if scale is None:
        scale = 1.0
    return max_abs(A) <= get_tolerance() * scale


def allclose(A, B, scale: float | None = None) -> bool:
    A, B = unify(np.asarray(A), np.asarray(B))
    if is_exact(A):
        return A.shape == B.shape and all(a == b for a, b in zip(A.flat, B.flat))
    if scale is None:
        scale = max(1.0, max_abs(A), max_abs(B))
    return A.shape == B.shape and max_abs(A - B) <= get_tolerance() * scale


def is_real(A) -> bool:
    if is_exact(A):
        return all(x.im == 0 for x in A.flat)
    return is_zero(A.imag, max(1.0, max_abs(A)))


def expm_nilpotent(N, z=1) -> np.ndarray:
    """exp(z N) for nilpotent N as a finite sum."""
    exact = is_exact(N) and _is_exact_scalar(z)
    if exact:
        z = _exact_entry(z)
    else:
        N = to_float(N)
        z = complex(z)
    k = N.shape[0]
    out = identity(k, exact)
    term = identity(k, exact)
    for j in range(1, k + 1):
        term = (term @ N) * (z / j if not exact else z / GaussQ(j))
        if is_zero(term, max(1.0, max_abs(out))):
            break
        out = out + term
    return out


def rref_rows(A, exact: bool | None = None, ncols: int | None = None):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns).

    Exact mode takes the first nonzero entry of each column in turn.  Float
    mode uses complete pivoting (largest remaining entry) restricted to the
    first ``ncols`` columns; rows are returned sorted by pivot column.
    """
    A = np.array(A, copy=True)
    if exact is None:
        exact = is_exact(A)
    m, k = A.shape
    kp = k if ncols is None else ncols
    pivots: list[int] = []
    if m == 0 or k == 0:
        return A[:0], pivots
    if exact:
        r = 0
        for c in range(kp):
            if r == m:
                break
            i = next((i for i in range(r, m) if A[i, c]), None)
            if i is None:
                continue
            if i != r:
                A[[r, i]] = A[[i, r]]
            A[r] = A[r] / A[r, c]
            for i2 in range(m):
                if i2 != r:
                    f = A[i2, c]
                    if f:
                        A[i2] = A[i2] - f * A[r]
            pivots.append(c)
            r += 1
        return A[:r], pivots
    A = A.astype(complex)
    scale = max_abs(A[:, :kp]) if kp else 0.0
    if scale == 0.0:
        return A[:0], pivots
    thresh = get_tolerance() * scale
    free_cols = list(range(kp))
    r = 0
    while r < m and free_cols:
        sub = np.abs(A[r:, free_cols])
        flat = int(np.argmax(sub))
        i, jj = divmod(flat, len(free_cols))
        if sub[i, jj] <= thresh:
            break
        c = free_cols.pop(jj)
        i += r
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] / A[r, c]
        for i2 in range(m):
            if i2 != r and A[i2, c] != 0:
                A[i2] = A[i2] - A[i2, c] * A[r]
                A[i2, c] = 0
        pivots.append(c)
        r += 1
    order = sorted(range(r), key=lambda j: pivots[j])
    return A[order], [pivots[j] for j in order]


def rank(A) -> int:
    return len(rref_rows(A)[1])


def nullspace(A) -> np.ndarray:
    """Columns spanning {x : A x = 0}."""
    exact = is_exact(A)
    m, k = A.shape
    R, piv = rref_rows(A, exact)
    free = [c for c in range(k) if c not in piv]
    out = zeros((k, len(free)), exact)
    one = scalar_like(1, exact)
    for j, f in enumerate(free):
        out[f, j] = one
        for r, p in enumerate(piv):
            out[p, j] = -R[r, f]
    return out


def solve(A, B) -> np.ndarray:
    """One solution X of A X = B; raises ValueError when inconsistent."""
    A, B = unify(A, B)
    exact = is_exact(A)
    if B.ndim == 1:
        return solve(A, B.reshape(-1, 1)).reshape(-1)
    m, k = A.shape
    if not exact and m == k:
        try:
            X = np.linalg.solve(A, B)
            if allclose(A @ X, B, max(1.0, max_abs(A) * max_abs(X), max_abs(B))):
                return X
        except np.linalg.LinAlgError:
            pass
    aug = np.hstack([A, B])
    R, piv = rref_rows(aug, exact, None if exact else k)
    if any(p >= k for p in piv):
        raise ValueError("inconsistent linear system")
    X = zeros((k, B.shape[1]), exact)
    for r, p in enumerate(piv):
        X[p] = R[r, k:]
    if not exact and not allclose(A @ X, B, max(1.0, max_abs(A) * max_abs(X), max_abs(B))):
        raise ValueError("inconsistent linear system")
    return X


def inverse(A) -> np.ndarray:
    exact = is_exact(A)
    if not exact:
        return np.linalg.inv(A)
    k = A.shape[0]
    R, piv = rref_rows(np.hstack([A, identity(k)]), True)
    if piv != list(range(k)):
        raise ValueError("singular matrix")
    return R[:k, k:]


# --------------------------------------------------------------------------
# symplectic space

def standard_form(n: int) -> np.ndarray:
    """Gram matrix ((0, -I), (I, 0)) of size 2n."""
    Q = np.zeros((2 * n, 2 * n), dtype=int)
    Q[:n, n:] = -np.eye(n, dtype=int)
    Q[n:, :n] = np.eye(n, dtype=int)
    return Q


@dataclass(frozen=True, eq=False)
class SympSpace:
    """A rank-2n lattice with an integral unimodular alternating form Q."""

    n: int
    Q: np.ndarray

    def __post_init__(self):
        Q = np.asarray(self.Q, dtype=int)
        if Q.shape != (2 * self.n, 2 * self.n):
            raise ValueError("Q must be 2n x 2n")
        if not np.array_equal(Q, -Q.T):
            raise ValueError("Q must be antisymmetric")
        det = round(np.linalg.det(Q))
        if abs(det) != 1:
            raise ValueError("Q must be unimodular")
        object.__setattr__(self, "Q", Q)

    @classmethod
    def standard(cls, n: int = 2) -> "SympSpace":
        return cls(n, standard_form(n))

    @property
    def dim(self) -> int:
        return 2 * self.n

    def Qm(self, exact: bool = True) -> np.ndarray:
        return to_exact(self.Q) if exact else self.Q.astype(complex)

    def e(self, j: int) -> np.ndarray:
        """Standard basis vector e_j, 1-based as in the literature."""
        v = zeros(self.dim)
        v[j - 1] = GaussQ(1)
        return v

    def __eq__(self, other):
        return isinstance(other, SympSpace) and self.n == other.n and np.array_equal(self.Q, other.Q)

    def __hash__(self):
        return hash((self.n, self.Q.tobytes()))

    def __repr__(self):
        return f"SympSpace(n={self.n})"


def form(space: SympSpace, x, y):
    """<x, y> = x^T Q y."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != (space.dim,) or y.shape != (space.dim,):
        raise AmbientMismatch("vector length does not match the ambient lattice")
    x, y = unify(x, y)
    return x @ (space.Qm(is_exact(x)) @ y)


def is_infinitesimally_symplectic(space: SympSpace, M) -> bool:
    """<Mx, y> + <x, My> = 0, i.e. M^T Q + Q M = 0."""
    Q = space.Qm(is_exact(M))
    return is_zero(M.T @ Q + Q @ M, max(1.0, max_abs(M)))


def is_symplectic(space: SympSpace, g) -> bool:
    Q = space.Qm(is_exact(g))
    return allclose(g.T @ Q @ g, Q)


def symplectic_inverse(space: SympSpace, g) -> np.ndarray:
    """g^{-1} = Q^{-1} g^T Q for g preserving Q."""
    exact = is_exact(g)
    Q = space.Qm(exact)
    Qinv = to_exact(-space.Q) if exact else -space.Q.astype(complex)
    # Q^{-1} = -Q holds for the standard form; fall back otherwise
    if not allclose(Qinv @ Q, identity(space.dim, exact)):
        Qinv = inverse(Q)
    return Qinv @ g.T @ Q


def random_integral_symplectic(n: int, rng: np.random.Generator, steps: int = 4, bound: int = 1) -> np.ndarray:
    """A random element of Sp(2n, Z) for the standard form, as an int array.

    Built as a product of unipotent block generators and GL(n, Z)
    elementary blocks.
    """
    g = np.eye(2 * n, dtype=np.int64)
    for _ in range(steps):
        kind = rng.integers(0, 3)
        h = np.eye(2 * n, dtype=np.int64)
        if kind < 2:
            S = rng.integers(-bound, bound + 1, size=(n, n))
            S = np.triu(S) + np.triu(S, 1).T
            if kind == 0:
                h[:n, n:] = S
            else:
                h[n:, :n] = S
        else:
            A = np.eye(n, dtype=np.int64)
            if n > 1:
                i, j = rng.choice(n, size=2, replace=False)
                A[i, j] = rng.choice([-1, 1])
            else:
                A[0, 0] = rng.choice([-1, 1])
            Ainv_T = np.round(np.linalg.inv(A)).astype(np.int64).T
            h[:n, :n] = A
            h[n:, n:] = Ainv_T
        g = g @ h
    Q = standard_form(n)
    if not np.array_equal(g.T @ Q @ g, Q):
        raise NotSymplectic("generator product left Sp(2n, Z)")
    return g


# --------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True, eq=False)
class Subspace:
    """A complex subspace of H_C, stored by a reduced column-echelon basis."""

    ambient: SympSpace
    basis: np.ndarray

    @classmethod
    def span(cls, ambient: SympSpace, vectors) -> "Subspace":
        """Span of the columns of ``vectors`` (a matrix or a list of vectors)."""
        if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
            B = vectors
        else:
            vecs = [np.asarray(v).reshape(-1) for v in vectors]
            if not vecs:
                return cls.zero(ambient)
            vecs = unify(*vecs)
            B = np.stack(vecs, axis=1)
        if B.shape[0] != ambient.dim:
            raise AmbientMismatch("basis vectors have the wrong length")
        if B.dtype != object:
            B = B.astype(complex)
        elif not all(type(x) is GaussQ for x in B.flat):
            B = matrix(B)
        exact = is_exact(B)
        R, _ = rref_rows(B.T, exact)
        return cls(ambient, R.T.copy() if R.shape[0] else zeros((ambient.dim, 0), exact))

    @classmethod
    def zero(cls, ambient: SympSpace, exact: bool = True) -> "Subspace":
        return cls(ambient, zeros((ambient.dim, 0), exact))

    @classmethod
    def full(cls, ambient: SympSpace, exact: bool = True) -> "Subspace":
        return cls(ambient, identity(ambient.dim, exact))

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def exact(self) -> bool:
        return is_exact(self.basis)

    def to_float(self) -> "Subspace":
        if not self.exact:
            return self
        return Subspace(self.ambient, to_float(self.basis))

    def vectors(self):
        return [self.basis[:, j] for j in range(self.dim)]

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise AmbientMismatch("subspaces live in different lattices")

    def _kind_of(self, other: "Subspace", result: "Subspace") -> "Subspace":
        """``result`` in float form unless both operands are exact."""
        if result.exact and not (self.exact and other.exact):
            return result.to_float()
        return result

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        full = self.ambient.dim
        if other.dim == 0 or self.dim == full:
            return self._kind_of(other, self)
        if self.dim == 0 or other.dim == full:
            return self._kind_of(other, other)
        A, B = unify(self.basis, other.basis)
        return Subspace.span(self.ambient, np.hstack([A, B]))

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient, self.exact and other.exact)
        if self.dim == self.ambient.dim:
            return self._kind_of(other, other)
        if other.dim == other.ambient.dim:
            return self._kind_of(other, self)
        A, B = unify(self.basis, other.basis)
        K = nullspace(np.hstack([A, -B]))
        return Subspace.span(self.ambient, A @ K[: A.shape[1]])

    def perp(self) -> "Subspace":
        """{x : <a, x> = 0 for all a in self}."""
        exact = self.exact
        if self.dim == 0:
            return Subspace.full(self.ambient, exact)
        return Subspace.span(self.ambient, nullspace(self.basis.T @ self.ambient.Qm(exact)))

    def conjugate(self) -> "Subspace":
        return Subspace.span(self.ambient, conj(self.basis))

    def image(self, M) -> "Subspace":
        M = np.asarray(M)
        if M.shape != (self.ambient.dim, self.ambient.dim):
            raise AmbientMismatch("matrix size does not match the ambient lattice")
        M, B = unify(M, self.basis)
        return Subspace.span(self.ambient, M @ B)

    def contains(self, other) -> bool:
        """Containment of a Subspace or a single vector."""
        if isinstance(other, Subspace):
            self._check(other)
            if other.dim == 0:
                return True
            B = other.basis
        else:
            B = np.asarray(other).reshape(-1, 1)
        A, B = unify(self.basis, B)
        return rank(np.hstack([A, B]).T) == self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient != other.ambient or self.dim != other.dim:
            return False
        if self.exact and other.exact:
            return all(a == b for a, b in zip(self.basis.flat, other.basis.flat))
        return self.contains(other)

    def __hash__(self):
        return hash((self.ambient, self.dim))

    def is_real(self) -> bool:
        return self.conjugate() == self

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.ambient.n}, exact={self.exact})"


def kernel(space: SympSpace, M) -> Subspace:
    return Subspace.span(space, nullspace(np.asarray(M)))


def column_space(space: SympSpace, M) -> Subspace:
    return Subspace.span(space, np.asarray(M))


def direct_sum(space: SympSpace, parts) -> tuple[Subspace, bool]:
    """Sum of the parts and whether the sum is direct."""
    parts = [p for p in parts if p.dim]
    total = Subspace.zero(space)
    for p in parts:
        total = total + p
    return total, total.dim == sum(p.dim for p in parts)


def subspace_algebra(A: Subspace, B: Subspace | None, op: str, M=None) -> Subspace:
    """Dispatch form of the subspace operations: sum, intersect, perp_of_A,
    conjugate_of_A, image_under."""
    if B is not None and A.ambient != B.ambient:
        raise AmbientMismatch("subspaces live in different lattices")
    if op == "sum":
        return A + B
    if op == "intersect":
        return A.intersect(B)
    if op == "perp_of_A":
        return A.perp()
    if op == "conjugate_of_A":
        return A.conjugate()
    if op == "image_under":
        return A.image(M)
    raise ValueError(f"unknown op {op!r}")


# --------------------------------------------------------------------------
# Hermitian forms

class Signature(NamedTuple):
    pos: int
    neg: int
    zero: int


def _orthonormal(B):
    if B.shape[1] == 0:
        return B
    q, _ = np.linalg.qr(B)
    return q


def hermitian_gram(V: Subspace, factor=None, M=None):
    """Gram matrix of (x, y) -> factor * <x, M conj(y)> on V.

    Returns (G, scale): ``scale`` is the magnitude against which float zero
    tests are made (the form is evaluated on an orthonormal basis).
    """
    exact = V.exact and (M is None or is_exact(np.asarray(M))) and (factor is None or _is_exact_scalar(factor))
    B = V.basis if exact else _orthonormal(to_float(V.basis))
    Q = V.ambient.Qm(exact)
    if M is not None:
        M = to_exact(M) if exact else to_float(M)
        Q = Q @ M
    G = B.T @ Q @ conj(B)
    if factor is not None:
        G = G * (_exact_entry(factor) if exact else complex(factor))
    scale = max(1.0, max_abs(Q))
    return G, scale


def inertia(G, scale: float = 1.0) -> Signature:
    """Inertia of a Hermitian matrix (exact congruence or float eigenvalues)."""
    k = G.shape[0]
    if k == 0:
        return Signature(0, 0, 0)
    if not is_exact(G):
        Gh = (G + G.conj().T) / 2
        ev = np.linalg.eigvalsh(Gh)
        thr = get_tolerance() * scale
        return Signature(int(np.sum(ev > thr)), int(np.sum(ev < -thr)), int(np.sum(np.abs(ev) <= thr)))
    G = np.array(G, copy=True)
    pos = neg = 0
    idx = list(range(k))
    while idx:
        piv = next((i for i in idx if G[i, i]), None)
        if piv is None:
            pair = next(((i, j) for i in idx for j in idx if i != j and G[i, j]), None)
            if pair is None:
                break
            j, kk = pair
            c = G[j, kk].conjugate()
            G[:, j] = G[:, j] + c * G[:, kk]
            G[j, :] = G[j, :] + c.conjugate() * G[kk, :]
            piv = j
        d = G[piv, piv]
        if d.re > 0:
            pos += 1
        else:
            neg += 1
        rest = [i for i in idx if i != piv]
        for i in rest:
            if G[i, piv]:
                f = G[i, piv] / d
                for j in rest:
                    G[i, j] = G[i, j] - f * G[piv, j]
        idx = rest
    return Signature(pos, neg, k - pos - neg)


def hermitian_signature(V: Subspace, factor=None, M=None) -> Signature:
    G, scale = hermitian_gram(V, factor, M)
    return inertia(G, scale)


class IsotropyReport(NamedTuple):
    isotropic: bool
    signature: Signature


def is_isotropic(V: Subspace) -> bool:
    if V.dim == 0:
        return True
    exact = V.exact
    B = V.basis if exact else _orthonormal(to_float(V.basis))
    return is_zero(B.T @ V.ambient.Qm(exact) @ B, max(1.0, max_abs(V.ambient.Q)))


def isotropy_and_sign(V: Subspace) -> IsotropyReport:
    """Isotropy and the signature of -i<v, conj(w)> on V."""
    return IsotropyReport(is_isotropic(V), hermitian_signature(V, GaussQ(0, -1)))

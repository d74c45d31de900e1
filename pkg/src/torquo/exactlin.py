"""Exact integer and rational linear algebra.

Vectors are tuples of Python ints (or :class:`fractions.Fraction`), matrices
are tuples of row tuples.  Everything is arbitrary precision; there is no
floating point anywhere in this package.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple

IntVector = Tuple[int, ...]
IntMatrix = Tuple[IntVector, ...]
RatVector = Tuple[Fraction, ...]


class DimensionError(ValueError):
    """Raised when vector or matrix shapes do not fit together."""


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> IntMatrix:
    return tuple((0,) * n for _ in range(m))


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionError(f"length mismatch {len(u)} != {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(dot(row, v) for row in A)


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]],
           inner: Optional[int] = None) -> IntMatrix:
    """Product ``A @ B``; ``inner`` disambiguates shapes when ``B`` has no rows."""
    k = len(B) if inner is None else inner
    if any(len(r) != k for r in A):
        raise DimensionError("inner dimensions do not match")
    if len(B) != k:
        raise DimensionError("inner dimensions do not match")
    if not B:
        return tuple((0,) * 0 for _ in A)
    cols = list(zip(*B))
    return tuple(tuple(dot(r, c) for c in cols) for r in A)


def transpose(A: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    if not A:
        return tuple(() for _ in range(ncols))
    return tuple(zip(*A))


def primitive(v: Sequence[int]) -> IntVector:
    """Divide out the gcd of the entries; the zero vector is returned as is."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g in (0, 1):
        return tuple(v)
    return tuple(x // g for x in v)


def clear_denominators(v: Sequence[Fraction]) -> IntVector:
    """Smallest positive multiple of a rational vector that is integral and primitive."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive(tuple(int(Fraction(x) * den) for x in v))


# --------------------------------------------------------------------------
# Smith normal form


def smith_decompose(A: Sequence[Sequence[int]], ncols: Optional[int] = None
                    ) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(S, U, V)`` with ``A == U @ S @ V``.

    ``S`` is diagonal with nonnegative entries ``d1 | d2 | ...`` and ``U``,
    ``V`` are unimodular.  ``ncols`` is only needed for matrices with no rows.
    """
    S, _, U, _, V = _smith(A, ncols)
    return S, U, V


def _smith(A, ncols=None):
    # Returns S, P, U, Q, V with S = P A Q, U = P^-1, V = Q^-1.
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    if any(len(r) != n for r in A):
        raise DimensionError("ragged matrix")
    M = [list(map(int, r)) for r in A]
    P = [list(r) for r in identity(m)]
    U = [list(r) for r in identity(m)]
    Q = [list(r) for r in identity(n)]
    V = [list(r) for r in identity(n)]

    def row_add(i, j, c):  # row_i += c * row_j
        if c == 0:
            return
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
        for r in U:
            r[j] -= c * r[i]

    def row_swap(i, j):
        if i == j:
            return
        M[i], M[j] = M[j], M[i]
        P[i], P[j] = P[j], P[i]
        for r in U:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        M[i] = [-a for a in M[i]]
        P[i] = [-a for a in P[i]]
        for r in U:
            r[i] = -r[i]

    def col_add(i, j, c):  # col_i += c * col_j
        if c == 0:
            return
        for r in M:
            r[i] += c * r[j]
        for r in Q:
            r[i] += c * r[j]
        V[j] = [a - c * b for a, b in zip(V[j], V[i])]

    def col_swap(i, j):
        if i == j:
            return
        for r in M:
            r[i], r[j] = r[j], r[i]
        for r in Q:
            r[i], r[j] = r[j], r[i]
        V[i], V[j] = V[j], V[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            row_swap(t, best[0])
            col_swap(t, best[1])
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = M[i][t] // p
                row_add(i, t, -q)
                dirty |= M[i][t] != 0
            for j in range(t + 1, n):
                q = M[t][j] // p
                col_add(j, t, -q)
                dirty |= M[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if M[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if M[t][t] < 0:
            row_neg(t)
    return as_matrix(M), as_matrix(P), as_matrix(U), as_matrix(Q), as_matrix(V)


def invariant_factors(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntVector:
    """Nonzero diagonal entries of the Smith form."""
    S = smith_decompose(A, ncols)[0]
    return tuple(S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i])


def rank(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> int:
    return len(rref(A, ncols)[1])


def is_lattice_surjective(A: Sequence[Sequence[int]], ncols: int) -> bool:
    """True iff ``A: Z^ncols -> Z^rows`` is onto."""
    d = invariant_factors(A, ncols)
    return len(d) == len(A) and all(x == 1 for x in d)


# --------------------------------------------------------------------------
# Hermite form and sublattices


def hermite_rows(rows: Iterable[Sequence[int]], ncols: int) -> IntMatrix:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped, pivots are positive and strictly increase to the
    right, entries above a pivot lie in ``[0, pivot)``.
    """
    M = [list(map(int, r)) for r in rows]
    if any(len(r) != ncols for r in M):
        raise DimensionError("row length does not match ambient rank")
    out = []
    col = 0
    while M and col < ncols:
        nz = [r for r in M if r[col]]
        if not nz:
            col += 1
            continue
        # Euclid on the column until a single row is left with a nonzero entry.
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for k in range(col, ncols):
                    r[k] -= q * piv[k]
            nz = [r for r in nz if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        M = [r for r in M if r is not piv and any(r)]
        out.append(piv)
        col += 1
    for i, r in enumerate(out):
        c = next(k for k, x in enumerate(r) if x)
        for prev in out[:i]:
            q = prev[c] // r[c]
            if q:
                for k in range(ncols):
                    prev[k] -= q * r[k]
    return as_matrix(out)


@dataclass(frozen=True)
class SublatticeBasis:
    """A sublattice of ``Z^ambient_rank`` stored by its row Hermite basis."""

    ambient_rank: int
    basis: IntMatrix = ()

    def __post_init__(self):
        object.__setattr__(self, "basis", hermite_rows(self.basis, self.ambient_rank))
        if len(self.basis) > self.ambient_rank:
            raise DimensionError("basis has more vectors than the ambient rank")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_saturated(self) -> bool:
        return all(d == 1 for d in invariant_factors(self.basis, self.ambient_rank))

    def contains(self, v: Sequence[int]) -> bool:
        """Lattice membership (not just rational span)."""
        return hermite_rows(list(self.basis) + [v], self.ambient_rank) == self.basis

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def kernel_saturated(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SublatticeBasis:
    """Basis of ``{x in Z^n : A x = 0}`` (automatically saturated)."""
    n = len(A[0]) if A else ncols
    if n is None:
        raise DimensionError("ncols required for a matrix without rows")
    S, _, _, Q, _ = _smith(A, n)
    r = sum(1 for i in range(min(len(S), n)) if S[i][i])
    return SublatticeBasis(n, tuple(tuple(Q[i][j] for i in range(n)) for j in range(r, n)))


def saturate(B: SublatticeBasis) -> SublatticeBasis:
    """Saturation: rational span intersected with the ambient lattice."""
    n = B.ambient_rank
    perp = kernel_saturated(B.basis, n)
    return kernel_saturated(perp.basis, n)


def complement_projection(L: SublatticeBasis) -> IntMatrix:
    """A surjective integer matrix ``Z^n -> Z^(n - rank L)`` whose kernel is ``L``.

    ``L`` must be saturated.  Rows are the Hermite basis of the annihilator.
    """
    return kernel_saturated(L.basis, L.ambient_rank).basis


# --------------------------------------------------------------------------
# rational elimination


def rref(A: Sequence[Sequence], ncols: Optional[int] = None):
    """Reduced row echelon form over Q; returns ``(rows, pivot_columns)``."""
    n = len(A[0]) if A else (ncols or 0)
    M = [[Fraction(x) for x in r] for r in A]
    pivots = []
    row = 0
    for col in range(n):
        p = next((i for i in range(row, len(M)) if M[i][col] != 0), None)
        if p is None:
            continue
        M[row], M[p] = M[p], M[row]
        inv = 1 / M[row][col]
        M[row] = [x * inv for x in M[row]]
        for i in range(len(M)):
            if i != row and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[row])]
        pivots.append(col)
        row += 1
        if row == len(M):
            break
    return [tuple(r) for r in M[:row]], pivots


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[RatVector]:
    """One solution of ``A x = b``, free variables set to zero; ``None`` if inconsistent."""
    if len(A) != len(b):
        raise DimensionError("right-hand side length does not match row count")
    n = len(A[0]) if A else 0
    if any(len(r) != n for r in A):
        raise DimensionError("ragged matrix")
    aug = [list(r) + [y] for r, y in zip(A, b)]
    rows, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for r, c in zip(rows, piv):
        x[c] = r[n]
    return tuple(x)


def reduce_modulo(v: Sequence[int], echelon: Sequence[Sequence[Fraction]],
                  pivots: Sequence[int]) -> IntVector:
    """Canonical primitive representative of ``v`` modulo the span of an rref basis.

    The representative vanishes on the pivot columns; it is then scaled by a
    positive factor to a primitive integer vector.
    """
    w = [Fraction(x) for x in v]
    for r, c in zip(echelon, pivots):
        if w[c]:
            f = w[c]
            w = [a - f * b for a, b in zip(w, r)]
    return clear_denominators(w)

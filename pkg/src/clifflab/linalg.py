"""Exact linear algebra over the rationals.

Dense integer matrices are handled as numpy int64 arrays (safe here: every
matrix in this package has entries bounded by a few hundred, far below the
int64 overflow threshold even after products).  Anything that needs division
goes through Fraction-based Gaussian elimination in plain Python lists.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def intmat(rows) -> np.ndarray:
    return np.array(rows, dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(n: int, m: int | None = None) -> np.ndarray:
    return np.zeros((n, m if m is not None else n), dtype=np.int64)


def is_skew(a: np.ndarray) -> bool:
    return np.array_equal(a.T, -a)


def is_orthogonal(a: np.ndarray) -> bool:
    return np.array_equal(a.T @ a, eye(a.shape[0]))


def is_signed_permutation(a: np.ndarray) -> bool:
    """Exactly one entry of modulus 1 per row and per column, rest zero."""
    absa = np.abs(a)
    if not set(np.unique(absa)) <= {0, 1}:
        return False
    return bool((absa.sum(axis=0) == 1).all() and (absa.sum(axis=1) == 1).all())


_FLOAT_EXACT_BOUND = 2**53


def imatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer matrix product.

    Uses float64 BLAS when every intermediate value provably stays below
    2^53 (float64 arithmetic on such integers is exact), falling back to the
    slower native integer loop otherwise.
    """
    k = a.shape[-1]
    ma = int(np.abs(a).max(initial=0))
    mb = int(np.abs(b).max(initial=0))
    if ma * mb * k < _FLOAT_EXACT_BOUND:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    return a @ b


def mm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product for int64 or Fraction-valued (object) arrays."""
    if a.dtype == np.int64 and b.dtype == np.int64:
        return imatmul(a, b)
    return a @ b


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return mm(a, b) - mm(b, a)


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return mm(a, b) + mm(b, a)


def trace_product(a: np.ndarray, b: np.ndarray) -> int:
    """trace(a @ b) without forming the product."""
    return int(np.einsum("ij,ji->", a, b))


# ---------------------------------------------------------------------------
# Fraction matrices: plain lists of lists, row major.
# ---------------------------------------------------------------------------

FracMatrix = list[list[Fraction]]


def to_fractions(a) -> FracMatrix:
    if isinstance(a, np.ndarray):
        return [[Fraction(int(x)) for x in row] for row in a]
    return [[Fraction(x) for x in row] for row in a]


def frac_matmul(a: FracMatrix, b: FracMatrix) -> FracMatrix:
    n, k, m = len(a), len(b), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for j in range(k):
            x = ai[j]
            if x:
                bj = b[j]
                for c in range(m):
                    if bj[c]:
                        oi[c] += x * bj[c]
    return out


def rref(a: FracMatrix) -> tuple[FracMatrix, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [row[:] for row in a]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, n_rows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(a: FracMatrix | np.ndarray) -> int:
    if isinstance(a, np.ndarray):
        a = to_fractions(a)
    if not a:
        return 0
    return len(rref(a)[1])


def nullspace(a: FracMatrix | np.ndarray) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    if isinstance(a, np.ndarray):
        a = to_fractions(a)
    if not a:
        return []
    red, pivots = rref(a)
    n_cols = len(a[0])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for r_i, pc in enumerate(pivots):
            v[pc] = -red[r_i][fc]
        basis.append(v)
    return basis


def in_row_span(reduced: FracMatrix, pivots: list[int], v: Sequence[Fraction]) -> bool:
    """Membership test against a row space given in reduced echelon form."""
    w = [Fraction(x) for x in v]
    for row, pc in zip(reduced, pivots):
        if w[pc]:
            f = w[pc]
            w = [x - f * y for x, y in zip(w, row)]
    return not any(w)


def solve(a: FracMatrix, b: Sequence[Fraction]) -> list[Fraction] | None:
    """One solution of a x = b, or None if inconsistent."""
    aug = [row[:] + [Fraction(b[i])] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    n_cols = len(a[0])
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for r_i, pc in enumerate(pivots):
        x[pc] = red[r_i][n_cols]
    return x


def inverse(a: FracMatrix | np.ndarray) -> FracMatrix:
    if isinstance(a, np.ndarray):
        a = to_fractions(a)
    n = len(a)
    aug = [row[:] + [Fraction(1 if i == j else 0) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


# ---------------------------------------------------------------------------
# Coordinates on the space of skew matrices.
#
# A skew n x n matrix S decomposes over the basis {X_a ^ X_b}_{a<b}, where
# X_a ^ X_b acts as Z -> <X_a, Z> X_b - <X_b, Z> X_a.  The coordinate of S at
# the (a, b) slot is the entry S[b][a] (row b, column a), both zero based.
# ---------------------------------------------------------------------------


def pair_basis(n: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(n) for b in range(a + 1, n)]


def skew_to_coords(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    return np.array([m[b, a] for a, b in pair_basis(n)])


def coords_to_skew(v, n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=np.asarray(v).dtype)
    for (a, b), x in zip(pair_basis(n), v):
        out[b, a] = x
        out[a, b] = -x
    return out


def elementary_rotation(a: int, b: int, n: int) -> np.ndarray:
    """The generator X_a ^ X_b of so(n): sends X_a to X_b, X_b to -X_a."""
    m = zeros(n)
    m[b, a] = 1
    m[a, b] = -1
    return m


def rank_mod_p(a: np.ndarray, p: int = 2_147_483_647) -> int:
    """Rank over GF(p); a lower bound for the rational rank.

    Used only to certify upper bounds on kernel dimensions for large integer
    systems where Fraction elimination would be slow.
    """
    m = np.mod(a.astype(object), p).astype(np.int64) % p
    n_rows, n_cols = m.shape
    r = 0
    for c in range(n_cols):
        rows = np.nonzero(m[r:, c])[0]
        if rows.size == 0:
            continue
        i = r + int(rows[0])
        m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        below = m[r + 1 :, c]
        nz = np.nonzero(below)[0]
        if nz.size:
            # entries stay below p < 2^31, so the products fit in int64
            m[r + 1 + nz] = (m[r + 1 + nz] - np.outer(below[nz], m[r])) % p
        r += 1
        if r == n_rows:
            break
    return r

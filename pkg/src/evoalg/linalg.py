"""Exact dense linear algebra over the rationals.

Matrices are sequences of rows, vectors are sequences of entries; every
entry is a :class:`fractions.Fraction` (ints are accepted on input).
Results are returned as tuples so they can be shared freely.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class ShapeError(ValueError):
    """Operands have incompatible shapes."""


def to_vector(v: Sequence) -> Vector:
    return tuple(Fraction(x) for x in v)


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    m = tuple(to_vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ShapeError("ragged matrix")
    return m


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((ZERO,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> Matrix:
    if not m:
        return ()
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if shape(a)[1] != len(b):
        raise ShapeError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt)
        for row in a
    )


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    if shape(a)[1] != len(v):
        raise ShapeError(f"cannot apply {shape(a)} matrix to length-{len(v)} vector")
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a)


def hadamard(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if shape(a) != shape(b):
        raise ShapeError(f"hadamard product of {shape(a)} and {shape(b)}")
    return tuple(tuple(x * y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns.

    Columns are scanned left to right; the pivot is the first row (from the
    current position down) with a nonzero entry in that column.
    """
    rows = [list(map(Fraction, r)) for r in m]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        nz = [j for j in range(c, ncols) if prow[j] != 0]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    ri = rows[i]
                    for j in nz:
                        ri[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1]) if m else 0


def null_space(m: Sequence[Sequence], ncols: Optional[int] = None) -> list[Vector]:
    """Basis of ``{x : m x = 0}``, one vector per free column.

    ``ncols`` is needed only when ``m`` has no rows.
    """
    if not m:
        if ncols is None:
            raise ShapeError("null_space of an empty matrix needs ncols")
        return [tuple(ONE if i == j else ZERO for i in range(ncols)) for j in range(ncols)]
    n = len(m[0])
    if ncols is not None and ncols != n:
        raise ShapeError(f"expected {ncols} columns, got {n}")
    red, pivots = rref(m)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for row_idx, pc in enumerate(pivots):
            x[pc] = -red[row_idx][f]
        basis.append(tuple(x))
    return basis


def solve(m: Sequence[Sequence], b: Sequence) -> Optional[Vector]:
    """One solution of ``m x = b``, or None when the system is inconsistent."""
    if len(m) != len(b):
        raise ShapeError(f"{len(m)} equations but right-hand side of length {len(b)}")
    if not m:
        return ()
    n = len(m[0])
    aug = [list(r) + [Fraction(bi)] for r, bi in zip(m, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for row_idx, pc in enumerate(pivots):
        x[pc] = red[row_idx][n]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> Matrix:
    n, c = shape(m)
    if n != c:
        raise ShapeError(f"inverse of non-square {n}x{c} matrix")
    aug = [list(r) + list(e) for r, e in zip(m, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(r[n:]) for r in red)


def is_invertible(m: Sequence[Sequence]) -> bool:
    n, c = shape(m)
    return n == c and rank(m) == n


def span_equal(s1: Sequence[Sequence], s2: Sequence[Sequence]) -> bool:
    """True iff the two lists of vectors span the same subspace."""
    lens = {len(v) for v in list(s1) + list(s2)}
    if len(lens) > 1:
        raise ShapeError("vectors of different lengths")
    r1, r2 = rank(s1), rank(s2)
    return r1 == r2 == rank(list(s1) + list(s2))


def in_span(v: Sequence, vectors: Sequence[Sequence]) -> bool:
    if is_zero_vector(v):
        return True
    return rank(list(vectors) + [v]) == rank(vectors)

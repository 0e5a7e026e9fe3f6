"""Evolution algebras given by a structure matrix relative to a natural basis.

Row ``i`` of the structure matrix holds the coordinates of ``e_i^2``; the
basis is natural by construction, so ``e_i e_j = 0`` whenever ``i != j``.
Indices are 0-based throughout the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .linalg import Matrix, Vector, ZERO


class EvoAlgError(Exception):
    """Base class for domain errors raised by this package."""


class HypothesisError(EvoAlgError, ValueError):
    """An operation was called on an algebra that violates its preconditions."""


@dataclass(frozen=True)
class EvolutionAlgebra:
    matrix: Matrix

    def __post_init__(self):
        m = linalg.to_matrix(self.matrix)
        if not m:
            raise ValueError("an evolution algebra needs dimension >= 1")
        if any(len(r) != len(m) for r in m):
            raise linalg.ShapeError(f"structure matrix must be square, got {linalg.shape(m)}")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "EvolutionAlgebra":
        return cls(linalg.to_matrix(rows))

    @classmethod
    def zero(cls, n: int) -> "EvolutionAlgebra":
        return cls(linalg.zeros(n, n))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.matrix[i][j]

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.matrix)
        return f"EvolutionAlgebra([{rows}])"


def _check_index(a: EvolutionAlgebra, i: int) -> None:
    if not 0 <= i < a.dim:
        raise IndexError(f"basis index {i} out of range for dimension {a.dim}")


def basis_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))


def product(a: EvolutionAlgebra, u: Sequence, v: Sequence) -> Vector:
    """``u v = sum_i u_i v_i e_i^2``."""
    if len(u) != a.dim or len(v) != a.dim:
        raise linalg.ShapeError(f"vectors of length {len(u)}, {len(v)} in a {a.dim}-dim algebra")
    out = [ZERO] * a.dim
    for i, (x, y) in enumerate(zip(u, v)):
        c = Fraction(x) * Fraction(y)
        if c:
            for k, w in enumerate(a.matrix[i]):
                if w:
                    out[k] += c * w
    return tuple(out)


def square(a: EvolutionAlgebra, i: int) -> Vector:
    _check_index(a, i)
    return a.matrix[i]


def support(u: Sequence) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(u) if x != 0)


def annihilator_indices(a: EvolutionAlgebra) -> frozenset[int]:
    return frozenset(i for i, row in enumerate(a.matrix) if linalg.is_zero_vector(row))


def is_non_degenerate(a: EvolutionAlgebra) -> bool:
    return not annihilator_indices(a)


def is_perfect(a: EvolutionAlgebra) -> bool:
    return linalg.is_invertible(a.matrix)


def squares_span(a: EvolutionAlgebra) -> tuple[list[int], int]:
    """Greedy ascending choice of indices whose squares form a basis of A^2.

    Returns ``(gamma, dim A^2)``.
    """
    gamma: list[int] = []
    rows: list[Vector] = []
    for i, row in enumerate(a.matrix):
        if linalg.is_zero_vector(row):
            continue
        if linalg.rank(rows + [row]) > len(rows):
            gamma.append(i)
            rows.append(row)
    return gamma, len(gamma)


def fourth_power(a: EvolutionAlgebra, i: int) -> Vector:
    """``e_i^2 e_i^2``."""
    sq = square(a, i)
    return product(a, sq, sq)


def fourth_powers_hadamard(a: EvolutionAlgebra) -> Matrix:
    """All fourth powers at once, as the rows of ``(M o M) M``."""
    return linalg.matmul(linalg.hadamard(a.matrix, a.matrix), a.matrix)


def is_volterra_basis(a: EvolutionAlgebra) -> bool:
    m = a.matrix
    n = a.dim
    return all(m[i][j] == -m[j][i] for i in range(n) for j in range(i, n))


def has_property_2li(a: EvolutionAlgebra) -> bool:
    """Every pair of distinct basis squares is linearly independent."""
    m = a.matrix
    return all(
        linalg.rank([m[i], m[j]]) == 2 for i in range(a.dim) for j in range(i + 1, a.dim)
    )


def ideal_block_decomposition(a: EvolutionAlgebra) -> list[list[int]]:
    """Connected components of ``i ~ j  <=>  w_ij != 0 or w_ji != 0``.

    Each part spans an evolution ideal; parts are sorted by smallest member.
    """
    n = a.dim
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(n):
            if i != j and a.matrix[i][j] != 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    parts: dict[int, list[int]] = {}
    for i in range(n):
        parts.setdefault(find(i), []).append(i)
    return sorted(parts.values())

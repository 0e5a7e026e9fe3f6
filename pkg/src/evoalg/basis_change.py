"""Changes of natural basis.

A change of basis is an invertible matrix ``P`` whose column ``j`` holds the
coordinates of the new basis vector ``f_j`` in the old basis.  With squares
stored as rows, the new structure matrix is ``(P o P)^T M P^{-T}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .algebra import EvolutionAlgebra, HypothesisError, product
from .decomposition import natural_decomposition
from .linalg import Matrix


@dataclass(frozen=True)
class BasisChange:
    matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", linalg.to_matrix(self.matrix))

    @property
    def columns(self) -> Matrix:
        return linalg.transpose(self.matrix)

    def inverse(self) -> "BasisChange":
        return BasisChange(linalg.inverse(self.matrix))


def _as_matrix(p) -> Matrix:
    return p.matrix if isinstance(p, BasisChange) else linalg.to_matrix(p)


def is_natural(a: EvolutionAlgebra, p) -> bool:
    """P is invertible and its columns multiply pairwise to zero in ``a``."""
    p = _as_matrix(p)
    if linalg.shape(p) != (a.dim, a.dim) or not linalg.is_invertible(p):
        return False
    cols = linalg.transpose(p)
    return all(
        linalg.is_zero_vector(product(a, cols[i], cols[j]))
        for i in range(a.dim)
        for j in range(i + 1, a.dim)
    )


def change_basis(a: EvolutionAlgebra, p) -> EvolutionAlgebra:
    p = _as_matrix(p)
    if linalg.shape(p) != (a.dim, a.dim):
        raise linalg.ShapeError(f"basis change of shape {linalg.shape(p)} for dimension {a.dim}")
    if not linalg.is_invertible(p):
        raise HypothesisError("basis change matrix is singular")
    if not is_natural(a, p):
        raise HypothesisError("new basis is not natural: some f_i f_j != 0 for i != j")
    squares = linalg.matmul(linalg.transpose(linalg.hadamard(p, p)), a.matrix)
    return EvolutionAlgebra(linalg.matmul(squares, linalg.transpose(linalg.inverse(p))))


def conjugate_derivation(d: Sequence[Sequence], p) -> Matrix:
    """Matrix of the linear map ``d`` relative to the new basis.

    Rows index the images: ``d(e_i) = sum_k d[i][k] e_k``, so the new matrix
    is ``P^T d P^{-T}``.
    """
    p = _as_matrix(p)
    pt = linalg.transpose(p)
    return linalg.matmul(linalg.matmul(pt, d), linalg.inverse(pt))


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Column ``j`` is ``e_{perm[j]}``."""
    n = len(perm)
    return tuple(tuple(Fraction(int(perm[j] == i)) for j in range(n)) for i in range(n))


def _random_invertible(rng: random.Random, size: int, lo: int = -3, hi: int = 3) -> Matrix:
    while True:
        m = linalg.to_matrix([[rng.randint(lo, hi) for _ in range(size)] for _ in range(size)])
        if linalg.is_invertible(m):
            return m


def _form_gram_schmidt(x: Matrix, q: Sequence[Fraction]) -> Optional[list[list[Fraction]]]:
    """Orthogonalize the columns of ``x`` for the form ``sum q_k x_k y_k``.

    Returns None as soon as an isotropic vector turns up.
    """
    def form(u, v):
        return sum((qk * uk * vk for qk, uk, vk in zip(q, u, v)), Fraction(0))

    out: list[list[Fraction]] = []
    norms: list[Fraction] = []
    for col in linalg.transpose(x):
        y = list(col)
        for prev, nrm in zip(out, norms):
            c = form(col, prev) / nrm
            y = [yi - c * pi for yi, pi in zip(y, prev)]
        nrm = form(y, y)
        if nrm == 0:
            return None
        out.append(y)
        norms.append(nrm)
    return out


def random_natural_basis(
    a: EvolutionAlgebra,
    seed=None,
    *,
    shuffle: bool = True,
    annihilator_mixing: bool = True,
    max_tries: int = 50,
) -> BasisChange:
    """A random natural basis of ``a``.

    Inside each class the square map is ``f^2 = (x^T Q x) e_rep^2`` with
    ``Q = diag(alpha[rep, k])``, so class-local vectors must be pairwise
    Q-orthogonal and (for nonzero squares) anisotropic.  Random integer
    frames are orthogonalized and resampled when an isotropic pivot appears;
    after ``max_tries`` failures the class keeps its old vectors.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    dec = natural_decomposition(a)
    n = a.dim
    cols: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    zero_idx = sorted(dec.lambda0)

    for cls in dec.classes:
        rep = cls[0]
        q = [dec.alpha[rep, k] for k in cls]
        frame = None
        for _ in range(max_tries):
            frame = _form_gram_schmidt(_random_invertible(rng, len(cls)), q)
            if frame is not None:
                break
        if frame is None:
            frame = [[Fraction(int(r == c)) for r in range(len(cls))] for c in range(len(cls))]
        for pos, vec in zip(cls, frame):
            for k, x in zip(cls, vec):
                cols[pos][k] = x
            if annihilator_mixing and zero_idx and rng.random() < 0.5:
                for k in zero_idx:
                    cols[pos][k] = Fraction(rng.randint(-2, 2))

    if zero_idx:
        block = _random_invertible(rng, len(zero_idx))
        for c, pos in enumerate(zero_idx):
            for r, k in enumerate(zero_idx):
                cols[pos][k] = block[r][c]

    order = list(range(n))
    if shuffle:
        rng.shuffle(order)
    p = linalg.transpose([cols[j] for j in order])
    return BasisChange(p)

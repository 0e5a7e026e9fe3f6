"""Derivations of evolution algebras.

A linear map ``d`` is stored as a matrix with ``d(e_i) = sum_k d[i][k] e_k``
(row ``i`` holds the image of ``e_i``, matching the structure matrix).  In
this convention ``d`` is a derivation iff

    w_jk d_ij + w_ik d_ji = 0          for i != j and all k,
    sum_k w_ik d_kj = 2 w_ij d_ii      for all i, j.

Besides the exact derivation space this module checks several equivalent
characterizations and builds explicit derivations with nonzero diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import (
    EvoAlgError,
    EvolutionAlgebra,
    HypothesisError,
    fourth_power,
    is_non_degenerate,
    is_volterra_basis,
    product,
    squares_span,
)
from .decomposition import NaturalDecomposition, natural_decomposition, twin_partition
from .graph import descendants, distances_from, first_generation, has_odd_cycle
from .linalg import Matrix, ZERO


class SelfCheckError(EvoAlgError, RuntimeError):
    """A constructed object failed its own validation (a bug, not bad input)."""


class CanonicalMismatchError(EvoAlgError):
    """The canonical Volterra algebra does not share the derivation space."""


def label(i: int) -> str:
    return f"e_{i + 1}"


@dataclass(frozen=True)
class DerivationSpace:
    basis: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def flat(self) -> list[tuple[Fraction, ...]]:
        return [tuple(x for row in d for x in row) for d in self.basis]


def _reshape(v: Sequence[Fraction], n: int) -> Matrix:
    return tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n))


def assemble_system(a: EvolutionAlgebra) -> Matrix:
    """Constraint matrix on the unknowns ``d_ij`` (column ``i*n + j``)."""
    n = a.dim
    w = a.matrix
    rows = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for k in range(n):
                row = [ZERO] * (n * n)
                row[i * n + j] += w[j][k]
                row[j * n + i] += w[i][k]
                rows.append(tuple(row))
    for i in range(n):
        for j in range(n):
            row = [ZERO] * (n * n)
            for k in range(n):
                row[k * n + j] += w[i][k]
            row[i * n + i] -= 2 * w[i][j]
            rows.append(tuple(row))
    return tuple(rows)


def null_space_sparse(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    """Null space of a mostly-zero system.

    Zero and repeated rows are dropped before elimination; the result is the
    same echelon basis :func:`linalg.null_space` produces.
    """
    seen = set()
    kept = []
    for r in rows:
        if linalg.is_zero_vector(r):
            continue
        t = tuple(r)
        if t not in seen:
            seen.add(t)
            kept.append(t)
    return linalg.null_space(kept, ncols)


def derivation_space(a: EvolutionAlgebra) -> DerivationSpace:
    n = a.dim
    basis = null_space_sparse(assemble_system(a), n * n)
    return DerivationSpace(tuple(_reshape(v, n) for v in basis))


def apply_map(d: Sequence[Sequence], x: Sequence) -> tuple[Fraction, ...]:
    """Coordinates of ``d(x)`` for ``x`` given in basis coordinates."""
    n = len(d)
    out = [ZERO] * n
    for xi, row in zip(x, d):
        if xi:
            for k, v in enumerate(row):
                if v:
                    out[k] += xi * v
    return tuple(out)


def is_derivation(a: EvolutionAlgebra, d: Sequence[Sequence]) -> bool:
    """Leibniz rule ``d(uv) = d(u)v + u d(v)`` on every pair of basis vectors."""
    n = a.dim
    if linalg.shape(d) != (n, n):
        raise linalg.ShapeError(f"map of shape {linalg.shape(d)} on a {n}-dim algebra")
    e = linalg.identity(n)
    images = [apply_map(d, e[i]) for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            lhs = apply_map(d, product(a, e[i], e[j]))
            rhs = [x + y for x, y in zip(product(a, images[i], e[j]), product(a, e[i], images[j]))]
            if list(lhs) != rhs:
                return False
    return True


def _require_non_degenerate(a: EvolutionAlgebra) -> None:
    if not is_non_degenerate(a):
        z = min(i for i, r in enumerate(a.matrix) if linalg.is_zero_vector(r))
        raise HypothesisError(f"algebra is degenerate: {label(z)}^2 = 0")


def _require_volterra(a: EvolutionAlgebra) -> None:
    _require_non_degenerate(a)
    if not is_volterra_basis(a):
        raise HypothesisError("structure matrix is not skew-symmetric")


def satisfies_twin_characterization(a: EvolutionAlgebra, d: Sequence[Sequence]) -> bool:
    """Derivation test phrased through twin classes; needs a non-degenerate algebra.

    (i) twins i != j: ``d_ji = -(w_jk / w_ik) d_ij`` for every k in D1(i);
    (ii) non-twins: ``d_ij = d_ji = 0``;
    (iii) ``sum_{k in D1(i)} w_ik d_kj`` is ``2 w_ij d_ii`` for j in D1(i), else 0.
    """
    _require_non_degenerate(a)
    n = a.dim
    w = a.matrix
    twins = twin_partition(a)
    for i in range(n):
        d1 = first_generation(a, i)
        tc = twins.twin_class(i)
        for j in range(n):
            if j == i:
                continue
            if j in tc:
                if any(w[i][k] * d[j][i] + w[j][k] * d[i][j] != 0 for k in d1):
                    return False
            elif d[i][j] != 0 or d[j][i] != 0:
                return False
        for j in range(n):
            s = sum((w[i][k] * d[k][j] for k in d1), ZERO)
            expected = 2 * w[i][j] * d[i][i] if j in d1 else ZERO
            if s != expected:
                return False
    return True


def class_cube_sum(dec: NaturalDecomposition, j: int) -> Fraction:
    """``sum_{k in class(j)} alpha[j, k]^3``."""
    return sum((dec.alpha[j, k] ** 3 for k in dec.lambda_of(j)), ZERO)


def satisfies_volterra_characterization(a: EvolutionAlgebra, d: Sequence[Sequence]) -> bool:
    """Derivation test for a non-degenerate algebra with skew-symmetric structure matrix.

    (i) i != j in different classes: ``d_ij = d_ji = 0``;
    (ii) i != j in one class: ``d_ij = -alpha[j, i] d_ji``;
    (iii) i in D1(j): ``2 d_ii = sum_{k in class(j)} alpha[j, k] d_kj``.
    """
    _require_volterra(a)
    dec = natural_decomposition(a)
    n = a.dim
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if dec.same_class(i, j):
                if d[i][j] != -dec.alpha[j, i] * d[j][i]:
                    return False
            elif d[i][j] != 0:
                return False
    for j in range(n):
        s = sum((dec.alpha[j, k] * d[k][j] for k in dec.lambda_of(j)), ZERO)
        for i in first_generation(a, j):
            if 2 * d[i][i] != s:
                return False
    return True


def _rank_one_setup(a: EvolutionAlgebra) -> NaturalDecomposition:
    _require_non_degenerate(a)
    if squares_span(a)[1] != 1:
        raise HypothesisError("dim A^2 is not 1")
    return natural_decomposition(a)


def satisfies_rank_one_characterization(a: EvolutionAlgebra, d: Sequence[Sequence]) -> bool:
    """Derivation test when ``dim A^2 = 1`` and ``e_1^2 e_1^2 != 0``.

    (i) ``d_ii = 0``; (ii) ``d_ij = -(alpha_1i / alpha_1j) d_ji`` for i != j;
    (iii) ``sum_j w_1j d_jk = 0`` for every k.
    """
    dec = _rank_one_setup(a)
    if linalg.is_zero_vector(fourth_power(a, 0)):
        raise HypothesisError(f"fourth power of {label(0)} is zero")
    n = a.dim
    al = [dec.alpha[0, i] for i in range(n)]
    w1 = a.matrix[0]
    if any(d[i][i] != 0 for i in range(n)):
        return False
    for i in range(n):
        for j in range(n):
            if i != j and d[i][j] * al[j] != -al[i] * d[j][i]:
                return False
    return all(sum((w1[j] * d[j][k] for j in range(n)), ZERO) == 0 for k in range(n))


def _self_check(a: EvolutionAlgebra, d: Matrix, what: str) -> Matrix:
    if not is_derivation(a, d):
        raise SelfCheckError(f"{what} is not a derivation")
    return d


def degenerate_witness(a: EvolutionAlgebra, ell: int) -> Matrix:
    """The derivation ``d_ll = 1``, all other entries 0.

    Needs ``e_l^2 = 0`` and, in addition, ``e_l`` absent from every square:
    otherwise ``d(e_k^2) = w_kl e_l`` while ``2 e_k d(e_k) = 0``.
    """
    if not linalg.is_zero_vector(a.matrix[ell]):
        raise HypothesisError(f"{label(ell)}^2 is not zero")
    used = [k for k in range(a.dim) if a.matrix[k][ell] != 0]
    if used:
        raise HypothesisError(f"{label(ell)} occurs in the square of {label(used[0])}")
    n = a.dim
    d = tuple(tuple(Fraction(int(i == j == ell)) for j in range(n)) for i in range(n))
    return _self_check(a, d, "degenerate witness")


def rank_one_singular_witness(a: EvolutionAlgebra) -> Matrix:
    """Derivation with all diagonal entries 1 when dim A^2 = 1 and e_1^2 e_1^2 = 0."""
    dec = _rank_one_setup(a)
    if not linalg.is_zero_vector(fourth_power(a, 0)):
        raise HypothesisError(f"fourth power of {label(0)} is not zero")
    n = a.dim
    w1 = a.matrix[0]
    al = [dec.alpha[0, i] for i in range(n)]
    k = next(j for j in range(n) if w1[j] != 0)
    d = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                d[i][j] = Fraction(1)
            elif j == k:
                d[i][j] = -(al[i] * w1[i]) / (al[k] * w1[k])
            elif i == k:
                d[i][j] = w1[j] / w1[k]
    return _self_check(a, linalg.to_matrix(d), "rank-one singular witness")


def _unpermute(d: Sequence[Sequence], perm: Sequence[int]) -> Matrix:
    """Rewrite a matrix on reordered indices back onto the original ones."""
    n = len(perm)
    out = [[ZERO] * n for _ in range(n)]
    for m in range(n):
        for m2 in range(n):
            out[perm[m]][perm[m2]] = d[m][m2]
    return linalg.to_matrix(out)


def volterra_canonical(a: EvolutionAlgebra, verify: bool = True) -> tuple[EvolutionAlgebra, list[int]]:
    """Block-diagonal Volterra algebra built from the classes of ``a``.

    Classes are taken in ascending order of their smallest member and paired
    consecutively; with an odd number of classes the last three form one
    block.  Position ``m`` of the new basis corresponds to old index
    ``perm[m]``.  Returns ``(A', perm)``.

    With ``verify`` the derivation spaces of both algebras are compared and
    :class:`CanonicalMismatchError` is raised if they differ.
    """
    _require_volterra(a)
    for i in range(a.dim):
        if linalg.is_zero_vector(fourth_power(a, i)):
            raise HypothesisError(f"fourth power of {label(i)} is zero")
    dec = natural_decomposition(a)
    r = dec.r
    if r < 2:
        raise HypothesisError("only one class of proportional squares; classes cannot be paired")
    al = dec.alpha
    perm = [k for c in dec.classes for k in c]
    pos = {k: m for m, k in enumerate(perm)}
    n = a.dim
    rows = [[ZERO] * n for _ in range(n)]

    def fill_class(cls, base_row):
        rep = cls[0]
        for j in cls:
            rows[pos[j]] = [al[rep, j] * x for x in base_row]

    def row_into(*targets):
        row = [ZERO] * n
        for cls, sign in targets:
            rep = cls[0]
            for k in cls:
                row[pos[k]] = sign * al[rep, k]
        return row

    groups = [dec.classes[t:t + 2] for t in range(0, r - 3 if r % 2 else r, 2)]
    if r % 2:
        groups.append(dec.classes[r - 3:])
    for g in groups:
        head, tails = g[0], g[1:]
        fill_class(head, row_into(*[(c, 1) for c in tails]))
        for c in tails:
            fill_class(c, row_into((head, -1)))

    a2 = EvolutionAlgebra(linalg.to_matrix(rows))
    if not is_volterra_basis(a2):
        raise SelfCheckError("canonical algebra is not skew-symmetric")
    if verify:
        der_a = derivation_space(a).flat()
        der_b = [tuple(x for row in _unpermute(d, perm) for x in row) for d in derivation_space(a2).basis]
        if (der_a or der_b) and not linalg.span_equal(der_a, der_b):
            zero_cubes = [label(c[0]) for c in dec.classes if class_cube_sum(dec, c[0]) == 0]
            hint = f"; classes with zero cube sum: {', '.join(zero_cubes)}" if zero_cubes else ""
            if r % 2:
                hint += "; the last two classes receive proportional squares and merge"
            raise CanonicalMismatchError(
                f"derivation spaces differ (dim {len(der_a)} vs {len(der_b)}){hint}"
            )
    return a2, perm


def cube_sums_vanish_on_descendants(a: EvolutionAlgebra, i: int) -> bool:
    """Every class met by D1(i) has ``sum alpha^3 = 0``."""
    dec = natural_decomposition(a)
    return all(class_cube_sum(dec, j) == 0 for j in first_generation(a, i))


def cube_sum_implication_holds(a: EvolutionAlgebra) -> bool:
    """Vanishing cube sums over D1(i) force ``e_i^2 e_i^2 = 0``, checked for every i."""
    _require_volterra(a)
    return all(
        linalg.is_zero_vector(fourth_power(a, i))
        for i in range(a.dim)
        if cube_sums_vanish_on_descendants(a, i)
    )


def _descendant_classes(a: EvolutionAlgebra, dec: NaturalDecomposition, i: int) -> list[int]:
    reach = descendants(a, i)
    inside = []
    for t, c in enumerate(dec.classes):
        hit = [k in reach for k in c]
        if all(hit):
            inside.append(t)
        elif any(hit):
            raise SelfCheckError(f"class of {label(c[0])} is split by the descendants of {label(i)}")
    return inside


def _bordered_block(d, dec: NaturalDecomposition, cls, scale: int) -> None:
    """Identity on the class, last member bordered by ``scale * alpha`` terms."""
    last = cls[-1]
    for k in cls:
        d[k][k] = Fraction(1)
    for k in cls[:-1]:
        a_lk = dec.alpha[last, k]
        d[k][last] = -scale * a_lk ** 2
        d[last][k] = scale * a_lk


def bipartite_witness(a: EvolutionAlgebra, i: int) -> Matrix:
    """Derivation nonzero on the whole diagonal over D(i), for graphs without odd cycles.

    Requires zero cube sums on every class at even distance from ``i``.
    """
    _require_volterra(a)
    if has_odd_cycle(a):
        raise HypothesisError("associated graph has an odd length cycle")
    dec = natural_decomposition(a)
    dist = distances_from(a, i)
    n = a.dim
    d = [[ZERO] * n for _ in range(n)]
    for t in _descendant_classes(a, dec, i):
        cls = dec.classes[t]
        parities = {dist[k] % 2 for k in cls}
        if len(parities) != 1:
            raise SelfCheckError(f"distance parity from {label(i)} is not constant on a class")
        if parities == {1}:
            for k in cls:
                d[k][k] = Fraction(2)
        else:
            if class_cube_sum(dec, cls[0]) != 0:
                raise HypothesisError(
                    f"class of {label(cls[0])} is at even distance from {label(i)} "
                    "but its cube sum is nonzero"
                )
            _bordered_block(d, dec, cls, 3)
    return _self_check(a, linalg.to_matrix(d), "bipartite witness")


def descendants_witness(a: EvolutionAlgebra, i: int) -> Matrix:
    """Derivation with ``d_kk = 1`` on D(i) when every class inside D(i) has zero cube sum."""
    _require_volterra(a)
    dec = natural_decomposition(a)
    n = a.dim
    d = [[ZERO] * n for _ in range(n)]
    for t in _descendant_classes(a, dec, i):
        cls = dec.classes[t]
        if class_cube_sum(dec, cls[0]) != 0:
            raise HypothesisError(f"class of {label(cls[0])} in D({label(i)}) has nonzero cube sum")
        _bordered_block(d, dec, cls, 1)
    return _self_check(a, linalg.to_matrix(d), "descendants witness")


def twin_pair_vanishing_applies(a: EvolutionAlgebra, i: int, j: int, ell: int) -> bool:
    """Detect the configuration forcing ``d_ij = d_ji = d_ii = d_jj = d_ll = 0``.

    Needs: twin class of i is exactly {i, j}; l in D1(i); ``w_li^3 != w_jl^3``;
    l not twin with any other member of D1(i).
    """
    if not is_non_degenerate(a) or not is_volterra_basis(a) or i == j:
        return False
    tp = twin_partition(a)
    if set(tp.twin_class(i)) != {i, j}:
        return False
    d1 = first_generation(a, i)
    if ell not in d1:
        return False
    w = a.matrix
    if w[ell][i] ** 3 == w[j][ell] ** 3:
        return False
    return all(k not in tp.twin_class(ell) for k in d1 if k != ell)

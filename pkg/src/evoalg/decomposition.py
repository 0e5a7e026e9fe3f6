"""Natural decomposition of the basis and the twin partition.

Indices with zero square form the annihilator class; the remaining indices
are grouped into classes of pairwise proportional squares.  For ``j, k`` in
one class, ``alpha[j, k]`` is the nonzero scalar with ``e_k^2 = alpha[j, k] e_j^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import EvoAlgError, EvolutionAlgebra, annihilator_indices
from .graph import first_generation


class AlignmentError(EvoAlgError):
    """Classes of two natural bases could not be matched."""


@dataclass(frozen=True)
class NaturalDecomposition:
    lambda0: frozenset[int]
    classes: tuple[tuple[int, ...], ...]
    alpha: dict = field(compare=False, repr=False)

    def representative(self, t: int) -> int:
        return self.classes[t][0]

    def class_index(self, j: int) -> int:
        for t, c in enumerate(self.classes):
            if j in c:
                return t
        raise KeyError(f"index {j} lies in the annihilator class")

    def lambda_of(self, j: int) -> tuple[int, ...]:
        """The class of ``j``: all non-annihilator k whose square is dependent with e_j^2."""
        if j in self.lambda0:
            raise ValueError(f"index {j} has zero square; its class is not defined")
        return self.classes[self.class_index(j)]

    def same_class(self, i: int, j: int) -> bool:
        if i in self.lambda0 or j in self.lambda0:
            return False
        return self.class_index(i) == self.class_index(j)

    @property
    def r(self) -> int:
        return len(self.classes)


def _ratio(row_j, row_k) -> Fraction | None:
    """``c`` with ``row_k = c * row_j`` if it exists (row_j nonzero)."""
    p = next(idx for idx, x in enumerate(row_j) if x != 0)
    c = row_k[p] / row_j[p]
    if all(y == c * x for x, y in zip(row_j, row_k)):
        return c
    return None


def natural_decomposition(a: EvolutionAlgebra) -> NaturalDecomposition:
    lambda0 = annihilator_indices(a)
    m = a.matrix
    classes: list[list[int]] = []
    # coefficient of each index relative to its class representative
    rel: dict[int, Fraction] = {}
    for k in range(a.dim):
        if k in lambda0:
            continue
        for c in classes:
            ratio = _ratio(m[c[0]], m[k])
            if ratio is not None:
                c.append(k)
                rel[k] = ratio
                break
        else:
            classes.append([k])
            rel[k] = Fraction(1)
    alpha = {}
    for c in classes:
        for j in c:
            for k in c:
                alpha[j, k] = rel[k] / rel[j]
    return NaturalDecomposition(lambda0, tuple(tuple(c) for c in classes), alpha)


@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[tuple[int, ...], ...]

    def twin_class(self, i: int) -> tuple[int, ...]:
        return next(c for c in self.classes if i in c)


def twin_partition(a: EvolutionAlgebra) -> TwinPartition:
    groups: dict[frozenset[int], list[int]] = {}
    for i in range(a.dim):
        groups.setdefault(first_generation(a, i), []).append(i)
    return TwinPartition(tuple(sorted(tuple(g) for g in groups.values())))


def is_twin_free(a: EvolutionAlgebra) -> bool:
    return all(len(c) == 1 for c in twin_partition(a).classes)


@dataclass(frozen=True)
class Alignment:
    """Matching of the classes of an old natural basis with those of a new one.

    ``mapping[t]`` is the index of the new class matched with old class ``t``.
    ``new_decomposition`` is the decomposition relative to the new basis.
    """

    mapping: dict
    old: NaturalDecomposition
    new: NaturalDecomposition


def align_decompositions(a: EvolutionAlgebra, p: Sequence[Sequence]) -> Alignment:
    """Match classes of ``a`` with classes of the algebra in the basis given by ``p``.

    The columns of ``p`` are the new basis vectors in old coordinates.  Each
    new class ``B'_t`` must lie in ``span(B_0 u B_t)``, the annihilator
    classes must span the same subspace, and matched classes have equal size.
    """
    from .basis_change import change_basis  # circular at module level

    old = natural_decomposition(a)
    new = natural_decomposition(change_basis(a, p))
    n = a.dim
    cols = linalg.transpose(linalg.to_matrix(getattr(p, "matrix", p)))

    def unit(k):
        return tuple(Fraction(int(x == k)) for x in range(n))

    old0 = [unit(k) for k in sorted(old.lambda0)]
    new0 = [cols[k] for k in sorted(new.lambda0)]
    if (old0 or new0) and not linalg.span_equal(old0, new0):
        raise AlignmentError("annihilator classes span different subspaces")
    if len(old.classes) != len(new.classes):
        raise AlignmentError(
            f"{len(old.classes)} classes in the old basis but {len(new.classes)} in the new one"
        )

    mapping: dict[int, int] = {}
    taken: set[int] = set()
    for t, cls in enumerate(old.classes):
        target = old0 + [unit(k) for k in cls]
        for s, new_cls in enumerate(new.classes):
            if s in taken:
                continue
            if all(linalg.in_span(cols[j], target) for j in new_cls):
                if len(new_cls) != len(cls):
                    raise AlignmentError(
                        f"class {t} has {len(cls)} members but its match has {len(new_cls)}"
                    )
                mapping[t] = s
                taken.add(s)
                break
        else:
            raise AlignmentError(f"no new class lies in the span of old class {t}")
    return Alignment(mapping, old, new)

"""Loops of an evolution algebra and their behaviour under change of natural basis.

Index ``i`` is a loop when ``w_ii != 0``.  The number of loops is not a
basis invariant in general; :func:`decide_loop_invariance` decides it for
non-degenerate algebras and, when it varies, returns a natural basis
realizing a different count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import linalg
from .algebra import (
    EvolutionAlgebra,
    HypothesisError,
    has_property_2li,
    is_non_degenerate,
    is_perfect,
    is_volterra_basis,
    product,
    square,
)
from .basis_change import BasisChange, change_basis, random_natural_basis
from .decomposition import align_decompositions, is_twin_free, natural_decomposition
from .derivations import SelfCheckError, label

INVARIANT = "Invariant"
NOT_INVARIANT = "NotInvariant"
UNDECIDED = "Undecided"


def loop_set(a: EvolutionAlgebra) -> frozenset[int]:
    return frozenset(i for i in range(a.dim) if a.matrix[i][i] != 0)


def noloop_set(a: EvolutionAlgebra) -> frozenset[int]:
    return frozenset(range(a.dim)) - loop_set(a)


def is_loop_by_product(a: EvolutionAlgebra, i: int) -> bool:
    """``e_i e_i^2 != 0``; agrees with ``w_ii != 0`` whenever ``e_i^2 != 0``."""
    e = tuple(Fraction(int(k == i)) for k in range(a.dim))
    return not linalg.is_zero_vector(product(a, e, square(a, i)))


@dataclass(frozen=True)
class LoopReport:
    loops: frozenset[int]
    noloops: frozenset[int]
    verdict: str
    witness: Optional[BasisChange] = None
    witness_loops: Optional[int] = None
    reason: str = ""
    sufficient_conditions: tuple[str, ...] = field(default=())


def check_noloop_correspondence(a: EvolutionAlgebra, p) -> bool:
    """A class lies in the no-loops iff its matched class in the new basis does."""
    al = align_decompositions(a, p)
    old_nl = noloop_set(a)
    new_nl = noloop_set(change_basis(a, p))
    return all(
        (set(al.old.classes[t]) <= old_nl) == (set(al.new.classes[s]) <= new_nl)
        for t, s in al.mapping.items()
    )


def _class_condition_holds(a: EvolutionAlgebra, cls, alpha) -> bool:
    """``alpha[j, k] = -(w_jj / w_jk)^2`` for all j != k in the class."""
    w = a.matrix
    for j in cls:
        for k in cls:
            if j != k and (w[j][k] == 0 or alpha[j, k] != -((w[j][j] / w[j][k]) ** 2)):
                return False
    return True


def mixed_class_witness(a: EvolutionAlgebra, t: int) -> BasisChange:
    """Natural basis with one more loop, built from a class holding a loop and a no-loop.

    With ``i`` a loop and ``j`` a no-loop of the class and ``e_j^2 = a e_i^2``,
    take ``f_i = e_i + g e_j`` and ``f_j = -g a e_i + e_j`` where ``g`` is the
    smallest integer >= 2 with ``g^2 != -1/a``.
    """
    dec = natural_decomposition(a)
    cls = dec.classes[t]
    loops = loop_set(a)
    in_l = [k for k in cls if k in loops]
    in_nl = [k for k in cls if k not in loops]
    if not in_l or not in_nl:
        raise HypothesisError(f"class of {label(cls[0])} does not mix loops and no-loops")
    i, j = in_l[0], in_nl[0]
    al = dec.alpha[i, j]
    g = Fraction(2)
    while g * g == -1 / al:
        g += 1
    p = [list(r) for r in linalg.identity(a.dim)]
    p[i][i], p[j][i] = Fraction(1), g
    p[i][j], p[j][j] = -g * al, Fraction(1)
    return _certify(a, BasisChange(p), lambda new, old: new == old + 1, "mixed-class witness")


def loop_class_witness(a: EvolutionAlgebra, t: int) -> BasisChange:
    """Natural basis with fewer loops, built from an all-loop class.

    Needs ``q, p`` in the class with ``alpha[q, p] != -(w_qq / w_qp)^2``;
    then ``f_q = g e_q + e_p`` and ``f_p = e_q + b e_p`` with
    ``g = -alpha[q, p] w_qp / w_qq`` and ``b = w_qp / w_qq``.
    """
    dec = natural_decomposition(a)
    cls = dec.classes[t]
    loops = loop_set(a)
    if not set(cls) <= loops or len(cls) < 2:
        raise HypothesisError(f"class of {label(cls[0])} is not an all-loop class of size > 1")
    w = a.matrix
    pair = next(
        (
            (q, p)
            for q in cls
            for p in cls
            if q != p and dec.alpha[q, p] != -((w[q][q] / w[q][p]) ** 2)
        ),
        None,
    )
    if pair is None:
        raise HypothesisError(f"every pair in the class of {label(cls[0])} satisfies the invariance relation")
    q, p = pair
    g = -dec.alpha[q, p] * w[q][p] / w[q][q]
    b = w[q][p] / w[q][q]
    if g * b == 1:
        raise SelfCheckError("loop-class witness vectors are dependent")
    m = [list(r) for r in linalg.identity(a.dim)]
    m[q][q], m[p][q] = g, Fraction(1)
    m[q][p], m[p][p] = Fraction(1), b
    return _certify(a, BasisChange(m), lambda new, old: new < old, "loop-class witness")


def _certify(a, change: BasisChange, ok, what) -> BasisChange:
    new = len(loop_set(change_basis(a, change)))
    if not ok(new, len(loop_set(a))):
        raise SelfCheckError(f"{what} produced {new} loops from {len(loop_set(a))}")
    return change


def sufficient_invariance_conditions(a: EvolutionAlgebra) -> tuple[str, ...]:
    """Basis properties that on their own make the loop count invariant."""
    found = []
    if has_property_2li(a):
        found.append("2LI")
    if not loop_set(a):
        found.append("no loops")
    if is_perfect(a):
        found.append("perfect")
    if is_twin_free(a):
        found.append("twin-free")
    if is_volterra_basis(a):
        found.append("Volterra")
    return tuple(found)


def small_class_invariance_applies(a: EvolutionAlgebra) -> bool:
    """Classes meeting the loops have size <= 2, and each size-2 class is all
    no-loop or all loop with ``alpha[j, k] = -(w_jj / w_jk)^2``."""
    dec = natural_decomposition(a)
    loops = loop_set(a)
    for cls in dec.classes:
        meets = bool(set(cls) & loops)
        if meets and len(cls) > 2:
            return False
        if len(cls) == 2 and meets:
            if not set(cls) <= loops or not _class_condition_holds(a, cls, dec.alpha):
                return False
    return True


def decide_loop_invariance(a: EvolutionAlgebra) -> LoopReport:
    loops, noloops = loop_set(a), noloop_set(a)
    conds = sufficient_invariance_conditions(a)
    if not is_non_degenerate(a):
        return LoopReport(
            loops, noloops, UNDECIDED,
            reason="decision requires a non-degenerate algebra",
            sufficient_conditions=conds,
        )
    dec = natural_decomposition(a)
    for t, cls in enumerate(dec.classes):
        members = set(cls)
        if len(cls) < 2 or not members & loops:
            continue
        if members & noloops:
            w = mixed_class_witness(a, t)
            reason = f"class of {label(cls[0])} contains both loops and no-loops"
        elif len(cls) > 2 or not _class_condition_holds(a, cls, dec.alpha):
            w = loop_class_witness(a, t)
            reason = f"all-loop class of {label(cls[0])} admits a loop-removing change"
        else:
            continue
        return LoopReport(
            loops, noloops, NOT_INVARIANT,
            witness=w,
            witness_loops=len(loop_set(change_basis(a, w))),
            reason=reason,
            sufficient_conditions=conds,
        )
    if conds:
        reason = "sufficient condition: " + ", ".join(conds)
    else:
        reason = "every class meeting the loops is small and satisfies the invariance relation"
    return LoopReport(loops, noloops, INVARIANT, reason=reason, sufficient_conditions=conds)


def noloop_classes_condition(a: EvolutionAlgebra) -> bool:
    """Every class with more than one member consists of no-loops."""
    nl = noloop_set(a)
    return all(set(c) <= nl for c in natural_decomposition(a).classes if len(c) > 1)


def sample_loop_counts(a: EvolutionAlgebra, samples: int = 200, seed=0) -> list[int]:
    """Loop counts in ``samples`` random natural bases; ``seed`` may be a Random."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return [len(loop_set(change_basis(a, random_natural_basis(a, rng)))) for _ in range(samples)]


def check_noloop_class_invariance(a: EvolutionAlgebra, samples: int = 200, seed=0) -> bool:
    """Loop count is unchanged across sampled natural bases when every
    multi-member class consists of no-loops."""
    if not noloop_classes_condition(a):
        raise HypothesisError("some class with more than one member contains a loop")
    expected = len(loop_set(a))
    return all(c == expected for c in sample_loop_counts(a, samples, seed))

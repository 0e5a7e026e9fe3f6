"""Exact computations on evolution algebras over the rationals."""

from .algebra import EvoAlgError, EvolutionAlgebra, HypothesisError
from .basis_change import BasisChange, change_basis, is_natural, random_natural_basis
from .decomposition import align_decompositions, natural_decomposition, twin_partition
from .derivations import derivation_space, is_derivation, volterra_canonical
from .io import FormatError, parse_algebra
from .loops import decide_loop_invariance, loop_set, noloop_set

__all__ = [
    "BasisChange",
    "EvoAlgError",
    "EvolutionAlgebra",
    "FormatError",
    "HypothesisError",
    "align_decompositions",
    "change_basis",
    "decide_loop_invariance",
    "derivation_space",
    "is_derivation",
    "is_natural",
    "loop_set",
    "natural_decomposition",
    "noloop_set",
    "parse_algebra",
    "random_natural_basis",
    "twin_partition",
    "volterra_canonical",
]

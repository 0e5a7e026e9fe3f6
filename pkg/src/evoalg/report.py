"""Report builders shared by the command-line interface.

Every builder returns a JSON-ready dict.  Indices are 1-based, rationals are
strings in lowest terms.  :func:`render_text` turns any report into an
indented plain-text listing.
"""

from __future__ import annotations

import random
from typing import Optional

from . import linalg
from .algebra import (
    EvolutionAlgebra,
    HypothesisError,
    fourth_power,
    has_property_2li,
    ideal_block_decomposition,
    is_non_degenerate,
    is_volterra_basis,
    squares_span,
)
from .basis_change import BasisChange, change_basis
from .decomposition import align_decompositions, natural_decomposition, twin_partition
from .derivations import (
    SelfCheckError,
    bipartite_witness,
    degenerate_witness,
    derivation_space,
    descendants_witness,
    label,
    rank_one_singular_witness,
    volterra_canonical,
)
from .graph import descendants, first_generation, has_odd_cycle
from .io import format_rational
from .loops import decide_loop_invariance, loop_set, sample_loop_counts

SAMPLED_BASES = 50


def _idx(items) -> list[int]:
    return sorted(i + 1 for i in items)


def _mat(m) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m]


def decomposition_section(a: EvolutionAlgebra) -> dict:
    dec = natural_decomposition(a)
    classes = []
    for cls in dec.classes:
        classes.append({
            "members": [k + 1 for k in cls],
            "representative": cls[0] + 1,
            "alpha": [[format_rational(dec.alpha[j, k]) for k in cls] for j in cls],
        })
    return {"annihilator": _idx(dec.lambda0), "classes": classes}


def loop_section(a: EvolutionAlgebra, seed: Optional[int] = None) -> dict:
    rep = decide_loop_invariance(a)
    out = {
        "loops": _idx(rep.loops),
        "noloops": _idx(rep.noloops),
        "verdict": rep.verdict,
        "reason": rep.reason,
        "sufficient_conditions": list(rep.sufficient_conditions),
    }
    if rep.witness is not None:
        out["witness"] = _mat(rep.witness.matrix)
        out["witness_loop_count"] = rep.witness_loops
    if seed is not None:
        counts = sample_loop_counts(a, SAMPLED_BASES, random.Random(seed))
        out["sampled_loop_counts"] = sorted(set(counts))
    return out


def _derivation_notes(a: EvolutionAlgebra, der_dim: int) -> list[str]:
    notes = []
    nd = is_non_degenerate(a)
    if nd and has_property_2li(a):
        notes.append("pairwise independent squares on a non-degenerate algebra: only the zero derivation")
        if der_dim != 0:
            raise SelfCheckError("pairwise independent squares but nonzero derivations")
    gamma, rank = squares_span(a)
    if nd and all(not linalg.is_zero_vector(fourth_power(a, k)) for k in gamma):
        notes.append(
            "squares basis "
            + "{" + ", ".join(label(k) for k in gamma) + "}"
            + " has nonzero fourth powers: every derivation has zero diagonal"
        )
    if not nd:
        notes.append("degenerate algebra: an index with zero square that occurs in no square gives a derivation with nonzero diagonal")
    if nd and rank == 1:
        if linalg.is_zero_vector(fourth_power(a, 0)):
            notes.append("one-dimensional square with zero fourth power: a derivation with unit diagonal exists")
        else:
            notes.append("one-dimensional square with nonzero fourth power: derivations have zero diagonal")
    return notes


def derivation_witnesses(a: EvolutionAlgebra) -> list[dict]:
    """Explicit derivations with nonzero diagonal that the hypotheses allow."""
    found = []
    if not is_non_degenerate(a):
        for ell in sorted(i for i, r in enumerate(a.matrix) if linalg.is_zero_vector(r)):
            try:
                d = degenerate_witness(a, ell)
            except HypothesisError:
                continue
            found.append({"kind": f"zero square of {label(ell)}", "matrix": _mat(d)})
        return found
    if squares_span(a)[1] == 1 and linalg.is_zero_vector(fourth_power(a, 0)):
        found.append({"kind": "one-dimensional square", "matrix": _mat(rank_one_singular_witness(a))})
    if is_volterra_basis(a):
        for build, kind in ((descendants_witness, "descendants"), (bipartite_witness, "bipartite")):
            for i in range(a.dim):
                try:
                    d = build(a, i)
                except HypothesisError:
                    continue
                found.append({"kind": f"{kind} of {label(i)}", "matrix": _mat(d)})
                break
    return found


def derivations_report(a: EvolutionAlgebra) -> dict:
    der = derivation_space(a)
    return {
        "der_dim": der.dim,
        "der_basis": [_mat(d) for d in der.basis],
        "notes": _derivation_notes(a, der.dim),
        "witnesses": derivation_witnesses(a),
    }


def decomposition_report(a: EvolutionAlgebra) -> dict:
    return {
        "natural_decomposition": decomposition_section(a),
        "twin_partition": [[k + 1 for k in c] for c in twin_partition(a).classes],
        "ideal_blocks": [[k + 1 for k in part] for part in ideal_block_decomposition(a)],
        "first_generation": {label(i): _idx(first_generation(a, i)) for i in range(a.dim)},
        "descendants": {label(i): _idx(descendants(a, i)) for i in range(a.dim)},
        "odd_cycle": has_odd_cycle(a),
    }


def analysis_report(a: EvolutionAlgebra, seed: Optional[int] = None) -> dict:
    gamma, rank = squares_span(a)
    der = derivation_space(a)
    return {
        "dim": a.dim,
        "non_degenerate": is_non_degenerate(a),
        "dim_A2": rank,
        "squares_basis": [k + 1 for k in gamma],
        "volterra_relative_to_basis": is_volterra_basis(a),
        "property_2LI": has_property_2li(a),
        "twin_partition": [[k + 1 for k in c] for c in twin_partition(a).classes],
        "natural_decomposition": decomposition_section(a),
        "ideal_blocks": [[k + 1 for k in part] for part in ideal_block_decomposition(a)],
        "loop_report": loop_section(a, seed),
        "der_dim": der.dim,
        "der_basis": [_mat(d) for d in der.basis],
        "notes": _derivation_notes(a, der.dim),
    }


def canonical_report(a: EvolutionAlgebra) -> dict:
    a2, perm = volterra_canonical(a, verify=True)
    return {
        "canonical_matrix": _mat(a2.matrix),
        "permutation": [k + 1 for k in perm],
        "ideal_blocks": [[k + 1 for k in part] for part in ideal_block_decomposition(a2)],
        "der_dim": derivation_space(a).dim,
        "derivations_equal": True,
    }


def change_basis_report(a: EvolutionAlgebra, p) -> dict:
    change = p if isinstance(p, BasisChange) else BasisChange(p)
    new = change_basis(a, change)
    al = align_decompositions(a, change)
    return {
        "natural": True,
        "new_matrix": _mat(new.matrix),
        "class_alignment": [
            {"old": [k + 1 for k in al.old.classes[t]], "new": [k + 1 for k in al.new.classes[s]]}
            for t, s in sorted(al.mapping.items())
        ],
        "loop_count_old": len(loop_set(a)),
        "loop_count_new": len(loop_set(new)),
        "volterra_new": is_volterra_basis(new),
    }


# integer lists printed as sequences rather than sets
_ORDERED = {"permutation", "squares_basis"}


def _is_matrix(v) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(r, list) and r and isinstance(r[0], str) for r in v)


def _render(value, indent: int, lines: list[str], key: str) -> None:
    pad = "  " * indent
    head = f"{pad}{key}:" if key else pad.rstrip()
    if _is_matrix(value):
        width = max(len(x) for row in value for x in row)
        lines.append(head)
        for row in value:
            lines.append(pad + "  [ " + "  ".join(x.rjust(width) for x in row) + " ]")
    elif isinstance(value, dict):
        if key:
            lines.append(head)
        for k, v in value.items():
            _render(v, indent + (1 if key else 0), lines, k)
    elif isinstance(value, list) and value and all(isinstance(v, list) and not _is_matrix(v) for v in value):
        lines.append(f"{head} " + " ".join("{" + ", ".join(map(str, v)) + "}" for v in value))
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        lines.append(head)
        for n, v in enumerate(value, start=1):
            _render(v, indent + 1, lines, f"[{n}]")
    elif isinstance(value, list) and value and all(isinstance(v, str) for v in value):
        lines.append(head)
        lines.extend(f"{pad}  - {v}" for v in value)
    elif isinstance(value, list) and key in _ORDERED:
        lines.append(f"{head} [" + ", ".join(map(str, value)) + "]")
    elif isinstance(value, list):
        lines.append(f"{head} " + ("{" + ", ".join(map(str, value)) + "}" if value else "none"))
    elif isinstance(value, bool):
        lines.append(f"{head} {'yes' if value else 'no'}")
    else:
        lines.append(f"{head} {value}")


def render_text(report: dict) -> str:
    lines: list[str] = []
    _render(report, 0, lines, "")
    return "\n".join(lines) + "\n"

import random
from fractions import Fraction as F

import pytest

from evoalg import linalg
from evoalg.algebra import (
    EvolutionAlgebra,
    HypothesisError,
    fourth_power,
    ideal_block_decomposition,
    is_non_degenerate,
)
from evoalg.decomposition import natural_decomposition, twin_partition
from evoalg.derivations import (
    assemble_system,
    bipartite_witness,
    cube_sum_implication_holds,
    cube_sums_vanish_on_descendants,
    degenerate_witness,
    derivation_space,
    descendants_witness,
    is_derivation,
    rank_one_singular_witness,
    satisfies_rank_one_characterization,
    satisfies_twin_characterization,
    satisfies_volterra_characterization,
    twin_pair_vanishing_applies,
    volterra_canonical,
)
from evoalg.graph import descendants, first_generation
from generators import (
    random_algebra,
    random_combination,
    random_matrix,
    random_non_degenerate,
    random_pair_class_volterra,
    random_rank_one,
    random_volterra,
)
from oracles import derivation_space_oracle, is_derivation_oracle, same_span

SKEW3 = EvolutionAlgebra.from_rows([[0, 1, 1], [-1, 0, 0], [-1, 0, 0]])


def zeros(n):
    return [[F(0)] * n for _ in range(n)]


# --- exact derivation spaces -------------------------------------------------

def test_zero_algebra_system_is_zero():
    assert all(linalg.is_zero_vector(r) for r in assemble_system(EvolutionAlgebra.zero(2)))
    assert derivation_space(EvolutionAlgebra.zero(2)).dim == 4


def test_one_dim_idempotent():
    assert derivation_space(EvolutionAlgebra.from_rows([[1]])).dim == 0


def test_equal_squares_two_dim(load):
    assert derivation_space(load("two_dim_equal_squares.json")).dim == 0


def test_equal_squares_three_dim(load):
    der = derivation_space(load("three_dim_equal_squares.json"))
    assert der.dim == 1
    (d,) = der.basis
    assert d[2][1] == -d[1][2] != 0
    assert all(d[i][j] == 0 for i in range(3) for j in range(3) if {i, j} != {1, 2})


def test_seven_dim_volterra_has_no_derivations(load):
    assert derivation_space(load("volterra7_odd_cycle.json")).dim == 0


def test_is_derivation_basics(load):
    a = load("three_dim_equal_squares.json")
    assert is_derivation(a, zeros(3))
    for d in derivation_space(a).basis:
        assert is_derivation(a, d)
    with pytest.raises(linalg.ShapeError):
        is_derivation(a, zeros(2))


def test_space_matches_oracle_on_examples(load):
    for name in ("volterra3.json", "bipartite4.json", "mixed_loops3.json", "squares_rank3.json"):
        a = load(name)
        assert same_span(derivation_space(a).flat(), derivation_space_oracle(a.matrix))


# --- characterizations -------------------------------------------------------

def test_twin_characterization_examples(load):
    a = load("bipartite4.json")
    for d in derivation_space(a).basis:
        assert satisfies_twin_characterization(a, d)
    d = zeros(4)
    d[0][2] = F(1)  # 1 and 3 are not twins
    assert not satisfies_twin_characterization(a, d)
    with pytest.raises(HypothesisError):
        satisfies_twin_characterization(EvolutionAlgebra.from_rows([[0, 1], [0, 0]]), zeros(2))


def test_volterra_characterization_examples(load):
    a = load("volterra7_odd_cycle.json")
    assert satisfies_volterra_characterization(a, zeros(7))
    rng = random.Random(41)
    for _ in range(50):
        d = random_matrix(rng, 7, 0.8)
        if any(any(r) for r in d):
            assert not satisfies_volterra_characterization(a, d)
    with pytest.raises(HypothesisError):
        satisfies_volterra_characterization(load("mixed_loops3.json"), zeros(3))


def test_rank_one_characterization_examples(load):
    a = load("three_dim_equal_squares.json")
    (d,) = derivation_space(a).basis
    assert satisfies_rank_one_characterization(a, d)
    bad = zeros(3)
    bad[0][0] = F(1)
    assert not satisfies_rank_one_characterization(a, bad)
    with pytest.raises(HypothesisError):
        satisfies_rank_one_characterization(load("volterra3.json"), zeros(3))
    with pytest.raises(HypothesisError):
        satisfies_rank_one_characterization(EvolutionAlgebra.from_rows([[1, 1], [-1, -1]]), zeros(2))


def test_characterizations_agree_with_oracle():
    rng = random.Random(42)
    checks = {"twin": 0, "volterra": 0, "rank_one": 0}
    for k in range(300):
        n = rng.randint(1, 5)
        kind = k % 3
        if kind == 0:
            a, check, key = random_non_degenerate(rng, n), satisfies_twin_characterization, "twin"
        elif kind == 1:
            a, check, key = random_volterra(rng, n), satisfies_volterra_characterization, "volterra"
        else:
            a, check, key = random_rank_one(rng, n), satisfies_rank_one_characterization, "rank_one"
        if not is_non_degenerate(a):
            continue
        if key == "rank_one" and linalg.is_zero_vector(fourth_power(a, 0)):
            continue
        basis = derivation_space(a).basis
        for d in [random_combination(rng, basis, n), random_matrix(rng, n)]:
            assert check(a, d) == is_derivation_oracle(a.matrix, d)
            checks[key] += 1
    assert min(checks.values()) > 50


# --- witnesses -----------------------------------------------------------------

def test_degenerate_witness():
    a = EvolutionAlgebra.from_rows([[0, 1, 1], [0, 0, 0], [0, 0, 0]])
    b = EvolutionAlgebra.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    d1, d2 = degenerate_witness(b, 1), degenerate_witness(b, 2)
    assert d1[1][1] == 1 and is_derivation_oracle(b.matrix, d1)
    assert linalg.rank([sum(map(list, d1), []), sum(map(list, d2), [])]) == 2
    with pytest.raises(HypothesisError, match="is not zero"):
        degenerate_witness(a, 0)
    with pytest.raises(HypothesisError, match="occurs in the square"):
        degenerate_witness(a, 1)


def test_single_entry_map_fails_when_the_index_occurs_in_a_square():
    a = EvolutionAlgebra.from_rows([[0, 0], [1, 0]])
    single = [[1, 0], [0, 0]]
    assert not is_derivation_oracle(a.matrix, single)
    assert is_derivation_oracle(a.matrix, [[2, 0], [0, 1]])


def test_degenerate_witness_on_random_algebras():
    rng = random.Random(43)
    built = 0
    for _ in range(300):
        a = random_algebra(rng, rng.randint(1, 5), 0.7)
        for ell in range(a.dim):
            if not linalg.is_zero_vector(a.matrix[ell]):
                continue
            if any(a.matrix[k][ell] for k in range(a.dim)):
                with pytest.raises(HypothesisError):
                    degenerate_witness(a, ell)
            else:
                assert is_derivation_oracle(a.matrix, degenerate_witness(a, ell))
                built += 1
    assert built > 30


def test_rank_one_singular_witness():
    a = EvolutionAlgebra.from_rows([[1, 1], [-1, -1]])
    d = rank_one_singular_witness(a)
    assert d == ((1, 1), (1, 1))
    assert is_derivation_oracle(a.matrix, d)
    with pytest.raises(HypothesisError):
        rank_one_singular_witness(EvolutionAlgebra.from_rows([[1, -1], [1, -1]]))


def test_rank_one_singular_witness_random():
    rng = random.Random(44)
    found = 0
    while found < 40:
        a = random_rank_one(rng, rng.randint(2, 5))
        if not linalg.is_zero_vector(fourth_power(a, 0)):
            continue
        d = rank_one_singular_witness(a)
        assert is_derivation_oracle(a.matrix, d)
        assert all(d[i][i] == 1 for i in range(a.dim))
        found += 1


def test_bipartite_witness_example(load):
    a = load("bipartite4.json")
    d = bipartite_witness(a, 0)
    assert d == ((1, -3, 0, 0), (-3, 1, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2))
    assert is_derivation_oracle(a.matrix, d)


def test_bipartite_witness_rejections(load):
    a = load("volterra7_odd_cycle.json")
    with pytest.raises(HypothesisError, match="odd"):
        bipartite_witness(a, 6)
    with pytest.raises(HypothesisError, match="cube sum"):
        bipartite_witness(SKEW3, 0)


def test_descendants_witness_example(load):
    a = load("bipartite4.json")
    d = descendants_witness(a, 0)
    assert d == ((1, -1, 0, 0), (-1, 1, 0, 0), (0, 0, 1, -1), (0, 0, -1, 1))
    with pytest.raises(HypothesisError):
        descendants_witness(SKEW3, 0)


def _witness_instances(rng, count):
    return [random_pair_class_volterra(rng) for _ in range(count)]


def test_witnesses_on_generated_instances():
    rng = random.Random(45)
    built = {"descendants": 0, "bipartite": 0}
    for a in _witness_instances(rng, 60):
        for i in range(a.dim):
            reach = descendants(a, i)
            for name, build in (("descendants", descendants_witness), ("bipartite", bipartite_witness)):
                try:
                    d = build(a, i)
                except HypothesisError:
                    continue
                built[name] += 1
                assert is_derivation_oracle(a.matrix, d)
                assert all(d[k][k] != 0 for k in reach)
                if name == "descendants":
                    assert all(d[k][k] == 1 for k in reach)
    assert min(built.values()) > 20


# --- canonical Volterra algebra -------------------------------------------------

def test_canonical_examples():
    b, perm = volterra_canonical(SKEW3)
    assert b == SKEW3 and perm == [0, 1, 2]
    assert derivation_space(b).dim == 0
    two = EvolutionAlgebra.from_rows([[0, 1], [-1, 0]])
    assert volterra_canonical(two) == (two, [0, 1])


def test_canonical_rejections(load):
    with pytest.raises(HypothesisError, match="fourth power of e_2 is zero"):
        volterra_canonical(load("volterra3.json"))
    with pytest.raises(HypothesisError):
        volterra_canonical(load("mixed_loops3.json"))
    with pytest.raises(HypothesisError):
        volterra_canonical(EvolutionAlgebra.from_rows([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]))


def test_canonical_blocks_and_permutation():
    a = EvolutionAlgebra.from_rows([
        [0, 1, 0, 2],
        [-1, 0, 1, 0],
        [0, -1, 0, 1],
        [-2, 0, -1, 0],
    ])
    b, perm = volterra_canonical(a, verify=False)
    assert sorted(perm) == [0, 1, 2, 3]
    assert len(ideal_block_decomposition(b)) == 2


def test_canonical_even_classes_with_nonzero_cube_sums():
    """With an even number of classes, all of nonzero cube sum, the spaces coincide."""
    from evoalg.derivations import _unpermute, class_cube_sum

    rng = random.Random(46)
    done = 0
    while done < 60:
        a = random_volterra(rng, rng.randint(2, 6))
        if not is_non_degenerate(a) or any(linalg.is_zero_vector(fourth_power(a, i)) for i in range(a.dim)):
            continue
        dec = natural_decomposition(a)
        if dec.r % 2 or any(class_cube_sum(dec, c[0]) == 0 for c in dec.classes):
            continue
        b, perm = volterra_canonical(a)
        back = [sum(map(list, _unpermute(d, perm)), []) for d in derivation_space(b).basis]
        assert same_span(derivation_space(a).flat(), back)
        done += 1


# --- cube sums and fourth powers ------------------------------------------------

def test_cube_sum_examples(load):
    v3 = load("volterra3.json")
    assert cube_sums_vanish_on_descendants(v3, 1)
    assert linalg.is_zero_vector(fourth_power(v3, 1))
    assert not any(cube_sums_vanish_on_descendants(SKEW3, i) for i in range(3))
    assert cube_sum_implication_holds(v3) and cube_sum_implication_holds(SKEW3)


# --- twin-pair vanishing ------------------------------------------------------

def test_twin_pair_vanishing_trivial_cases(load):
    assert not twin_pair_vanishing_applies(load("volterra7_odd_cycle.json"), 0, 1, 1)
    a = load("bipartite4.json")
    # twin class {1, 2}: w_{3,1}^3 = (-1)^3 equals w_{2,3}^3 = (-1)^3
    assert not twin_pair_vanishing_applies(a, 0, 1, 2)


def test_twin_pair_vanishing_on_derivations():
    rng = random.Random(47)
    hits = 0
    for _ in range(3000):
        a = random_volterra(rng, rng.randint(3, 6))
        if not is_non_degenerate(a):
            continue
        tp = twin_partition(a)
        triples = [
            (i, j, ell)
            for cls in tp.classes if len(cls) == 2
            for i, j in (cls, cls[::-1])
            for ell in first_generation(a, i)
            if twin_pair_vanishing_applies(a, i, j, ell)
        ]
        if not triples:
            continue
        basis = derivation_space(a).basis
        for i, j, ell in triples:
            hits += 1
            for d in basis:
                assert d[i][j] == d[j][i] == d[i][i] == d[j][j] == d[ell][ell] == 0
    assert hits > 20

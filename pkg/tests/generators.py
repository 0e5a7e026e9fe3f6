"""Random instance generators shared by the property and acceptance suites."""

from __future__ import annotations

import random
from fractions import Fraction

from evoalg.algebra import EvolutionAlgebra

ALPHAS = [Fraction(x) for x in (1, -1, 2, -2)] + [Fraction(1, 2), Fraction(-1, 2)]


def random_algebra(rng: random.Random, n: int, zero_density: float = 0.4) -> EvolutionAlgebra:
    """Entries from -2..2, each forced to zero with probability ``zero_density``."""
    return EvolutionAlgebra.from_rows(
        [[0 if rng.random() < zero_density else rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
    )


def random_non_degenerate(rng: random.Random, n: int, zero_density: float = 0.4) -> EvolutionAlgebra:
    while True:
        a = random_algebra(rng, n, zero_density)
        if all(any(x != 0 for x in row) for row in a.matrix):
            return a


def random_class_assignment(rng: random.Random, n: int, r: int) -> list[int]:
    """Surjective map from n indices onto r class labels, in random order."""
    labels = list(range(r)) + [rng.randrange(r) for _ in range(n - r)]
    rng.shuffle(labels)
    return labels


def random_volterra(rng: random.Random, n: int, r: int | None = None, zero_density: float = 0.3) -> EvolutionAlgebra:
    """Skew structure matrix ``w_kj = a_k a_j S[c(k)][c(j)]`` with S skew.

    Indices sharing a label get proportional squares; labels with equal or
    zero S-rows merge or become annihilator indices.
    """
    r = r if r is not None else rng.randint(1, n)
    c = random_class_assignment(rng, n, r)
    s = [[Fraction(0)] * r for _ in range(r)]
    for x in range(r):
        for y in range(x + 1, r):
            v = 0 if rng.random() < zero_density else rng.choice([-2, -1, 1, 2])
            s[x][y], s[y][x] = Fraction(v), Fraction(-v)
    al = [rng.choice(ALPHAS) for _ in range(n)]
    return EvolutionAlgebra.from_rows(
        [[al[k] * al[j] * s[c[k]][c[j]] for j in range(n)] for k in range(n)]
    )


def random_rank_one(rng: random.Random, n: int) -> EvolutionAlgebra:
    """All squares proportional to one nonzero vector."""
    while True:
        v = [rng.randint(-2, 2) for _ in range(n)]
        if any(v):
            break
    coef = [rng.choice(ALPHAS) for _ in range(n)]
    coef[0] = Fraction(1)
    return EvolutionAlgebra.from_rows([[c * x for x in v] for c in coef])


def random_matrix(rng: random.Random, n: int, zero_density: float = 0.5) -> list[list[Fraction]]:
    return [[Fraction(0) if rng.random() < zero_density else Fraction(rng.randint(-3, 3)) for _ in range(n)]
            for _ in range(n)]


def random_combination(rng: random.Random, basis, n: int) -> list[list[Fraction]]:
    """Random integer combination of derivation-space basis matrices."""
    d = [[Fraction(0)] * n for _ in range(n)]
    for b in basis:
        c = rng.randint(-3, 3)
        for i in range(n):
            for j in range(n):
                d[i][j] += c * b[i][j]
    return d


def random_pair_class_volterra(rng: random.Random) -> EvolutionAlgebra:
    """Non-degenerate Volterra algebra whose classes are scaled pairs ``(c, -c)``.

    Every class then has zero cube sum; over the rationals a class of size
    three never does.
    """
    while True:
        r = rng.randint(2, 3)
        c = [t for t in range(r) for _ in range(2)]
        al = []
        for _ in range(r):
            x = Fraction(rng.choice([1, 2, Fraction(1, 2)]))
            al += [x, -x]
        s = [[Fraction(0)] * r for _ in range(r)]
        for x in range(r):
            for y in range(x + 1, r):
                v = rng.choice([0, 1, -1, 2])
                s[x][y], s[y][x] = Fraction(v), Fraction(-v)
        n = len(c)
        a = EvolutionAlgebra.from_rows([[al[k] * al[j] * s[c[k]][c[j]] for j in range(n)] for k in range(n)])
        if all(any(row) for row in a.matrix):
            return a


def random_loop_instance(rng: random.Random, max_dim: int = 5) -> EvolutionAlgebra:
    """Mix of Volterra algebras, algebras with repeated proportional rows and plain random ones."""
    n = rng.randint(1, max_dim)
    kind = rng.random()
    if kind < 0.3:
        return random_volterra(rng, n)
    if kind < 0.6:
        # proportional rows make multi-member classes common
        rows = [list(r) for r in random_algebra(rng, n, 0.3).matrix]
        for i in range(1, n):
            if rng.random() < 0.5:
                j = rng.randrange(i)
                rows[i] = [rng.choice([1, -1, 2]) * x for x in rows[j]]
        return EvolutionAlgebra.from_rows(rows)
    return random_algebra(rng, n, 0.4)

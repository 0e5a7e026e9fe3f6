"""Directed graph associated to an evolution algebra relative to its basis.

There is an arrow ``i -> j`` exactly when ``w_ij != 0``, so the graph has at
most one arrow between two vertices and loops correspond to nonzero
diagonal entries.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import networkx as nx

from .algebra import EvolutionAlgebra


@dataclass(frozen=True)
class AlgebraGraph:
    successors: tuple[frozenset[int], ...]

    @classmethod
    def from_algebra(cls, a: EvolutionAlgebra) -> "AlgebraGraph":
        return cls(tuple(frozenset(k for k, w in enumerate(row) if w != 0) for row in a.matrix))

    @property
    def n(self) -> int:
        return len(self.successors)

    @property
    def adjacency(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(j in s for j in range(self.n)) for s in self.successors)

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from((i, j) for i, s in enumerate(self.successors) for j in s)
        return g


GraphLike = Union[EvolutionAlgebra, AlgebraGraph]


def as_graph(g: GraphLike) -> AlgebraGraph:
    return AlgebraGraph.from_algebra(g) if isinstance(g, EvolutionAlgebra) else g


def first_generation(g: GraphLike, i: int) -> frozenset[int]:
    return as_graph(g).successors[i]


def generation(g: GraphLike, i: int, m: int) -> frozenset[int]:
    """The m-th generation descendants of ``i`` (``m >= 1``)."""
    if m < 1:
        raise ValueError("generation index must be >= 1")
    g = as_graph(g)
    current = g.successors[i]
    for _ in range(m - 1):
        current = frozenset().union(*(g.successors[k] for k in current))
    return current


def descendants(g: GraphLike, i: int) -> frozenset[int]:
    """Vertices reachable from ``i`` by a path of length at least one."""
    return frozenset(distances_from(g, i))


def distances_from(g: GraphLike, i: int) -> dict[int, int]:
    """Shortest path length (>= 1) from ``i`` to every reachable vertex."""
    g = as_graph(g)
    dist = {j: 1 for j in g.successors[i]}
    queue = deque(sorted(dist))
    while queue:
        v = queue.popleft()
        for w in sorted(g.successors[v]):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distance(g: GraphLike, i: int, j: int) -> Optional[int]:
    """Length of a shortest path from ``i`` to ``j``; None if there is none.

    For ``i == j`` this is the length of the shortest closed path through i.
    """
    return distances_from(g, i).get(j)


def has_odd_cycle(g: GraphLike, restrict: Optional[Iterable[int]] = None) -> bool:
    """Whether the subgraph induced on ``restrict`` has a directed odd cycle.

    A strongly connected digraph has an odd cycle exactly when its vertices
    cannot be 2-coloured with every internal arrow joining different colours.
    """
    g = as_graph(g)
    nxg = g.to_networkx()
    if restrict is not None:
        nxg = nxg.subgraph(set(restrict))
    for comp in nx.strongly_connected_components(nxg):
        start = min(comp)
        colour = {start: 0}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in nxg.successors(v):
                if w not in comp:
                    continue
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return True
    return False

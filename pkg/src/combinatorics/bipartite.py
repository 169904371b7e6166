"""Maximum-cardinality bipartite matching with capacitated right nodes."""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Hashable, Mapping, Optional, Tuple

import networkx as nx
from networkx.algorithms import bipartite

from src.models.errors import InvalidGraph

logger = logging.getLogger(__name__)

Node = Hashable


@dataclass(frozen=True)
class BipartiteGraph:
    """Left nodes, capacitated right nodes and the edges between them."""

    left: Tuple[Node, ...]
    right: Mapping[Node, int]
    edges: FrozenSet[Tuple[Node, Node]]
    _adjacency: Dict[Node, Tuple[Node, ...]] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", dict(self.right))
        object.__setattr__(self, "edges", frozenset(self.edges))
        object.__setattr__(
            self,
            "_adjacency",
            {l: tuple(r for r in self.right if (l, r) in self.edges) for l in self.left},
        )

    def validate(self) -> "BipartiteGraph":
        if len(set(self.left)) != len(self.left):
            raise InvalidGraph("duplicate left nodes")
        left = set(self.left)
        for l, r in self.edges:
            if l not in left or r not in self.right:
                raise InvalidGraph(f"edge ({l!r}, {r!r}) references an undeclared node")
        for r, cap in self.right.items():
            if cap < 0:
                raise InvalidGraph(f"negative capacity on {r!r}")
        return self

    def neighbors(self, node: Node) -> Tuple[Node, ...]:
        """Right neighbours of a left node in declaration order."""
        return self._adjacency[node]


@dataclass(frozen=True)
class CardinalityMatching:
    size: int
    pairs: Mapping[Node, Node]


def max_cardinality_matching(graph: BipartiteGraph) -> CardinalityMatching:
    """Hopcroft-Karp on the graph with every right node copied once per unit."""
    graph.validate()
    g = nx.Graph()
    top = [("L", l) for l in graph.left]
    g.add_nodes_from(top, bipartite=0)
    for r, cap in graph.right.items():
        g.add_nodes_from((("R", r, k) for k in range(cap)), bipartite=1)
    for l in graph.left:
        for r in graph.neighbors(l):
            g.add_edges_from((("L", l), ("R", r, k)) for k in range(graph.right[r]))

    mate = bipartite.hopcroft_karp_matching(g, top_nodes=top)
    pairs = {l: mate[("L", l)][1] for l in graph.left if ("L", l) in mate}
    logger.debug("max-cardinality matching of size %d", len(pairs))
    return CardinalityMatching(size=len(pairs), pairs=pairs)


def brute_force_max_cardinality(graph: BipartiteGraph) -> int:
    """Exhaustive optimum over every capacity-respecting choice of the left nodes."""
    graph.validate()
    rights = tuple(graph.right)
    index = {r: k for k, r in enumerate(rights)}

    @lru_cache(maxsize=None)
    def best(position: int, remaining: Tuple[int, ...]) -> int:
        if position == len(graph.left):
            return 0
        value = best(position + 1, remaining)
        for r in graph.neighbors(graph.left[position]):
            k = index[r]
            if remaining[k] > 0:
                rest = remaining[:k] + (remaining[k] - 1,) + remaining[k + 1:]
                value = max(value, 1 + best(position + 1, rest))
        return value

    return best(0, tuple(graph.right[r] for r in rights))


def is_feasible_matching(graph: BipartiteGraph, pairs: Mapping[Node, Optional[Node]]) -> bool:
    """Pairs use graph edges only and stay within right capacities."""
    load: Dict[Node, int] = {}
    for l, r in pairs.items():
        if r is None:
            continue
        if (l, r) not in graph.edges:
            return False
        load[r] = load.get(r, 0) + 1
    return all(load[r] <= graph.right[r] for r in load)

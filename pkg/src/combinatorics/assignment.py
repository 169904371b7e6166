"""Maximum-weight assignment with lexicographic integer weights."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, Hashable, Mapping, Optional, Tuple, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from src.combinatorics.bipartite import BipartiteGraph, Node

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class LexWeight:
    """Weight ``major·κ + minor·ε`` with κ dominating any number of ε."""

    major: int = 0
    minor: int = 0

    def __add__(self, other: "LexWeight") -> "LexWeight":
        return LexWeight(self.major + other.major, self.minor + other.minor)


class Forbidden(Enum):
    FORBIDDEN = "forbidden"


FORBIDDEN = Forbidden.FORBIDDEN
ZERO = LexWeight()
KAPPA = LexWeight(1, 0)
EPSILON = LexWeight(0, 1)

Weight = Union[LexWeight, Forbidden]


@dataclass(frozen=True)
class WeightedAssignment:
    """Weights of left/right pairs; pairs not listed weigh ZERO, leaving a node unassigned
    always weighs ZERO."""

    weights: Mapping[Tuple[Hashable, Hashable], Weight] = field(default_factory=dict)

    def weight(self, graph: BipartiteGraph, left: Node, right: Node) -> Weight:
        if (left, right) not in graph.edges:
            return FORBIDDEN
        return self.weights.get((left, right), ZERO)


@dataclass(frozen=True)
class AssignmentResult:
    assignment: Mapping[Node, Optional[Node]]
    objective: LexWeight

    @property
    def size(self) -> int:
        return sum(1 for r in self.assignment.values() if r is not None)


def _objective(
    graph: BipartiteGraph, weights: WeightedAssignment, assignment: Mapping[Node, Optional[Node]]
) -> LexWeight:
    total = ZERO
    for l, r in assignment.items():
        if r is not None:
            total = total + weights.weight(graph, l, r)
    return total


def solve_assignment(graph: BipartiteGraph, weights: WeightedAssignment) -> AssignmentResult:
    """Capacity-respecting assignment maximizing the lexicographic total weight.

    Each right node is copied once per unit and every left node gets a private zero-weight
    UNASSIGNED column. A lexicographic weight is encoded as ``major·scale + minor`` with
    ``scale`` above twice the largest attainable ``|minor|`` total, which preserves the order
    exactly; forbidden cells get a penalty below any attainable objective.
    """
    graph.validate()
    n_left = len(graph.left)
    if n_left == 0:
        return AssignmentResult(assignment={}, objective=ZERO)

    slots = [r for r in graph.right for _ in range(graph.right[r])]
    table = [
        [weights.weight(graph, l, r) for r in slots] for l in graph.left
    ]
    allowed = [w for row in table for w in row if w is not FORBIDDEN]
    minor_bound = n_left * max((abs(w.minor) for w in allowed), default=0)
    scale = 2 * minor_bound + 1
    encoded = [w.major * scale + w.minor for w in allowed]
    penalty = -(n_left * max((abs(v) for v in encoded), default=0) + 1)

    matrix = np.full((n_left, len(slots) + n_left), penalty, dtype=np.int64)
    for i, row in enumerate(table):
        for j, w in enumerate(row):
            if w is not FORBIDDEN:
                matrix[i, j] = w.major * scale + w.minor
        matrix[i, len(slots) + i] = 0

    rows, cols = linear_sum_assignment(matrix, maximize=True)
    assignment: Dict[Node, Optional[Node]] = {l: None for l in graph.left}
    for i, j in zip(rows, cols):
        if j < len(slots):
            if table[i][j] is FORBIDDEN:
                raise RuntimeError("assignment solver selected a forbidden pair")
            assignment[graph.left[i]] = slots[j]

    objective = _objective(graph, weights, assignment)
    logger.debug("assignment objective %s over %d left nodes", objective, n_left)
    return AssignmentResult(assignment=assignment, objective=objective)


def brute_force_assignment(graph: BipartiteGraph, weights: WeightedAssignment) -> LexWeight:
    """Exhaustive optimum of the assignment problem."""
    graph.validate()
    rights = tuple(graph.right)
    index = {r: k for k, r in enumerate(rights)}

    @lru_cache(maxsize=None)
    def best(position: int, remaining: Tuple[int, ...]) -> LexWeight:
        if position == len(graph.left):
            return ZERO
        left = graph.left[position]
        value = best(position + 1, remaining)
        for r in graph.neighbors(left):
            w = weights.weight(graph, left, r)
            k = index[r]
            if w is FORBIDDEN or remaining[k] == 0:
                continue
            rest = remaining[:k] + (remaining[k] - 1,) + remaining[k + 1:]
            value = max(value, w + best(position + 1, rest))
        return value

    return best(0, tuple(graph.right[r] for r in rights))

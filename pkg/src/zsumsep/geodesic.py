"""Positive lengths and diameters on the directed Cayley graph of ``G``.

The BFS runs over the whole group as an index array; one table per
``(group, step set)`` is memoized.  Concurrent callers may compute the same
table twice; the results are identical so the race is harmless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from . import kernels
from .errors import BudgetExceeded, Unreachable
from .group import AbelianGroup, GroupElement, tables
from .seqmonoid import SeqVec, sigma

INF = math.inf


@dataclass(frozen=True)
class WalkTable:
    group: AbelianGroup
    steps: tuple[GroupElement, ...]
    dist: tuple[int, ...]  # -1 where unreachable

    def length(self, g: GroupElement):
        d = self.dist[g.index]
        return INF if d < 0 else d

    def generates(self) -> bool:
        return min(self.dist) >= 0

    def diameter(self) -> int:
        if not self.generates():
            raise ValueError(f"steps {[s.residues for s in self.steps]} do not generate {self.group}")
        return max(self.dist)


@lru_cache(maxsize=4096)
def _walk(factors: tuple[int, ...], step_idx: tuple[int, ...]) -> tuple[int, ...]:
    tab = tables(AbelianGroup(factors))
    return tuple(kernels.bfs_distances(tab, step_idx))


def walk_table(G: AbelianGroup, steps: Sequence[GroupElement]) -> WalkTable:
    steps = tuple(steps)
    return WalkTable(G, steps, _walk(G.factors, tuple(s.index for s in steps)))


def positive_length(G: AbelianGroup, steps: Sequence[GroupElement], g: GroupElement):
    return walk_table(G, steps).length(g)


def positive_diameter(G: AbelianGroup, steps: Sequence[GroupElement]) -> int:
    return walk_table(G, steps).diameter()


def absolute_positive_diameter(G: AbelianGroup, max_order: int = 20) -> int:
    """Maximum positive diameter over every generating subset of ``G``.

    Subsets are drawn from ``G \\ {0}``: adding 0 to a step set never changes
    a distance.  Non-generating subsets fall out of the BFS cheaply.
    """
    if G.order > max_order:
        raise BudgetExceeded(f"2^{G.order - 1} subsets of {G} exceed the budget (order <= {max_order})")
    if G.is_trivial():
        return 0
    tab = tables(G)
    best = 0
    nonzero = range(1, tab.order)
    for size in range(1, tab.order):
        for subset in combinations(nonzero, size):
            dist = kernels.bfs_distances(tab, subset)
            if min(dist) >= 0:
                best = max(best, max(dist))
    return best


def is_geodesic(S: SeqVec) -> bool:
    return len(S) == positive_length(S.group, S.support.elems, sigma(S))


def min_positive_representation(G: AbelianGroup, steps: Sequence[GroupElement], target: GroupElement) -> tuple[int, ...]:
    """A shortest nonnegative representation of ``target`` over ``steps``.

    Among shortest representations, returns the one whose word of step
    positions (written in nondecreasing order) is lexicographically smallest,
    e.g. ``(2, 0)`` rather than ``(0, 2)``.  Built greedily from BFS distances:
    the lexicographically least word over all orderings is already sorted.
    """
    steps = tuple(steps)
    wt = walk_table(G, steps)
    if wt.dist[target.index] < 0:
        raise Unreachable(f"{target} is not in the subgroup generated by the steps")
    tab = tables(G)
    N = tab.order
    idx = [s.index for s in steps]
    negs = [tab.neg[i] for i in idx]
    coeffs = [0] * len(steps)
    cur = target.index
    left = wt.dist[cur]
    while left:
        for i, ni in enumerate(negs):
            prev = tab.add[cur * N + ni]
            if wt.dist[prev] == left - 1:
                coeffs[i] += 1
                cur = prev
                left -= 1
                break
    return tuple(coeffs)

"""Intersection graphs, maximum spanning trees, and junction-tree admission.

Member sets become vertices of a complete weighted graph whose edge weights
are the pairwise intersection sizes.  A spanning tree of that graph is a
junction tree exactly when, for every tree edge, the two sides of the cut
only share indices that the edge's own intersection already contains.  The
family admits a junction tree if and only if one (equivalently every)
maximum spanning tree passes that test, so admission is a single greedy
tree construction plus one sweep of cut checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .cdc import IndexSetFamily
from .errors import InputError


@dataclass(frozen=True)
class IntersectionGraph:
    """Complete graph on the member-set ordinals, weighted by overlap size."""

    size: int
    mids: dict[tuple[int, int], frozenset[int]]

    def mid(self, i: int, j: int) -> frozenset[int]:
        if i > j:
            i, j = j, i
        return self.mids[(i, j)]

    def weight(self, i: int, j: int) -> int:
        return len(self.mid(i, j))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.mids)


class CandidateTree:
    """A spanning tree over the member-set ordinals of a family.

    Edges carry the intersection of their two endpoint sets as middle set.
    Construction validates connectivity and acyclicity.
    """

    __slots__ = ("size", "edges", "mids")

    def __init__(self, family: IndexSetFamily, edges: Iterable[tuple[int, int]]):
        d = len(family)
        normalized = tuple(sorted((min(i, j), max(i, j)) for i, j in edges))
        for i, j in normalized:
            if not (0 <= i < d and 0 <= j < d) or i == j:
                raise InputError(f"edge ({i}, {j}) is not a valid ordinal pair")
        if len(set(normalized)) != len(normalized) or len(normalized) != d - 1:
            raise InputError(f"a spanning tree over {d} sets needs {d - 1} distinct edges")
        parent = list(range(d))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in normalized:
            ri, rj = find(i), find(j)
            if ri == rj:
                raise InputError("edges contain a cycle")
            parent[ri] = rj
        self.size = d
        self.edges = normalized
        self.mids = {
            (i, j): family.sets[i] & family.sets[j] for i, j in normalized
        }

    def mid(self, i: int, j: int) -> frozenset[int]:
        if i > j:
            i, j = j, i
        return self.mids[(i, j)]

    @property
    def weight(self) -> int:
        return sum(len(m) for m in self.mids.values())

    def distance(self, other: "CandidateTree") -> int:
        """Number of edges of this tree absent from the other."""
        if self.size != other.size:
            raise InputError("trees span different vertex counts")
        return len(set(self.edges) - set(other.edges))

    def neighbors(self, v: int) -> list[int]:
        out = [j for i, j in self.edges if i == v] + [i for i, j in self.edges if j == v]
        return sorted(out)

    def split(self, edge: tuple[int, int]) -> tuple[set[int], set[int]]:
        """Vertex sets of the two components of the tree minus ``edge``."""
        i, j = min(edge), max(edge)
        adj: dict[int, list[int]] = {v: [] for v in range(self.size)}
        for a, b in self.edges:
            if (a, b) != (i, j):
                adj[a].append(b)
                adj[b].append(a)
        side = {i}
        stack = [i]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in side:
                    side.add(w)
                    stack.append(w)
        return side, set(range(self.size)) - side

    def to_json(self) -> str:
        return json.dumps(
            {
                "edges": [list(e) for e in self.edges],
                "mids": [sorted(self.mids[e]) for e in self.edges],
            }
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CandidateTree)
            and self.size == other.size
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.size, self.edges))

    def __repr__(self) -> str:
        return f"CandidateTree(size={self.size}, edges={list(self.edges)})"


def intersection_graph(family: IndexSetFamily) -> IntersectionGraph:
    """Complete weighted graph of pairwise member-set intersections."""
    d = len(family)
    mids = {
        (i, j): family.sets[i] & family.sets[j]
        for i, j in combinations(range(d), 2)
    }
    return IntersectionGraph(d, mids)


def maximum_spanning_tree(g: IntersectionGraph) -> tuple[tuple[int, int], ...]:
    """Greedy maximum spanning tree, deterministic under ties.

    Edges are scanned by weight descending, then by ordinal pair ascending,
    so repeated runs always pick the same tree.
    """
    order = sorted(g.mids, key=lambda e: (-len(g.mids[e]), e))
    parent = list(range(g.size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for i, j in order:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            chosen.append((i, j))
            if len(chosen) == g.size - 1:
                break
    return tuple(sorted(chosen))


def maximum_spanning_tree_of(family: IndexSetFamily) -> CandidateTree:
    """Convenience wrapper returning a :class:`CandidateTree`."""
    return CandidateTree(family, maximum_spanning_tree(intersection_graph(family)))


def is_junction_tree(family: IndexSetFamily, tree: CandidateTree) -> bool:
    """Cut test: each edge's two sides may only share what its middle set holds."""
    if tree.size != len(family):
        raise InputError("tree does not span the family's member sets")
    for edge in tree.edges:
        left, right = tree.split(edge)
        union_left: frozenset[int] = frozenset()
        for v in left:
            union_left |= family.sets[v]
        union_right: frozenset[int] = frozenset()
        for v in right:
            union_right |= family.sets[v]
        if not union_left & union_right <= tree.mids[edge]:
            return False
    return True


def admits_junction_tree(family: IndexSetFamily) -> Optional[CandidateTree]:
    """A junction tree of the family, or ``None`` when none exists.

    Only one maximum spanning tree is tested: a non-maximum tree can never
    qualify, and among maximum trees either all qualify or none does.
    """
    tree = maximum_spanning_tree_of(family)
    return tree if is_junction_tree(family, tree) else None

"""Biclique covers of conflict graphs via junction-tree separation and merging.

Cutting any edge of a junction tree yields a biclique of the conflict graph:
take the index unions of the two sides and strip the edge's middle set.
Recursing on both sides covers every conflict edge with at most one biclique
per tree edge; a greedy second pass then merges compatible bicliques to
shrink the cover.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cdc import ConflictGraph, IndexSetFamily, conflict_graph
from .errors import InputError, InvariantError, NoJunctionTreeError
from .jtree import CandidateTree, admits_junction_tree, is_junction_tree


@dataclass(frozen=True)
class Biclique:
    """Two disjoint nonempty vertex sides; the cross edges are implied."""

    side_a: frozenset[int]
    side_b: frozenset[int]

    def __post_init__(self):
        if not self.side_a or not self.side_b:
            raise InputError("biclique sides must be nonempty")
        if self.side_a & self.side_b:
            raise InputError("biclique sides must be disjoint")

    def cross_pairs(self) -> Iterable[tuple[int, int]]:
        for u in self.side_a:
            for v in self.side_b:
                yield (u, v) if u < v else (v, u)


class BicliqueCover:
    """An ordered collection of bicliques meant to cover a conflict graph."""

    __slots__ = ("bicliques",)

    def __init__(self, bicliques: Iterable[Biclique] = ()):
        self.bicliques: tuple[Biclique, ...] = tuple(bicliques)

    def __len__(self) -> int:
        return len(self.bicliques)

    def __iter__(self):
        return iter(self.bicliques)

    def __getitem__(self, k: int) -> Biclique:
        return self.bicliques[k]

    def __eq__(self, other) -> bool:
        return isinstance(other, BicliqueCover) and self.bicliques == other.bicliques

    def __repr__(self) -> str:
        return f"BicliqueCover({list(self.bicliques)!r})"

    def to_json(self) -> str:
        return json.dumps(
            {
                "bicliques": [
                    {"a": sorted(b.side_a), "b": sorted(b.side_b)} for b in self.bicliques
                ]
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "BicliqueCover":
        data = json.loads(text)
        return cls(
            Biclique(frozenset(item["a"]), frozenset(item["b"]))
            for item in data["bicliques"]
        )


def is_biclique(g: ConflictGraph, side_a: Iterable[int], side_b: Iterable[int]) -> bool:
    """True iff the two sides are disjoint, nonempty, and fully cross-connected."""
    a, b = frozenset(side_a), frozenset(side_b)
    if not a or not b or a & b:
        return False
    if not (a <= g.vertices and b <= g.vertices):
        return False
    return all(g.has_edge(u, v) for u in a for v in b)


def _choose_cut(vertices: list[int], edges: list[tuple[int, int]]) -> tuple[int, int]:
    """Edge whose removal balances the two components best; ties by ordinal pair."""
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    best = None
    for e in sorted(edges):
        side = {e[0]}
        stack = [e[0]]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if (v, w) != e and (w, v) != e and w not in side:
                    side.add(w)
                    stack.append(w)
        diff = abs(len(side) - (len(vertices) - len(side)))
        if best is None or diff < best[0]:
            best = (diff, e)
    assert best is not None
    return best[1]


def separation(family: IndexSetFamily, tree: CandidateTree) -> list[Biclique]:
    """Recursive tree-cut bicliques, in the top-down pop-first ordering.

    The caller is responsible for passing a junction tree; only the tree
    shape is re-validated here.  Candidates that lose a whole side to the
    middle set are dropped since they would carry no conflict edges.
    """
    if tree.size != len(family):
        raise InputError("tree does not span the family's member sets")
    assert is_junction_tree(family, tree), "separation needs a junction tree"

    def recurse(vertices: list[int], edges: list[tuple[int, int]]) -> list[Biclique]:
        if len(vertices) <= 1:
            return []
        cut = _choose_cut(vertices, edges)
        mid = tree.mids[cut]
        left, right = tree.split(cut)
        left &= set(vertices)
        right &= set(vertices)
        union_left: frozenset[int] = frozenset()
        for v in left:
            union_left |= family.sets[v]
        union_right: frozenset[int] = frozenset()
        for v in right:
            union_right |= family.sets[v]
        side_a = union_left - mid
        side_b = union_right - mid
        sub_left = [e for e in edges if e != cut and e[0] in left and e[1] in left]
        sub_right = [e for e in edges if e != cut and e[0] in right and e[1] in right]
        first = recurse(sorted(left), sub_left)
        second = recurse(sorted(right), sub_right)
        out: list[Biclique] = []
        if side_a and side_b:
            out.append(Biclique(side_a, side_b))
        if first:
            out.append(first.pop(0))
        if second:
            out.append(second.pop(0))
        out.extend(first)
        out.extend(second)
        return out

    return recurse(list(range(tree.size)), list(tree.edges))


def merge_cover(
    bicliques: Sequence[Biclique], g: ConflictGraph, fixpoint: bool = False
) -> BicliqueCover:
    """Greedy single pass merging each biclique into the first compatible one.

    Both orientations of a union are tried before giving up and appending.
    ``fixpoint`` repeats the pass until the cover stops shrinking; the
    default single pass is the reference behaviour.
    """
    current = list(bicliques)
    while True:
        merged: list[Biclique] = []
        for cand in current:
            placed = False
            for idx, acc in enumerate(merged):
                for a, b in (
                    (acc.side_a | cand.side_a, acc.side_b | cand.side_b),
                    (acc.side_a | cand.side_b, acc.side_b | cand.side_a),
                ):
                    if is_biclique(g, a, b):
                        merged[idx] = Biclique(a, b)
                        placed = True
                        break
                if placed:
                    break
            if not placed:
                merged.append(cand)
        if not fixpoint or len(merged) == len(current):
            return BicliqueCover(merged)
        current = merged


def verify_cover(g: ConflictGraph, cover: BicliqueCover) -> bool:
    """True iff every member is a biclique of ``g`` and together they hit every edge."""
    covered: set[tuple[int, int]] = set()
    for b in cover:
        if not is_biclique(g, b.side_a, b.side_b):
            return False
        covered.update(b.cross_pairs())
    return covered == set(g.edges)


def heuristic_cover(family: IndexSetFamily, fixpoint: bool = False) -> BicliqueCover:
    """Junction-tree admission, separation, then greedy merging.

    Raises :class:`NoJunctionTreeError` when the family does not admit a
    junction tree.  The result always verifies against the conflict graph
    and never exceeds one biclique per tree edge.
    """
    tree = admits_junction_tree(family)
    if tree is None:
        raise NoJunctionTreeError(
            "family admits no junction tree; rewrite it with the transform module"
        )
    g = conflict_graph(family)
    cover = merge_cover(separation(family, tree), g, fixpoint=fixpoint)
    if not verify_cover(g, cover):
        raise InvariantError("heuristic produced a non-covering result")
    if len(cover) > max(len(family) - 1, 0):
        raise InvariantError("heuristic exceeded the tree-edge bound")
    return cover


def disjoint_level_cover(family: IndexSetFamily, tree: CandidateTree) -> BicliqueCover:
    """Separation with all same-depth bicliques fused into one.

    Only valid when the member sets are pairwise disjoint: the conflict
    graph is then complete multipartite, so bicliques produced at the same
    recursion depth can always be combined side-wise.
    """
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            if family.sets[i] & family.sets[j]:
                raise InputError("level merging needs pairwise disjoint member sets")
    levels: dict[int, tuple[set[int], set[int]]] = {}

    def recurse(vertices: list[int], edges: list[tuple[int, int]], depth: int):
        if len(vertices) <= 1:
            return
        cut = _choose_cut(vertices, edges)
        left, right = tree.split(cut)
        left &= set(vertices)
        right &= set(vertices)
        acc = levels.setdefault(depth, (set(), set()))
        for v in left:
            acc[0].update(family.sets[v])
        for v in right:
            acc[1].update(family.sets[v])
        recurse(sorted(left), [e for e in edges if e != cut and e[0] in left and e[1] in left], depth + 1)
        recurse(sorted(right), [e for e in edges if e != cut and e[0] in right and e[1] in right], depth + 1)

    recurse(list(range(tree.size)), list(tree.edges), 0)
    return BicliqueCover(
        Biclique(frozenset(a), frozenset(b))
        for _, (a, b) in sorted(levels.items())
        if a and b
    )

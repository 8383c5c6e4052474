"""Core data model for combinatorial disjunctive constraints.

A constraint is described purely combinatorially by a family of index sets
over a common ground set.  A subset of the ground set is feasible when some
member set contains it; the two-element infeasible subsets form the conflict
graph, and the minimal infeasible subsets decide whether the constraint can
be split into two-sided alternatives.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import InputError, RedundantFamilyWarning, SizeGuardError


class IndexSetFamily:
    """An ordered family of nonempty index sets over non-negative integers.

    Order is preserved and significant: every algorithm in this package
    iterates the members deterministically.  Exact duplicates are rejected;
    a member contained in another only triggers a warning because the MIP
    builders stay correct on redundant families.
    """

    __slots__ = ("sets",)

    def __init__(self, sets: Iterable[Iterable[int]]):
        members = []
        for raw in sets:
            s = frozenset(raw)
            if not s:
                raise InputError("member sets must be nonempty")
            for v in s:
                if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                    raise InputError(f"indices must be non-negative integers, got {v!r}")
            members.append(s)
        if not members:
            raise InputError("a family needs at least one member set")
        if len(set(members)) != len(members):
            raise InputError("duplicate member sets are not allowed")
        self.sets: tuple[frozenset[int], ...] = tuple(members)
        for a, b in combinations(self.sets, 2):
            if a <= b or b <= a:
                warnings.warn(
                    "family is redundant: one member set contains another",
                    RedundantFamilyWarning,
                    stacklevel=2,
                )
                break

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.sets)

    def __eq__(self, other) -> bool:
        return isinstance(other, IndexSetFamily) and self.sets == other.sets

    def __hash__(self) -> int:
        return hash(self.sets)

    def __repr__(self) -> str:
        inner = ", ".join("{" + ", ".join(map(str, sorted(s))) + "}" for s in self.sets)
        return f"IndexSetFamily([{inner}])"

    def to_json(self) -> str:
        return json.dumps({"sets": [sorted(s) for s in self.sets]})

    @classmethod
    def from_json(cls, text: str) -> "IndexSetFamily":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict) or "sets" not in data:
            raise InputError('expected an object with a "sets" key')
        sets = data["sets"]
        if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
            raise InputError('"sets" must be a list of lists of integers')
        return cls(sets)


@dataclass(frozen=True)
class ConflictGraph:
    """Simple graph on the ground set whose edges are the infeasible pairs."""

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]  # each edge stored as (u, v) with u < v

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def ground_set(family: IndexSetFamily) -> frozenset[int]:
    """Union of all member sets."""
    out: frozenset[int] = frozenset()
    for s in family.sets:
        out |= s
    return out


def is_irredundant(family: IndexSetFamily) -> bool:
    """True iff no member set is contained in a distinct member set."""
    return not any(a <= b or b <= a for a, b in combinations(family.sets, 2))


def is_feasible_set(family: IndexSetFamily, subset: Iterable[int]) -> bool:
    """True iff ``subset`` is contained in some member set.

    The empty set is feasible by convention.  Indices outside the ground
    set are rejected.
    """
    t = frozenset(subset)
    if not t <= ground_set(family):
        raise InputError("subset contains indices outside the ground set")
    return not t or any(t <= s for s in family.sets)


def _membership_masks(family: IndexSetFamily) -> dict[int, int]:
    """For each index, a bitmask of the member-set ordinals containing it."""
    masks: dict[int, int] = {}
    for i, s in enumerate(family.sets):
        bit = 1 << i
        for v in s:
            masks[v] = masks.get(v, 0) | bit
    return masks


def conflict_graph(family: IndexSetFamily) -> ConflictGraph:
    """Graph on the ground set with an edge wherever no member set holds both ends."""
    masks = _membership_masks(family)
    verts = sorted(masks)
    edges = set()
    for i, u in enumerate(verts):
        mu = masks[u]
        for v in verts[i + 1 :]:
            if mu & masks[v] == 0:
                edges.add((u, v))
    return ConflictGraph(frozenset(verts), frozenset(edges))


def minimal_infeasible_sets(
    family: IndexSetFamily, max_subsets: int = 2_000_000
) -> list[frozenset[int]]:
    """All infeasible subsets whose proper subsets are all feasible.

    Enumerates candidates by increasing cardinality, skipping supersets of
    anything already recorded; by then every smaller infeasible subset has
    been found, so a surviving infeasible candidate is minimal.  No minimal
    infeasible set can exceed max member size + 1, which caps the search.
    """
    j = sorted(ground_set(family))
    cap = min(len(j), max(len(s) for s in family.sets) + 1)
    space = sum(math.comb(len(j), c) for c in range(1, cap + 1))
    if space > max_subsets:
        raise SizeGuardError(
            f"subset search space {space} exceeds the cap of {max_subsets}"
        )
    found: list[frozenset[int]] = []
    sets = family.sets
    for c in range(1, cap + 1):
        for combo in combinations(j, c):
            t = frozenset(combo)
            if any(m <= t for m in found):
                continue
            if not any(t <= s for s in sets):
                found.append(t)
    return found


def is_pairwise_ib_representable(
    family: IndexSetFamily, max_subsets: int = 2_000_000
) -> bool:
    """True iff every minimal infeasible set has at most two elements."""
    return all(len(t) <= 2 for t in minimal_infeasible_sets(family, max_subsets))

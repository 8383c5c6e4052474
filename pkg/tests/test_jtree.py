import random

import pytest

from cdcmip import (
    CandidateTree,
    IndexSetFamily,
    InputError,
    admits_junction_tree,
    intersection_graph,
    is_junction_tree,
    is_pairwise_ib_representable,
    maximum_spanning_tree,
    maximum_spanning_tree_of,
)
from cdcmip.sosk import sosk_family, sosk_junction_tree
from helpers import random_family


def test_intersection_graph(path3):
    g = intersection_graph(path3)
    assert g.size == 3 and len(g.mids) == 3
    assert g.weight(0, 1) == 1 and g.weight(1, 2) == 1 and g.weight(0, 2) == 0
    assert g.mid(1, 2) == {5}

    single = intersection_graph(IndexSetFamily([[1], [2]]))
    assert single.edges == [(0, 1)] and single.weight(0, 1) == 0

    sos3_4 = intersection_graph(IndexSetFamily([[1, 2, 3], [2, 3, 4]]))
    assert sos3_4.mid(0, 1) == {2, 3} and sos3_4.weight(0, 1) == 2


def test_maximum_spanning_tree(path3, triangle):
    t = maximum_spanning_tree_of(path3)
    assert t.edges == ((0, 1), (1, 2)) and t.weight == 2

    assert maximum_spanning_tree(intersection_graph(IndexSetFamily([[1], [2]]))) == ((0, 1),)

    tie = maximum_spanning_tree_of(triangle)
    assert tie.weight == 2
    assert tie.edges == ((0, 1), (0, 2))  # lexicographic tie-break


def test_is_junction_tree(path3, triangle):
    assert is_junction_tree(path3, CandidateTree(path3, [(0, 1), (1, 2)]))
    assert not is_junction_tree(triangle, CandidateTree(triangle, [(0, 1), (1, 2)]))
    single = IndexSetFamily([[1, 2]])
    assert is_junction_tree(single, CandidateTree(single, []))


def test_candidate_tree_validation(path3):
    with pytest.raises(InputError):
        CandidateTree(path3, [(0, 1)])  # too few edges
    with pytest.raises(InputError):
        CandidateTree(path3, [(0, 1), (0, 1)])
    with pytest.raises(InputError):
        CandidateTree(path3, [(0, 3), (1, 2)])
    four = IndexSetFamily([[1], [2], [3], [4]])
    with pytest.raises(InputError):
        CandidateTree(four, [(0, 1), (1, 0), (2, 3)])  # cycle after normalizing


def test_tree_json(path3):
    t = CandidateTree(path3, [(0, 1), (1, 2)])
    assert t.to_json() == '{"edges": [[0, 1], [1, 2]], "mids": [[3], [5]]}'


def test_admits_junction_tree(path3, triangle):
    t = admits_junction_tree(path3)
    assert t is not None and t.edges == ((0, 1), (1, 2))
    assert admits_junction_tree(triangle) is None
    for n, k in ((5, 2), (7, 3), (9, 4), (6, 5)):
        fam = sosk_family(n, k)
        t = admits_junction_tree(fam)
        assert t is not None
        assert t.edges == sosk_junction_tree(n, k).edges  # the window path


def test_admitted_tree_passes_and_implies_pairwise_ib():
    rng = random.Random(23)
    for _ in range(50):
        fam = random_family(rng, max_sets=5, max_ground=8)
        t = admits_junction_tree(fam)
        if t is not None:
            assert is_junction_tree(fam, t)
            assert is_pairwise_ib_representable(fam)


def test_junction_trees_carry_maximum_weight():
    # every spanning tree that passes the junction test weighs as much as the
    # greedy maximum tree; checked exhaustively on small families
    from itertools import combinations

    rng = random.Random(31)
    for _ in range(25):
        fam = random_family(rng, max_sets=5, max_ground=7)
        d = len(fam)
        best = maximum_spanning_tree_of(fam).weight
        for edges in combinations(list(combinations(range(d), 2)), max(d - 1, 0)):
            try:
                tree = CandidateTree(fam, edges)
            except InputError:
                continue
            if is_junction_tree(fam, tree):
                assert tree.weight == best

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orsti.text import build_suffix_index
from orsti.wanc import LocusIndex, WeightedTree, build_weighted_tree, parse_tree_lines, st_locus, weighted_ancestor
from oracles import walk_up_ancestor


def random_tree(rng, n, umax=10 ** 6):
    parent = [-1] + [rng.randrange(v) for v in range(1, n)]
    perm = list(range(n))
    rng.shuffle(perm)
    # relabel so ids are not a preorder
    inv = {old: new for new, old in enumerate(perm)}
    rp = [0] * n
    for old in range(n):
        rp[inv[old]] = -1 if parent[old] < 0 else inv[parent[old]]
    weight = [0 if rp[v] < 0 else rng.randint(1, umax) for v in range(n)]
    return rp, weight


def depth_weight(parent, weight, v):
    total = 0
    while parent[v] != -1:
        total += weight[v]
        v = parent[v]
    return total


def test_path_gets_dummies():
    wt = build_weighted_tree([-1, 0, 1], [0, 2, 3])
    assert wt.k == 3
    assert wt.nw.tolist() == [2, 0]
    assert [wt.weight_of(v) for v in range(3)] == [0, 2, 5]
    assert wt.leaves() == [2]


def test_root_with_two_leaves():
    wt = build_weighted_tree([-1, 0, 0], [0, 4, 7])
    assert wt.nw.tolist() == [0]


def test_boundaries():
    parent, weight = [-1, 0, 1, 1, 0], [0, 3, 2, 5, 1]
    wt = build_weighted_tree(parent, weight)
    for leaf in (2, 3, 4):
        assert weighted_ancestor(wt, leaf, wt.weight_of(leaf)) == leaf
    assert weighted_ancestor(wt, 3, 1) == 1
    assert weighted_ancestor(wt, 4, 1) == 4
    with pytest.raises(ValueError):
        weighted_ancestor(wt, 3, 0)
    with pytest.raises(ValueError):
        weighted_ancestor(wt, 3, 9)


def test_invalid_trees():
    with pytest.raises(ValueError):
        WeightedTree([-1, -1], [0, 1])
    with pytest.raises(ValueError):
        WeightedTree([1, 0], [1, 1])
    with pytest.raises(ValueError):
        WeightedTree([-1, 0], [0, 0])
    with pytest.raises(ValueError):
        WeightedTree([-1, 5], [0, 1])
    with pytest.raises(ValueError):
        WeightedTree([-1, 2, 1, 0], [0, 1, 1, 1])


def test_parse_tree_lines():
    assert parse_tree_lines(["# comment", "-1 0", "0 3", "", "0 2"]) == ([-1, 0, 0], [0, 3, 2])
    with pytest.raises(ValueError):
        parse_tree_lines(["1 2 3"])


def test_random_trees_all_pairs():
    rng = random.Random(13)
    for _ in range(150):
        n = rng.randint(1, 60)
        parent, weight = random_tree(rng, n, rng.choice([3, 50, 10 ** 6]))
        wt = WeightedTree(parent, weight)
        nodes = range(n)
        for u in nodes:
            wu = depth_weight(parent, weight, u)
            assert wt.weight_of(u) == wu
            ts = range(1, wu + 1) if wu <= 60 else [1, wu] + [rng.randint(1, wu) for _ in range(20)]
            for t in ts:
                assert wt.weighted_ancestor(u, t) == walk_up_ancestor(parent, weight, u, t)


def test_nw_gives_lca_weights():
    rng = random.Random(14)
    for _ in range(60):
        n = rng.randint(2, 40)
        parent, weight = random_tree(rng, n, 20)
        wt = WeightedTree(parent, weight)
        ext_nodes = wt._node_of_ext[wt.leaf_ext]
        real = [(pos, int(v)) for pos, v in enumerate(ext_nodes) if v >= 0]

        def anc(v):
            out = []
            while v != -1:
                out.append(v)
                v = parent[v]
            return out

        for a in range(len(real)):
            for b in range(a + 1, len(real)):
                (pa, va), (pb, vb) = real[a], real[b]
                common = set(anc(va))
                lca = next(x for x in anc(vb) if x in common)
                assert depth_weight(parent, weight, lca) == int(wt.nw[pa:pb].min())


def test_locus_examples():
    idx = build_suffix_index("mississippi")
    li = LocusIndex(idx)
    assert tuple(st_locus(li, 2, 5)) == (3, 4)
    assert tuple(st_locus(li, 1, 11)) == (5, 5)
    for i in range(1, 12):
        assert tuple(st_locus(li, i, i)) == tuple(idx.sa_range("mississippi"[i - 1]))
    with pytest.raises(ValueError):
        st_locus(li, 3, 2)


def test_locus_all_substrings():
    rng = random.Random(15)
    for _ in range(40):
        s = bytes(rng.choice(b"abc"[: rng.randint(1, 3)]) for _ in range(rng.randint(1, 30)))
        idx = build_suffix_index(s)
        li = LocusIndex(idx)
        for i in range(1, len(s) + 1):
            for j in range(i, len(s) + 1):
                assert tuple(li.st_locus(i, j)) == tuple(idx.sa_range(s[i - 1:j]))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 10 ** 6), st.integers(1, 9)), min_size=1, max_size=30), st.data())
def test_weighted_ancestor_property(shape, data):
    parent = [-1] + [p % v for v, (p, _) in enumerate(shape[1:], 1)]
    weight = [0] + [w for _, w in shape[1:]]
    wt = WeightedTree(parent, weight)
    u = data.draw(st.integers(0, len(parent) - 1))
    wu = wt.weight_of(u)
    if wu == 0:
        return
    t = data.draw(st.integers(1, wu))
    v = wt.weighted_ancestor(u, t)
    assert v == walk_up_ancestor(parent, weight, u, t)
    assert wt.weight_of(v) >= t > (wt.weight_of(parent[v]) if parent[v] >= 0 else 0)

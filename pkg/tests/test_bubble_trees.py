import itertools
import random

import pytest
from hypothesis import given, strategies as st

import oracles
from instanton_strata.bubble_trees import (
    BubbleTree,
    TreeLimits,
    contract,
    contract_all,
    enumerate_trees,
    ghost_vertices,
    leq,
    parse_key,
    symmetry_order,
    validate,
)
from instanton_strata.errors import ResourceLimitExceeded, ValidationError


def chain(*weights):
    return BubbleTree(dict(enumerate(weights)), {i: i - 1 for i in range(1, len(weights))}, 0)


@st.composite
def trees(draw, max_vertices=12):
    n = draw(st.integers(1, max_vertices))
    parent = {i: draw(st.integers(0, i - 1)) for i in range(1, n)}
    weights = {i: draw(st.integers(0, 3)) for i in range(n)}
    return BubbleTree(weights, parent, 0)


def test_validate_examples():
    assert validate(BubbleTree.leaf(3))
    assert not validate(chain(0, 0))
    # root(0) -> ghost(0) -> {1, 1}: the ghost has two positive children
    assert validate(BubbleTree.parse("0(0(1,1))"))
    assert not validate(BubbleTree.parse("0(0(1,0))"))


def test_structure_errors():
    with pytest.raises(ValidationError):
        BubbleTree({0: 1, 1: 1}, {1: 0, 0: 1}, 0)
    with pytest.raises(ValidationError):
        BubbleTree({0: 1, 1: 1, 2: 1}, {1: 2, 2: 1}, 0)
    with pytest.raises(ValidationError):
        BubbleTree.parse("1(2")


def test_enumerate_small_cases():
    assert sorted(t.encode() for t in enumerate_trees(1)) == ["0(1)", "1"]
    assert all(validate(t) for k in range(1, 6) for t in enumerate_trees(k))


def test_enumeration_counts_match_brute_force(golden):
    counts = golden("tree_counts.json")
    for k in range(1, 5):
        assert len(enumerate_trees(k)) == counts[str(k)]


def test_encodings_separate_oracle_classes():
    for k in range(1, 5):
        reps = oracles.isomorphism_classes(k)
        codes = {BubbleTree(*oracles.to_weights_parent(r), 0).encode() for r in reps}
        assert len(codes) == len(reps)
        assert codes == {t.encode() for t in enumerate_trees(k)}


def test_limits():
    with pytest.raises(ResourceLimitExceeded):
        enumerate_trees(7, TreeLimits(k_max=6))
    with pytest.raises(ResourceLimitExceeded):
        enumerate_trees(5, TreeLimits(max_trees=10))
    shallow = enumerate_trees(3, TreeLimits(max_depth=1))
    assert all(t.depth() <= 1 for t in shallow)


@given(trees(), st.randoms(use_true_random=False))
def test_encoding_invariant_under_relabeling(t, rnd):
    labels = list(range(100, 100 + len(t)))
    rnd.shuffle(labels)
    relabeled = t.relabel(dict(zip(t.vertices, labels)))
    assert relabeled.encode() == t.encode()
    assert BubbleTree.parse(t.encode()).encode() == t.encode()


def test_contract_examples():
    assert contract(chain(0, 1), (0, 1)).encode() == "1"
    assert contract(chain(1, 1, 1), (1, 2)).encode() == "1(2)"
    with pytest.raises(ValidationError):
        contract(chain(1, 1), (1, 0))


@given(trees())
def test_contract_preserves_total_weight(t):
    for e in t.edges():
        assert contract(t, e).total_weight == t.total_weight


@pytest.mark.parametrize("k", range(1, 5))
def test_contract_all_in_any_order(k):
    rnd = random.Random(k)
    for t in enumerate_trees(k):
        edges = t.edges()
        for _ in range(3):
            rnd.shuffle(edges)
            assert contract_all(t, edges).encode() == str(k)


def test_leq_examples():
    t = BubbleTree.parse("0(1)")
    assert leq(t, t)
    assert leq(t, BubbleTree.leaf(1))
    assert not leq(BubbleTree.leaf(1), t)


@pytest.mark.parametrize("k", range(1, 4))
def test_leq_is_partial_order(k):
    ts = enumerate_trees(k)
    rel = {(a.encode(), b.encode()): leq(a, b) for a in ts for b in ts}
    codes = [t.encode() for t in ts]
    for a in codes:
        assert rel[a, a]
    for a, b in itertools.product(codes, repeat=2):
        if a != b:
            assert not (rel[a, b] and rel[b, a])
    for a, b, c in itertools.product(codes, repeat=3):
        if rel[a, b] and rel[b, c]:
            assert rel[a, c]


def test_symmetry_and_ghosts():
    assert symmetry_order(BubbleTree.parse("0(1,1)"), 0) == 2
    assert symmetry_order(BubbleTree.parse("0(1,2)"), 0) == 1
    t = BubbleTree({"r": 1, "v": 0, "x": 1, "y": 1}, {"v": "r", "x": "v", "y": "v"}, "r")
    assert ghost_vertices(t) == {"v"}


def test_parse_rejects_garbage():
    for text in ["", "a", "1)", "1(2,", "1(2)x"]:
        with pytest.raises(ValidationError):
            parse_key(text)

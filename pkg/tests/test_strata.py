import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from instanton_strata.bubble_trees import enumerate_trees
from instanton_strata.errors import PreconditionFailed, ValidationError
from instanton_strata.index import dim_invariant_moduli, dim_manifold_moduli, ManifoldData
from instanton_strata.signatures import BundleType, Group, OrbifoldSignature
from instanton_strata.strata import (
    EXCLUDED,
    FreeBubble,
    OBubbleTree,
    SingularBubble,
    contract_root_edges,
    edge_fibre_dimensions,
    encode_o_tree,
    enumerate_o_trees,
    ghost_stabiliser_dimension,
    gluing_consistency_check,
    is_extrapolated,
    single_edge_grid,
    stratum_dimension,
    stratum_report,
    target_type,
    total_charge,
    validate_o_tree,
)

SIG6 = OrbifoldSignature(6, 1, Group.SU2, ((2, 1), (3, 1)))


def example_tree(m0=1, m1=1, m2=1, m3=1):
    """Root, a free bubble, and a Z_3 singular bubble carrying a free bubble."""
    return OBubbleTree(
        SIG6,
        BundleType(m0, (1, 0)),
        (FreeBubble(m1),),
        (SingularBubble(1, 0, 1, m2, (FreeBubble(m3),)),),
    )


def test_example_tree_is_valid():
    assert validate_o_tree(example_tree())


@given(st.integers(0, 5), st.integers(1, 4), st.integers(0, 4), st.integers(1, 4))
def test_example_tree_charge(m0, m1, m2, m3):
    t = example_tree(m0, m1, m2, m3)
    assert total_charge(t) == m0 + 6 * m1 + 2 * m2 + 6 * m3


def test_invalid_trees():
    two_heads = OBubbleTree(SIG6, BundleType(0, (0, 0)), (), (SingularBubble(1, 0, 1, 1), SingularBubble(1, 0, 2, 1)))
    assert not validate_o_tree(two_heads)
    mismatch = OBubbleTree(SIG6, BundleType(0, (0, 0)), (), (SingularBubble(1, 0, 1, 1, (), SingularBubble(1, 2, 2, 1)),))
    check = validate_o_tree(mismatch)
    assert not check and any("m_in" in r for r in check.reasons)
    wrong_head = OBubbleTree(SIG6, BundleType(0, (0, 0)), (), (SingularBubble(1, 1, 1, 1),))
    assert not validate_o_tree(wrong_head)
    lonely_ghost = OBubbleTree(SIG6, BundleType(1, (0, 0)), (FreeBubble(0, (FreeBubble(1),)),))
    assert not validate_o_tree(lonely_ghost)
    empty_chain = OBubbleTree(SIG6, BundleType(1, (0, 0)), (), (SingularBubble(1, 0, 0, 0),))
    assert not validate_o_tree(empty_chain)


def test_singular_ghost_with_one_child_is_allowed():
    t = OBubbleTree(SIG6, BundleType(1, (0, 0)), (), (SingularBubble(1, 0, 0, 0, (FreeBubble(1),)),))
    assert validate_o_tree(t)


def test_simple_charges():
    t = OBubbleTree(SIG6, BundleType(0, (0, 0)), (), (SingularBubble(0, 0, 1, 1),))
    assert total_charge(t) == 3
    m = OrbifoldSignature(1, 0, Group.SU2)
    for tree in enumerate_trees(3):
        assert total_charge(OBubbleTree.from_bubble_tree(m, tree)) == 3
    so3 = OrbifoldSignature(1, 1, Group.SO3)
    t = OBubbleTree(so3, BundleType(-3), (FreeBubble(1),))
    assert total_charge(t) == -7


def test_trivial_tree_dimension_is_background():
    b = BundleType(6, (0, 0))
    t = OBubbleTree(SIG6, b)
    assert stratum_dimension(t) == dim_invariant_moduli(SIG6, b)


def test_excluded_marker():
    t = OBubbleTree(SIG6, BundleType(0, (0, 0)), (FreeBubble(1),))
    assert stratum_dimension(t) is EXCLUDED
    assert stratum_report(t).excluded
    assert isinstance(stratum_dimension(t, include_trivial=True), int)


def test_manifold_two_vertex_identity():
    m = OrbifoldSignature(1, 2, Group.SU2)
    for k0, k1 in itertools.product(range(1, 5), range(1, 5)):
        t = OBubbleTree(m, BundleType(k0), (FreeBubble(k1),))
        want = dim_manifold_moduli(ManifoldData(2, Group.SU2, k0 + k1)) - 4
        assert stratum_dimension(t) == want


@pytest.mark.parametrize("group", list(Group))
@pytest.mark.parametrize("k", range(1, 5))
def test_manifold_stratum_consistency(group, k):
    m = OrbifoldSignature(1, 1, group)
    top = dim_manifold_moduli(ManifoldData(1, group, k if group is Group.SU2 else -4 * k))
    for tree in enumerate_trees(k):
        t = OBubbleTree.from_bubble_tree(m, tree)
        assert stratum_dimension(t, include_trivial=True) + 4 * (len(tree) - 1) == top


def test_single_edge_singular_tree_uses_gluing_formula():
    sig = OrbifoldSignature(3, 0, Group.SO3, ((3, 1),))
    t = OBubbleTree(sig, BundleType(-12, (0,)), (), (SingularBubble(0, 0, 2, 1),))
    rep = gluing_consistency_check(t)
    assert rep.balanced and rep.realizable and rep.integral
    assert stratum_dimension(t) == rep.dim_background + rep.dim_bubble == 5


@pytest.mark.parametrize(
    "m0,m,n_diff,n_bub,dim_i",
    [(1, 2, 0, 2, 1), (0, 1, 1, 1, 3), (1, 0, -1, 1, 1), (0, 0, 0, 0, 3)],
)
def test_gluing_four_cases(m0, m, n_diff, n_bub, dim_i):
    sig = OrbifoldSignature(3, 0, Group.SO3, ((3, 1),))
    t = OBubbleTree(sig, BundleType(-4, (m0,)), (), (SingularBubble(0, m0, m, 1),))
    rep = gluing_consistency_check(t)
    assert (rep.n_top - rep.n_background, rep.n_bubble, rep.dim_gluing_group) == (n_diff, n_bub, dim_i)
    assert rep.balanced and rep.counts_balanced


def test_gluing_check_needs_one_edge():
    with pytest.raises(ValidationError):
        gluing_consistency_check(example_tree())


def test_gluing_grid_balanced():
    reports = [gluing_consistency_check(t) for t in single_edge_grid(6, 2)]
    assert {r.case for r in reports} == {"free point", "m0==0,m==0", "m0==0,m!=0", "m0!=0,m==0", "m0!=0,m!=0"}
    assert all(r.balanced and r.counts_balanced for r in reports)


def test_fibre_dimensions():
    dims = dict(edge_fibre_dimensions(example_tree()))
    assert set(d for _, d in edge_fibre_dimensions(example_tree())) <= {2, 4}
    assert dims["cone point of singularity 1"] == 4
    t = OBubbleTree(SIG6, BundleType(0, (0, 1)), (), (SingularBubble(1, 1, 2, 1),))
    assert edge_fibre_dimensions(t) == [("cone point of singularity 1", 2)]


def test_ghost_stabilisers():
    t = OBubbleTree(SIG6, BundleType(1, (0, 0)), (FreeBubble(0, (FreeBubble(1), FreeBubble(1))),))
    assert ghost_stabiliser_dimension(t) == 3
    t = OBubbleTree(SIG6, BundleType(1, (0, 1)), (), (SingularBubble(1, 1, 1, 0, (FreeBubble(1),)),))
    assert ghost_stabiliser_dimension(t) == 1


def test_existence_is_checked():
    sig = OrbifoldSignature(3, 0, Group.SU2, ((3, 1),))
    t = OBubbleTree(sig, BundleType(3, (0,)), (), (SingularBubble(0, 0, 0, 0, (FreeBubble(1),)),))
    assert isinstance(stratum_dimension(t), int)
    bad_ghost = OBubbleTree(sig, BundleType(3, (0,)), (), (SingularBubble(0, 0, 1, 0, (FreeBubble(1),)),))
    with pytest.raises(PreconditionFailed):
        stratum_dimension(bad_ghost)


ENUM_CASES = [
    (OrbifoldSignature(2, 0, Group.SU2, ((2, 1),)), 3),
    (OrbifoldSignature(3, 1, Group.SO3, ((3, 1),)), -8),
    (OrbifoldSignature(6, 1, Group.SU2, ((2, 1), (3, 1))), 8),
    (OrbifoldSignature(4, 0, Group.SU2, ((2, 1), (4, 1))), 4),
]


@pytest.mark.parametrize("sig,charge", ENUM_CASES)
def test_enumerated_trees_satisfy_consistency(sig, charge):
    from instanton_strata.signatures import enumerate_bundle_types

    for b in enumerate_bundle_types(sig, charge):
        for t in enumerate_o_trees(sig, b, 2, 2):
            assert validate_o_tree(t, b)
            assert total_charge(t) == charge
            rep = stratum_report(t)
            if rep.stratum is not None and rep.top is not None:
                assert rep.balanced, rep
            assert rep.extrapolated == is_extrapolated(t)
            # gluing everything back recovers the target type
            cur = t
            while cur.edge_count():
                nxt = contract_root_edges(cur)
                assert total_charge(nxt) == total_charge(cur)
                assert target_type(nxt) == target_type(cur)
                cur = nxt
            assert cur.root_type == b


def test_enumeration_contains_example_tree():
    t = example_tree()
    found = {x.encode() for x in enumerate_o_trees(SIG6, target_type(t), 2, 1)}
    assert t.encode() in found


def test_enumeration_without_singularities_matches_bubble_trees():
    m = OrbifoldSignature(1, 0, Group.SU2)
    for k in range(1, 5):
        got = enumerate_o_trees(m, BundleType(k), depth_cap=2 * k, weight_cap=k)
        want = {OBubbleTree.from_bubble_tree(m, tree).encode() for tree in enumerate_trees(k)}
        assert {t.encode() for t in got} == want


def test_enumeration_counts_frozen(golden):
    for case in golden("o_tree_counts.json"):
        sig = OrbifoldSignature.from_dict(case["signature"])
        b = BundleType.from_dict(case["bundle"])
        assert len(enumerate_o_trees(sig, b, case["depth_cap"], case["weight_cap"])) == case["count"]


def test_enumeration_matches_generate_and_filter():
    sig = OrbifoldSignature(2, 0, Group.SU2, ((2, 1),))
    for c, m in itertools.product(range(3), range(2)):
        b = BundleType(c, (m,))
        want = oracles.o_trees_generate_and_filter(sig, b, 2, 1, 2)
        assert {t.encode() for t in enumerate_o_trees(sig, b, 2, 1)} == want


def test_chain_reports_are_extrapolated():
    sig = OrbifoldSignature(3, 0, Group.SU2, ((3, 1),))
    t = OBubbleTree(sig, BundleType(0, (0,)), (), (SingularBubble(0, 0, 1, 1, (), SingularBubble(0, 1, 2, 1)),))
    assert validate_o_tree(t)
    assert stratum_report(t).extrapolated


def test_encoding_is_canonical():
    a = OBubbleTree(SIG6, BundleType(1, (0, 0)), (FreeBubble(2), FreeBubble(1, (FreeBubble(1),))))
    b = OBubbleTree(SIG6, BundleType(1, (0, 0)), (FreeBubble(1, (FreeBubble(1),)), FreeBubble(2)))
    assert encode_o_tree(a) == encode_o_tree(b) == "1;0,0{1(1),2}[]"

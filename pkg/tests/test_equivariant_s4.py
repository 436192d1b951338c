import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from instanton_strata.equivariant_s4 import (
    S4Action,
    S4Triple,
    congruence_witnesses,
    exists_invariant,
    find_chain,
    single_level_admissible,
)
from instanton_strata.errors import PreconditionFailed, ValidationError
from instanton_strata.index import dim_s4_invariant


@st.composite
def actions(draw, p_max=8):
    p = draw(st.integers(1, p_max))
    q = draw(st.integers(0, 2 * p).filter(lambda q: __import__("math").gcd(p, q) == 1))
    return S4Action(p, q)


def test_witness_examples():
    for p, q in oracles.coprime_pairs(9, 2):
        assert (1, 1) in congruence_witnesses(S4Action(p, q), S4Triple(1, q - 1, q + 1))
    assert congruence_witnesses(S4Action(3, 1), S4Triple(1, 0, 1)) == frozenset()
    assert (0, 0) in congruence_witnesses(S4Action(4, 3), S4Triple(2, 0, 0))


def test_action_validation():
    with pytest.raises(ValidationError):
        S4Action(4, 2)
    with pytest.raises(ValidationError):
        S4Action(0, 1)


def test_instanton_one_admissible_up_to_50():
    for p, q in oracles.coprime_pairs(50, 2):
        assert single_level_admissible(S4Action(p, q), S4Triple(1, q - 1, q + 1))


def test_single_level_golden_p5_q2(golden):
    table = {tuple(x) for x in golden("single_level_p5_q2.json")["admissible"]}
    action = S4Action(5, 2)
    for k, m, mp in itertools.product(range(1, 5), range(10), range(10)):
        assert single_level_admissible(action, S4Triple(k, m, mp)) == ((k, m, mp) in table)


def test_trivial_group_needs_matching_parity():
    action = S4Action(1, 1)
    for k in range(1, 5):
        for m, mp in itertools.product(range(2), repeat=2):
            assert single_level_admissible(action, S4Triple(k, m, mp)) == (m == mp)


def test_k_zero_rejected():
    with pytest.raises(PreconditionFailed):
        single_level_admissible(S4Action(3, 1), S4Triple(0, 0, 0))
    with pytest.raises(PreconditionFailed):
        exists_invariant(S4Action(3, 1), S4Triple(0, 0, 0))


def test_two_link_chain_example():
    for p, q in oracles.coprime_pairs(9, 2):
        a = S4Action(p, q)
        links = [S4Triple(1, q - 1, q + 1), S4Triple(1, q + 1, q + 3)]
        if all(single_level_admissible(a, t) for t in links):
            assert exists_invariant(a, S4Triple(2, q - 1, q + 3))


def test_chain_is_well_formed():
    a = S4Action(5, 2)
    for k, m, mp in itertools.product(range(1, 5), range(10), range(10)):
        chain = find_chain(a, S4Triple(k, m, mp))
        if chain is None:
            continue
        assert sum(c.k for c in chain) == k
        assert chain[0].m == m and chain[-1].m_prime == mp
        assert all(x.m_prime == y.m for x, y in zip(chain, chain[1:]))
        assert all(single_level_admissible(a, c) for c in chain)


def test_literal_terminal_flag_differs_somewhere():
    a = S4Action(5, 2)
    verdicts = [
        exists_invariant(a, S4Triple(k, m, mp)) != exists_invariant(a, S4Triple(k, m, mp), literal_terminal=True)
        for k, m, mp in itertools.product(range(1, 3), range(10), range(10))
    ]
    assert any(verdicts)


@given(actions(), st.integers(1, 3), st.integers(1, 3), st.integers(0, 15), st.integers(0, 15), st.integers(0, 15))
def test_concatenation_monotone(action, k1, k2, m, mu, mp):
    if exists_invariant(action, S4Triple(k1, m, mu)) and exists_invariant(action, S4Triple(k2, mu, mp)):
        assert exists_invariant(action, S4Triple(k1 + k2, m, mp))


@given(actions(), st.integers(1, 4), st.integers(0, 15), st.integers(0, 15))
def test_single_level_implies_exists_and_integral(action, k, m, mp):
    t = S4Triple(k, m, mp)
    if single_level_admissible(action, t):
        assert exists_invariant(action, t)
    if exists_invariant(action, t):
        assert isinstance(dim_s4_invariant(action.p, action.q, t), int)


@given(actions(p_max=4), st.integers(1, 3), st.integers(0, 7), st.integers(0, 7))
def test_dp_matches_chain_oracle_sample(action, k, m, mp):
    assert exists_invariant(action, S4Triple(k, m, mp)) == oracles.chain_exists(action.p, action.q, k, m, mp)

from fractions import Fraction

import pytest
from hypothesis import given

from hypermatch.errors import LimitExceeded
from hypermatch.hypergraph import Hypergraph, complete_kgraph, disjoint_union, single_edge, star
from hypermatch.matchpoly import (
    MatchCounts,
    branch_counts,
    check_mu_generating_identity,
    derivative_identity_check,
    forest_counts,
    generating_function,
    has_matching_sign_pattern,
    log_concavity_check,
    match_counts,
    matching_polynomial,
    matching_polynomial_recursive,
    multivariate_matching_eval,
)
from hypermatch.poly import SparsePoly

from conftest import brute_counts, connected_kgraphs, ktrees, stars


def test_counts_examples(k4, edge3):
    assert match_counts(k4).p == (1, 4)
    assert match_counts(edge3).p == (1, 1)
    assert match_counts(Hypergraph(3, 5, ())).p == (1,)


def test_polynomial_examples(k4):
    assert matching_polynomial(k4) == SparsePoly({4: 1, 1: -4})
    assert matching_polynomial(single_edge(5)) == SparsePoly({5: 1, 0: -1})
    assert matching_polynomial_recursive(k4) == SparsePoly({4: 1, 1: -4})
    assert matching_polynomial_recursive(Hypergraph(2, 3, ())) == SparsePoly({3: 1})
    assert matching_polynomial(Hypergraph(2, 0, ())) == SparsePoly({0: 1})


@given(stars())
def test_star_closed_form(s):
    k, d = s.k, s.m
    t = d * k - d - k + 1
    assert matching_polynomial(s) == SparsePoly({t + k: 1, t: -d})


def test_generating_function(k4):
    assert generating_function(k4) == SparsePoly({0: 1, 1: 4})
    assert generating_function(single_edge(3)) == SparsePoly({0: 1, 1: 1})
    assert generating_function(Hypergraph(2, 2, ())) == SparsePoly({0: 1})


def test_identity_examples(k4):
    assert check_mu_generating_identity(k4)
    assert check_mu_generating_identity(Hypergraph(3, 2, ()))
    assert derivative_identity_check(k4)
    assert derivative_identity_check(single_edge(4))
    assert derivative_identity_check(Hypergraph(2, 5, ()))


def test_multivariate_examples(k4):
    a = Fraction(2, 7)
    assert multivariate_matching_eval(single_edge(3), {0: a}) == 1 - a
    for d in range(1, 6):
        assert multivariate_matching_eval(star(3, d), {i: Fraction(1, d) for i in range(d)}) == 0
    assert multivariate_matching_eval(k4, {i: Fraction(1, 4) for i in range(4)}) == 0
    with pytest.raises(ValueError):
        multivariate_matching_eval(k4, {0: 1})


def test_log_concavity_examples():
    assert log_concavity_check(MatchCounts((1, 4)))
    assert log_concavity_check([1, 3, 2])
    assert not log_concavity_check([1, 1, 2])
    with pytest.raises(ValueError):
        MatchCounts((2, 1))


def test_node_cap(k4):
    with pytest.raises(LimitExceeded):
        branch_counts(complete_kgraph(9, 3), node_cap=5)
    with pytest.raises(LimitExceeded):
        matching_polynomial_recursive(complete_kgraph(8, 2), node_cap=3)


def test_forest_counts_rejects_cycles(k4):
    with pytest.raises(ValueError):
        forest_counts(k4)


@given(connected_kgraphs())
def test_counts_match_brute_force(h):
    assert list(match_counts(h).p) == brute_counts(h)


@given(ktrees())
def test_forest_dp_matches_branching(t):
    assert forest_counts(t) == branch_counts(t)


@given(connected_kgraphs(max_n=9))
def test_oracle_equivalence(h):
    assert matching_polynomial(h) == matching_polynomial_recursive(h)


@given(connected_kgraphs(max_n=6), connected_kgraphs(max_n=6))
def test_disjoint_union_multiplies(a, b):
    if a.k != b.k:
        b = single_edge(a.k)
    u = disjoint_union(a, b)
    assert matching_polynomial_recursive(u) == matching_polynomial(a) * matching_polynomial(b)


@given(connected_kgraphs())
def test_identities(h):
    assert check_mu_generating_identity(h)
    assert derivative_identity_check(h)


@given(connected_kgraphs())
def test_support_and_positivity(h):
    c = match_counts(h)
    assert all(p >= 1 for p in c.p)
    mu = matching_polynomial(h)
    assert set(mu.exponents()) == {h.n - h.k * r for r in range(c.m + 1)}
    assert has_matching_sign_pattern(mu, h.k)


@given(connected_kgraphs())
def test_multivariate_specialises_to_generating_function(h):
    w = Fraction(3, 11)
    assert multivariate_matching_eval(h, {i: w for i in range(h.m)}) == generating_function(h)(-w)


def test_sign_pattern_rejects():
    assert not has_matching_sign_pattern(SparsePoly({4: 1, 1: 4}), 3)
    assert not has_matching_sign_pattern(SparsePoly({4: 2, 1: -4}), 3)
    assert not has_matching_sign_pattern(SparsePoly({7: 1, 1: 4}), 3)
    assert not has_matching_sign_pattern(SparsePoly(), 3)

import cmath
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hypermatch.errors import NoSpectrum
from hypermatch.hypergraph import (
    Hypergraph,
    complete_kgraph,
    degree_profile,
    has_common_vertex,
    single_edge,
    star,
)
from hypermatch.matchpoly import matching_polynomial
from hypermatch.poly import SparsePoly
from hypermatch.zeros import (
    Interval,
    RootReport,
    Sturm,
    all_roots,
    bounds_report,
    cyclic_index,
    kth_root_enclosure,
    lambda_enclosure,
    lower_bound_tight,
    max_modulus_count,
    reduced_poly,
    rotation_check,
    simplicity_check,
    strict_monotonicity_check,
    upper_bound_y,
    y_enclosure,
)

from conftest import connected_kgraphs, ktrees, stars

y = sympy.Symbol("y")
CBRT4 = 4 ** (1 / 3)


def sympy_largest_root(q: SparsePoly):
    expr = sum(c * y**e for e, c in q.terms.items())
    return max(sympy.Poly(expr, y).real_roots())


class TestReduced:
    def test_examples(self, k4):
        assert reduced_poly(k4) == (1, SparsePoly({1: 1, 0: -4}))
        assert reduced_poly(single_edge(4)) == (0, SparsePoly({1: 1, 0: -1}))
        for d in range(1, 6):
            assert reduced_poly(star(3, d)) == (3 * d - d - 3 + 1, SparsePoly({1: 1, 0: -d}))

    @given(connected_kgraphs())
    def test_reconstructs_mu(self, h):
        t, q = reduced_poly(h)
        assert q.inflate(h.k).shift(t) == matching_polynomial(h)


class TestCyclicIndex:
    def test_examples(self):
        assert cyclic_index(SparsePoly({4: 1, 1: -4})) == 3
        assert cyclic_index(SparsePoly({5: 1, 0: -1})) == 5
        assert cyclic_index(SparsePoly({5: 1})) == 0
        assert cyclic_index(SparsePoly({6: 1, 2: 1, 0: 3})) == 2

    @given(connected_kgraphs())
    def test_equals_k(self, h):
        assert cyclic_index(matching_polynomial(h)) == h.k


class TestSturm:
    def test_counts(self):
        s = Sturm(SparsePoly({3: 1, 1: -2}))  # roots 0, +-sqrt 2
        assert s.count_above(Fraction(-2)) == 3
        assert s.count_in(Fraction(0), Fraction(2)) == 1
        assert s.count_above(Fraction(0)) == 1
        assert s.squarefree
        assert not Sturm(SparsePoly({2: 1, 1: -2, 0: 1})).squarefree

    def test_kth_root_enclosure(self):
        iv = kth_root_enclosure(Interval(Fraction(4), Fraction(4)), 3, Fraction(1, 2**30))
        assert iv.lo ** 3 <= 4 <= iv.hi ** 3 and iv.width <= Fraction(1, 2**30)
        iv = kth_root_enclosure(Interval(Fraction(8), Fraction(8)), 3, Fraction(1, 2**30))
        assert iv.lo == iv.hi == 2


class TestLambda:
    def test_k4(self, k4):
        iv = lambda_enclosure(k4, Fraction(1, 10**12))
        assert iv.width <= Fraction(1, 10**12)
        assert iv.lo ** 3 <= 4 <= iv.hi ** 3
        assert abs(float(iv.mid) - CBRT4) < 1e-12

    def test_single_edge_exact(self):
        assert lambda_enclosure(single_edge(3)) == Interval(Fraction(1), Fraction(1))

    @given(stars())
    def test_star(self, s):
        iv = lambda_enclosure(s)
        assert iv.lo ** s.k <= s.m <= iv.hi ** s.k

    def test_errors(self):
        with pytest.raises(NoSpectrum):
            lambda_enclosure(Hypergraph(3, 3, ()))
        with pytest.raises(ValueError):
            lambda_enclosure(Hypergraph(2, 4, ((0, 1), (2, 3))))

    @given(connected_kgraphs(), st.sampled_from([Fraction(1, 10**6), Fraction(1, 2**40)]))
    def test_matches_sympy(self, h, tol):
        _, q = reduced_poly(h)
        ystar = sympy_largest_root(q)
        iv = lambda_enclosure(h, tol)
        assert iv.width <= tol
        assert sympy.Rational(iv.lo) ** h.k <= ystar <= sympy.Rational(iv.hi) ** h.k
        yv = y_enclosure(h, tol)
        assert sympy.Rational(yv.lo) <= ystar <= sympy.Rational(yv.hi)

    def test_interval_text(self):
        iv = Interval(Fraction(1, 3), Fraction(1, 2))
        assert iv.to_json() == {"lo": "1/3", "hi": "1/2", "mid": "0.416666666666667"}
        assert iv.contains(Fraction(2, 5)) and not iv.contains(1)
        with pytest.raises(ValueError):
            Interval(Fraction(1), Fraction(0))


class TestSimplicity:
    def test_examples(self, k4):
        assert simplicity_check(k4)
        assert simplicity_check(single_edge(3))

    @given(connected_kgraphs())
    def test_always_simple(self, h):
        assert simplicity_check(h)


class TestBounds:
    def test_k4(self, k4):
        r = bounds_report(k4)
        assert (r.delta, r.lower_ok, r.upper_ok, r.lower_tight) == (3, True, True, False)
        assert r.upper_y == Fraction(27, 2)

    def test_star_tight(self):
        r = bounds_report(star(3, 3))
        assert r.lower_ok and r.lower_tight
        assert lower_bound_tight(star(3, 3))

    def test_single_edge(self):
        r = bounds_report(single_edge(4))
        assert r.upper_ok is None and r.lower_ok and r.lower_tight

    def test_upper_formula(self):
        assert upper_bound_y(2, 5) == 16  # 4 (delta - 1) for graphs
        assert upper_bound_y(3, 3) == Fraction(27, 2)

    @given(connected_kgraphs())
    def test_hold(self, h):
        r = bounds_report(h, Fraction(1, 10**6))
        assert r.lower_ok
        assert r.upper_ok is (None if r.delta == 1 else True)
        assert r.lower_tight == has_common_vertex(h)

    @given(connected_kgraphs())
    def test_equality_iff_common_vertex(self, h):
        assert lower_bound_tight(h) == has_common_vertex(h)


class TestRoots:
    def test_k4(self, k4):
        r = all_roots(k4)
        assert len(r.roots) == 4
        assert r.roots[0] == 0
        assert sorted(round(cmath.phase(z), 9) for z in r.roots[1:]) == sorted(
            round(cmath.phase(CBRT4 * cmath.exp(2j * math.pi * j / 3)), 9) for j in range(3)
        )
        assert all(abs(abs(z) - CBRT4) < 1e-12 for z in r.roots[1:])

    def test_single_edge_unit_roots(self):
        r = all_roots(single_edge(4))
        assert all(abs(z**4 - 1) < 1e-12 for z in r.roots)

    def test_csv(self, k4):
        text = all_roots(k4).to_csv()
        lines = text.splitlines()
        assert lines[0] == "re,im" and len(lines) == 5
        assert lines[1] == "0,0"

    def test_no_edges(self):
        with pytest.raises(NoSpectrum):
            all_roots(Hypergraph(2, 3, ()))

    @given(connected_kgraphs())
    def test_multiset_and_conjugation(self, h):
        r = all_roots(h)
        assert len(r.roots) == matching_polynomial(h).degree
        conj = sorted((round(z.real, 6), round(-z.imag, 6) + 0.0) for z in r.roots)
        assert conj == sorted((round(z.real, 6), round(z.imag, 6) + 0.0) for z in r.roots)

    @given(connected_kgraphs())
    def test_roots_are_zeros(self, h):
        mu = matching_polynomial(h)
        coeffs = [complex(mu.coeff(e)) for e in range(mu.degree, -1, -1)]
        for z in all_roots(h).roots:
            val = sum(c * z ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs))
            assert abs(val) < 1e-6 * max(1.0, sum(abs(c) * abs(z) ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs)))

    @given(connected_kgraphs(ks=(2,), max_n=10))
    def test_real_for_graphs(self, h):
        delta = degree_profile(h)[1]
        for z in all_roots(h).roots:
            assert abs(z.imag) <= 1e-8
            if delta >= 2:
                assert abs(z.real) < 2 * math.sqrt(delta - 1) + 1e-6


class TestRotation:
    def test_examples(self, k4):
        assert rotation_check(all_roots(k4))
        assert rotation_check(RootReport((1 + 0j, -1 + 0j), 1e-10, 2))
        r = all_roots(k4)
        bad = RootReport(r.roots[:-1] + (r.roots[-1] + 1e3 * r.precision,), r.precision, 3)
        assert not rotation_check(bad)

    @given(connected_kgraphs())
    def test_invariance(self, h):
        r = all_roots(h)
        assert rotation_check(r)
        assert max_modulus_count(r) == h.k


class TestMonotonicity:
    def test_examples(self, k4):
        assert strict_monotonicity_check(k4, remove_vertices=[0])
        two = star(3, 2)
        assert strict_monotonicity_check(two, remove_edges=[1])
        with pytest.raises(ValueError):
            strict_monotonicity_check(k4)

    @given(connected_kgraphs(), st.data())
    def test_vertex_and_edge_removal(self, h, data):
        v = data.draw(st.integers(0, h.n - 1))
        assert strict_monotonicity_check(h, remove_vertices=[v])
        e = data.draw(st.integers(0, h.m - 1))
        assert strict_monotonicity_check(h, remove_edges=[e])

    def test_removing_everything(self):
        h = complete_kgraph(5, 3)
        assert strict_monotonicity_check(h, remove_edges=list(range(h.m)))

"""Shared fixtures, strategies and independent oracles."""
from __future__ import annotations

from itertools import combinations
from math import comb

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hypermatch.hypergraph import (
    Hypergraph,
    complete_kgraph,
    random_connected_kgraph,
    random_ktree,
    single_edge,
    star,
)

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def k4():
    """K_4^3 with a, b, c, d as 0, 1, 2, 3."""
    return complete_kgraph(4, 3)


@pytest.fixture
def edge3():
    return single_edge(3)


def brute_counts(h: Hypergraph) -> list[int]:
    """Matching counts by trying every edge subset; independent of the library."""
    out = [1]
    r = 1
    while True:
        c = 0
        for sub in combinations(h.edges, r):
            vs = [v for e in sub for v in e]
            if len(vs) == len(set(vs)):
                c += 1
        if c == 0:
            return out
        out.append(c)
        r += 1


@st.composite
def connected_kgraphs(draw, ks=(2, 3, 4), max_n=8, max_extra=3):
    k = draw(st.sampled_from(ks))
    n = draw(st.integers(k, max_n))
    lo = max(1, -(-(n - 1) // (k - 1)))
    m = draw(st.integers(lo, min(comb(n, k), lo + max_extra)))
    seed = draw(st.integers(0, 2**32))
    return random_connected_kgraph(k, n, m, seed)


@st.composite
def ktrees(draw, ks=(2, 3, 4, 5), max_edges=7):
    k = draw(st.sampled_from(ks))
    m = draw(st.integers(1, max_edges))
    seed = draw(st.integers(0, 2**32))
    return random_ktree(k, m, seed)


@st.composite
def stars(draw):
    return star(draw(st.integers(2, 5)), draw(st.integers(1, 6)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

"""Matching counts and matching polynomials of k-graphs.

Conventions: ``p[r]`` is the number of r-matchings with ``p[0] = 1`` and

    mu(H, x) = sum_r (-1)**r * p[r] * x**(n - k*r)
    m(H, x)  = sum_r p[r] * x**r

The empty hypergraph has ``mu = m = 1``.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import LimitExceeded
from .hypergraph import Hypergraph, components, delete_vertices, is_forest
from .poly import ONE, X, SparsePoly, mul_dense_nonneg

DEFAULT_NODE_CAP = 10**7


@dataclass(frozen=True)
class MatchCounts:
    p: tuple[int, ...]

    def __post_init__(self):
        if not self.p or self.p[0] != 1:
            raise ValueError("match counts must start with p[0] = 1")

    @property
    def m(self) -> int:
        """Matching number."""
        return len(self.p) - 1

    def __getitem__(self, r):
        return self.p[r]

    def __len__(self):
        return len(self.p)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _edge_masks(h: Hypergraph) -> list[list[int]]:
    masks = [sum(1 << v for v in e) for e in h.edges]
    return [[masks[i] for i in h.incidence[v]] for v in range(h.n)]


def _add_shifted(acc: list[int], sub: list[int]) -> None:
    """acc += y * sub, in place."""
    need = len(sub) + 1
    if len(acc) < need:
        acc.extend([0] * (need - len(acc)))
    for r, c in enumerate(sub):
        acc[r + 1] += c


def branch_counts(h: Hypergraph, node_cap: int = DEFAULT_NODE_CAP) -> list[int]:
    """Count matchings by branching on the smallest live vertex.

    Either the vertex stays unmatched or it is covered by one of its live
    incident edges; results are memoized on the live-vertex bitmask.
    """
    inc = _edge_masks(h)
    memo: dict[int, list[int]] = {0: [1]}
    budget = [node_cap]

    def count(live: int) -> list[int]:
        hit = memo.get(live)
        if hit is not None:
            return hit
        budget[0] -= 1
        if budget[0] < 0:
            raise LimitExceeded(f"matching enumeration exceeded {node_cap} nodes")
        low = live & -live
        v = low.bit_length() - 1
        acc = list(count(live ^ low))
        for em in inc[v]:
            if em & live == em:
                _add_shifted(acc, count(live & ~em))
        memo[live] = acc
        return acc

    limit = sys.getrecursionlimit()
    if h.n + 100 > limit:
        sys.setrecursionlimit(h.n + 1000)
    try:
        return count((1 << h.n) - 1)
    except RecursionError:
        raise LimitExceeded("matching enumeration recursion too deep") from None
    finally:
        sys.setrecursionlimit(limit)


def forest_counts(h: Hypergraph) -> list[int]:
    """Matching counts of a k-forest by a rooted-tree dynamic program.

    For each vertex v with child edges f (children c in f) the subtree
    generating functions satisfy

        G_v = prod_f prod_c F_c                    (v uncovered)
        F_v = G_v + y * sum_f prod_c G_c * prod_{f' != f} prod_c F_c
    """
    if not is_forest(h):
        raise ValueError("forest_counts needs an acyclic hypergraph")
    used = [False] * h.m
    total = [1]
    for comp in components(h):
        root = comp[0]
        order = [root]
        child_edges: dict[int, list[list[int]]] = {}
        i = 0
        while i < len(order):
            v = order[i]
            i += 1
            kids = []
            for ei in h.incidence[v]:
                if used[ei]:
                    continue
                used[ei] = True
                cs = [w for w in h.edges[ei] if w != v]
                for w in cs:
                    order.append(w)
                kids.append(cs)
            if kids:
                child_edges[v] = kids
        full: dict[int, list[int]] = {}
        free: dict[int, list[int]] = {}
        for v in reversed(order):
            kids = child_edges.get(v)
            if not kids:
                full[v] = free[v] = [1]
                continue
            a = [1]
            s: list[int] = []
            for cs in kids:
                pf = full[cs[0]]
                qf = free[cs[0]]
                for c in cs[1:]:
                    pf = mul_dense_nonneg(pf, full[c])
                    qf = mul_dense_nonneg(qf, free[c])
                s = _dense_add(mul_dense_nonneg(s, pf), mul_dense_nonneg(a, qf))
                a = mul_dense_nonneg(a, pf)
            free[v] = a
            f = list(a)
            _add_shifted(f, s)
            full[v] = f
            for cs in kids:
                for c in cs:
                    del full[c], free[c]
        total = mul_dense_nonneg(total, full[root])
    return total


def _dense_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def match_counts(h: Hypergraph, node_cap: int = DEFAULT_NODE_CAP) -> MatchCounts:
    p = forest_counts(h) if is_forest(h) else branch_counts(h, node_cap)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return MatchCounts(tuple(p))


def mu_from_counts(counts: MatchCounts | list[int], n: int, k: int) -> SparsePoly:
    p = counts.p if isinstance(counts, MatchCounts) else counts
    return SparsePoly({n - k * r: (-1) ** r * c for r, c in enumerate(p) if c})


def matching_polynomial(h: Hypergraph, node_cap: int = DEFAULT_NODE_CAP) -> SparsePoly:
    return mu_from_counts(match_counts(h, node_cap), h.n, h.k)


def generating_function(h: Hypergraph, node_cap: int = DEFAULT_NODE_CAP) -> SparsePoly:
    return SparsePoly.from_dense(match_counts(h, node_cap).p)


# ---------------------------------------------------------------------------
# Vertex-deletion recursion (independent oracle)
# ---------------------------------------------------------------------------

def matching_polynomial_recursive(h: Hypergraph, node_cap: int = DEFAULT_NODE_CAP) -> SparsePoly:
    """mu(H) = x mu(H-u) - sum_{e ni u} mu(H-e), pivot = smallest max-degree vertex.

    Works directly on polynomials and memoizes on re-indexed subgraphs.
    """
    memo: dict[tuple, SparsePoly] = {}
    budget = [node_cap]

    def rec(g: Hypergraph) -> SparsePoly:
        if g.m == 0:
            return SparsePoly.monomial(g.n)
        key = (g.n, tuple(sorted(g.edges)))
        hit = memo.get(key)
        if hit is not None:
            return hit
        budget[0] -= 1
        if budget[0] < 0:
            raise LimitExceeded(f"deletion recursion exceeded {node_cap} nodes")
        degs = [len(x) for x in g.incidence]
        u = degs.index(max(degs))
        out = X * rec(delete_vertices(g, [u])[0])
        for ei in g.incidence[u]:
            out = out - rec(delete_vertices(g, g.edges[ei])[0])
        memo[key] = out
        return out

    return rec(h)


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------

def check_mu_generating_identity(h: Hypergraph) -> bool:
    """mu(H, x) == x**n * m(H, -x**-k), comparing every coefficient.

    The left side comes from the deletion recursion, the right side from the
    enumerated generating function.
    """
    mu = matching_polynomial_recursive(h)
    gen = generating_function(h)
    rhs = {}
    for r, c in gen.terms.items():
        rhs[h.n - h.k * r] = (-1) ** r * c
    return mu == SparsePoly(rhs)


def derivative_identity_check(h: Hypergraph) -> bool:
    """d/dx mu(H) == sum_v mu(H - v)."""
    lhs = matching_polynomial(h).derivative()
    rhs = SparsePoly()
    for v in range(h.n):
        rhs = rhs + matching_polynomial(delete_vertices(h, [v])[0])
    return lhs == rhs


def multivariate_matching_eval(
    h: Hypergraph, w: Mapping[int, Fraction | int], node_cap: int = DEFAULT_NODE_CAP
) -> Fraction:
    """sum over matchings M of (-1)**|M| * prod_{e in M} w[e], exactly."""
    missing = [i for i in range(h.m) if i not in w]
    if missing:
        raise ValueError(f"no weight for edges {missing}")
    weights = [Fraction(w[i]) for i in range(h.m)]
    masks = [sum(1 << v for v in e) for e in h.edges]
    inc = [[(masks[i], weights[i]) for i in h.incidence[v]] for v in range(h.n)]
    memo: dict[int, Fraction] = {0: Fraction(1)}
    budget = [node_cap]

    def ev(live: int) -> Fraction:
        hit = memo.get(live)
        if hit is not None:
            return hit
        budget[0] -= 1
        if budget[0] < 0:
            raise LimitExceeded(f"matching evaluation exceeded {node_cap} nodes")
        low = live & -live
        v = low.bit_length() - 1
        acc = ev(live ^ low)
        for em, we in inc[v]:
            if em & live == em:
                acc -= we * ev(live & ~em)
        memo[live] = acc
        return acc

    limit = sys.getrecursionlimit()
    if h.n + 100 > limit:
        sys.setrecursionlimit(h.n + 1000)
    try:
        return ev((1 << h.n) - 1)
    finally:
        sys.setrecursionlimit(limit)


def log_concavity_check(c: MatchCounts | list[int]) -> bool:
    p = c.p if isinstance(c, MatchCounts) else list(c)
    return all(p[r] * p[r] >= p[r - 1] * p[r + 1] for r in range(1, len(p) - 1))


def has_matching_sign_pattern(f: SparsePoly, k: int) -> bool:
    """True when f looks like a matching polynomial: monic, supported on
    ``deg - k*r`` for r = 0..m with sign (-1)**r and no gaps."""
    if f.is_zero() or f.leading != 1:
        return False
    d = f.degree
    exps = f.exponents()
    if any((d - e) % k for e in exps):
        return False
    rs = sorted((d - e) // k for e in exps)
    if rs != list(range(len(rs))):
        return False
    return all((f.coeff(d - k * r) > 0) == (r % 2 == 0) for r in rs)


__all__ = [
    "MatchCounts",
    "branch_counts",
    "forest_counts",
    "match_counts",
    "mu_from_counts",
    "matching_polynomial",
    "matching_polynomial_recursive",
    "generating_function",
    "check_mu_generating_identity",
    "derivative_identity_check",
    "multivariate_matching_eval",
    "log_concavity_check",
    "has_matching_sign_pattern",
    "ONE",
]

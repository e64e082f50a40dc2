"""Adjacency tensors of k-graphs and alpha-normal weightings of k-trees.

For the adjacency tensor A of H the contraction collapses to

    (A x^{k-1})_v = sum_{e containing v} prod_{w in e, w != v} x_w .

The alpha-normal constructor follows the pendent-star reduction: at a vertex
u whose incident edges are all pendent except possibly one edge f, the
pendent edges P are removed and alpha_f is rescaled by 1 / (1 - sum_P alpha).
Unwinding the reductions rebuilds a weighted incidence matrix B whose rows
sum to one and whose edge products equal alpha.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import BadArity, BadCertificate, Inconclusive, NoSpectrum, NotARoot
from .hypergraph import Hypergraph, is_connected, is_ktree
from .matchpoly import multivariate_matching_eval
from .poly import SparsePoly

DEFAULT_NQZ_TOL = 1e-10
DEFAULT_MAX_ITER = 10**5


# ---------------------------------------------------------------------------
# Adjacency tensor
# ---------------------------------------------------------------------------

def apply_adjacency(h: Hypergraph, x):
    """A x^{k-1}.  Fraction/int entries give an exact list, floats a numpy array."""
    if len(x) != h.n:
        raise BadArity(f"vector has length {len(x)}, expected {h.n}")
    exact = not isinstance(x, np.ndarray) and all(isinstance(v, (int, Fraction)) for v in x)
    if exact:
        out = [Fraction(0)] * h.n
        for e in h.edges:
            for v in e:
                p = Fraction(1)
                for w in e:
                    if w != v:
                        p *= x[w]
                out[v] += p
        return out
    xv = np.asarray(x, dtype=float)
    out = np.zeros(h.n)
    # fixed edge order keeps float sums reproducible
    for e in h.edges:
        vals = xv[list(e)]
        for i, v in enumerate(e):
            out[v] += np.prod(np.delete(vals, i))
    return out


@dataclass(frozen=True)
class EigenPair:
    lam: float
    x: tuple[float, ...]


@dataclass(frozen=True)
class NQZResult:
    lo: float
    hi: float
    x: tuple[float, ...]
    iterations: int

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2

    @property
    def pair(self) -> EigenPair:
        return EigenPair(self.mid, self.x)

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "rho": self.mid, "iterations": self.iterations}


def spectral_radius_nqz(
    h: Hypergraph, tol: float = DEFAULT_NQZ_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> NQZResult:
    """Power iteration on A + I (unit diagonal shift) with max-normalisation."""
    if h.m == 0:
        raise NoSpectrum("hypergraph has no edges")
    if not is_connected(h):
        raise ValueError("hypergraph must be connected")
    k = h.k
    x = np.ones(h.n)
    res = None
    for it in range(1, max_iter + 1):
        xk = x ** (k - 1)
        y = apply_adjacency(h, x) + xk
        ratios = y / xk
        lo, hi = float(ratios.min()) - 1.0, float(ratios.max()) - 1.0
        res = NQZResult(lo, hi, tuple(x.tolist()), it)
        if hi - lo <= tol:
            return res
        x = y ** (1.0 / (k - 1))
        x = x / x.max()
    raise Inconclusive(f"no convergence after {max_iter} iterations", res)


def eigen_residual(h: Hypergraph, lam: float, x) -> float:
    """|A x^{k-1} - lam x^{[k-1]}|_inf / max(1, |x|_inf^{k-1})."""
    if len(x) != h.n:
        raise BadArity(f"vector has length {len(x)}, expected {h.n}")
    xv = np.asarray(x, dtype=float)
    if not xv.any():
        raise ValueError("zero vector")
    r = apply_adjacency(h, xv) - lam * xv ** (h.k - 1)
    scale = max(1.0, float(np.abs(xv).max()) ** (h.k - 1))
    return float(np.abs(r).max()) / scale


# ---------------------------------------------------------------------------
# Weighted incidence matrices
# ---------------------------------------------------------------------------

@dataclass
class WeightedIncidence:
    """Sparse map (vertex, edge index) -> weight."""

    entries: dict[tuple[int, int], Fraction | float] = field(default_factory=dict)

    def __getitem__(self, key):
        return self.entries[key]

    def __setitem__(self, key, value):
        self.entries[key] = value

    def items(self):
        return sorted(self.entries.items())

    def to_json(self) -> list[dict]:
        return [{"v": v, "e": e, "w": _num_str(w)} for (v, e), w in self.items()]


def _num_str(w) -> str:
    return str(w) if isinstance(w, (int, Fraction)) else repr(float(w))


@dataclass(frozen=True)
class NormalReport:
    c1_ok: bool
    c2_ok: bool
    c3_ok: bool

    @property
    def ok(self) -> bool:
        return self.c1_ok and self.c2_ok and self.c3_ok

    def to_json(self) -> dict:
        return {"c1_ok": self.c1_ok, "c2_ok": self.c2_ok, "c3_ok": self.c3_ok}


def _close(a, b, tau) -> bool:
    return a == b if tau == 0 else abs(a - b) <= tau


def verify_alpha_normal(
    h: Hypergraph, b: WeightedIncidence, alpha: Mapping[int, Fraction | float], tau=0
) -> NormalReport:
    """Check row sums (C1), edge products (C2) and cycle ratios (C3).

    tau = 0 demands exact equality; otherwise absolute deviations up to tau
    are accepted.
    """
    for (v, ei), w in b.entries.items():
        if not 0 <= ei < h.m or v not in h.edges[ei]:
            raise BadCertificate(f"weight on non-incidence ({v}, {ei})")
        if w == 0:
            raise BadCertificate(f"zero weight on incidence ({v}, {ei})")
    for ei, e in enumerate(h.edges):
        for v in e:
            if (v, ei) not in b.entries:
                raise BadCertificate(f"missing weight on incidence ({v}, {ei})")
    c1 = all(_close(sum(b[(v, ei)] for ei in h.incidence[v]), 1, tau)
             for v in range(h.n) if h.incidence[v])
    c2 = True
    for ei, e in enumerate(h.edges):
        p = 1
        for v in e:
            p = p * b[(v, ei)]
        if ei not in alpha or not _close(p, alpha[ei], tau):
            c2 = False
            break
    return NormalReport(c1, c2, _cycle_condition(h, b, tau))


def _cycle_condition(h: Hypergraph, b: WeightedIncidence, tau) -> bool:
    """Alternating ratio products over a fundamental cycle basis equal one.

    Equivalent to B(v, e) = a(v) * c(e) for potentials a, c fixed on a
    spanning forest of the vertex-edge incidence graph.
    """
    a: dict[int, object] = {}
    c: dict[int, object] = {}
    for start in range(h.n):
        if start in a or not h.incidence[start]:
            continue
        a[start] = 1
        stack = [("v", start)]
        while stack:
            kind, x = stack.pop()
            if kind == "v":
                for ei in h.incidence[x]:
                    if ei not in c:
                        c[ei] = b[(x, ei)] / a[x]
                        stack.append(("e", ei))
            else:
                for v in h.edges[x]:
                    if v not in a:
                        a[v] = b[(v, x)] / c[x]
                        stack.append(("v", v))
    for ei, e in enumerate(h.edges):
        for v in e:
            w = b[(v, ei)]
            pred = a[v] * c[ei]
            if tau == 0:
                if pred != w:
                    return False
            elif abs(pred - w) > tau * max(1.0, abs(w)):
                return False
    return True


# ---------------------------------------------------------------------------
# Pendent-star reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionStep:
    u: int
    pendent: tuple[int, ...]
    f: int
    c: Fraction

    def to_json(self) -> dict:
        return {"u": self.u, "P": list(self.pendent), "f": self.f, "c": str(self.c)}


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    outcome: str  # "case1" or "case2"

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]


@dataclass(frozen=True)
class AlphaNormalCertificate:
    """F as a subgraph of T, with B and alpha indexed by F's own ids.

    ``vertices[i]`` and ``edges[j]`` give the ids in T of F's vertex i and
    edge j.
    """

    tree: Hypergraph
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    b: WeightedIncidence
    alpha: dict[int, Fraction]
    trace: ReductionTrace

    def verify(self, tau=0) -> NormalReport:
        return verify_alpha_normal(self.tree, self.b, self.alpha, tau)

    def to_json(self) -> str:
        """Certificate in the ids of the input tree."""
        doc = {
            "alpha": {str(self.edges[j]): _num_str(a) for j, a in sorted(self.alpha.items())},
            "B": [{"v": self.vertices[v], "e": self.edges[e], "w": _num_str(w)}
                  for (v, e), w in self.b.items()],
            "trace": self.trace.to_json(),
            "outcome": self.trace.outcome,
        }
        return json.dumps(doc, sort_keys=True)


def _live_degrees(t: Hypergraph, live: set[int]) -> list[int]:
    deg = [0] * t.n
    for ei in live:
        for v in t.edges[ei]:
            deg[v] += 1
    return deg


def _pendent_vertices(t: Hypergraph, live: set[int], deg: list[int]) -> dict[int, tuple[int, list[int], int]]:
    """N(T): u -> (u, P(u), f) with the deterministic tie-breaks."""
    k = t.k
    pend = {ei: sum(1 for v in t.edges[ei] if deg[v] == 1) == k - 1 for ei in live}
    out = {}
    for u in range(t.n):
        if deg[u] < 2:
            continue
        inc = sorted(ei for ei in t.incidence[u] if ei in live)
        non = [ei for ei in inc if not pend[ei]]
        if len(non) > 1:
            continue
        if non:
            f = non[0]
            p = [ei for ei in inc if ei != f]
        else:
            f = inc[-1]
            p = inc[:-1]
        out[u] = (u, p, f)
    return out


def construct_alpha_normal_tree(
    t: Hypergraph, alpha: Mapping[int, Fraction | int], root_tol=0
) -> AlphaNormalCertificate:
    """Run the pendent-star reduction and unwind it into a certificate.

    Case 1 (every step admissible, one edge left) needs alpha to be a root of
    the multivariate matching polynomial; |value| <= root_tol is accepted so
    that rational surrogates of irrational roots go through, giving a
    near-certificate.  Case 2 stops at the first inadmissible pendent star.
    """
    if not is_ktree(t):
        raise ValueError("construct_alpha_normal_tree needs a k-tree")
    al = {}
    for ei in range(t.m):
        if ei not in alpha:
            raise BadCertificate(f"no alpha for edge {ei}")
        a = Fraction(alpha[ei])
        if a == 0:
            raise BadCertificate(f"alpha of edge {ei} is zero")
        al[ei] = a
    root_tol = Fraction(root_tol)

    cur = dict(al)
    live = set(range(t.m))
    steps: list[ReductionStep] = []
    hist: list[dict[int, Fraction]] = []  # alpha^i before step i
    outcome = "case1"
    while True:
        deg = _live_degrees(t, live)
        cand = _pendent_vertices(t, live, deg)
        if not cand:
            break
        bad = None
        for u in sorted(cand):
            _, p, _ = cand[u]
            if sum(cur[g] for g in p) == 1:
                bad = u
                break
        if bad is not None:
            _, p, f = cand[bad]
            hist.append(dict(cur))
            steps.append(ReductionStep(bad, tuple(p), f, Fraction(1)))
            outcome = "case2"
            break
        u = min(cand)
        _, p, f = cand[u]
        c = sum(cur[g] for g in p)
        hist.append(dict(cur))
        steps.append(ReductionStep(u, tuple(p), f, c))
        cur[f] = cur[f] / (1 - c)
        live -= set(p)

    trace = ReductionTrace(tuple(steps), outcome)
    b: dict[tuple[int, int], Fraction] = {}

    def unwind(step: ReductionStep, a: dict[int, Fraction]) -> None:
        for g in step.pendent:
            for v in t.edges[g]:
                b[(v, g)] = a[g] if v == step.u else Fraction(1)
        b[(step.u, step.f)] = 1 - step.c

    if outcome == "case1":
        value = multivariate_matching_eval(t, al)
        if abs(value) > root_tol:
            raise NotARoot(f"alpha is not a root: value {value}", value)
        (last,) = live
        for v in t.edges[last]:
            b[(v, last)] = Fraction(1)
        for i in range(len(steps) - 1, -1, -1):
            unwind(steps[i], hist[i])
        f_edges = sorted(range(t.m))
    else:
        # star from the inadmissible P, then every earlier step whose P joins it
        last = steps[-1]
        for g in last.pendent:
            for v in t.edges[g]:
                b[(v, g)] = hist[-1][g] if v == last.u else Fraction(1)
        # a removed star joins later ones only through u_i, whose sole
        # remaining edge is f_i; so the component is found by scanning back
        f_set = set(last.pendent)
        for i in range(len(steps) - 2, -1, -1):
            s = steps[i]
            if s.f in f_set:
                f_set |= set(s.pendent)
                unwind(s, hist[i])
        f_edges = sorted(f_set)

    f_vs = sorted({v for ei in f_edges for v in t.edges[ei]})
    vmap = {v: i for i, v in enumerate(f_vs)}
    emap = {ei: j for j, ei in enumerate(f_edges)}
    sub = Hypergraph(t.k, len(f_vs), tuple(tuple(vmap[v] for v in t.edges[ei]) for ei in f_edges))
    bw = WeightedIncidence({(vmap[v], emap[ei]): w for (v, ei), w in b.items() if ei in emap})
    return AlphaNormalCertificate(
        sub, tuple(f_vs), tuple(f_edges), bw, {emap[ei]: al[ei] for ei in f_edges}, trace
    )


# ---------------------------------------------------------------------------
# Cross-checks
# ---------------------------------------------------------------------------

def cross_check_rho_lambda(t: Hypergraph, tol: float = 1e-6) -> bool:
    from .zeros import lambda_enclosure

    if not is_ktree(t):
        raise ValueError("cross_check_rho_lambda needs a k-tree")
    lam = float(lambda_enclosure(t).mid)
    rho = spectral_radius_nqz(t).mid
    return abs(lam - rho) <= tol


def char_poly_tree_k2(t: Hypergraph) -> SparsePoly:
    """det(xI - A) for a 2-graph by Faddeev-LeVerrier over the integers."""
    if t.k != 2:
        raise BadArity("characteristic polynomial is only defined here for k = 2")
    n = t.n
    a = [[0] * n for _ in range(n)]
    for u, v in t.edges:
        a[u][v] = a[v][u] = 1
    coeffs = {n: 1}
    m = [[0] * n for _ in range(n)]  # M_0 = 0
    c = 1
    for j in range(1, n + 1):
        # M_j = A M_{j-1} + c_{n-j+1} I
        am = _matmul(a, m)
        for i in range(n):
            am[i][i] += c
        m = am
        am = _matmul(a, m)
        tr = sum(am[i][i] for i in range(n))
        if tr % j:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        c = -tr // j
        coeffs[n - j] = c
    return SparsePoly(coeffs)


def _matmul(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*y))
    return [[sum(p * q for p, q in zip(row, col)) for col in cols] for row in x]


__all__ = [
    "EigenPair",
    "NQZResult",
    "WeightedIncidence",
    "NormalReport",
    "ReductionStep",
    "ReductionTrace",
    "AlphaNormalCertificate",
    "apply_adjacency",
    "spectral_radius_nqz",
    "eigen_residual",
    "verify_alpha_normal",
    "construct_alpha_normal_tree",
    "cross_check_rho_lambda",
    "char_poly_tree_k2",
]

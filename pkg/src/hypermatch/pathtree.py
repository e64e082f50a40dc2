"""Path trees of k-graphs and the identities they satisfy.

The path tree T(H, u) has one vertex per nonbacktracking path of H starting
at u.  A path p together with its k-1 continuations through one host edge f
(at the terminal vertex of p) forms a tree edge.  Tree vertex 0 is the
length-0 path (u); ids are assigned in breadth-first discovery order,
candidate edges by host edge index and continuations by vertex id.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import BadPath, IdOutOfRange, LimitExceeded
from .hypergraph import Hypergraph, delete_vertices, is_connected
from .matchpoly import (
    forest_counts,
    has_matching_sign_pattern,
    matching_polynomial,
    mu_from_counts,
)
from .poly import ONE, SparsePoly

DEFAULT_MAX_VERTICES = 50_000


@dataclass(frozen=True)
class NbPath:
    """Alternating path (v0, e1, v1, ..., el, vl); edges are host edge indices."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...] = ()

    @property
    def terminal(self) -> int:
        return self.vertices[-1]

    @property
    def terminal_edge(self) -> int | None:
        return self.edges[-1] if self.edges else None

    def __len__(self):
        return len(self.edges)

    def to_json(self) -> dict:
        return {"v": list(self.vertices), "e": list(self.edges)}


@dataclass(frozen=True)
class PathTree:
    tree: Hypergraph
    root: int  # host vertex u; tree vertex 0 is the path (u)
    labels: tuple[NbPath, ...]

    def export(self) -> tuple[str, str]:
        """(HGR body of the tree, JSON label map)."""
        from .hypergraph import serialize

        doc = {
            "root": 0,
            "labels": {str(i): p.to_json() for i, p in enumerate(self.labels)},
        }
        return serialize(self.tree), json.dumps(doc, sort_keys=True)


def is_nonbacktracking(h: Hypergraph, p: NbPath) -> bool:
    vs, es = p.vertices, p.edges
    if len(vs) != len(es) + 1:
        raise BadPath("a path needs exactly one more vertex than edges")
    if len(set(vs)) != len(vs) or len(set(es)) != len(es):
        raise BadPath("path repeats a vertex or an edge")
    for v in vs:
        if not 0 <= v < h.n:
            raise BadPath(f"vertex {v} not in host")
    for i, ei in enumerate(es):
        if not 0 <= ei < h.m:
            raise BadPath(f"edge index {ei} not in host")
        e = h.edges[ei]
        if vs[i] not in e or vs[i + 1] not in e:
            raise BadPath(f"edge {ei} does not join {vs[i]} and {vs[i + 1]}")
    # e_j (1-based) must avoid v_0 .. v_{j-2}
    for j in range(2, len(es) + 1):
        e = set(h.edges[es[j - 1]])
        if any(v in e for v in vs[: j - 1]):
            return False
    return True


def build_path_tree(
    h: Hypergraph, u: int, max_vertices: int = DEFAULT_MAX_VERTICES, ordered: bool = False
) -> PathTree:
    """Breadth-first construction of T(H, u) restricted to the component of u.

    With ``ordered=True`` the continuation through host edge f at sibling w
    must also avoid the siblings of w in f with smaller id.  That tree is a
    subtree of the default one; it coincides with it for k = 2 and for
    k-trees, and it is the variant for which the Godsil ratio identity and
    the divisibility of mu(T) by mu(H) hold when k >= 3.
    """
    if not 0 <= u < h.n:
        raise IdOutOfRange(f"root {u} not in [0, {h.n})")
    labels = [NbPath((u,))]
    # host vertices that edges leaving each tree vertex must avoid
    blocked = [frozenset()]
    tree_edges = []
    head = 0
    while head < len(labels):
        p = labels[head]
        avoid = blocked[head]
        v = p.terminal
        for ei in h.incidence[v]:
            e = h.edges[ei]
            if any(w in avoid for w in e):
                continue
            if len(labels) + h.k - 1 > max_vertices:
                raise LimitExceeded(f"path tree exceeds {max_vertices} vertices")
            members = [head]
            grown = avoid | {v}
            for w in e:
                if w == v:
                    continue
                members.append(len(labels))
                labels.append(NbPath(p.vertices + (w,), p.edges + (ei,)))
                blocked.append(grown)
                if ordered:
                    grown = grown | {w}
            tree_edges.append(tuple(members))
        head += 1
    tree = Hypergraph(h.k, len(labels), tuple(tree_edges))
    return PathTree(tree, u, tuple(labels))


# ---------------------------------------------------------------------------
# Polynomials of path trees
# ---------------------------------------------------------------------------

def tree_mu(tree: Hypergraph) -> SparsePoly:
    return mu_from_counts(forest_counts(tree), tree.n, tree.k)


def tree_mu_minus_root(tree: Hypergraph, root: int = 0) -> SparsePoly:
    forest, _ = delete_vertices(tree, [root])
    return tree_mu(forest)


def verify_godsil(
    h: Hypergraph, u: int, max_vertices: int = DEFAULT_MAX_VERTICES, ordered: bool = False
) -> bool:
    """mu(H-u) * mu(T) == mu(T-u) * mu(H) for T = T(H, u)."""
    pt = build_path_tree(h, u, max_vertices, ordered)
    mu_h = matching_polynomial(h)
    mu_hu = matching_polynomial(delete_vertices(h, [u])[0])
    mu_t = tree_mu(pt.tree)
    mu_tu = tree_mu_minus_root(pt.tree)
    return mu_hu * mu_t == mu_tu * mu_h


def divisibility_quotient(
    h: Hypergraph, u: int, max_vertices: int = DEFAULT_MAX_VERTICES, ordered: bool = False
) -> SparsePoly:
    """mu(T(H, u)) / mu(H); raises NotDivisible if the division is not exact."""
    if not is_connected(h):
        raise ValueError("divisibility_quotient needs a connected hypergraph")
    pt = build_path_tree(h, u, max_vertices, ordered)
    return tree_mu(pt.tree).divexact(matching_polynomial(h))


def quotient_has_forest_pattern(q: SparsePoly, k: int) -> bool:
    return has_matching_sign_pattern(q, k)


def root_deletion_decomposition_check(
    h: Hypergraph, u: int, max_vertices: int = DEFAULT_MAX_VERTICES
) -> bool:
    """mu(T(H,u) - u) == prod_{w in N(u)} mu(T(H-u, w)) ** e_H(u, w)."""
    pt = build_path_tree(h, u, max_vertices)
    lhs = tree_mu_minus_root(pt.tree)
    rest, mapping = delete_vertices(h, [u])
    rhs = ONE
    for w in h.neighbors(u):
        mult = len(h.common_edges(u, w))
        sub = build_path_tree(rest, mapping[w], max_vertices)
        rhs = rhs * tree_mu(sub.tree) ** mult
    return lhs == rhs


def path_from_letters(h: Hypergraph, seq: Sequence[int]) -> NbPath:
    """Build an NbPath from an alternating list [v0, e1, v1, ...]."""
    if len(seq) % 2 == 0:
        raise BadPath("alternating sequence must start and end with a vertex")
    return NbPath(tuple(seq[0::2]), tuple(seq[1::2]))

"""k-uniform hypergraphs: representation, deletions, generators and HGR I/O.

Vertices are dense integer ids ``0..n-1``; an edge is a strictly increasing
tuple of ``k`` vertex ids.  Edge indices are positions in ``Hypergraph.edges``
and stay stable for the lifetime of the object.

HGR text format::

    # comment
    k n
    v1 v2 ... vk
    ...
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import BadArity, DuplicateEdge, IdOutOfRange

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    k: int
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.k < 2:
            raise BadArity(f"k must be >= 2, got {self.k}")
        if self.n < 0:
            raise BadArity(f"vertex count must be >= 0, got {self.n}")
        canon = []
        seen = set()
        for raw in self.edges:
            e = tuple(sorted(int(v) for v in raw))
            if len(e) != self.k or len(set(e)) != self.k:
                raise BadArity(f"edge {tuple(raw)} does not have {self.k} distinct vertices")
            if e[0] < 0 or e[-1] >= self.n:
                raise IdOutOfRange(f"edge {e} has a vertex outside [0, {self.n})")
            if e in seen:
                raise DuplicateEdge(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """``incidence[v]`` lists the indices of the edges containing ``v``."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def neighbors(self, v: int) -> list[int]:
        out = {w for i in self.incidence[v] for w in self.edges[i]}
        out.discard(v)
        return sorted(out)

    def common_edges(self, u: int, v: int) -> list[int]:
        """Indices of edges containing both ``u`` and ``v``."""
        return sorted(set(self.incidence[u]) & set(self.incidence[v]))

    def canonical(self) -> "Hypergraph":
        return Hypergraph(self.k, self.n, tuple(sorted(self.edges)))

    def __repr__(self):
        return f"Hypergraph(k={self.k}, n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# HGR text format
# ---------------------------------------------------------------------------

def parse(text: bytes | str) -> Hypergraph:
    """Parse HGR text; edges keep file order."""
    if isinstance(text, bytes):
        text = text.decode("ascii")
    header = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split()
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise BadArity(f"line {lineno}: non-integer token in {line!r}") from None
        if header is None:
            if len(nums) != 2:
                raise BadArity(f"line {lineno}: header must be 'k n'")
            k, n = nums
            if k < 2 or n < 0:
                raise BadArity(f"line {lineno}: invalid header k={k} n={n}")
            header = (k, n)
            continue
        k, n = header
        if len(nums) != k:
            raise BadArity(f"line {lineno}: expected {k} vertex ids, got {len(nums)}")
        if any(b <= a for a, b in zip(nums, nums[1:])):
            raise BadArity(f"line {lineno}: vertex ids must be strictly increasing")
        if nums[0] < 0 or nums[-1] >= n:
            raise IdOutOfRange(f"line {lineno}: vertex id outside [0, {n})")
        e = tuple(nums)
        if e in seen:
            raise DuplicateEdge(f"line {lineno}: duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    if header is None:
        raise BadArity("missing 'k n' header")
    return Hypergraph(header[0], header[1], tuple(edges))


def serialize(h: Hypergraph) -> str:
    """Canonical HGR text: header then lexicographically sorted edge lines."""
    lines = [f"{h.k} {h.n}"]
    lines.extend(" ".join(map(str, e)) for e in sorted(h.edges))
    return "\n".join(lines) + "\n"


def read_hgr(path) -> Hypergraph:
    with open(path, "rb") as fh:
        return parse(fh.read())


# ---------------------------------------------------------------------------
# Structural queries
# ---------------------------------------------------------------------------

def degree_profile(h: Hypergraph) -> tuple[list[int], int, int]:
    degrees = [len(x) for x in h.incidence]
    if not degrees:
        return degrees, 0, 0
    return degrees, max(degrees), min(degrees)


def components(h: Hypergraph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    parent = list(range(h.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in h.edges:
        r0 = find(e[0])
        for v in e[1:]:
            r = find(v)
            if r != r0:
                parent[r] = r0
    groups: dict[int, list[int]] = {}
    for v in range(h.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def is_connected(h: Hypergraph) -> bool:
    return len(components(h)) <= 1


def is_ktree(h: Hypergraph) -> bool:
    # connected + |V| = |E|(k-1) + 1 characterizes acyclicity for simple k-graphs
    return h.n >= 1 and is_connected(h) and h.n == h.m * (h.k - 1) + 1


def is_forest(h: Hypergraph) -> bool:
    return h.n - len(components(h)) == h.m * (h.k - 1)


def has_common_vertex(h: Hypergraph) -> bool:
    """True when some vertex lies in every edge (a k-star, or a single edge)."""
    if h.m == 0:
        return False
    common = set(h.edges[0])
    for e in h.edges[1:]:
        common &= set(e)
    return bool(common)


# ---------------------------------------------------------------------------
# Deletion operators
# ---------------------------------------------------------------------------

def _check_ids(h: Hypergraph, vs: Iterable[int]) -> set[int]:
    out = set()
    for v in vs:
        if not 0 <= v < h.n:
            raise IdOutOfRange(f"vertex {v} not in [0, {h.n})")
        out.add(v)
    return out


def induced(h: Hypergraph, keep: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """Subgraph induced on ``keep``, re-indexed order-preservingly."""
    keep = sorted(_check_ids(h, keep))
    mapping = {v: i for i, v in enumerate(keep)}
    edges = tuple(
        tuple(mapping[v] for v in e) for e in h.edges if all(v in mapping for v in e)
    )
    return Hypergraph(h.k, len(keep), edges), mapping


def delete_vertices(h: Hypergraph, w: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """``H - W`` together with the old-id -> new-id map of surviving vertices."""
    w = _check_ids(h, w)
    return induced(h, (v for v in range(h.n) if v not in w))


def delete_edges(h: Hypergraph, idx: Iterable[int]) -> Hypergraph:
    """Remove edges by index, keeping every vertex."""
    drop = set(idx)
    for i in drop:
        if not 0 <= i < h.m:
            raise IdOutOfRange(f"edge index {i} not in [0, {h.m})")
    return Hypergraph(h.k, h.n, tuple(e for i, e in enumerate(h.edges) if i not in drop))


def weak_delete_edge(h: Hypergraph, e: int) -> Hypergraph:
    """Delete edge ``e`` and the vertices of ``e`` left isolated."""
    if not 0 <= e < h.m:
        raise IdOutOfRange(f"edge index {e} not in [0, {h.m})")
    gone = {v for v in h.edges[e] if h.degree(v) == 1}
    rest = delete_edges(h, [e])
    return induced(rest, (v for v in range(h.n) if v not in gone))[0]


def disjoint_union(*graphs: Hypergraph) -> Hypergraph:
    if not graphs:
        raise BadArity("disjoint_union needs at least one hypergraph")
    k = graphs[0].k
    edges: list[Edge] = []
    offset = 0
    for g in graphs:
        if g.k != k:
            raise BadArity("disjoint_union of hypergraphs with different k")
        edges.extend(tuple(v + offset for v in e) for e in g.edges)
        offset += g.n
    return Hypergraph(k, offset, tuple(edges))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def complete_kgraph(n: int, k: int) -> Hypergraph:
    if k < 2 or n < k:
        raise BadArity(f"complete k-graph needs n >= k >= 2 (n={n}, k={k})")
    return Hypergraph(k, n, tuple(combinations(range(n), k)))


def single_edge(k: int) -> Hypergraph:
    return complete_kgraph(k, k)


def star(k: int, delta: int) -> Hypergraph:
    """k-star S_delta: ``delta`` edges sharing vertex 0 and nothing else."""
    if delta < 1:
        raise BadArity("a star needs at least one edge")
    edges = []
    nxt = 1
    for _ in range(delta):
        edges.append((0, *range(nxt, nxt + k - 1)))
        nxt += k - 1
    return Hypergraph(k, nxt, tuple(edges))


def loose_path(k: int, length: int) -> Hypergraph:
    """Loose path: consecutive edges share exactly one vertex."""
    if length < 1:
        raise BadArity("a path needs at least one edge")
    edges = [tuple(range(i * (k - 1), i * (k - 1) + k)) for i in range(length)]
    return Hypergraph(k, length * (k - 1) + 1, tuple(edges))


def random_ktree(k: int, m: int, seed: int) -> Hypergraph:
    """Grow a k-tree edge by edge, attaching k-1 fresh vertices to a uniform old vertex."""
    if k < 2 or m < 1:
        raise BadArity(f"random_ktree needs k >= 2 and m >= 1 (k={k}, m={m})")
    rng = random.Random(seed)
    edges = [tuple(range(k))]
    n = k
    for _ in range(m - 1):
        anchor = rng.randrange(n)
        edges.append((anchor, *range(n, n + k - 1)))
        n += k - 1
    return Hypergraph(k, n, tuple(edges))


def _min_edges(n: int, k: int) -> int:
    return max(1, -(-(n - 1) // (k - 1)))


def random_connected_kgraph(k: int, n: int, m: int, seed: int) -> Hypergraph:
    """Random connected k-graph on ``n`` vertices with ``m`` edges.

    A spanning skeleton is grown first (each new edge brings up to k-1
    uncovered vertices and hooks onto covered ones), then distinct random
    edges are added until ``m`` is reached.
    """
    if k < 2 or n < k or m < _min_edges(n, k) or m > comb(n, k):
        raise BadArity(f"infeasible parameters k={k} n={n} m={m}")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    chosen: set[Edge] = {tuple(sorted(order[:k]))}
    covered = order[:k]
    todo = order[k:]
    while todo:
        t = min(k - 1, len(todo))
        fresh, todo = todo[:t], todo[t:]
        old = rng.sample(covered, k - t)
        chosen.add(tuple(sorted(fresh + old)))
        covered.extend(fresh)
    extra = m - len(chosen)
    if extra > 0:
        total = comb(n, k)
        if total <= 200_000:
            pool = [e for e in combinations(range(n), k) if e not in chosen]
            chosen.update(rng.sample(pool, extra))
        else:
            while extra:
                e = tuple(sorted(rng.sample(range(n), k)))
                if e not in chosen:
                    chosen.add(e)
                    extra -= 1
    return Hypergraph(k, n, tuple(sorted(chosen)))


def relabel(h: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Apply the vertex permutation ``v -> perm[v]``."""
    return Hypergraph(h.k, h.n, tuple(tuple(perm[v] for v in e) for e in h.edges))

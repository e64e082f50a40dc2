"""Seeded random instance families shared by the selftest and the test suite."""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Iterator

from .hypergraph import Hypergraph, _min_edges, random_connected_kgraph, random_ktree

CORPUS_SEED = 20240917


@dataclass(frozen=True)
class Instance:
    name: str
    h: Hypergraph
    seed: int


def connected_corpus(
    count: int = 240, ks=(2, 3, 4), max_n: int = 10, seed: int = CORPUS_SEED, extra_edges: int = 3
) -> Iterator[Instance]:
    """Connected k-graphs with n <= max_n, cycling through ``ks``.

    Edge counts run from the spanning minimum up to ``extra_edges`` more, so
    the family mixes k-trees with graphs that carry a few cycles.
    """
    rng = random.Random(seed)
    for i in range(count):
        k = ks[i % len(ks)]
        n = rng.randint(k, max_n)
        lo = _min_edges(n, k)
        hi = min(comb(n, k), lo + extra_edges)
        m = rng.randint(lo, hi)
        s = rng.getrandbits(64)
        h = random_connected_kgraph(k, n, m, s)
        yield Instance(f"kgraph-k{k}-n{n}-m{m}-{i}", h, s)


def ktree_corpus(
    count: int = 50, ks=(2, 3, 4, 5), max_edges: int = 10, seed: int = CORPUS_SEED + 1
) -> Iterator[Instance]:
    rng = random.Random(seed)
    for i in range(count):
        k = ks[i % len(ks)]
        m = rng.randint(1, max_edges)
        s = rng.getrandbits(64)
        yield Instance(f"ktree-k{k}-m{m}-{i}", random_ktree(k, m, s), s)


def tree2_corpus(count: int = 100, max_n: int = 12, seed: int = CORPUS_SEED + 2) -> Iterator[Instance]:
    """Random 2-trees (ordinary trees) with 2 <= n <= max_n."""
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(2, max_n)
        s = rng.getrandbits(64)
        yield Instance(f"tree-n{n}-{i}", random_ktree(2, n - 1, s), s)

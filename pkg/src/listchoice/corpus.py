"""Small-graph corpora: connected graphs up to isomorphism, by brute-force
canonical forms over all vertex permutations (fine through 7 vertices)."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from . import _engine
from .graphs import Graph, is_connected, is_triangulated


def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {pair: i for i, pair in enumerate(combinations(range(n), 2))}


@lru_cache(maxsize=None)
def _perm_maps(n: int) -> np.ndarray:
    idx = _pair_index(n)
    pairs = list(combinations(range(n), 2))
    perms = list(permutations(range(n)))
    out = np.zeros((len(perms), len(pairs)), dtype=np.int64)
    for p, perm in enumerate(perms):
        for i, (u, v) in enumerate(pairs):
            a, b = perm[u], perm[v]
            out[p, i] = idx[(a, b) if a < b else (b, a)]
    return out


def mask_to_graph(mask: int, n: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    return Graph(range(n), [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1])


def _mask_connected(mask: int, n: int, pairs: list[tuple[int, int]]) -> bool:
    adj = [0] * n
    for i, (u, v) in enumerate(pairs):
        if (mask >> i) & 1:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    comp = 1
    while True:
        grow = comp
        t = comp
        while t:
            v = (t & -t).bit_length() - 1
            t &= t - 1
            grow |= adj[v]
        if grow == comp:
            return comp == (1 << n) - 1
        comp = grow


@lru_cache(maxsize=None)
def connected_graphs_upto_iso(n: int) -> tuple[Graph, ...]:
    """Every connected graph on exactly n vertices, one per isomorphism
    class, vertices labeled 0..n-1."""
    if n == 1:
        return (Graph([0], []),)
    maps = _perm_maps(n)
    pairs = list(combinations(range(n), 2))
    seen: set[int] = set()
    out: list[Graph] = []
    for mask in range(1 << len(pairs)):
        if not _mask_connected(mask, n, pairs):
            continue
        canon = int(_engine.canon_mask(mask, maps))
        if canon in seen:
            continue
        seen.add(canon)
        out.append(mask_to_graph(canon, n))
    return tuple(out)


def connected_graphs_up_to(n: int) -> list[Graph]:
    out: list[Graph] = []
    for size in range(1, n + 1):
        out.extend(connected_graphs_upto_iso(size))
    return out


def chordal_connected_up_to(n: int) -> list[Graph]:
    return [g for g in connected_graphs_up_to(n) if is_triangulated(g)[0]]

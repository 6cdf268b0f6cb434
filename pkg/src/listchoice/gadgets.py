"""Deterministic generators for the named graph constructions.

Copies are numbered row-major and auxiliary vertices take the highest ids, so
serialized gadgets are byte-stable across runs.
"""

from __future__ import annotations

from typing import Mapping

from .errors import DegenerateParameters, NotBipartite, NotSimple
from .graphs import Graph, bipartition

GADGET_FAMILIES = (
    "theta",
    "apex-tower",
    "bg23",
    "bgk",
    "strong-lower",
    "hamilton-clique",
    "k24-prime",
)


def gen_theta(a: int, b: int, c: int) -> Graph:
    """Two hubs joined by three internally disjoint paths of the given
    lengths; at most one length may be 1."""
    lens = [a, b, c]
    if any(x < 1 for x in lens):
        raise DegenerateParameters("path lengths must be positive")
    if sum(1 for x in lens if x == 1) > 1:
        raise NotSimple("two length-1 paths would create a parallel edge")
    u, v = 0, 1
    edges = []
    nxt = 2
    for length in lens:
        prev = u
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Graph(range(nxt), edges)


def _disjoint_copies(g: Graph, count: int) -> tuple[Graph, list[dict[int, int]]]:
    n = g.n()
    vmap = {v: i for i, v in enumerate(sorted(g.vertices))}
    maps = []
    edges = []
    for i in range(count):
        off = i * n
        maps.append({v: vmap[v] + off for v in g.vertices})
        edges += [(vmap[u] + off, vmap[v] + off) for u, v in g.edges]
    return Graph(range(count * n), edges), maps


def gen_apex_tower(g: Graph) -> Graph:
    """|V| disjoint copies of g plus one apex adjacent to every copy vertex;
    pushes the choice number up by exactly one."""
    count = g.n()
    h, _ = _disjoint_copies(g, count)
    apex = count * g.n()
    edges = list(h.edges) + [(v, apex) for v in h.vertices]
    return Graph(range(apex + 1), edges)


def gen_bg23_gadget(
    g: Graph, f: Mapping[int, int], parts: tuple[frozenset[int], frozenset[int]]
) -> Graph:
    """Nine copies of a bipartite graph plus hubs u, v: u meets every X-side
    copy vertex with f = 2, v every Y-side copy vertex with f = 2."""
    x, y = frozenset(parts[0]), frozenset(parts[1])
    _check_bipartition(g, x, y)
    if any(f[w] not in (2, 3) for w in g.vertices):
        raise ValueError("f must map vertices to {2, 3}")
    h, maps = _disjoint_copies(g, 9)
    u = 9 * g.n()
    v = u + 1
    edges = list(h.edges)
    for cmap in maps:
        for w in g.vertices:
            if f[w] == 2:
                if w in x:
                    edges.append((cmap[w], u))
                else:
                    edges.append((cmap[w], v))
    return Graph(range(v + 1), edges)


def gen_bgk_gadget(
    g: Graph, k: int, parts: tuple[frozenset[int], frozenset[int]]
) -> Graph:
    """(k+1)^4 copies of a bipartite graph plus hubs joined to every X-side
    and every Y-side copy vertex respectively."""
    if k < 3:
        raise DegenerateParameters("k must be at least 3")
    x, y = frozenset(parts[0]), frozenset(parts[1])
    _check_bipartition(g, x, y)
    count = (k + 1) ** 4
    h, maps = _disjoint_copies(g, count)
    u = count * g.n()
    v = u + 1
    edges = list(h.edges)
    for cmap in maps:
        for w in g.vertices:
            edges.append((cmap[w], u) if w in x else (cmap[w], v))
    return Graph(range(v + 1), edges)


def _check_bipartition(g: Graph, x: frozenset[int], y: frozenset[int]) -> None:
    if x & y or (x | y) != set(g.vertices):
        raise NotBipartite("parts must partition the vertices")
    for a, b in g.edges:
        if (a in x) == (b in x):
            raise NotBipartite(f"edge ({a},{b}) stays inside one side")


def gen_strong_lower(d: int) -> tuple[Graph, tuple[frozenset[int], ...]]:
    """Max-degree-d graph on eight vertex classes whose three-part clique
    augmentation is not (2d-1)-colorable; the witness for strong chromatic
    number >= 2d.

    Classes in id order: A, B1, B2, C1, C2, D1, D2, E.  Edges are the
    complete joins A x (B1 u B2) and D1 x D2.  Parts: B1+C1+D1, B2+C2+D2,
    A+E, each of size 2d-1.
    """
    if d < 2:
        raise DegenerateParameters("d must be at least 2")
    r = d // 2
    if d % 2 == 0:
        sizes = [2 * r, r, r, r - 1, r - 1, 2 * r, 2 * r, 2 * r - 1]
    else:
        sizes = [2 * r + 1, r + 1, r, r - 1, r, 2 * r + 1, 2 * r + 1, 2 * r]
    bounds = [0]
    for sz in sizes:
        bounds.append(bounds[-1] + sz)
    cls = [list(range(bounds[i], bounds[i + 1])) for i in range(8)]
    a, b1, b2, c1, c2, d1, d2, e = cls
    edges = [(p, q) for p in a for q in b1 + b2]
    edges += [(p, q) for p in d1 for q in d2]
    g = Graph(range(bounds[-1]), edges)
    parts = (
        frozenset(b1 + c1 + d1),
        frozenset(b2 + c2 + d2),
        frozenset(a + e),
    )
    return g, parts


def gen_hamilton_clique(k: int, n: int) -> Graph:
    """Cliques on the n consecutive 3k-vertex blocks plus an edge-disjoint
    Hamiltonian cycle visiting the blocks round-robin; (3k+1)-regular."""
    if k < 1 or n < 2:
        raise DegenerateParameters("need k >= 1 and n >= 2")
    total = 3 * k * n
    edges = []
    for blk in range(n):
        members = range(blk * 3 * k, (blk + 1) * 3 * k)
        edges += [(p, q) for p in members for q in members if p < q]
    seq = [(i % n) * 3 * k + (i // n) for i in range(total)]
    for i in range(total):
        edges.append((seq[i], seq[(i + 1) % total]))
    return Graph(range(total), edges)


def gen_k24_prime() -> Graph:
    """The complete bipartite graph on 2+4 vertices plus an apex joined to
    all six."""
    xs = [0, 1]
    ys = [2, 3, 4, 5]
    edges = [(x, y) for x in xs for y in ys]
    edges += [(w, 6) for w in range(6)]
    return Graph(range(7), edges)

"""Graph and digraph data model plus the structural subroutines used everywhere else.

Vertices are non-negative integers.  Both types are immutable value objects:
every operation returns a fresh graph and never mutates its input, so values
can be shared freely across threads.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .errors import DisconnectedInput, NotApplicable


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph over integer vertex ids."""

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
        vs = tuple(sorted(set(int(v) for v in vertices)))
        vset = set(vs)
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u},{v}) uses undeclared vertex")
            es.add(_norm_edge(u, v))
        if any(v < 0 for v in vs):
            raise ValueError("vertex ids must be non-negative")
        self.vertices: tuple[int, ...] = vs
        self.edges: frozenset[tuple[int, int]] = frozenset(es)
        adj: dict[int, set[int]] = {v: set() for v in vs}
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def max_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    def n(self) -> int:
        return len(self.vertices)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    def induced(self, keep: Iterable[int]) -> "Graph":
        ks = set(keep)
        return Graph(ks, (e for e in self.edges if e[0] in ks and e[1] in ks))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


class Digraph:
    """Directed simple graph; antiparallel arc pairs are allowed, loops are not."""

    __slots__ = ("vertices", "arcs", "_out", "_in")

    def __init__(self, vertices: Iterable[int], arcs: Iterable[tuple[int, int]]):
        vs = tuple(sorted(set(int(v) for v in vertices)))
        vset = set(vs)
        ar = set()
        for u, v in arcs:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if u not in vset or v not in vset:
                raise ValueError(f"arc ({u},{v}) uses undeclared vertex")
            ar.add((u, v))
        self.vertices: tuple[int, ...] = vs
        self.arcs: frozenset[tuple[int, int]] = frozenset(ar)
        out: dict[int, set[int]] = {v: set() for v in vs}
        inn: dict[int, set[int]] = {v: set() for v in vs}
        for u, v in ar:
            out[u].add(v)
            inn[v].add(u)
        self._out = {v: frozenset(ns) for v, ns in out.items()}
        self._in = {v: frozenset(ns) for v, ns in inn.items()}

    def out_neighbors(self, v: int) -> frozenset[int]:
        return self._out[v]

    def in_neighbors(self, v: int) -> frozenset[int]:
        return self._in[v]

    def out_degree(self, v: int) -> int:
        return len(self._out[v])

    def max_out_degree(self) -> int:
        return max((len(ns) for ns in self._out.values()), default=0)

    def induced(self, keep: Iterable[int]) -> "Digraph":
        ks = set(keep)
        return Digraph(ks, (a for a in self.arcs if a[0] in ks and a[1] in ks))

    def underlying(self) -> Graph:
        return Graph(self.vertices, self.arcs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.vertices == other.vertices
            and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph({len(self.vertices)} vertices, {len(self.arcs)} arcs)"


class CoreKind(enum.Enum):
    K1 = "K1"
    EVEN_CYCLE = "even_cycle"
    THETA = "theta_2_2_even"
    OTHER = "other"


@dataclass(frozen=True)
class CoreClass:
    """Shape of a graph core: K1, an even cycle C_{2m+2}, a theta with
    path lengths (2, 2, 2m), or anything else."""

    kind: CoreKind
    m: Optional[int] = None

    def __str__(self) -> str:
        if self.kind is CoreKind.EVEN_CYCLE:
            return f"C_{2 * self.m + 2}"
        if self.kind is CoreKind.THETA:
            return f"Theta(2,2,{2 * self.m})"
        return self.kind.value


# ---------------------------------------------------------------------------
# basic traversals


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    comps = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def bfs_distances(g: Graph, sources: Iterable[int]) -> dict[int, int]:
    dist = {s: 0 for s in sources}
    queue = deque(sorted(dist))
    while queue:
        v = queue.popleft()
        for w in sorted(g.neighbors(v)):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def bipartition(g: Graph) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """Two-color g; None when any component has an odd cycle."""
    side: dict[int, int] = {}
    for start in g.vertices:
        if start in side:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in side:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    x = frozenset(v for v, s in side.items() if s == 0)
    y = frozenset(v for v, s in side.items() if s == 1)
    return x, y


def is_complete(g: Graph) -> bool:
    n = g.n()
    return len(g.edges) == n * (n - 1) // 2


def is_cycle_graph(g: Graph) -> bool:
    return (
        g.n() >= 3
        and is_connected(g)
        and all(g.degree(v) == 2 for v in g.vertices)
    )


def clique_number(g: Graph) -> int:
    """Exact clique number by branch and bound; desk-scale graphs only."""
    if g.n() == 0:
        return 0
    order = sorted(g.vertices)
    idx = {v: i for i, v in enumerate(order)}
    nbr_mask = [0] * len(order)
    for u, v in g.edges:
        nbr_mask[idx[u]] |= 1 << idx[v]
        nbr_mask[idx[v]] |= 1 << idx[u]
    best = 0

    def grow(size: int, cand: int) -> None:
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            i = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            grow(size + 1, cand & nbr_mask[i])

    grow(0, (1 << len(order)) - 1)
    return best


# ---------------------------------------------------------------------------
# core and its classification


def core(g: Graph) -> Graph:
    """Strip degree-1 vertices one at a time until none remain.

    A tree collapses to a single vertex; graphs with minimum degree != 1 are
    returned unchanged, so the operation is idempotent.
    """
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    leaves = sorted(v for v in alive if deg[v] == 1)
    while leaves:
        v = leaves.pop(0)
        if v not in alive or deg[v] != 1:
            continue
        alive.remove(v)
        (w,) = adj[v]
        adj[w].discard(v)
        deg[w] -= 1
        if deg[w] == 1:
            leaves.append(w)
            leaves.sort()
    return g.induced(alive)


def classify_core(g: Graph) -> CoreClass:
    """Decide whether the core of a connected graph is K1, C_{2m+2} or
    Theta_{2,2,2m}; everything else (including the empty graph) is OTHER."""
    if g.n() == 0:
        return CoreClass(CoreKind.OTHER)
    if not is_connected(g):
        raise DisconnectedInput("classify_core needs a connected graph")
    c = core(g)
    n = c.n()
    if n == 1:
        return CoreClass(CoreKind.K1)
    degs = sorted(c.degree(v) for v in c.vertices)
    if degs and degs[0] == 2 and degs[-1] == 2:
        if n % 2 == 0 and n >= 4 and is_cycle_graph(c):
            return CoreClass(CoreKind.EVEN_CYCLE, (n - 2) // 2)
        return CoreClass(CoreKind.OTHER)
    hubs = [v for v in c.vertices if c.degree(v) == 3]
    if len(hubs) != 2 or any(c.degree(v) not in (2, 3) for v in c.vertices):
        return CoreClass(CoreKind.OTHER)
    u, v = hubs
    lengths = []
    seen_internal: set[int] = set()
    for first in sorted(c.neighbors(u)):
        prev, cur, steps = u, first, 1
        internal = []
        while cur not in (u, v):
            internal.append(cur)
            nxts = [w for w in c.neighbors(cur) if w != prev]
            if len(nxts) != 1:
                return CoreClass(CoreKind.OTHER)
            prev, cur = cur, nxts[0]
            steps += 1
        if cur == u:
            return CoreClass(CoreKind.OTHER)
        if seen_internal & set(internal):
            return CoreClass(CoreKind.OTHER)
        seen_internal |= set(internal)
        lengths.append(steps)
    if len(lengths) != 3 or 2 + len(seen_internal) != n:
        return CoreClass(CoreKind.OTHER)
    lengths.sort()
    if lengths[0] == 2 and lengths[1] == 2 and lengths[2] % 2 == 0:
        return CoreClass(CoreKind.THETA, lengths[2] // 2)
    return CoreClass(CoreKind.OTHER)


# ---------------------------------------------------------------------------
# line graph, chordality


def line_graph(g: Graph) -> Graph:
    """Vertex i of the result is edge sorted(g.edges)[i]; adjacency means the
    two edges share an endpoint."""
    es = sorted(g.edges)
    out_edges = []
    for i, j in combinations(range(len(es)), 2):
        if set(es[i]) & set(es[j]):
            out_edges.append((i, j))
    return Graph(range(len(es)), out_edges)


def is_triangulated(g: Graph) -> tuple[bool, Optional[list[int]]]:
    """Repeated simplicial-vertex elimination.  Returns (True, ordering) with
    a perfect elimination ordering, or (False, None)."""
    alive = set(g.vertices)
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    order = []
    while alive:
        pick = None
        for v in sorted(alive):
            ns = adj[v]
            if all(b in adj[a] for a, b in combinations(sorted(ns), 2)):
                pick = v
                break
        if pick is None:
            return False, None
        order.append(pick)
        alive.remove(pick)
        for w in adj[pick]:
            adj[w].discard(pick)
        del adj[pick]
    return True, order


# ---------------------------------------------------------------------------
# digraph routines


def odd_directed_cycle(d: Digraph) -> Optional[tuple[int, ...]]:
    """Return a simple directed cycle of odd length, or None.

    Searches the parity product graph (vertex, parity) for the shortest odd
    closed walk, then splits that walk into simple cycles; at least one of
    them carries the odd length.
    """
    best_walk: Optional[list[int]] = None
    for s in d.vertices:
        # BFS over states (v, parity) from (s, 0); reaching (s, 1) gives an
        # odd closed walk through s.
        prev: dict[tuple[int, int], tuple[int, int]] = {(s, 0): (-1, -1)}
        queue = deque([(s, 0)])
        found = None
        while queue and found is None:
            v, p = queue.popleft()
            for w in sorted(d.out_neighbors(v)):
                state = (w, 1 - p)
                if state not in prev:
                    prev[state] = (v, p)
                    if state == (s, 1):
                        found = state
                        break
                    queue.append(state)
        if found is None:
            continue
        walk = []
        cur = found
        while cur != (-1, -1):
            walk.append(cur[0])
            cur = prev[cur]
        walk.reverse()
        if best_walk is None or len(walk) < len(best_walk):
            best_walk = walk
    if best_walk is None:
        return None
    # Decompose the closed walk into simple cycles via a vertex stack.
    stack: list[int] = []
    pos: dict[int, int] = {}
    cycles: list[list[int]] = []
    for v in best_walk:
        if v in pos:
            cyc = stack[pos[v]:]
            cycles.append(cyc)
            for w in cyc[1:]:
                del pos[w]
            del stack[pos[v] + 1:]
        else:
            pos[v] = len(stack)
            stack.append(v)
    for cyc in cycles:
        if len(cyc) % 2 == 1:
            assert all(
                (cyc[i], cyc[(i + 1) % len(cyc)]) in d.arcs for i in range(len(cyc))
            )
            return tuple(cyc)
    raise AssertionError("odd closed walk without an odd simple cycle")


def scc(d: Digraph) -> tuple[list[tuple[int, ...]], Digraph]:
    """Tarjan strongly connected components, emitted in topological order of
    the condensation, plus the condensation digraph on component indices."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[tuple[int, ...]] = []
    counter = 0

    for root in d.vertices:
        if root in index:
            continue
        work = [(root, iter(sorted(d.out_neighbors(root))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(d.out_neighbors(w)))))
                    advanced = True
                    break
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
    comps.reverse()  # Tarjan emits reverse topological order
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    cond_arcs = set()
    for u, v in d.arcs:
        if comp_of[u] != comp_of[v]:
            cond_arcs.add((comp_of[u], comp_of[v]))
    return comps, Digraph(range(len(comps)), cond_arcs)


# ---------------------------------------------------------------------------
# cut vertices / blocks, and the even-cycle-or-theta search


def cut_vertices(g: Graph) -> set[int]:
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    cuts: set[int] = set()
    timer = 0
    for root in g.vertices:
        if root in disc:
            continue
        parent[root] = None
        stack = [(root, iter(sorted(g.neighbors(root))))]
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    parent[w] = v
                    if v == root:
                        root_children += 1
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, iter(sorted(g.neighbors(w)))))
                    advanced = True
                    break
                elif w != parent[v]:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if pv != root and low[v] >= disc[pv]:
                    cuts.add(pv)
        if root_children >= 2:
            cuts.add(root)
    return cuts


def blocks(g: Graph) -> list[Graph]:
    """Biconnected components as induced subgraphs (edge partition classes)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    estack: list[tuple[int, int]] = []
    out: list[Graph] = []
    timer = 0
    for root in g.vertices:
        if root in disc:
            continue
        parent[root] = None
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, iter(sorted(g.neighbors(root))))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    parent[w] = v
                    estack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, iter(sorted(g.neighbors(w)))))
                    advanced = True
                    break
                elif w != parent[v] and disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] >= disc[pv]:
                    block_edges = []
                    while estack:
                        e = estack.pop()
                        block_edges.append(e)
                        if e == (pv, v):
                            break
                    vs = set()
                    for a, b in block_edges:
                        vs.add(a)
                        vs.add(b)
                    out.append(g.induced(vs))
    for v in g.vertices:
        if g.degree(v) == 0:
            out.append(g.induced([v]))
    return out


def find_even_cycle_or_theta(g: Graph) -> Graph:
    """Induced subgraph that is a chordless even cycle, or an even cycle with
    exactly one chord (a theta whose shortest path may be a single edge).

    Exhaustive subset search in increasing size with early exit; intended for
    desk-scale graphs.
    """
    if not is_connected(g) or g.n() < 3 or cut_vertices(g):
        raise NotApplicable("need a 2-connected graph")
    if is_complete(g):
        raise NotApplicable("complete graph")
    if is_cycle_graph(g) and g.n() % 2 == 1:
        raise NotApplicable("odd cycle")
    vs = sorted(g.vertices)
    for size in range(4, g.n() + 1):
        for sub in combinations(vs, size):
            h = g.induced(sub)
            ecount = len(h.edges)
            if ecount == size and size % 2 == 0 and is_cycle_graph(h):
                return h
            if ecount == size + 1 and _is_even_cycle_one_chord(h):
                return h
    raise AssertionError("no even cycle or single-chord even cycle found")


def _is_even_cycle_one_chord(h: Graph) -> bool:
    # theta check: two degree-3 vertices, rest degree 2, three internally
    # disjoint u-v paths; the cycle avoiding the shortest path must be even
    # and the shortest path must be a single edge (the chord).
    degs = sorted(h.degree(v) for v in h.vertices)
    if degs != [2] * (h.n() - 2) + [3, 3]:
        return False
    u, v = (x for x in h.vertices if h.degree(x) == 3)
    lengths = []
    seen: set[int] = set()
    for first in sorted(h.neighbors(u)):
        prev, cur, steps = u, first, 1
        internal = []
        while cur not in (u, v):
            internal.append(cur)
            nxts = [w for w in h.neighbors(cur) if w != prev]
            if len(nxts) != 1:
                return False
            prev, cur = cur, nxts[0]
            steps += 1
        if cur == u or (seen & set(internal)):
            return False
        seen |= set(internal)
        lengths.append(steps)
    if len(lengths) != 3 or 2 + len(seen) != h.n():
        return False
    lengths.sort()
    return lengths[0] == 1 and (lengths[1] + lengths[2]) % 2 == 0

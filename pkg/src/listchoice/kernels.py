"""Digraph kernels and the kernel-driven multi-chooser.

A kernel of a digraph is an independent set K such that every vertex outside
K has an out-neighbor inside K.  Digraphs without odd directed cycles always
have one, and the construction below finds it: peel off a terminal strongly
connected component, two-color it by directed-distance parity (all its cycles
are even, so the coloring is consistent and every arc crosses sides), keep
one side, discard every remaining vertex that points into the kept side, and
repeat.

The multi-chooser awards one color per round to a kernel of the subdigraph of
still-hungry vertices whose lists carry that color; list sizes k(d+ + 1)
guarantee no vertex starves.
"""

from __future__ import annotations

from typing import Mapping

from .errors import ListTooSmall, NotApplicable, NotChordal, OddCycle
from .graphs import (
    Digraph,
    Graph,
    bfs_distances,
    blocks,
    clique_number,
    find_even_cycle_or_theta,
    is_complete,
    is_connected,
    is_cycle_graph,
    is_triangulated,
    odd_directed_cycle,
    scc,
)
from .orientation import Orientation, orient_degeneracy

ListAssignment = Mapping[int, frozenset[int]]
Choice = dict[int, frozenset[int]]


def _check_assignment(vertices, s: ListAssignment) -> None:
    for v in vertices:
        if v not in s:
            raise ListTooSmall(v, 1, 0)


def _parity_sides(d: Digraph, comp: tuple[int, ...]) -> tuple[set[int], set[int]]:
    # Distance parity from the smallest vertex, following arcs either way;
    # consistent because every directed cycle in the component is even.
    root = comp[0]
    cset = set(comp)
    side = {root: 0}
    stack = [root]
    while stack:
        v = stack.pop()
        succ = [w for w in d.out_neighbors(v) if w in cset]
        succ += [w for w in d.in_neighbors(v) if w in cset]
        for w in succ:
            if w not in side:
                side[w] = 1 - side[v]
                stack.append(w)
    s0 = {v for v in comp if side[v] == 0}
    s1 = {v for v in comp if side[v] == 1}
    return s0, s1


def kernel(d: Digraph, _checked: bool = False) -> frozenset[int]:
    """Kernel of a digraph with no odd directed cycle.

    Raises OddCycle with a witness cycle when the precondition fails.
    """
    if not _checked:
        cyc = odd_directed_cycle(d)
        if cyc is not None:
            raise OddCycle(cyc)
    kern: set[int] = set()
    alive = set(d.vertices)
    while alive:
        sub = d.induced(alive)
        comps, cond = scc(sub)
        terminal = [i for i in range(len(comps)) if not cond.out_neighbors(i)]
        ci = min(terminal, key=lambda i: comps[i][0])
        comp = comps[ci]
        if len(comp) == 1:
            chosen = {comp[0]}
        else:
            s0, s1 = _parity_sides(sub, comp)
            chosen = s0 if min(s0) < min(s1) else s1
            # a side of the parity split dominates the component: every arc
            # crosses sides and each vertex has an out-arc within the SCC
        kern |= chosen
        dominated = {
            v
            for v in alive
            if v not in comp and d.out_neighbors(v) & chosen
        }
        alive -= set(comp)
        alive -= dominated
    assert all(not (d.out_neighbors(v) & kern) for v in kern)
    return frozenset(kern)


def kernel_multichoice(
    d: Digraph, k: int, s: ListAssignment
) -> Choice:
    """Pick k colors per vertex, disjoint across arcs, given lists of size at
    least k(outdegree + 1) and no odd directed cycle.

    One color is retired per round: the vertices still hungry for it that
    carry it form a subdigraph, and its kernel receives the color.  Kernel
    independence keeps adjacent choices disjoint; kernel domination is what
    makes the counting work out.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    _check_assignment(d.vertices, s)
    for v in d.vertices:
        need = k * (d.out_degree(v) + 1)
        if len(s[v]) < need:
            raise ListTooSmall(v, need, len(s[v]))
    cyc = odd_directed_cycle(d)
    if cyc is not None:
        raise OddCycle(cyc)

    pool = set()
    for v in d.vertices:
        pool |= s[v]
    chosen: dict[int, set[int]] = {v: set() for v in d.vertices}
    hungry = set(d.vertices)
    rounds = 0
    max_rounds = k * len(d.vertices)
    while hungry:
        rounds += 1
        assert rounds <= max_rounds, "round budget exceeded"
        live_colors = set()
        for v in hungry:
            live_colors |= s[v] & pool
        c = min(live_colors)
        pool.discard(c)
        carriers = {v for v in hungry if c in s[v]}
        kern = kernel(d.induced(carriers), _checked=True)
        for v in kern:
            chosen[v].add(c)
        hungry -= {v for v in kern if len(chosen[v]) == k}
    return {v: frozenset(cs) for v, cs in chosen.items()}


def choose_via_orientation(
    g: Graph, orient: Orientation, k: int, s: ListAssignment
) -> Choice:
    """Run the kernel multi-chooser over an odd-cycle-free orientation of g."""
    if orient.base != g:
        raise ValueError("orientation belongs to a different graph")
    return kernel_multichoice(orient.digraph(), k, s)


def choose_chordal(g: Graph, k: int, s: ListAssignment) -> Choice:
    """Choice of size k from lists of size k*omega on a triangulated graph,
    via the acyclic (omega-1)-outdegree orientation."""
    ok, _ = is_triangulated(g)
    if not ok:
        raise NotChordal("graph has an induced cycle of length >= 4")
    w = clique_number(g)
    _check_assignment(g.vertices, s)
    for v in g.vertices:
        if len(s[v]) < k * w:
            raise ListTooSmall(v, k * w, len(s[v]))
    if w <= 1:
        return {v: frozenset(sorted(s[v])[:k]) for v in g.vertices}
    orient = orient_degeneracy(g, w - 1)
    assert orient is not None
    return choose_via_orientation(g, orient, k, s)


def _choose_greedy(v: int, k: int, avail: set[int]) -> frozenset[int]:
    if len(avail) < k:
        raise ListTooSmall(v, k, len(avail))
    return frozenset(sorted(avail)[:k])


def _theta_paths(h: Graph) -> tuple[int, int, list[list[int]]]:
    """Hub pair and the three internal-vertex paths of a theta graph, longest
    path last."""
    hubs = sorted(v for v in h.vertices if h.degree(v) == 3)
    u, v = hubs
    paths = []
    for first in sorted(h.neighbors(u)):
        prev, cur = u, first
        internal = []
        while cur not in (u, v):
            internal.append(cur)
            nxt = [w for w in h.neighbors(cur) if w != prev]
            prev, cur = cur, nxt[0]
        paths.append(internal)
    paths.sort(key=len)
    return u, v, paths


def _choose_theta(h: Graph, k: int, s: ListAssignment) -> Choice:
    """Sequential choice on a theta graph whose longest path has length >= 2,
    from lists of size exactly k*degree.

    Order: hub u avoiding the first vertex of the long path, then the two
    short paths, hub v, then the long path walked backwards; each vertex
    takes k colors not chosen by already-colored neighbors.
    """
    u, v, paths = _theta_paths(h)
    zs = paths[2]
    assert len(zs) >= 1, "longest path must have an internal vertex"
    trimmed = {w: frozenset(sorted(s[w])[: k * h.degree(w)]) for w in h.vertices}
    choice: Choice = {}
    choice[u] = _choose_greedy(u, k, set(trimmed[u]) - set(trimmed[zs[0]]))
    order = paths[0] + paths[1] + [v] + list(reversed(zs))
    for w in order:
        avail = set(trimmed[w])
        for x in h.neighbors(w):
            if x in choice:
                avail -= choice[x]
        choice[w] = _choose_greedy(w, k, avail)
    return choice


def _cyclic_orientation(h: Graph) -> Orientation:
    start = min(h.vertices)
    prev, cur = None, start
    order = [start]
    while True:
        nxts = sorted(w for w in h.neighbors(cur) if w != prev)
        prev, cur = cur, nxts[0]
        if cur == start:
            break
        order.append(cur)
    direction = {}
    for i, a in enumerate(order):
        b = order[(i + 1) % len(order)]
        direction[(a, b) if a < b else (b, a)] = (a, b)
    return Orientation(h, direction)


def choose_brooks(g: Graph, k: int, s: ListAssignment) -> Choice:
    """Choice of size k from lists of size k*Delta on a connected graph that
    is neither complete nor an odd cycle.

    Non-regular graphs go through the acyclic (Delta-1)-outdegree
    orientation.  Regular graphs start from an induced even cycle or theta
    inside a suitable block, choose on it, and extend outwards processing
    vertices in decreasing distance from that subgraph.
    """
    if not is_connected(g):
        raise NotApplicable("graph must be connected")
    if is_complete(g):
        raise NotApplicable("complete graph")
    if is_cycle_graph(g) and g.n() % 2 == 1:
        raise NotApplicable("odd cycle")
    delta = g.max_degree()
    _check_assignment(g.vertices, s)
    for v in g.vertices:
        if len(s[v]) < k * delta:
            raise ListTooSmall(v, k * delta, len(s[v]))

    degs = {g.degree(v) for v in g.vertices}
    if len(degs) > 1:
        orient = orient_degeneracy(g, delta - 1)
        assert orient is not None, "non-regular graph must be (Delta-1)-degenerate"
        return choose_via_orientation(g, orient, k, s)

    target = None
    for b in blocks(g):
        if b.n() >= 3 and not is_complete(b) and not (
            is_cycle_graph(b) and b.n() % 2 == 1
        ):
            target = b
            break
    if target is None:
        raise NotApplicable("every block is complete or an odd cycle")
    h = find_even_cycle_or_theta(target)

    # peel outside-in: farthest vertices choose first, so each vertex still
    # has an uncolored neighbor nearer to h when its turn comes
    dist = bfs_distances(g, h.vertices)
    outside = sorted(
        (x for x in g.vertices if x not in set(h.vertices)),
        key=lambda x: (-dist[x], x),
    )
    choice: Choice = {}
    for w in outside:
        avail = set(s[w])
        for x in g.neighbors(w):
            if x in choice:
                avail -= choice[x]
        choice[w] = _choose_greedy(w, k, avail)

    reduced = {}
    for w in h.vertices:
        avail = set(s[w])
        for x in g.neighbors(w):
            if x in choice:
                avail -= choice[x]
        reduced[w] = frozenset(avail)
    if is_cycle_graph(h):
        sub = kernel_multichoice(_cyclic_orientation(h).digraph(), k, reduced)
    else:
        sub = _choose_theta(h, k, reduced)
    choice.update(sub)
    return choice

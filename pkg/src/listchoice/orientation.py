"""Subgraph density and the orientations that feed the kernel chooser.

The density invariant is max |E(H)|/|V(H)| over non-empty subgraphs H.  An
orientation with all outdegrees <= d exists exactly when that maximum is at
most d, which turns the density computation into a search over the finitely
many candidate ratios e/v, each tested by a small matching flow: every edge
must be assigned to one endpoint without any vertex receiving more than its
capacity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .errors import EmptyGraph
from .graphs import Digraph, Graph


class Orientation:
    """A direction for every edge of a base graph."""

    __slots__ = ("base", "direction")

    def __init__(self, base: Graph, direction: dict[tuple[int, int], tuple[int, int]]):
        for e in base.edges:
            d = direction.get(e)
            if d is None or set(d) != set(e):
                raise ValueError(f"edge {e} lacks a direction")
        if len(direction) != len(base.edges):
            raise ValueError("direction map covers non-edges")
        self.base = base
        self.direction = dict(direction)

    def digraph(self) -> Digraph:
        return Digraph(self.base.vertices, self.direction.values())

    def max_out_degree(self) -> int:
        return self.digraph().max_out_degree()


def _edge_assignment(g: Graph, cap_num: int, cap_den: int) -> Optional[dict]:
    """Assign each edge (weight cap_den) to an endpoint with vertex capacity
    cap_num; None when impossible.

    Bipartite b-matching via augmenting paths on the edge/vertex incidence
    structure.  Feasibility is equivalent to max subgraph density <=
    cap_num/cap_den.
    """
    edges = sorted(g.edges)
    load = {v: 0 for v in g.vertices}
    # assign[i] = [units to endpoint 0, units to endpoint 1] for edges[i]
    assign = [[0, 0] for _ in edges]
    incident: dict[int, list[int]] = {v: [] for v in g.vertices}
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)

    def free_capacity(v: int, visited: set[int]) -> bool:
        # DFS on the residual structure: a unit already assigned to v can be
        # rerouted to the opposite endpoint if that endpoint can be freed.
        if load[v] < cap_num:
            load[v] += 1
            return True
        for i in incident[v]:
            side = 0 if edges[i][0] == v else 1
            if assign[i][side] == 0:
                continue
            w = edges[i][1 - side]
            if w in visited:
                continue
            visited.add(w)
            if free_capacity(w, visited):
                assign[i][side] -= 1
                assign[i][1 - side] += 1
                return True
        return False

    for i, (u, v) in enumerate(edges):
        for _ in range(cap_den):
            pushed = False
            for side, x in ((0, u), (1, v)):
                if free_capacity(x, {x}):
                    assign[i][side] += 1
                    pushed = True
                    break
            if not pushed:
                return None
    return {edges[i]: (assign[i][0], assign[i][1]) for i in range(len(edges))}


def density_feasible(g: Graph, d: Fraction) -> bool:
    """True iff every non-empty subgraph H satisfies |E(H)|/|V(H)| <= d."""
    return _edge_assignment(g, d.numerator, d.denominator) is not None


def density_M(g: Graph) -> Fraction:
    """Exact max |E(H)|/|V(H)| over non-empty subgraphs H of g."""
    if g.n() == 0:
        raise EmptyGraph("density of the empty graph is undefined")
    ne, nv = len(g.edges), g.n()
    if ne == 0:
        return Fraction(0)
    cands = sorted({Fraction(e, v) for v in range(1, nv + 1) for e in range(0, ne + 1)})
    lo, hi = 0, len(cands) - 1
    # density_feasible is monotone in d; binary search the smallest feasible
    # candidate, which is the maximum attained ratio.
    while lo < hi:
        mid = (lo + hi) // 2
        if density_feasible(g, cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return cands[lo]


def orient_bounded_outdegree(g: Graph, d: int) -> Optional[Orientation]:
    """Orientation with every outdegree <= d, or None when density exceeds d."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    assign = _edge_assignment(g, d, 1)
    if assign is None:
        return None
    direction = {}
    for (u, v), (to_u, to_v) in assign.items():
        # the endpoint the edge is assigned to becomes the tail
        direction[(u, v)] = (u, v) if to_u else (v, u)
    return Orientation(g, direction)


def orient_degeneracy(g: Graph, d: int) -> Optional[Orientation]:
    """Acyclic orientation with outdegrees <= d by repeated minimum-degree
    removal (smallest id first), or None when some induced subgraph has
    minimum degree > d."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    deg = {v: g.degree(v) for v in g.vertices}
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    alive = set(g.vertices)
    direction = {}
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        if deg[v] > d:
            return None
        for w in adj[v]:
            e = (v, w) if v < w else (w, v)
            direction[e] = (v, w)
            adj[w].discard(v)
            deg[w] -= 1
        alive.remove(v)
    return Orientation(g, direction)

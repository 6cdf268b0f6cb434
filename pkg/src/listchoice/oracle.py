"""Ground-truth decision procedures for list choosability.

``is_ab_choosable`` asks whether every assignment of a-sized color lists
admits per-vertex b-subsets that are disjoint across edges.  Assignments are
searched up to color relabeling: an assignment is a multiset of color
classes, and only reduced candidates can be bad (see ``_engine``), namely
multisets of connected size->=2 classes over a connected irreducible induced
subgraph, with per-vertex coverage in [a-b+1, a].  A bad reduced candidate
lifts to a bad assignment on the whole graph by padding every remaining list
slot with a globally fresh color; conversely every bad assignment reduces to
such a candidate, so the scan is a complete decision procedure.

Everything constructive elsewhere in the package is validated against this
module, and witnesses returned here are re-certified by an independent plain
backtracking search (`find_choice`) before they leave the module.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping, Optional

import numpy as np

from . import _engine
from .errors import BudgetExceeded
from .graphs import Graph, clique_number
from .kernels import Choice, ListAssignment

DEFAULT_BUDGET = int(os.environ.get("LISTCHOICE_BUDGET", "10000000"))


@dataclass(frozen=True)
class ChoosabilityQuery:
    a: int
    b: int

    def __post_init__(self):
        if not (1 <= self.b <= self.a):
            raise ValueError("need 1 <= b <= a")


@dataclass
class Witness:
    """A concrete list assignment together with the verdict it certifies."""

    assignment: dict[int, frozenset[int]]
    choosable: bool
    choice: Optional[Choice] = None

    def to_json(self) -> dict:
        out = {
            "assignment": {str(v): sorted(cs) for v, cs in sorted(self.assignment.items())},
            "verdict": "choosable" if self.choosable else "bad-assignment",
        }
        if self.choice is not None:
            out["choice"] = {str(v): sorted(cs) for v, cs in sorted(self.choice.items())}
        return out


def verify_choice(g: Graph, s: ListAssignment, c: Mapping[int, frozenset[int]], b: int) -> bool:
    """Containment, exact size b, and disjointness across every edge."""
    for v in g.vertices:
        if v not in c or v not in s:
            return False
        if len(c[v]) != b or not (frozenset(c[v]) <= frozenset(s[v])):
            return False
    for u, v in g.edges:
        if frozenset(c[u]) & frozenset(c[v]):
            return False
    return True


def find_choice(
    g: Graph, s: ListAssignment, b: int, budget: int = DEFAULT_BUDGET
) -> Optional[Choice]:
    """Backtracking search for a valid size-b choice under a concrete
    assignment; vertices in decreasing-degree order, forward pruning on
    neighbor lists.  Independent of the relabeling-reduced scan."""
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    avail = {v: frozenset(s[v]) for v in g.vertices}
    chosen: dict[int, frozenset[int]] = {}
    nodes = 0

    def rec(i: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes, budget)
        if i == len(order):
            return True
        v = order[i]
        later = [u for u in g.neighbors(v) if u not in chosen]
        for comb in combinations(sorted(avail[v]), b):
            cs = frozenset(comb)
            saved = {}
            ok = True
            for u in later:
                saved[u] = avail[u]
                avail[u] = avail[u] - cs
                if len(avail[u]) < b:
                    ok = False
            if ok:
                chosen[v] = cs
                if rec(i + 1):
                    return True
                del chosen[v]
            for u, old in saved.items():
                avail[u] = old
        return False

    for v in g.vertices:
        if len(avail[v]) < b:
            return None
    if rec(0):
        return {v: chosen[v] for v in g.vertices}
    return None


# ---------------------------------------------------------------------------
# reduced-candidate machinery


def _adj_masks(g: Graph, verts: list[int]) -> np.ndarray:
    idx = {v: i for i, v in enumerate(verts)}
    adj = np.zeros(len(verts), dtype=np.int64)
    for u, v in g.edges:
        if u in idx and v in idx:
            adj[idx[u]] |= 1 << idx[v]
            adj[idx[v]] |= 1 << idx[u]
    return adj


def _mask_connected(mask: int, adj: np.ndarray) -> bool:
    comp = mask & -mask
    while True:
        grow = comp
        t = comp
        while t:
            v = (t & -t).bit_length() - 1
            t &= t - 1
            grow |= int(adj[v]) & mask
        if grow == comp:
            return comp == mask
        comp = grow


def _connected_classes(adj: np.ndarray, n: int) -> np.ndarray:
    """All connected induced vertex subsets of size >= 2, sorted by lowest
    member then mask value; the scan relies on this grouping."""
    out = []
    for mask in range(3, 1 << n):
        if mask.bit_count() >= 2 and _mask_connected(mask, adj):
            out.append(mask)
    out.sort(key=lambda m: ((m & -m).bit_length(), m))
    return np.array(out, dtype=np.int64)


def _irreducible_subgraphs(
    g: Graph, f: Mapping[int, int], b: int
) -> Iterator[list[int]]:
    """Connected induced subgraphs where no vertex satisfies
    f(v) >= b*(deg+1), in ascending size order."""
    verts = list(g.vertices)
    n = len(verts)
    adj = _adj_masks(g, verts)
    found = []
    for mask in range(1, 1 << n):
        ok = True
        t = mask
        while t:
            i = (t & -t).bit_length() - 1
            t &= t - 1
            deg = (int(adj[i]) & mask).bit_count()
            if f[verts[i]] >= b * (deg + 1):
                ok = False
                break
        if ok and _mask_connected(mask, adj):
            found.append(mask)
    found.sort(key=lambda m: (m.bit_count(), m))
    for mask in found:
        yield [verts[i] for i in range(n) if (mask >> i) & 1]


def _lift_assignment(
    g: Graph,
    f: Mapping[int, int],
    hverts: list[int],
    classes: np.ndarray,
    counts: np.ndarray,
) -> dict[int, frozenset[int]]:
    """Expand a reduced class multiset on an induced subgraph into a full
    assignment on g: one color per multiset element, fresh colors elsewhere."""
    lists: dict[int, set[int]] = {v: set() for v in g.vertices}
    color = 0
    for ci in range(len(classes)):
        for _ in range(int(counts[ci])):
            mask = int(classes[ci])
            t = mask
            while t:
                i = (t & -t).bit_length() - 1
                t &= t - 1
                lists[hverts[i]].add(color)
            color += 1
    fresh = color
    for v in g.vertices:
        while len(lists[v]) < f[v]:
            lists[v].add(fresh)
            fresh += 1
    return {v: frozenset(cs) for v, cs in lists.items()}


def _decide(
    g: Graph, f: Mapping[int, int], b: int, budget: int
) -> tuple[bool, Optional[Witness]]:
    if any(f[v] < b for v in g.vertices):
        # a list below size b can never supply a b-subset
        fresh = 0
        lists = {}
        for u in g.vertices:
            lists[u] = frozenset(range(fresh, fresh + f[u]))
            fresh += f[u]
        return False, Witness(lists, False)
    spent = 0
    for hverts in _irreducible_subgraphs(g, f, b):
        n = len(hverts)
        if n > 60:
            raise BudgetExceeded(spent, budget)
        sub = g.induced(hverts)
        adj = _adj_masks(sub, hverts)
        classes = _connected_classes(adj, n)
        if len(classes) == 0:
            continue
        maxidx = np.full(n, -1, dtype=np.int64)
        for ci, mask in enumerate(classes):
            t = int(mask)
            while t:
                i = (t & -t).bit_length() - 1
                t &= t - 1
                maxidx[i] = ci
        lo = np.array([f[v] - b + 1 for v in hverts], dtype=np.int64)
        hi = np.array([f[v] for v in hverts], dtype=np.int64)
        if int(hi.sum()) // 2 + 2 > 62:
            raise BudgetExceeded(spent, budget)
        counts = np.zeros(len(classes), dtype=np.int64)
        meter = np.zeros(2, dtype=np.int64)
        status = _engine.scan_reduced(
            n, adj, classes, maxidx, lo, hi, b, budget - spent, 1, counts, meter
        )
        spent += int(meter[0]) + int(meter[1])
        if status == 2:
            raise BudgetExceeded(spent, budget)
        if status == 1:
            assignment = _lift_assignment(g, f, hverts, classes, counts)
            assert find_choice(g, assignment, b, budget) is None
            return False, Witness(assignment, False)
        if spent > budget:
            raise BudgetExceeded(spent, budget)
    return True, None


def is_ab_choosable(
    g: Graph, query: ChoosabilityQuery | tuple[int, int], budget: int = DEFAULT_BUDGET
) -> tuple[bool, Optional[Witness]]:
    """Exhaustive (a:b)-choosability decision; on False the witness carries a
    certified bad assignment."""
    if isinstance(query, tuple):
        query = ChoosabilityQuery(*query)
    f = {v: query.a for v in g.vertices}
    return _decide(g, f, query.b, budget)


def is_f_choosable(
    g: Graph, f: Mapping[int, int], budget: int = DEFAULT_BUDGET
) -> tuple[bool, Optional[Witness]]:
    """Exhaustive f-choosability (single color per vertex, list sizes f)."""
    for v in g.vertices:
        if v not in f or f[v] < 1:
            raise ValueError(f"f must assign a positive size to vertex {v}")
    return _decide(g, dict(f), 1, budget)


def ch_k(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> int:
    """Least n with g (n:k)-choosable, ascending from the clique lower bound
    k*omega."""
    if k < 1:
        raise ValueError("k must be positive")
    if g.n() == 0:
        return k
    n = k * max(1, clique_number(g))
    while True:
        ok, _ = is_ab_choosable(g, ChoosabilityQuery(n, k), budget)
        if ok:
            return n
        n += 1


def _part_families(vertices: tuple[int, ...], k: int) -> Iterator[list[frozenset[int]]]:
    """All collections of pairwise disjoint vertex subsets of size 2..k
    (size-1 parts never change the augmented graph)."""
    vs = sorted(vertices)

    # the first pool vertex is either left out of all parts or grouped with
    # a subset of the rest
    def gen(pool: tuple[int, ...], acc: tuple[frozenset[int], ...]):
        if not pool:
            yield list(acc)
            return
        v, rest = pool[0], pool[1:]
        yield from gen(rest, acc)
        for size in range(1, k):
            for others in combinations(rest, size):
                part = frozenset((v,) + others)
                remaining = tuple(x for x in rest if x not in part)
                yield from gen(remaining, acc + (part,))

    seen = set()
    for fam in gen(tuple(vs), ()):
        key = frozenset(fam)
        if key not in seen:
            seen.add(key)
            yield fam


def is_strongly_k_choosable(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff every clique augmentation by disjoint parts of size <= k is
    k-choosable."""
    from .strongpartition import augment

    for parts in _part_families(g.vertices, k):
        aug = augment(g, parts)
        ok, _ = is_ab_choosable(aug, ChoosabilityQuery(k, 1), budget)
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# enumeration surfaces used by sweeps and cross-checks


def iter_canonical_assignments(
    vertices, size: int, max_colors: Optional[int] = None
) -> Iterator[dict[int, frozenset[int]]]:
    """Every list assignment with |S(v)| = size, up to color relabeling: lists
    are generated in vertex order with new colors introduced in first-use
    order."""
    vs = sorted(vertices)

    def rec(i: int, used: int):
        if i == len(vs):
            yield {}
            return
        for j in range(size + 1):
            if max_colors is not None and used + j > max_colors:
                continue
            news = tuple(range(used, used + j))
            for olds in combinations(range(used), size - j):
                head = frozenset(olds + news)
                for tail in rec(i + 1, used + j):
                    out = dict(tail)
                    out[vs[i]] = head
                    yield out

    yield from rec(0, 0)


def iter_reduced_assignments(
    g: Graph,
    a: int,
    b: int,
    prune_colorable: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[dict[int, frozenset[int]]]:
    """Every reduced bad-assignment candidate, lifted to a full assignment on
    g (fresh colors filling each list to size a).  With ``prune_colorable``
    the sweep skips completions of prefixes that already admit a full size-b
    choice; those are colorable regardless of what follows.

    Exhausting this corpus without finding an uncolorable member proves g is
    (a:b)-choosable; the corpus is the canonical assignment space of the
    decision scan.
    """
    f = {v: a for v in g.vertices}
    spent = 0
    for hverts in _irreducible_subgraphs(g, f, b):
        n = len(hverts)
        sub = g.induced(hverts)
        adj = _adj_masks(sub, hverts)
        classes = _connected_classes(adj, n)
        if len(classes) == 0:
            continue
        maxidx = [-1] * n
        members: list[list[int]] = []
        for ci, mask in enumerate(classes):
            mem = []
            t = int(mask)
            while t:
                i = (t & -t).bit_length() - 1
                t &= t - 1
                mem.append(i)
                maxidx[i] = ci
            members.append(mem)
        lo = [a - b + 1] * n
        hi = [a] * n
        cover = [0] * n
        stack: list[int] = []

        def lift() -> dict[int, frozenset[int]]:
            counts = np.zeros(len(classes), dtype=np.int64)
            for ci in stack:
                counts[ci] += 1
            return _lift_assignment(g, f, hverts, classes, counts)

        scratch = _engine.make_choice_scratch(n)

        def choice_exists(demand_full: bool) -> bool:
            avail = np.zeros(n, dtype=np.int64)
            dem = np.zeros(n, dtype=np.int64)
            for p, ci in enumerate(stack):
                for i in members[ci]:
                    avail[i] |= 1 << p
            for i in range(n):
                dem[i] = b if demand_full else b - (hi[i] - cover[i])
            steps = np.zeros(1, dtype=np.int64)
            r = _engine.exists_choice(n, adj, avail, dem, steps, budget, scratch)
            if r == -1:
                raise BudgetExceeded(int(steps[0]), budget)
            return r == 1

        def dfs(start: int):
            nonlocal spent
            spent += 1
            if spent > budget:
                raise BudgetExceeded(spent, budget)
            if stack and all(cover[i] >= lo[i] for i in range(n)):
                yield lift()
            if prune_colorable and stack and all(cover[i] >= b for i in range(n)):
                if choice_exists(True):
                    return
            dead = len(classes) - 1
            for i in range(n):
                if cover[i] < lo[i]:
                    dead = min(dead, maxidx[i])
            for ci in range(start, dead + 1):
                if all(cover[i] + 1 <= hi[i] for i in members[ci]):
                    for i in members[ci]:
                        cover[i] += 1
                    stack.append(ci)
                    yield from dfs(ci)
                    stack.pop()
                    for i in members[ci]:
                        cover[i] -= 1

        yield from dfs(0)

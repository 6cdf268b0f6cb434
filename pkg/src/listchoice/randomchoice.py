"""Las Vegas choosers for partitioned and complete multipartite graphs.

Colors are thrown into vertex classes at random; a vertex keeps colors landing
in its own class.  Outputs are always verified before being returned, so the
randomness only affects running time.  Every attempt draws its own generator
seeded by (seed, attempt), which makes runs reproducible and lets attempts be
evaluated independently.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

from .errors import Exhausted, ListTooSmall
from .graphs import Graph
from .kernels import Choice, ListAssignment
from .oracle import verify_choice

_SEED_STRIDE = 0x9E3779B97F4A7C15


@dataclass(frozen=True)
class RandomBudget:
    seed: int = 0
    max_attempts: int = 64

    def __post_init__(self):
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")

    def rng(self, attempt: int) -> random.Random:
        return random.Random((self.seed * _SEED_STRIDE + attempt) & (2**64 - 1))


@dataclass(frozen=True)
class PartitionedGraph:
    graph: Graph
    classes: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for cls in self.classes:
            if seen & cls:
                raise ValueError("classes overlap")
            seen |= cls
            for u in cls:
                for w in cls:
                    if u < w and self.graph.has_edge(u, w):
                        raise ValueError("classes must be independent sets")
        if seen != set(self.graph.vertices):
            raise ValueError("classes must partition the vertices")

    def class_of(self) -> dict[int, int]:
        return {v: i for i, cls in enumerate(self.classes) for v in cls}


def _verified(g: Graph, s: ListAssignment, k: int, choice: Optional[Choice]) -> bool:
    return choice is not None and verify_choice(g, s, choice, k)


def choose_by_partition(
    pg: PartitionedGraph, k: int, s: ListAssignment, budget: RandomBudget
) -> tuple[Choice, int]:
    """One uniform throw of every color onto the classes per attempt; each
    vertex keeps the k smallest colors of its list landing on its own class.
    Returns (choice, attempts used)."""
    g = pg.graph
    for v in g.vertices:
        if v not in s or len(s[v]) < k:
            raise ListTooSmall(v, k, len(s.get(v, ())))
    colors = sorted(set().union(*(s[v] for v in g.vertices)) if g.vertices else set())
    cls_of = pg.class_of()
    r = len(pg.classes)
    for attempt in range(1, budget.max_attempts + 1):
        rng = budget.rng(attempt)
        f = {c: rng.randrange(r) for c in colors}
        choice: Choice = {}
        ok = True
        for v in g.vertices:
            mine = sorted(c for c in s[v] if f[c] == cls_of[v])
            if len(mine) < k:
                ok = False
                break
            choice[v] = frozenset(mine[:k])
        if ok and _verified(g, s, k, choice):
            return choice, attempt
    raise Exhausted(budget.max_attempts)


def complete_multipartite(class_sizes: list[int]) -> PartitionedGraph:
    """Vertices 0..sum-1 grouped consecutively; edges across all classes."""
    bounds = [0]
    for m in class_sizes:
        bounds.append(bounds[-1] + m)
    classes = [
        frozenset(range(bounds[i], bounds[i + 1])) for i in range(len(class_sizes))
    ]
    edges = []
    for i in range(len(classes)):
        for j in range(i + 1, len(classes)):
            edges += [(u, w) for u in classes[i] for w in classes[j]]
    return PartitionedGraph(Graph(range(bounds[-1]), edges), tuple(classes))


def _pad_power_of_two(sizes: list[int]) -> list[int]:
    r = len(sizes)
    target = 1
    while target < r:
        target *= 2
    return sizes + [2] * (target - r)


def choose_multipartite(
    class_sizes: list[int], k: int, s: ListAssignment, budget: RandomBudget
) -> tuple[Choice, int]:
    """Recursive-halving chooser for the complete multipartite graph with the
    given class sizes (each >= 2).

    When the class count r is at most the mean class size t, a single uniform
    split over the r classes settles every vertex.  Otherwise colors flip a
    biased coin weighted (k + ln t_j) / (2k + ln t_1 t_2) toward the half
    whose classes they will serve, and the two halves recurse.  The class
    list is padded with phantom size-2 classes to a power of two so the
    halving is always even; phantom classes carry no vertices.  Each attempt
    is one full run of the recursion; failure at any level retries from the
    top with fresh randomness.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if any(m < 2 for m in class_sizes):
        raise ValueError("class sizes must be >= 2")
    pg = complete_multipartite(class_sizes)
    g = pg.graph
    for v in g.vertices:
        if v not in s or len(s[v]) < k:
            raise ListTooSmall(v, k, len(s.get(v, ())))
    padded = _pad_power_of_two(list(class_sizes))
    real_classes = list(pg.classes) + [frozenset()] * (len(padded) - len(class_sizes))

    def solve(
        sizes: list[int],
        classes: list[frozenset[int]],
        lists: dict[int, frozenset[int]],
        rng: random.Random,
    ) -> Optional[Choice]:
        r = len(sizes)
        t = sum(sizes) / r
        verts = sorted(set().union(*classes)) if classes else []
        if r <= t or r == 1:
            colors = sorted(set().union(*(lists[v] for v in verts)) if verts else set())
            f = {c: rng.randrange(r) for c in colors}
            choice: Choice = {}
            for i, cls in enumerate(classes):
                for v in cls:
                    mine = sorted(c for c in lists[v] if f[c] == i)
                    if len(mine) < k:
                        return None
                    choice[v] = frozenset(mine[:k])
            return choice
        half = r // 2
        s1, s2 = sizes[:half], sizes[half:]
        t1 = sum(s1) / half
        t2 = sum(s2) / half
        p1 = (k + math.log(t1)) / (2 * k + math.log(t1 * t2))
        colors = sorted(set().union(*(lists[v] for v in verts)) if verts else set())
        split = {c: (1 if rng.random() < p1 else 2) for c in colors}
        out: Choice = {}
        for j, (szs, clss) in enumerate(((s1, classes[:half]), (s2, classes[half:])), start=1):
            sub_lists = {}
            for cls in clss:
                for v in cls:
                    kept = frozenset(c for c in lists[v] if split[c] == j)
                    if len(kept) < k:
                        return None
                    sub_lists[v] = kept
            part = solve(szs, clss, sub_lists, rng)
            if part is None:
                return None
            out.update(part)
        return out

    full_lists = {v: frozenset(s[v]) for v in g.vertices}
    for attempt in range(1, budget.max_attempts + 1):
        rng = budget.rng(attempt)
        choice = solve(padded, real_classes, full_lists, rng)
        if choice is not None and _verified(g, s, k, choice):
            return choice, attempt
    raise Exhausted(budget.max_attempts)


def chromatic_partition(g: Graph, budget_nodes: int = 10**7) -> list[frozenset[int]]:
    """Lexicographically first optimal proper coloring, as color classes."""
    from .errors import BudgetExceeded

    n = g.n()
    if n == 0:
        return []
    verts = list(g.vertices)
    nodes = 0
    for q in range(1, n + 1):
        color: dict[int, int] = {}

        def rec(i: int) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > budget_nodes:
                raise BudgetExceeded(nodes, budget_nodes)
            if i == n:
                return True
            v = verts[i]
            used = max(color.values(), default=-1)
            for c in range(min(used + 1, q - 1) + 1):
                if all(color.get(w) != c for w in g.neighbors(v)):
                    color[v] = c
                    if rec(i + 1):
                        return True
                    del color[v]
            return False

        if rec(0):
            classes = [frozenset(v for v in verts if color[v] == c) for c in range(q)]
            return [c for c in classes if c]
    raise AssertionError("coloring search cannot fail at q = n")


def embed_and_choose(
    g: Graph, k: int, s: ListAssignment, budget: RandomBudget
) -> tuple[Choice, int]:
    """Choose on g by embedding it into the complete multipartite graph over
    a chromatic partition (class sizes grown by one) and restricting the
    result.  The phantom vertex added to each class gets fresh colors, so it
    never constrains the real ones."""
    classes = chromatic_partition(g)
    if not classes:
        return {}, 1
    sizes = [len(c) + 1 for c in classes]
    pg = complete_multipartite(sizes)
    list_size = max(len(s[v]) for v in g.vertices)
    # map real vertices into the multipartite layout, class by class
    mapping: dict[int, int] = {}
    fresh = 1 + max((max(s[v], default=0) for v in g.vertices), default=0)
    lists: dict[int, frozenset[int]] = {}
    pos = 0
    for cls, size in zip(classes, sizes):
        members = sorted(cls)
        for j, v in enumerate(members):
            mapping[v] = pos + j
            lists[pos + j] = frozenset(s[v])
        phantom = pos + size - 1
        lists[phantom] = frozenset(range(fresh, fresh + list_size))
        fresh += list_size
        pos += size
    choice, attempts = choose_multipartite(sizes, k, lists, budget)
    out = {v: choice[mapping[v]] for v in g.vertices}
    assert verify_choice(g, s, out, k)
    return out, attempts

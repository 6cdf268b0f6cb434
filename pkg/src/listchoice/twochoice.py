"""2-choosability, the 4-set compatibility calculus, and the (4:2) chooser.

A connected graph is 2-choosable exactly when its core is a single vertex, an
even cycle, or a theta graph with path lengths (2, 2, even).  Such graphs are
also (4:2)-choosable, and ``choose_42`` constructs the choice by dynamic
programming over 2-subset states on the core.

The compatibility calculus tracks, along a sequence of positioned 4-sets,
which 2-subsets of the first set can reach which 2-subsets of the last one
through chains of pairwise disjoint 2-subsets.  The same pair-relation
machinery classifies list families on a 4-cycle via their incompatible pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from . import _engine
from .errors import ListTooSmall, NoMajorityBlock, Not2Choosable
from .graphs import CoreKind, Graph, classify_core, connected_components
from .kernels import Choice, ListAssignment

FourSet = tuple[int, int, int, int]

# index basis for 2-subsets of a positioned 4-set
PAIR_POS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def is_valid_sequence(seq: Sequence[FourSet]) -> bool:
    """Shared colors of consecutive tuples must sit in the same position."""
    for a in seq:
        if len(a) != 4 or len(set(a)) != 4:
            return False
    for a, b in zip(seq, seq[1:]):
        for i, c in enumerate(a):
            if c in b and b.index(c) != i:
                return False
    return True


def is_legal_sequence(seq: Sequence[FourSet]) -> bool:
    """Valid, and a color entering at step i+1 never appeared before step i."""
    if not is_valid_sequence(seq):
        return False
    for i in range(1, len(seq)):
        earlier = set()
        for j in range(i):
            earlier |= set(seq[j])
        for c in seq[i]:
            if c not in seq[i - 1] and c in earlier:
                return False
    return True


@dataclass(frozen=True)
class PairRelation:
    """A set of (C, D) pairs with C a 2-subset of ``left`` and D a 2-subset
    of ``right``; both universes keep their position order."""

    left: FourSet
    right: FourSet
    pairs: frozenset[tuple[frozenset[int], frozenset[int]]]

    def rows(self) -> np.ndarray:
        """36-bit view: rows[i] has bit j iff (i-th left pair, j-th right
        pair) is in the relation, in PAIR_POS order."""
        out = np.zeros(6, dtype=np.int64)
        left_sets = [frozenset((self.left[i], self.left[j])) for i, j in PAIR_POS]
        right_sets = [frozenset((self.right[i], self.right[j])) for i, j in PAIR_POS]
        for c, d in self.pairs:
            out[left_sets.index(c)] |= 1 << right_sets.index(d)
        return out

    def degree_sequence(self) -> tuple[int, ...]:
        """Fan sizes of the six left 2-subsets, descending."""
        return tuple(sorted((int(r).bit_count() for r in self.rows()), reverse=True))

    def fan(self, subset: frozenset[int]) -> frozenset[frozenset[int]]:
        return frozenset(d for c, d in self.pairs if c == subset)

    def __len__(self) -> int:
        return len(self.pairs)

    def to_json(self) -> list:
        return sorted([sorted(c), sorted(d)] for c, d in self.pairs)


@dataclass(frozen=True)
class SpecialTag:
    is_special: bool
    has_p1: bool
    has_p2: bool


@dataclass(frozen=True)
class K22Report:
    bad_first: frozenset[frozenset[int]]
    bad_second: frozenset[frozenset[int]]
    defected: bool


def _pairs2(colors) -> list[frozenset[int]]:
    return [frozenset(c) for c in combinations(sorted(colors), 2)]


def comp_sequence(seq: Sequence[FourSet]) -> PairRelation:
    """All pairs (C_1, C_m) linked by a chain of pairwise disjoint 2-subsets
    through the sequence; forward dynamic programming over reachable
    2-subsets.  A length-1 sequence gives the diagonal."""
    if not seq or not is_valid_sequence(seq):
        raise ValueError("need a non-empty valid sequence")
    first = tuple(seq[0])
    last = tuple(seq[-1])
    firsts = _pairs2(first)
    pairs = set()
    for c1 in firsts:
        reach = {c1}
        for nxt in seq[1:]:
            reach = {
                d for d in _pairs2(nxt) if any(not (d & r) for r in reach)
            }
        for d in reach:
            pairs.add((c1, d))
    return PairRelation(first, last, frozenset(pairs))


def good_subsets(seq: Sequence[FourSet]) -> frozenset[frozenset[int]]:
    """2-subsets of the first tuple compatible with every 2-subset of the
    last one."""
    rel = comp_sequence(seq)
    full = set(_pairs2(seq[-1]))
    return frozenset(
        c for c in _pairs2(seq[0]) if {d for cc, d in rel.pairs if cc == c} == full
    )


def classify_special(rel: PairRelation) -> SpecialTag:
    """The five structural properties, checked up to independent relabeling
    of both universes (each property is relabeling-invariant)."""
    flags = int(_engine.special_flags(rel.rows()))
    return SpecialTag(bool(flags & 1), bool(flags & 2), bool(flags & 4))


def incomp_k22(
    sx1, sx2, sy1, sy2
) -> tuple[PairRelation, K22Report]:
    """Incompatible pairs (C(x1), C(x2)) on the 4-cycle x1-y1-x2-y2, plus the
    fully-incompatible (bad) subsets on each side.

    (C1, C2) is compatible exactly when both middle lists keep >= 2 colors
    after removing C1 and C2.
    """
    a = tuple(sorted(sx1))
    b = tuple(sorted(sx2))
    if len(a) != 4 or len(b) != 4 or len(set(sy1)) != 4 or len(set(sy2)) != 4:
        raise ValueError("all four lists must have 4 distinct colors")
    y1, y2 = frozenset(sy1), frozenset(sy2)
    pairs = set()
    for c1 in _pairs2(a):
        for c2 in _pairs2(b):
            taken = c1 | c2
            if len(y1 - taken) < 2 or len(y2 - taken) < 2:
                pairs.add((c1, c2))
    rel = PairRelation(a, b, frozenset(pairs))
    bad1 = frozenset(
        c1 for c1 in _pairs2(a) if all((c1, c2) in pairs for c2 in _pairs2(b))
    )
    bad2 = frozenset(
        c2 for c2 in _pairs2(b) if all((c1, c2) in pairs for c1 in _pairs2(a))
    )
    return rel, K22Report(bad1, bad2, bool(bad1) and bool(bad2))


def is_2_choosable(g: Graph) -> bool:
    """Core of every connected component is K1, an even cycle, or a
    (2,2,even) theta."""
    for comp in connected_components(g):
        kind = classify_core(g.induced(comp)).kind
        if kind is CoreKind.OTHER:
            return False
    return True


# ---------------------------------------------------------------------------
# the (4:2) chooser


def _peel_order(g: Graph) -> tuple[list[tuple[int, int]], set[int]]:
    """Degree-1 deletions (vertex, its neighbor at deletion), smallest id
    first, plus the surviving core vertices."""
    deg = {v: g.degree(v) for v in g.vertices}
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    alive = set(g.vertices)
    order = []
    while True:
        leaves = sorted(v for v in alive if deg[v] == 1)
        if not leaves:
            return order, alive
        v = leaves[0]
        (w,) = adj[v]
        order.append((v, w))
        alive.remove(v)
        adj[w].discard(v)
        adj[v] = set()
        deg[w] -= 1
        deg[v] = 0


def _cycle_order(c: Graph) -> list[int]:
    start = min(c.vertices)
    nxt = min(c.neighbors(start))
    order = [start, nxt]
    while True:
        prev, cur = order[-2], order[-1]
        (succ,) = [w for w in c.neighbors(cur) if w != prev]
        if succ == start:
            return order
        order.append(succ)


def _choose_cycle_42(order: list[int], s: ListAssignment) -> Optional[Choice]:
    """Pairs of colors around a cycle, consecutive pairs disjoint, by DP with
    predecessor tracking."""
    n = len(order)
    for c0 in _pairs2(s[order[0]]):
        reach: list[dict[frozenset[int], frozenset[int]]] = [{c0: c0}]
        for i in range(1, n):
            cur: dict[frozenset[int], frozenset[int]] = {}
            for d in _pairs2(s[order[i]]):
                for r in reach[-1]:
                    if not (d & r):
                        cur[d] = r
                        break
            reach.append(cur)
        for dlast in sorted(reach[-1], key=sorted):
            if dlast & c0:
                continue
            choice = {order[-1]: dlast}
            cur = dlast
            for i in range(n - 1, 0, -1):
                cur = reach[i][cur]
                choice[order[i - 1]] = cur
            if choice[order[0]] == c0:
                return choice
    return None


def _theta_structure(c: Graph) -> tuple[int, int, int, int, list[int]]:
    """(u, v, x, y, z-path) of a (2,2,2m) theta: hubs, the two middle
    vertices of the short paths, the internal long path from u to v."""
    hubs = sorted(w for w in c.vertices if c.degree(w) == 3)
    u, v = hubs
    shorts = []
    zpath: list[int] = []
    for first in sorted(c.neighbors(u)):
        prev, cur = u, first
        internal = []
        while cur != v:
            internal.append(cur)
            (cur_next,) = [w for w in c.neighbors(cur) if w != prev]
            prev, cur = cur, cur_next
        if len(internal) == 1 and len(shorts) < 2:
            shorts.append(internal[0])
        else:
            zpath = internal
    x, y = shorts
    return u, v, x, y, zpath


def _choose_theta_42(c: Graph, s: ListAssignment) -> Optional[Choice]:
    u, v, x, y, zpath = _theta_structure(c)
    for cz0 in _pairs2(s[zpath[0]]):
        # DP along the long path, remembering one predecessor per state
        reach: list[dict[frozenset[int], frozenset[int]]] = [{cz0: cz0}]
        for w in zpath[1:]:
            cur: dict[frozenset[int], frozenset[int]] = {}
            for d in _pairs2(s[w]):
                for r in reach[-1]:
                    if not (d & r):
                        cur[d] = r
                        break
            reach.append(cur)
        for czm in sorted(reach[-1], key=sorted):
            for cu in _pairs2(s[u]):
                if cu & cz0:
                    continue
                for cv in _pairs2(s[v]):
                    if cv & czm:
                        continue
                    sx = frozenset(s[x]) - cu - cv
                    sy = frozenset(s[y]) - cu - cv
                    if len(sx) < 2 or len(sy) < 2:
                        continue
                    choice = {
                        u: cu,
                        v: cv,
                        x: frozenset(sorted(sx)[:2]),
                        y: frozenset(sorted(sy)[:2]),
                    }
                    cur = czm
                    choice[zpath[-1]] = czm
                    for i in range(len(zpath) - 1, 0, -1):
                        cur = reach[i][cur]
                        choice[zpath[i - 1]] = cur
                    return choice
    return None


def choose_42(g: Graph, s: ListAssignment) -> Choice:
    """A valid (4:2) choice on a 2-choosable graph: solve each component's
    core exactly, then give each stripped degree-1 vertex two colors its
    neighbor did not take."""
    for v in g.vertices:
        if v not in s or len(set(s[v])) != 4:
            raise ListTooSmall(v, 4, len(set(s.get(v, ()))))
    choice: Choice = {}
    for comp in connected_components(g):
        sub = g.induced(comp)
        cls = classify_core(sub)
        if cls.kind is CoreKind.OTHER:
            raise Not2Choosable(f"component core is {cls}")
        order, core_vs = _peel_order(sub)
        c = sub.induced(core_vs)
        if cls.kind is CoreKind.K1:
            (w,) = c.vertices
            part: Optional[Choice] = {w: frozenset(sorted(s[w])[:2])}
        elif cls.kind is CoreKind.EVEN_CYCLE:
            part = _choose_cycle_42(_cycle_order(c), s)
        else:
            part = _choose_theta_42(c, s)
        assert part is not None, "2-choosable cores always admit a (4:2) choice"
        choice.update(part)
        for v, w in reversed(order):
            avail = frozenset(s[v]) - choice[w]
            choice[v] = frozenset(sorted(avail)[:2])
    return choice


# ---------------------------------------------------------------------------
# block blow-up and majority extraction


def blowup_assignment(s: ListAssignment, k: int) -> dict[int, frozenset[int]]:
    """Replace every color c by its block {ck, ..., ck+k-1}."""
    return {
        v: frozenset(c * k + i for c in cs for i in range(k))
        for v, cs in s.items()
    }


def blowup_reduce(
    g: Graph, m: int, k: int, choice: Mapping[int, frozenset[int]]
) -> dict[int, int]:
    """Extract a proper single coloring from a valid (2mk:mk) choice over
    blown-up lists: each vertex keeps the color whose k-block holds a
    majority of its chosen colors.

    Blocks are the consecutive width-k integer ranges, so block(t) = t // k.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be odd and positive")
    if m < 1:
        raise ValueError("m must be positive")
    out: dict[int, int] = {}
    for v in g.vertices:
        cs = choice[v]
        if len(cs) != m * k:
            raise ValueError(f"choice at vertex {v} must have {m * k} colors")
        counts: dict[int, int] = {}
        for t in cs:
            counts[t // k] = counts.get(t // k, 0) + 1
        winners = sorted(c for c, cnt in counts.items() if 2 * cnt > k)
        if not winners:
            raise NoMajorityBlock(v)
        out[v] = winners[0]
    for a, b in g.edges:
        assert out[a] != out[b], "majority blocks collide on an edge"
    return out


# ---------------------------------------------------------------------------
# canonical sequence enumeration (shared by tests and suites)


def iter_valid_successors(
    a: FourSet, used: int, max_colors: int
) -> Iterator[tuple[FourSet, int]]:
    """Canonical valid successors of a positioned 4-set: changed positions
    take a used color outside ``a`` or fresh colors in first-use order."""
    outside = [c for c in range(used) if c not in a]
    options: list[list[Optional[int]]] = []
    for p in range(4):
        opts: list[Optional[int]] = [a[p]]
        opts.extend(outside)
        opts.append(None)  # fresh
        options.append(opts)
    for o0 in options[0]:
        for o1 in options[1]:
            for o2 in options[2]:
                for o3 in options[3]:
                    picks = [o0, o1, o2, o3]
                    olds = [
                        p for i, p in enumerate(picks)
                        if p is not None and p != a[i]
                    ]
                    if len(olds) != len(set(olds)):
                        continue
                    fresh = sum(1 for p in picks if p is None)
                    if used + fresh > max_colors:
                        continue
                    nxt = []
                    c = used
                    for p in picks:
                        if p is None:
                            nxt.append(c)
                            c += 1
                        else:
                            nxt.append(p)
                    yield tuple(nxt), c


def iter_valid_sequences(
    m: int, max_colors: int = 8
) -> Iterator[tuple[FourSet, ...]]:
    """All canonical valid sequences of exactly m tuples over at most
    max_colors colors, first tuple (0, 1, 2, 3)."""
    start: FourSet = (0, 1, 2, 3)

    def rec(seq: tuple[FourSet, ...], used: int) -> Iterator[tuple[FourSet, ...]]:
        if len(seq) == m:
            yield seq
            return
        for nxt, u2 in iter_valid_successors(seq[-1], used, max_colors):
            yield from rec(seq + (nxt,), u2)

    yield from rec((start,), 4)


def changed_positions(seq: Sequence[FourSet]) -> set[int]:
    out = set()
    for a, b in zip(seq, seq[1:]):
        for p in range(4):
            if a[p] != b[p]:
                out.add(p)
    return out


def sequence_scan_exhaustive(max_m: int = 5, max_colors: int = 8) -> dict[str, int]:
    """Jitted sweep over every canonical valid sequence of odd length >= 3
    (up to max_m tuples, max_colors colors) changing in >= 3 positions.
    Returns counters; ``violations`` must be zero."""
    stats = np.zeros(9, dtype=np.int64)
    _engine.sequence_scan(max_m, max_colors, stats)
    return {
        "nodes": int(stats[0]),
        "checked": int(stats[1]),
        "violations": int(stats[2]),
        "good3": int(stats[3]),
        "comp_gt23": int(stats[4]),
        "special_one_flag": int(stats[5]),
        "checked_m3": int(stats[6]),
        "checked_m5": int(stats[7]),
        "without_good": int(stats[8]),
    }

"""Clique augmentation, constructive set-family partitions, and the strong
coloring lifts built on them.

The family splitter takes k+l sets of size k+l and walks elements one at a
time from side A to side B; at the crossing step the families on each side
are small enough to fill up with the undecided middle sets, and choosing
inside A for one family and inside B for the other makes the chosen subsets
disjoint across families.  Recursing turns km sets of size km into m families
of k sets with cross-family disjoint k-subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import ChooserRefused, OracleRefused, OverlappingParts, SizeMismatch
from .graphs import Graph
from .kernels import ListAssignment


def augment(base: Graph, parts: Sequence[Iterable[int]]) -> Graph:
    """Base graph plus a clique on every part; parts must be disjoint."""
    vset = set(base.vertices)
    seen: set[int] = set()
    cliques = []
    for part in parts:
        p = set(part)
        if p - vset:
            raise ValueError(f"part {sorted(p)} uses undeclared vertices")
        if p & seen:
            raise OverlappingParts(f"vertex {sorted(p & seen)} in two parts")
        seen |= p
        cliques.append(sorted(p))
    edges = set(base.edges)
    for clique in cliques:
        for i in range(len(clique)):
            for j in range(i + 1, len(clique)):
                edges.add((clique[i], clique[j]))
    return Graph(base.vertices, edges)


@dataclass(frozen=True)
class SplitResult:
    """Indices of the input family routed to each side, plus the chosen
    subset for every input set."""

    first: tuple[int, ...]
    second: tuple[int, ...]
    chosen: tuple[frozenset[int], ...]


def split_family(
    family: Sequence[Iterable[int]], k: int, l: int
) -> SplitResult:
    """Partition k+l sets of size k+l into k sets with chosen k-subsets and l
    sets with chosen l-subsets, all choices disjoint across the two sides."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    sets = [frozenset(s) for s in family]
    if len(sets) != k + l or any(len(s) != k + l for s in sets):
        raise SizeMismatch(f"need {k + l} sets of size {k + l}")
    universe = sorted(set().union(*sets))

    def r_count(a: frozenset[int]) -> int:
        return sum(1 for s in sets if len(s & a) > k)

    a = set(universe)
    prev_a: Optional[frozenset[int]] = None
    crossing = None
    if r_count(frozenset(a)) <= k:
        raise AssertionError("initial side must hold every set")
    for c in universe:
        prev_a = frozenset(a)
        a.remove(c)
        if r_count(frozenset(a)) <= k:
            crossing = (prev_a, frozenset(a))
            break
    assert crossing is not None, "moving every element empties the big side"
    a1, a2 = crossing
    b2 = frozenset(universe) - a2
    big = [i for i, s in enumerate(sets) if len(s & a2) > k]
    small = [i for i, s in enumerate(sets) if len(s & b2) > l]
    middle = [i for i, s in enumerate(sets) if len(s & a2) == k]
    assert len(big) <= k and len(small) < l
    assert len(big) + len(small) + len(middle) == k + l
    first = big + middle[: k - len(big)]
    second = small + middle[k - len(big):]
    chosen: list[frozenset[int]] = [frozenset()] * (k + l)
    for i in first:
        chosen[i] = frozenset(sorted(sets[i] & a2)[:k])
    for i in second:
        chosen[i] = frozenset(sorted(sets[i] & b2)[:l])
    res = SplitResult(tuple(sorted(first)), tuple(sorted(second)), tuple(chosen))
    for i in res.first:
        for j in res.second:
            assert not (chosen[i] & chosen[j])
    return res


def partition_family(
    family: Sequence[Iterable[int]], k: int, m: int
) -> tuple[tuple[tuple[int, ...], ...], tuple[frozenset[int], ...]]:
    """Split km sets of size km into m families of k sets with chosen
    k-subsets, disjoint across distinct families (within one family they may
    meet).  Returns (families as index tuples, chosen subset per input set).
    """
    if k < 1 or m < 1:
        raise ValueError("k and m must be positive")
    sets = [frozenset(s) for s in family]
    if len(sets) != k * m or any(len(s) != k * m for s in sets):
        raise SizeMismatch(f"need {k * m} sets of size {k * m}")
    if m == 1:
        chosen = tuple(frozenset(sorted(s)[:k]) for s in sets)
        return (tuple(range(k)),), chosen
    res = split_family(sets, k, k * (m - 1))
    chosen: list[frozenset[int]] = [frozenset()] * (k * m)
    for i in res.first:
        chosen[i] = res.chosen[i]
    tail_sets = [res.chosen[i] for i in res.second]
    sub_families, sub_chosen = partition_family(tail_sets, k, m - 1)
    for pos, i in enumerate(res.second):
        chosen[i] = sub_chosen[pos]
    families = [res.first]
    for fam in sub_families:
        families.append(tuple(res.second[p] for p in fam))
    return tuple(families), tuple(chosen)


ColoringOracle = Callable[[Graph], Optional[Mapping[int, int]]]
ListChooser = Callable[[Graph, Mapping[int, frozenset[int]]], Optional[Mapping[int, int]]]


def strong_color_lift(
    g: Graph,
    parts: Sequence[Iterable[int]],
    oracle: ColoringOracle,
    k: int,
) -> dict[int, int]:
    """Proper (k+1)-coloring of g plus cliques on parts of size <= k+1, using
    a k-coloring oracle for smaller augmentations twice.

    Round one shrinks every full part by its smallest vertex and k-colors;
    the color-0 class meets each shrunk part exactly once and is independent
    in the full augmentation, giving a transversal S.  Round two shrinks by S
    instead, k-colors the rest, and S takes the extra color.
    """
    part_sets = [frozenset(p) for p in parts]
    _check_disjoint(part_sets, g)
    if any(len(p) > k + 1 for p in part_sets):
        raise ValueError("parts must have size <= k+1")
    full = [p for p in part_sets if len(p) == k + 1]
    rest = [p for p in part_sets if len(p) < k + 1]
    if not full:
        coloring = oracle(augment(g, part_sets))
        if coloring is None:
            raise OracleRefused("k-coloring oracle failed on the augmentation")
        out = dict(coloring)
        _assert_proper(augment(g, part_sets), out)
        return out

    shrunk = [p - {min(p)} for p in full] + rest
    first = oracle(augment(g, shrunk))
    if first is None:
        raise OracleRefused("k-coloring oracle failed on round one")
    colors_used = sorted(set(first.values()))
    anchor = colors_used[0]
    transversal = set()
    for p in full:
        reps = [v for v in (p - {min(p)}) if first[v] == anchor]
        assert len(reps) == 1, "a k-clique sees each of the k colors once"
        transversal.add(reps[0])
    shrunk2 = [p - transversal for p in full] + rest
    second = oracle(augment(g, shrunk2))
    if second is None:
        raise OracleRefused("k-coloring oracle failed on round two")
    extra = max(set(second.values()) | set(first.values())) + 1
    out = {v: second[v] for v in g.vertices if v not in transversal}
    for v in transversal:
        out[v] = extra
    _assert_proper(augment(g, part_sets), out)
    return out


def strong_choice_scale(
    g: Graph,
    parts: Sequence[Iterable[int]],
    k_chooser: ListChooser,
    s: ListAssignment,
    k: int,
    m: int,
) -> dict[int, int]:
    """Proper coloring from km-lists of g plus cliques on parts of size <=
    km, given a chooser that list-colors augmentations by parts of size <= k.

    Each part's km-lists are partitioned into m families with cross-family
    disjoint k-subsets; the sub-parts induced by the families replace the
    original part, and the chooser runs on the k-subsets.
    """
    part_sets = [frozenset(p) for p in parts]
    _check_disjoint(part_sets, g)
    if any(len(p) > k * m for p in part_sets):
        raise ValueError(f"parts must have size <= {k * m}")
    for v in g.vertices:
        if len(s[v]) != k * m:
            raise SizeMismatch(f"vertex {v} needs a list of size {k * m}")

    sub_parts: list[frozenset[int]] = []
    sub_lists: dict[int, frozenset[int]] = {}
    fresh = 1 + max((max(s[v], default=0) for v in g.vertices), default=0)
    covered: set[int] = set()
    for p in part_sets:
        members = sorted(p)
        family: list[frozenset[int]] = [frozenset(s[v]) for v in members]
        # pad with disjoint dummy sets so the family has exactly km sets
        while len(family) < k * m:
            family.append(frozenset(range(fresh, fresh + k * m)))
            fresh += k * m
        families, chosen = partition_family(family, k, m)
        for fam in families:
            real = frozenset(members[i] for i in fam if i < len(members))
            if real:
                sub_parts.append(real)
        for i, v in enumerate(members):
            sub_lists[v] = chosen[i]
            covered.add(v)
    for v in g.vertices:
        if v not in covered:
            sub_lists[v] = frozenset(sorted(s[v])[:k])

    aug = augment(g, sub_parts)
    coloring = k_chooser(aug, sub_lists)
    if coloring is None:
        raise ChooserRefused("list chooser failed on the refined augmentation")
    out = dict(coloring)
    for v in g.vertices:
        assert out[v] in s[v]
    _assert_proper(augment(g, part_sets), out)
    return out


def _check_disjoint(part_sets: Sequence[frozenset[int]], g: Graph) -> None:
    seen: set[int] = set()
    vset = set(g.vertices)
    for p in part_sets:
        if p - vset:
            raise ValueError(f"part {sorted(p)} uses undeclared vertices")
        if p & seen:
            raise OverlappingParts(f"parts overlap at {sorted(p & seen)}")
        seen |= p


def _assert_proper(h: Graph, coloring: Mapping[int, int]) -> None:
    for u, v in h.edges:
        assert coloring[u] != coloring[v], f"edge ({u},{v}) is monochromatic"

"""Hot search kernels: bitmask backtracking and exhaustive sweeps.

Every kernel here is written against numpy int64 arrays and compiled with
numba's ``@njit`` when available.  Setting ``LISTCHOICE_JIT=0`` (or running
without numba installed) selects the identical pure-Python code path; results
are bit-for-bit the same either way, only slower.  ``benchmarks/`` compares
the two paths.

The main kernel is the reduced bad-assignment scan used by the exact
choosability oracle.  A list assignment, taken up to color relabeling, is a
multiset of color classes (the set of vertices carrying each color).  Three
sound reductions shrink the search space without losing any "bad" assignment
(one admitting no valid choice):

* a color class may be split along the connected components it induces, so
  classes are connected induced subsets;
* a singleton class is a conflict-free color for its vertex, and a vertex
  with b such free colors can be deleted outright, so per-vertex coverage by
  size->=2 classes stays within [f(v)-b+1, f(v)] and vertices below the
  window live only in smaller induced subgraphs (scanned separately);
* a vertex choosable greedily because its list beats b*(degree+1) can be
  deleted, so only "irreducible" induced subgraphs are scanned.

The scan walks multisets of classes in non-decreasing index order, checks
each in-window multiset for a valid partial choice (demand b minus the count
of implicit free colors), and prunes any branch whose prefix already admits a
full size-b choice - every completion of such a prefix stays colorable.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "HAS_JIT",
    "exists_choice",
    "scan_reduced",
    "sequence_scan",
    "special_flags",
    "kcolorable",
    "canon_mask",
    "popcount",
]

_JIT_WANTED = os.environ.get("LISTCHOICE_JIT", "1").lower() not in ("0", "false", "no")
HAS_JIT = False
if _JIT_WANTED:
    try:
        from numba import njit as _njit

        HAS_JIT = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAS_JIT = False


def _compile(fn):
    if HAS_JIT:
        return _njit(cache=True)(fn)
    return fn


# 2-subsets of a 4-element universe, by position, lexicographic.
PAIR_POS = np.array(
    [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]], dtype=np.int64
)


def _popcount_impl(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


popcount = _compile(_popcount_impl)


def _ctz_impl(x):
    c = 0
    while x & 1 == 0:
        x >>= 1
        c += 1
    return c


_ctz = _compile(_ctz_impl)


# ---------------------------------------------------------------------------
# partial-choice existence


def _exists_choice_impl(n, adj, avail0, dem, steps, cap, scratch):
    """Is there a per-vertex selection of dem[v] positions from avail0[v],
    disjoint across edges?  Returns 1/0, or -1 when the step cap is hit.

    Positions are bits of an int64; two adjacent vertices clash exactly when
    they pick a common bit.  Vertices are processed in order of slack
    (options minus demand); each candidate subset is enumerated by an index
    odometer over the available bits.  ``scratch`` is a reusable
    (n+1) x (2n + 130) int64 workspace (see ``make_choice_scratch``).
    """
    order = scratch[0, n + 130:2 * n + 130]
    m = 0
    for v in range(n):
        if dem[v] > 0:
            order[m] = v
            m += 1
    # insertion sort by slack, then id (deterministic)
    for i in range(1, m):
        v = order[i]
        key = popcount(avail0[v]) - dem[v]
        j = i - 1
        while j >= 0 and (
            popcount(avail0[order[j]]) - dem[order[j]] > key
            or (
                popcount(avail0[order[j]]) - dem[order[j]] == key
                and order[j] > v
            )
        ):
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = v
    for i in range(m):
        if popcount(avail0[order[i]]) < dem[order[i]]:
            return 0
    if m == 0:
        return 1

    # per-depth state inside scratch: avail | bit indices | odometer | nbits
    # | started
    avail = scratch[:, 0:n]
    bits = scratch[:, n:n + 64]
    idx = scratch[:, n + 64:n + 128]
    for v in range(n):
        avail[0, v] = avail0[v]

    depth = 0
    scratch[0, n + 129] = 0  # started
    while depth >= 0:
        steps[0] += 1
        if steps[0] > cap:
            return -1
        v = order[depth]
        d = dem[v]
        if scratch[depth, n + 129] == 0:
            # materialize available bit indices for this depth
            a = avail[depth, v]
            c = 0
            while a:
                bits[depth, c] = _ctz(a)
                a &= a - 1
                c += 1
            scratch[depth, n + 128] = c
            if c < d:
                depth -= 1
                continue
            for j in range(d):
                idx[depth, j] = j
            scratch[depth, n + 129] = 1
        else:
            # advance odometer
            c = scratch[depth, n + 128]
            j = d - 1
            while j >= 0 and idx[depth, j] == c - (d - j):
                j -= 1
            if j < 0:
                scratch[depth, n + 129] = 0
                depth -= 1
                continue
            idx[depth, j] += 1
            for t in range(j + 1, d):
                idx[depth, t] = idx[depth, t - 1] + 1
        smask = 0
        for j in range(d):
            smask |= 1 << bits[depth, idx[depth, j]]
        # propagate to later vertices; forward-check demands
        ok = True
        for t in range(n):
            avail[depth + 1, t] = avail[depth, t]
        for t in range(depth + 1, m):
            u = order[t]
            if (adj[v] >> u) & 1:
                left = avail[depth + 1, u] & ~smask
                avail[depth + 1, u] = left
                if popcount(left) < dem[u]:
                    ok = False
                    break
        if not ok:
            continue
        if depth + 1 == m:
            return 1
        depth += 1
        scratch[depth, n + 129] = 0
    return 0


def make_choice_scratch(n: int) -> np.ndarray:
    return np.zeros((n + 1, 2 * n + 130), dtype=np.int64)


exists_choice = _compile(_exists_choice_impl)


# ---------------------------------------------------------------------------
# reduced bad-assignment scan


def _scan_reduced_impl(n, adj, cls, maxidx, lo, hi, b, budget, prune, counts, meter):
    """DFS over class multisets; 1 = bad assignment found (multiset in
    counts), 0 = none exists, 2 = budget exceeded.

    meter[0] accumulates DFS nodes, meter[1] inner existence-check steps,
    meter[2] in-window leaves seen.
    """
    m = cls.shape[0]
    total_hi = 0
    for v in range(n):
        total_hi += hi[v]
    maxdepth = total_hi // 2 + 2
    cover = np.zeros(n, dtype=np.int64)
    stack_cls = np.empty(maxdepth, dtype=np.int64)
    stack_next = np.empty(maxdepth, dtype=np.int64)
    stack_dead = np.empty(maxdepth, dtype=np.int64)
    avail = np.empty(n, dtype=np.int64)
    dem = np.empty(n, dtype=np.int64)
    steps = np.zeros(1, dtype=np.int64)
    scratch = np.zeros((n + 1, 2 * n + 130), dtype=np.int64)

    depth = 0
    stack_next[0] = 0
    entering = True
    while True:
        if entering:
            entering = False
            meter[0] += 1
            if meter[0] + meter[1] > budget:
                return 2
            allb = depth > 0
            for v in range(n):
                if cover[v] < b:
                    allb = False
                    break
            # a prefix admitting a full size-b choice keeps every completion
            # colorable: check that first, and only test the window demands
            # when it fails
            if allb and prune == 1:
                for v in range(n):
                    avail[v] = 0
                    dem[v] = b
                for p in range(depth):
                    cm = cls[stack_cls[p]]
                    while cm:
                        v = _ctz(cm)
                        cm &= cm - 1
                        avail[v] |= 1 << p
                r = exists_choice(n, adj, avail, dem, steps, budget, scratch)
                meter[1] = steps[0]
                if r == -1:
                    return 2
                if r == 1 and prune == 1:
                    # every completion of this prefix stays colorable
                    depth -= 1
                    if depth < 0:
                        return 0
                    cm = cls[stack_cls[depth]]
                    while cm:
                        v = _ctz(cm)
                        cm &= cm - 1
                        cover[v] -= 1
                    continue
            complete = depth > 0
            for v in range(n):
                if cover[v] < lo[v]:
                    complete = False
                    break
            if complete:
                meter[2] += 1
                for v in range(n):
                    avail[v] = 0
                    dem[v] = b - (hi[v] - cover[v])
                for p in range(depth):
                    cm = cls[stack_cls[p]]
                    while cm:
                        v = _ctz(cm)
                        cm &= cm - 1
                        avail[v] |= 1 << p
                r = exists_choice(n, adj, avail, dem, steps, budget, scratch)
                meter[1] = steps[0]
                if r == -1:
                    return 2
                if r == 0:
                    for i in range(m):
                        counts[i] = 0
                    for p in range(depth):
                        counts[stack_cls[p]] += 1
                    return 1
            # deepest class index that can still fix a deficient vertex
            dead = m - 1
            for v in range(n):
                if cover[v] < lo[v] and maxidx[v] < dead:
                    dead = maxidx[v]
            stack_dead[depth] = dead
            if depth + 1 >= maxdepth:
                stack_next[depth] = m  # no room for children
        # iterate children
        pushed = False
        i = stack_next[depth]
        dead = stack_dead[depth]
        while i <= dead:
            cm = cls[i]
            fits = True
            t = cm
            while t:
                v = _ctz(t)
                t &= t - 1
                if cover[v] + 1 > hi[v]:
                    fits = False
                    break
            if fits:
                t = cm
                while t:
                    v = _ctz(t)
                    t &= t - 1
                    cover[v] += 1
                stack_cls[depth] = i
                stack_next[depth] = i + 1
                depth += 1
                stack_next[depth] = i
                entering = True
                pushed = True
                break
            i += 1
        if pushed:
            continue
        stack_next[depth] = i
        # backtrack
        depth -= 1
        if depth < 0:
            return 0
        cm = cls[stack_cls[depth]]
        while cm:
            v = _ctz(cm)
            cm &= cm - 1
            cover[v] -= 1
    return 0


scan_reduced = _compile(_scan_reduced_impl)


# ---------------------------------------------------------------------------
# specialness of a pair relation (36-bit, rows over the six left 2-subsets)


def _special_flags_impl(rows):
    """Bit 0: relation is special; bit 1: P1 (star-shaped fan); bit 2: P2
    (the symmetric-difference subset has fan size 1).

    All five defining properties are invariant under relabeling either
    universe, so they are checked directly on position indices.
    """
    deg = np.empty(6, dtype=np.int64)
    for i in range(6):
        deg[i] = popcount(rows[i])
    sorted_deg = np.sort(deg)
    if (
        sorted_deg[0] != 1
        or sorted_deg[1] != 3
        or sorted_deg[2] != 3
        or sorted_deg[3] != 5
        or sorted_deg[4] != 5
        or sorted_deg[5] != 6
    ):
        return 0
    h = -1
    g = -1
    for i in range(6):
        if deg[i] == 3:
            if h < 0:
                h = i
            else:
                g = i
    # positions of the two degree-3 left subsets must share one element
    ph0, ph1 = PAIR_POS[h, 0], PAIR_POS[h, 1]
    pg0, pg1 = PAIR_POS[g, 0], PAIR_POS[g, 1]
    common = 0
    cpos = -1
    for ia in range(2):
        a = PAIR_POS[h, ia]
        for ib in range(2):
            if a == PAIR_POS[g, ib]:
                common += 1
                cpos = a
    if common != 1:
        return 0
    if rows[h] != rows[g]:
        return 0
    # fan shape: {xy, xz, xw} (star) or {xy, xz, yz} (triangle)
    occ = np.zeros(4, dtype=np.int64)
    fan = rows[h]
    for j in range(6):
        if (fan >> j) & 1:
            occ[PAIR_POS[j, 0]] += 1
            occ[PAIR_POS[j, 1]] += 1
    three = 0
    two = 0
    one = 0
    for p in range(4):
        if occ[p] == 3:
            three += 1
        elif occ[p] == 2:
            two += 1
        elif occ[p] == 1:
            one += 1
    star = three == 1 and one == 3
    triangle = two == 3
    if not (star or triangle):
        return 0
    # the symmetric difference of the two degree-3 subsets, and the pair
    # {common element, element outside both}
    sd0 = ph0 if ph0 != cpos else ph1
    sd1 = pg0 if pg0 != cpos else pg1
    outside = -1
    for p in range(4):
        if p != ph0 and p != ph1 and p != pg0 and p != pg1:
            outside = p
    sym_idx = -1
    oth_idx = -1
    for j in range(6):
        a, bpos = PAIR_POS[j, 0], PAIR_POS[j, 1]
        if (a == sd0 and bpos == sd1) or (a == sd1 and bpos == sd0):
            sym_idx = j
        if (a == cpos and bpos == outside) or (a == outside and bpos == cpos):
            oth_idx = j
    ds, do = deg[sym_idx], deg[oth_idx]
    if not ((ds == 1 and do == 6) or (ds == 6 and do == 1)):
        return 0
    flags = 1
    if star:
        flags |= 2
    if ds == 1:
        flags |= 4
    return flags


special_flags = _compile(_special_flags_impl)


# ---------------------------------------------------------------------------
# exhaustive sweep of canonical valid 4-set sequences


def _sequence_scan_impl(max_m, max_colors, stats):
    """Enumerate canonical valid sequences of positioned 4-sets (first tuple
    (0,1,2,3), new colors in first-use order, at most max_colors colors) and
    test every odd-length sequence of >= 3 tuples that changes in at least 3
    positions: it must have a good subset, and satisfy one of |good| >= 3,
    |comp| > 23, or comp special with exactly one of P1/P2.

    stats: [nodes, checked, violations, good3, big, special_ok, checked_m3,
    checked_m5, no_good].
    """
    A = np.zeros((max_m, 4), dtype=np.int64)
    rows = np.zeros((max_m, 6), dtype=np.int64)
    used = np.zeros(max_m, dtype=np.int64)
    changes = np.zeros(max_m, dtype=np.int64)
    outs = np.zeros((max_m, 4), dtype=np.int64)
    nout = np.zeros(max_m, dtype=np.int64)
    cnt = np.zeros(max_m, dtype=np.int64)
    childA = np.zeros(4, dtype=np.int64)
    tmask = np.zeros(6, dtype=np.int64)
    inA = np.zeros(max_colors, dtype=np.int64)

    for p in range(4):
        A[0, p] = p
    for c1 in range(6):
        rows[0, c1] = 1 << c1
    used[0] = 4
    changes[0] = 0
    nout[0] = 0
    cnt[0] = 0
    depth = 0
    stats[0] += 1

    while depth >= 0:
        if depth + 1 >= max_m:
            depth -= 1
            continue
        nopt = 2 + nout[depth]
        total = nopt * nopt * nopt * nopt
        made_child = False
        while cnt[depth] < total:
            c = cnt[depth]
            cnt[depth] += 1
            x = c
            fresh = 0
            oldmask = 0
            ok = True
            for p in range(4):
                o = x % nopt
                x //= nopt
                if o == 0:
                    childA[p] = A[depth, p]
                elif o <= nout[depth]:
                    if (oldmask >> (o - 1)) & 1:
                        ok = False
                        break
                    oldmask |= 1 << (o - 1)
                    childA[p] = outs[depth, o - 1]
                else:
                    childA[p] = -1
                    fresh += 1
            if not ok:
                continue
            if used[depth] + fresh > max_colors:
                continue
            nc = used[depth]
            for p in range(4):
                if childA[p] == -1:
                    childA[p] = nc
                    nc += 1
            d1 = depth + 1
            chg = changes[depth]
            for p in range(4):
                A[d1, p] = childA[p]
                if childA[p] != A[depth, p]:
                    chg |= 1 << p
            used[d1] = nc
            changes[d1] = chg
            # step transition: which child 2-subsets are disjoint from each
            # parent 2-subset (by color)
            for e in range(6):
                a1 = A[depth, PAIR_POS[e, 0]]
                a2 = A[depth, PAIR_POS[e, 1]]
                msk = 0
                for e2 in range(6):
                    b1 = A[d1, PAIR_POS[e2, 0]]
                    b2 = A[d1, PAIR_POS[e2, 1]]
                    if a1 != b1 and a1 != b2 and a2 != b1 and a2 != b2:
                        msk |= 1 << e2
                tmask[e] = msk
            for c1 in range(6):
                r = rows[depth, c1]
                nr = 0
                for e in range(6):
                    if (r >> e) & 1:
                        nr |= tmask[e]
                rows[d1, c1] = nr
            # outside colors of the child tuple, ascending
            for col in range(nc):
                inA[col] = 0
            for p in range(4):
                inA[A[d1, p]] = 1
            no = 0
            for col in range(nc):
                if inA[col] == 0:
                    outs[d1, no] = col
                    no += 1
            nout[d1] = no
            stats[0] += 1
            mlen = d1 + 1
            if mlen >= 3 and mlen % 2 == 1 and popcount(chg) >= 3:
                stats[1] += 1
                if mlen == 3:
                    stats[6] += 1
                else:
                    stats[7] += 1
                good = 0
                size = 0
                for c1 in range(6):
                    size += popcount(rows[d1, c1])
                    if rows[d1, c1] == 63:
                        good += 1
                oklem = False
                if good >= 3:
                    stats[3] += 1
                    oklem = True
                elif size > 23:
                    stats[4] += 1
                    oklem = True
                else:
                    fl = special_flags(rows[d1])
                    if (fl & 1) == 1 and ((fl >> 1) & 1) != ((fl >> 2) & 1):
                        stats[5] += 1
                        oklem = True
                if good < 1:
                    stats[8] += 1
                    oklem = False
                if not oklem:
                    stats[2] += 1
            cnt[d1] = 0
            depth = d1
            made_child = True
            break
        if not made_child:
            depth -= 1
    return stats[2]


sequence_scan = _compile(_sequence_scan_impl)


# ---------------------------------------------------------------------------
# k-colorability with canonical color introduction


def _kcolorable_impl(n, adj, k, budget, meter):
    """1 if a proper k-coloring exists, 0 if none, 2 on budget.  Complete
    backtracking, most-constrained vertex first, colors capped at one past
    the maximum color used so far (symmetry break)."""
    color = np.full(n, -1, dtype=np.int64)
    stack_v = np.empty(n, dtype=np.int64)
    stack_c = np.empty(n, dtype=np.int64)
    maxc = np.zeros(n + 1, dtype=np.int64)
    depth = 0
    need_pick = True
    while True:
        if need_pick:
            meter[0] += 1
            if meter[0] > budget:
                return 2
            if depth == n:
                return 1
            best_v = -1
            best_cnt = 9999
            limit = maxc[depth] + 1
            if limit > k:
                limit = k
            for v in range(n):
                if color[v] >= 0:
                    continue
                nbmask = 0
                for u in range(n):
                    if (adj[v] >> u) & 1 and color[u] >= 0:
                        nbmask |= 1 << color[u]
                cnt = 0
                for cc in range(limit):
                    if not (nbmask >> cc) & 1:
                        cnt += 1
                if cnt < best_cnt or (cnt == best_cnt and v < best_v):
                    best_cnt = cnt
                    best_v = v
            stack_v[depth] = best_v
            stack_c[depth] = 0
            need_pick = False
        v = stack_v[depth]
        limit = maxc[depth] + 1
        if limit > k:
            limit = k
        nbmask = 0
        for u in range(n):
            if (adj[v] >> u) & 1 and color[u] >= 0:
                nbmask |= 1 << color[u]
        c = stack_c[depth]
        placed = False
        while c < limit:
            if not (nbmask >> c) & 1:
                color[v] = c
                stack_c[depth] = c + 1
                nm = maxc[depth]
                if c + 1 > nm:
                    nm = c + 1
                maxc[depth + 1] = nm
                depth += 1
                need_pick = True
                placed = True
                break
            c += 1
        if placed:
            continue
        stack_c[depth] = c
        depth -= 1
        if depth < 0:
            return 0
        color[stack_v[depth]] = -1
    return 0


kcolorable = _compile(_kcolorable_impl)


# ---------------------------------------------------------------------------
# canonical form of an edge-mask under a permutation family


def _canon_mask_impl(mask, perm_maps):
    best = mask
    nperm = perm_maps.shape[0]
    npairs = perm_maps.shape[1]
    for p in range(nperm):
        m2 = 0
        for i in range(npairs):
            if (mask >> i) & 1:
                m2 |= 1 << perm_maps[p, i]
        if m2 < best:
            best = m2
    return best


canon_mask = _compile(_canon_mask_impl)

"""Bitmask kernels for the hot loops: sigma_t, subset cycle tables, batch sweeps.

Each kernel has a numba path and a numpy path. The numba path is used when
numba imports and ``CYCLEPACK_JIT`` is not set to ``0``; ``set_backend``
switches at runtime (tests and the benchmark use it to compare both).

Graphs enter the batch kernels as edge masks: bit ``j*(j-1)/2 + i`` is the
pair ``i < j``, the same column-major order graph6 uses.
"""

from __future__ import annotations

import os
from itertools import combinations
from math import comb

import numpy as np

from cyclepack.graph import INFINITE, Graph, build_graph, sigma_t_reference

# the bundled TBB is too old for numba; workqueue avoids a warning on every launch
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_env = os.environ.get("CYCLEPACK_JIT", "1").strip().lower()
_backend = "numba" if HAVE_NUMBA and _env not in ("0", "false", "off", "no") else "numpy"

# int64 masks: vertex 63 would need the sign bit
MAX_KERNEL_N = 62
# edge masks for batch sweeps must fit 63 bits: C(n,2) <= 63
MAX_BATCH_N = 11
_NONE = -1


def backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not available")
    _backend = name


def pair_index(n: int) -> np.ndarray:
    """(C(n,2), 2) array of the pairs ``(i, j)`` in edge-mask bit order."""
    return np.array([(i, j) for j in range(1, n) for i in range(j)], dtype=np.int64).reshape(-1, 2)


def edge_bit(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def graph_from_edge_mask(n: int, mask: int) -> Graph:
    pairs = pair_index(n)
    return build_graph(n, [tuple(pairs[b]) for b in range(len(pairs)) if mask >> b & 1])


def edge_mask_of(g: Graph) -> int:
    return sum(1 << edge_bit(u, v) for u, v in g.edges())


def _adj_array(g: Graph) -> np.ndarray:
    return np.array(g.masks, dtype=np.int64)


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _popcount(x):
        x = x - ((x >> 1) & 0x5555555555555555)
        x = (x & 0x3333333333333333) + ((x >> 2) & 0x3333333333333333)
        x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0F
        return (x * 0x0101010101010101) >> 56 & 0xFF

    @njit(cache=True)
    def _lowbit_index(x):
        i = 0
        while not (x >> i) & 1:
            i += 1
        return i

    @njit(cache=True)
    def _sigma_nb(adj, deg, t):
        # vertices must be sorted by ascending degree so the lowest candidate
        # bounds every remaining choice from below
        n = adj.shape[0]
        full = (np.int64(1) << n) - 1
        best = np.int64(1) << 62
        cand = np.zeros(t + 1, dtype=np.int64)
        acc = np.zeros(t + 1, dtype=np.int64)
        cand[0] = full
        level = 0
        while True:
            if level == t:
                if acc[t] < best:
                    best = acc[t]
                level -= 1
                continue
            c = cand[level]
            need = t - level
            if c == 0 or _popcount(c) < need or acc[level] + need * deg[_lowbit_index(c)] >= best:
                if level == 0:
                    break
                level -= 1
                continue
            v = _lowbit_index(c)
            c &= ~(np.int64(1) << v)
            cand[level] = c
            cand[level + 1] = c & ~adj[v]
            acc[level + 1] = acc[level] + deg[v]
            level += 1
        if best == np.int64(1) << 62:
            return -1
        return best

    @njit(cache=True)
    def _cyclic_table_nb(adj, n):
        # cyc[S]: G[S] contains a cycle. If no G[S - v] does, any cycle in
        # G[S] spans S, and G[S] has a cycle iff e(S) >= |S|.
        size = np.int64(1) << n
        cyc = np.zeros(size, dtype=np.bool_)
        ecount = np.zeros(size, dtype=np.int64)
        for s in range(1, size):
            v = _lowbit_index(s)
            rest = s & ~(np.int64(1) << v)
            ecount[s] = ecount[rest] + _popcount(adj[v] & rest)
            if ecount[s] >= _popcount(s):
                cyc[s] = True
                continue
            r = s
            while r:
                w = _lowbit_index(r)
                r &= r - 1
                if cyc[s & ~(np.int64(1) << w)]:
                    cyc[s] = True
                    break
        return cyc

    @njit(cache=True)
    def _pack_from_table_nb(cyc, n, cap):
        full = (np.int64(1) << n) - 1
        if cap <= 0:
            return 0
        if not cyc[full]:
            return 0
        if cap == 1:
            return 1
        if cap == 2:
            for s in range(1, full):
                if cyc[s] and cyc[full & ~s]:
                    return 2
            return 1
        size = np.int64(1) << n
        pk = np.zeros(size, dtype=np.int64)
        for s in range(1, size):
            if not cyc[s]:
                continue
            low = s & -s
            best = pk[s & ~low]
            rest = s & ~low
            # T = low | sub over every sub of rest
            sub = rest
            while True:
                tmask = sub | low
                if cyc[tmask]:
                    val = 1 + pk[s & ~tmask]
                    if val > best:
                        best = val
                if best >= cap or sub == 0:
                    break
                sub = (sub - 1) & rest
            pk[s] = min(best, cap)
        return pk[full]

    @njit(cache=True)
    def _packing_nb(adj, cap):
        n = adj.shape[0]
        cyc = _cyclic_table_nb(adj, n)
        return _pack_from_table_nb(cyc, n, cap)

    @njit(cache=True)
    def _sigma_small_nb(adj, deg, n, t):
        # enumeration over t-subsets for the batch path, n <= MAX_BATCH_N
        best = np.int64(1) << 62
        size = np.int64(1) << n
        for s in range(size):
            if _popcount(s) != t:
                continue
            ok = True
            tot = 0
            r = s
            while r:
                v = _lowbit_index(r)
                r &= r - 1
                if adj[v] & s:
                    ok = False
                    break
                tot += deg[v]
            if ok and tot < best:
                best = tot
        if best == np.int64(1) << 62:
            return -1
        return best

    @njit(cache=True, parallel=True)
    def _batch_nb(n, masks, pi, pj, t, k):
        b = masks.shape[0]
        out = np.zeros((b, 6), dtype=np.int64)
        m = pi.shape[0]
        for g in prange(b):
            em = masks[g]
            adj = np.zeros(n, dtype=np.int64)
            ecount = 0
            for e in range(m):
                if (em >> e) & 1:
                    adj[pi[e]] |= np.int64(1) << pj[e]
                    adj[pj[e]] |= np.int64(1) << pi[e]
                    ecount += 1
            deg = np.zeros(n, dtype=np.int64)
            mindeg = n
            for v in range(n):
                deg[v] = _popcount(adj[v])
                if deg[v] < mindeg:
                    mindeg = deg[v]
            out[g, 0] = ecount
            out[g, 1] = mindeg if n > 0 else 0
            out[g, 2] = _sigma_small_nb(adj, deg, n, 2)
            out[g, 3] = _sigma_small_nb(adj, deg, n, 3)
            out[g, 4] = _sigma_small_nb(adj, deg, n, t)
            cyc = _cyclic_table_nb(adj, n)
            out[g, 5] = _pack_from_table_nb(cyc, n, k)
        return out


# ---------------------------------------------------------------- numpy path


def _sigma_np(g: Graph, t: int):
    n = g.n
    if t > n:
        return INFINITE
    if comb(n, t) > 2_000_000:
        return sigma_t_reference(g, t)
    deg = np.array(g.degrees(), dtype=np.int64)
    combos = np.array(list(combinations(range(n), t)), dtype=np.int64).reshape(-1, t)
    a = np.zeros((n, n), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    indep = np.ones(len(combos), dtype=bool)
    for i in range(t):
        for j in range(i + 1, t):
            indep &= ~a[combos[:, i], combos[:, j]]
    if not indep.any():
        return INFINITE
    return int(deg[combos[indep]].sum(axis=1).min())


def _popcount_np(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x).astype(np.int64)


def _cyclic_table_np(adj: np.ndarray, n: int) -> np.ndarray:
    """Vectorized over a batch: ``adj`` is (B, n), result is (B, 2**n)."""
    size = 1 << n
    b = adj.shape[0]
    cyc = np.zeros((b, size), dtype=bool)
    ecount = np.zeros((b, size), dtype=np.int64)
    for s in range(1, size):
        v = (s & -s).bit_length() - 1
        rest = s & ~(1 << v)
        ecount[:, s] = ecount[:, rest] + _popcount_np(adj[:, v] & rest)
        hit = ecount[:, s] >= s.bit_count()
        for w in range(n):
            if s >> w & 1:
                hit |= cyc[:, s & ~(1 << w)]
        cyc[:, s] = hit
    return cyc


def _pack_from_table_np(cyc: np.ndarray, n: int, cap: int) -> np.ndarray:
    full = (1 << n) - 1
    b = cyc.shape[0]
    if cap <= 0:
        return np.zeros(b, dtype=np.int64)
    has1 = cyc[:, full]
    if cap == 1:
        return has1.astype(np.int64)
    if cap == 2:
        split = np.zeros(b, dtype=bool)
        for s in range(1, full):
            split |= cyc[:, s] & cyc[:, full & ~s]
        return np.where(split, 2, has1.astype(np.int64))
    pk = np.zeros((b, 1 << n), dtype=np.int64)
    for s in range(1, 1 << n):
        low = s & -s
        rest = s & ~low
        best = pk[:, rest].copy()
        sub = rest
        while True:
            tmask = sub | low
            cand = np.where(cyc[:, tmask], 1 + pk[:, s & ~tmask], 0)
            np.maximum(best, cand, out=best)
            if sub == 0:
                break
            sub = (sub - 1) & rest
        pk[:, s] = np.minimum(best, cap)
    return pk[:, full]


def _sigma_small_np(adj: np.ndarray, deg: np.ndarray, n: int, t: int) -> np.ndarray:
    b = adj.shape[0]
    best = np.full(b, np.iinfo(np.int64).max)
    for combo in combinations(range(n), t):
        s = sum(1 << v for v in combo)
        ok = np.ones(b, dtype=bool)
        tot = np.zeros(b, dtype=np.int64)
        for v in combo:
            ok &= (adj[:, v] & s) == 0
            tot += deg[:, v]
        best = np.where(ok & (tot < best), tot, best)
    return np.where(best == np.iinfo(np.int64).max, _NONE, best)


def _batch_np(n: int, masks: np.ndarray, t: int, k: int) -> np.ndarray:
    pairs = pair_index(n)
    b = masks.shape[0]
    adj = np.zeros((b, n), dtype=np.int64)
    for e, (i, j) in enumerate(pairs):
        bit = (masks >> e) & 1
        adj[:, i] |= bit << j
        adj[:, j] |= bit << i
    deg = _popcount_np(adj)
    out = np.zeros((b, 6), dtype=np.int64)
    out[:, 0] = _popcount_np(masks)
    out[:, 1] = deg.min(axis=1) if n else 0
    out[:, 2] = _sigma_small_np(adj, deg, n, 2)
    out[:, 3] = _sigma_small_np(adj, deg, n, 3)
    out[:, 4] = _sigma_small_np(adj, deg, n, t)
    out[:, 5] = _pack_from_table_np(_cyclic_table_np(adj, n), n, k)
    return out


def _packing_np(g: Graph, cap: int) -> int:
    adj = _adj_array(g)[None, :]
    return int(_pack_from_table_np(_cyclic_table_np(adj, g.n), g.n, cap)[0])


# ---------------------------------------------------------------- dispatch

STAT_COLUMNS = ("edges", "min_degree", "sigma2", "sigma3", "sigma_t", "packing")


def sigma(g: Graph, t: int):
    """sigma_t of ``g``; ``INFINITE`` when there is no independent t-set."""
    if t > g.n:
        return INFINITE
    if _backend == "numba" and g.n <= MAX_KERNEL_N:
        deg = np.array(g.degrees(), dtype=np.int64)
        order = np.argsort(deg, kind="stable")
        rank = np.empty_like(order)
        rank[order] = np.arange(g.n)
        adj = np.zeros(g.n, dtype=np.int64)
        for v in range(g.n):
            m = 0
            for w in g.adj[v]:
                m |= 1 << int(rank[w])
            adj[rank[v]] = m
        val = int(_sigma_nb(adj, deg[order], t))
        return INFINITE if val == _NONE else val
    return _sigma_np(g, t)


def packing_number(g: Graph, cap: int) -> int:
    """min(cap, maximum number of disjoint cycles), by subset DP over all vertex subsets.

    Independent of the witness search in :mod:`cyclepack.packing`; exponential
    in ``n`` so only for small graphs (n <= 20 on the numba path).
    """
    if g.n > 20 or (_backend == "numpy" and g.n > 12):
        raise ValueError(f"subset DP is limited to small graphs, got n={g.n}")
    if g.n == 0:
        return 0
    if _backend == "numba":
        return int(_packing_nb(_adj_array(g), cap))
    return _packing_np(g, cap)


def batch_stats(n: int, masks: np.ndarray, t: int = 2, k: int = 2) -> np.ndarray:
    """Per-graph statistics for a batch of edge masks on ``n`` vertices.

    Returns an int64 array of shape (B, 6), columns as in ``STAT_COLUMNS``:
    edge count, minimum degree, sigma_2, sigma_3, sigma_t (``-1`` means no
    independent set of that size) and the packing number capped at ``k``.
    """
    if n > MAX_BATCH_N:
        raise ValueError(f"batch kernels need C(n,2) <= 63, got n={n}")
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    if n == 0:
        out = np.zeros((masks.shape[0], 6), dtype=np.int64)
        out[:, 2:5] = _NONE
        return out
    if _backend == "numba":
        pairs = pair_index(n)
        return _batch_nb(n, masks, pairs[:, 0].copy(), pairs[:, 1].copy(), t, k)
    return _batch_np(n, masks, t, k)

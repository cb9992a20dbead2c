"""Hot enumeration kernels: numba-jitted with a pure-Python fallback.

The depth-first insert-next-largest search visits every avoider exactly
once, so runtime is O(T * s_n) where T is the cost of checking whether the
newly inserted element completes a pattern occurrence.

Kernel selection: numba is used when importable unless the
PAPSERIES_NO_NUMBA environment variable is set to a non-empty value
(NUMBA_DISABLE_JIT is also honoured by numba itself). Both lanes run the
identical algorithm; ``benchmarks/bench_kernels.py`` compares them.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = bool(os.environ.get("PAPSERIES_NO_NUMBA"))

try:  # pragma: no cover - exercised via env flag in the benchmark
    if _DISABLED:
        raise ImportError("numba disabled by PAPSERIES_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True, nogil=True)
def _occurs_through_new(perm, m, p, tpat, km1, mi, pos):
    """Does inserting a new maximum at gap p of perm[0:m] create an occurrence?

    tpat is the forbidden pattern with its maximum removed (km1 entries);
    mi is the index the maximum occupied. The new element is the global
    maximum, so it can only play that role: we search for km1 positions in
    perm, exactly mi of them left of gap p, order-isomorphic to tpat.
    """
    if km1 == 0:
        return True
    s = 0
    pos[0] = p - 1 if mi == 0 else -1
    while True:
        found = False
        for cand in range(pos[s] + 1, m):
            if s < mi and cand >= p:
                break
            if m - cand < km1 - s:
                break
            v = perm[cand]
            good = True
            for t in range(s):
                if (v < perm[pos[t]]) != (tpat[s] < tpat[t]):
                    good = False
                    break
            if good:
                pos[s] = cand
                found = True
                break
        if found:
            if s == km1 - 1:
                return True
            s += 1
            pos[s] = pos[s - 1] if s != mi else max(pos[s - 1], p - 1)
        else:
            s -= 1
            if s < 0:
                return False


@njit(cache=True, nogil=True)
def _dfs_count(tpats, km1s, mis, max_n, start, start_len, counts):
    """Count avoiders extending the prefix permutation ``start``.

    counts[n] accumulates the number of avoiders of length n reached from
    the start node (the start itself is not counted).
    """
    npat = tpats.shape[0]
    work = np.zeros((max_n + 1, max_n + 1), dtype=np.int64)
    gap = np.zeros(max_n + 1, dtype=np.int64)
    pos = np.zeros(tpats.shape[1] + 1, dtype=np.int64)
    for j in range(start_len):
        work[start_len, j] = start[j]
    d = start_len
    gap[d] = 0
    while d >= start_len:
        if d >= max_n or gap[d] > d:
            d -= 1
            continue
        p = gap[d]
        gap[d] += 1
        ok = True
        for i in range(npat):
            if d >= km1s[i]:
                if _occurs_through_new(work[d], d, p, tpats[i], km1s[i], mis[i], pos):
                    ok = False
                    break
        if ok:
            counts[d + 1] += 1
            if d + 1 < max_n:
                for j in range(p):
                    work[d + 1, j] = work[d, j]
                work[d + 1, p] = d + 1
                for j in range(p, d):
                    work[d + 1, j + 1] = work[d, j]
                d += 1
                gap[d] = 0


def _occurs_through_new_py(perm, m, p, tpat, km1, mi, pos):
    if km1 == 0:
        return True
    s = 0
    pos[0] = p - 1 if mi == 0 else -1
    while True:
        found = False
        for cand in range(pos[s] + 1, m):
            if s < mi and cand >= p:
                break
            if m - cand < km1 - s:
                break
            v = perm[cand]
            good = True
            for t in range(s):
                if (v < perm[pos[t]]) != (tpat[s] < tpat[t]):
                    good = False
                    break
            if good:
                pos[s] = cand
                found = True
                break
        if found:
            if s == km1 - 1:
                return True
            s += 1
            pos[s] = pos[s - 1] if s != mi else max(pos[s - 1], p - 1)
        else:
            s -= 1
            if s < 0:
                return False


def _dfs_count_py(tpats, km1s, mis, max_n, start, start_len, counts):
    npat = len(tpats)
    work = [[0] * (max_n + 1) for _ in range(max_n + 1)]
    gap = [0] * (max_n + 1)
    pos = [0] * (max(len(t) for t in tpats) + 1 if npat else 1)
    for j in range(start_len):
        work[start_len][j] = start[j]
    d = start_len
    gap[d] = 0
    while d >= start_len:
        if d >= max_n or gap[d] > d:
            d -= 1
            continue
        p = gap[d]
        gap[d] += 1
        ok = True
        for i in range(npat):
            if d >= km1s[i]:
                if _occurs_through_new_py(work[d], d, p, tpats[i], km1s[i], mis[i], pos):
                    ok = False
                    break
        if ok:
            counts[d + 1] += 1
            if d + 1 < max_n:
                row = work[d + 1]
                src = work[d]
                for j in range(p):
                    row[j] = src[j]
                row[p] = d + 1
                for j in range(p, d):
                    row[j + 1] = src[j]
                d += 1
                gap[d] = 0


def pattern_arrays(patterns):
    """Pack patterns into (tpats, km1s, mis) arrays for the kernels."""
    kmax = max(len(t) for t in patterns)
    tpats = np.zeros((len(patterns), max(1, kmax - 1)), dtype=np.int64)
    km1s = np.zeros(len(patterns), dtype=np.int64)
    mis = np.zeros(len(patterns), dtype=np.int64)
    for i, tau in enumerate(patterns):
        k = len(tau)
        mi = tau.index(k)
        rest = [v for v in tau if v != k]
        for j, v in enumerate(rest):
            tpats[i, j] = v
        km1s[i] = k - 1
        mis[i] = mi
    return tpats, km1s, mis


def dfs_count(tpats, km1s, mis, max_n, start, start_len, use_numba=None):
    """Run the DFS from a start prefix; returns an int64 numpy counts array."""
    counts = np.zeros(max_n + 1, dtype=np.int64)
    engine_numba = HAVE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA)
    if engine_numba:
        start_arr = np.asarray(start, dtype=np.int64)
        if start_arr.size == 0:
            start_arr = np.zeros(1, dtype=np.int64)
        _dfs_count(tpats, km1s, mis, max_n, start_arr, start_len, counts)
    else:
        tp = [list(map(int, row)) for row in tpats]
        _dfs_count_py(tp, [int(x) for x in km1s], [int(x) for x in mis],
                      max_n, list(start), start_len, counts)
    return counts

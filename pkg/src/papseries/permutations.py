"""Pattern-avoiding permutation enumeration and empirical Wilf classification.

Permutations are tuples of 1..n in one-line notation. Enumeration builds
avoiders by inserting the next-largest value into every gap of each shorter
avoider; avoidance is hereditary under deletion, so pruning non-avoiders
immediately is sound and the search visits exactly the avoiders. The
containment test after an insertion only needs to examine subsequences
through the new element, which costs O(n^{k-1}) in the worst case.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations as iter_permutations

import numpy as np

from . import _kernels

# int64 kernel counts stay safe while s_n < 2^62; length-5 classes reach
# that around n = 22, far past what is tractable here anyway.
_KERNEL_MAX_N = 21


class ResourceCapExceeded(RuntimeError):
    """Raised when enumeration hits its time budget before completing."""

    def __init__(self, partial):
        super().__init__(
            f"enumeration budget exhausted; complete to n={partial.complete_to}")
        self.partial = partial


def as_permutation(word) -> tuple[int, ...]:
    """Validate one-line notation (a bijection on 1..n) and return a tuple."""
    w = tuple(int(x) for x in word)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"not a permutation of 1..{len(w)}: {word!r}")
    return w


def parse_pattern(text: str) -> tuple[int, ...]:
    """Parse a pattern like '25314' (or '2,5,3,1,4' for lengths > 9)."""
    text = text.strip()
    if "," in text:
        return as_permutation(text.split(","))
    return as_permutation(text)


def reverse_perm(p):
    return tuple(reversed(p))


def complement_perm(p):
    n = len(p)
    return tuple(n + 1 - v for v in p)


def inverse_perm(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v - 1] = i + 1
    return tuple(out)


_SYMMETRY_OPS = {
    "reverse": reverse_perm,
    "complement": complement_perm,
    "inverse": inverse_perm,
}


def symmetry(p, op: str):
    """Apply one of the count-preserving symmetries reverse/complement/inverse."""
    try:
        fn = _SYMMETRY_OPS[op]
    except KeyError:
        raise ValueError(f"unknown symmetry op {op!r}") from None
    return fn(as_permutation(p))


def symmetry_orbit(p) -> frozenset:
    """Closure of p under the group generated by the three symmetries."""
    p = as_permutation(p)
    seen = {p}
    frontier = [p]
    while frontier:
        q = frontier.pop()
        for fn in _SYMMETRY_OPS.values():
            r = fn(q)
            if r not in seen:
                seen.add(r)
                frontier.append(r)
    return frozenset(seen)


def contains(pi, tau) -> bool:
    """True iff some length-k subsequence of pi is order-isomorphic to tau."""
    pi = as_permutation(pi)
    tau = as_permutation(tau)
    k = len(tau)
    if k > len(pi):
        return False
    # backtracking over positions with pairwise order checks
    pos = []

    def extend(s, lo):
        if s == k:
            return True
        for cand in range(lo, len(pi) - (k - s) + 1):
            v = pi[cand]
            if all((v < pi[pos[t]]) == (tau[s] < tau[t]) for t in range(s)):
                pos.append(cand)
                if extend(s + 1, cand + 1):
                    return True
                pos.pop()
        return False

    return extend(0, 0)


def avoids(pi, patterns) -> bool:
    return not any(contains(pi, t) for t in patterns)


@dataclass(frozen=True)
class CountVector:
    """Avoider counts by length, counts[n] = #{pi in S_n avoiding all patterns}."""
    patterns: tuple[tuple[int, ...], ...]
    counts: tuple[int, ...]
    complete_to: int

    def __post_init__(self):
        if self.counts[0] != 1:
            raise ValueError("counts[0] must be 1 (the empty permutation)")


def _normalize_patterns(patterns):
    if isinstance(patterns, (tuple, list)) and patterns and isinstance(patterns[0], int):
        patterns = [patterns]
    pats = tuple(sorted({as_permutation(t) for t in patterns}))
    if not pats:
        raise ValueError("pattern set must be non-empty")
    return pats


def _frontier(patterns, depth):
    """All avoiders of the given length, as lists (DFS splitting points)."""
    out = [[]]
    for m in range(depth):
        nxt = []
        for w in out:
            for p in range(m + 1):
                cand = w[:p] + [m + 1] + w[p:]
                if avoids(cand, patterns):
                    nxt.append(cand)
        out = nxt
    return out


def count_avoiders(patterns, max_n, threads: int = 1, max_seconds=None,
                   use_numba=None) -> CountVector:
    """Count avoiders of every length up to max_n.

    With a time budget, counting proceeds by iterative deepening and the
    result is complete up to the last finished length (complete_to); a
    budget hit raises ResourceCapExceeded carrying the partial CountVector.
    """
    pats = _normalize_patterns(patterns)
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    t0 = time.monotonic()
    counts = [1]
    if max_n == 0:
        return CountVector(pats, tuple(counts), 0)

    tpats, km1s, mis = _kernels.pattern_arrays(pats)
    run_numba = (use_numba if use_numba is not None else _kernels.HAVE_NUMBA)
    if max_n > _KERNEL_MAX_N:
        run_numba = False

    targets = range(1, max_n + 1) if max_seconds else [max_n]
    done_to = 0
    full = None
    for target in targets:
        split = min(6, target - 1) if threads > 1 else 0
        if split:
            starts = _frontier(pats, split)
            head = [1]
            for m in range(1, split + 1):
                head.append(sum(1 for w in _frontier(pats, m)))
            totals = np.zeros(target + 1, dtype=np.int64)
            with ThreadPoolExecutor(max_workers=threads) as pool:
                futs = [pool.submit(_kernels.dfs_count, tpats, km1s, mis,
                                    target, s, split, run_numba)
                        for s in starts]
                for f in futs:
                    totals += f.result()
            got = head + [int(totals[n]) for n in range(split + 1, target + 1)]
        else:
            arr = _kernels.dfs_count(tpats, km1s, mis, target, [], 0, run_numba)
            got = [1] + [int(arr[n]) for n in range(1, target + 1)]
        counts = got
        done_to = target
        if max_seconds is not None and time.monotonic() - t0 > max_seconds:
            if target < max_n:
                raise ResourceCapExceeded(CountVector(pats, tuple(counts), done_to))
        full = counts
    return CountVector(pats, tuple(full), done_to)


@dataclass(frozen=True)
class WilfClass:
    """One empirical Wilf class: all patterns sharing a count vector."""
    patterns: tuple[tuple[int, ...], ...]
    counts: tuple[int, ...]

    @property
    def representative(self):
        return self.patterns[0]


def classify_wilf(length: int, max_n: int, threads: int = 1,
                  use_numba=None) -> list[WilfClass]:
    """Partition all length! patterns by equality of avoider counts to max_n.

    Work is first reduced via the symmetry group generated by
    reverse/complement/inverse (counts are invariant along orbits); classes
    are sorted by counts lexicographically, members lexicographically, with
    the smallest member as representative. Ties at max_n merge classes;
    raise max_n to separate them.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    all_pats = [tuple(p) for p in iter_permutations(range(1, length + 1))]
    orbits = []
    seen = set()
    for p in all_pats:
        if p in seen:
            continue
        orb = symmetry_orbit(p)
        seen |= orb
        orbits.append(tuple(sorted(orb)))

    def count_one(orbit):
        return count_avoiders(orbit[0], max_n, use_numba=use_numba).counts

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vectors = list(pool.map(count_one, orbits))
    else:
        vectors = [count_one(o) for o in orbits]

    groups: dict[tuple[int, ...], list] = {}
    for orbit, vec in zip(orbits, vectors):
        groups.setdefault(vec, []).extend(orbit)
    classes = [WilfClass(tuple(sorted(members)), vec)
               for vec, members in groups.items()]
    classes.sort(key=lambda c: c.counts)
    return classes


def naive_count_avoiders(patterns, max_n) -> list[int]:
    """Filter all of S_n per length; the independent oracle for small n."""
    pats = _normalize_patterns(patterns)
    out = [1]
    for n in range(1, max_n + 1):
        out.append(sum(1 for pi in iter_permutations(range(1, n + 1))
                       if avoids(pi, pats)))
    return out

"""Independent reference computations the tests check the package against.

Everything here is deliberately brute-force or closed-form: subsequence
scans, filter-all-of-S_n counting, hook-length tableau counts, lattice-path
enumeration by walking every path. None of it shares code with the
implementations under test.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def contains_brute(pi, tau) -> bool:
    k = len(tau)
    for idx in combinations(range(len(pi)), k):
        vals = [pi[i] for i in idx]
        if all((vals[a] < vals[b]) == (tau[a] < tau[b])
               for a in range(k) for b in range(a + 1, k)):
            return True
    return False


def count_avoiders_brute(patterns, max_n):
    out = [1]
    for n in range(1, max_n + 1):
        c = 0
        for pi in permutations(range(1, n + 1)):
            if not any(contains_brute(pi, t) for t in patterns):
                c += 1
        out.append(c)
    return out


def avoiders_12345_hooklength(n: int) -> int:
    """Sum of squared tableau counts over partitions with <= 4 parts."""
    if n == 0:
        return 1
    nf = factorial(n)
    total = 0
    for p1 in range((n + 3) // 4, n + 1):
        for p2 in range(min(p1, n - p1) + 1):
            rem = n - p1 - p2
            if rem > 2 * p2:
                continue
            for p3 in range(max(0, rem - p2), min(p2, rem) + 1):
                p4 = rem - p3
                if not 0 <= p4 <= p3:
                    continue
                lam = [p for p in (p1, p2, p3, p4) if p > 0]
                conj = [0] * lam[0]
                for p in lam:
                    for j in range(p):
                        conj[j] += 1
                hooks = 1
                for i, p in enumerate(lam):
                    for j in range(p):
                        hooks *= (p - j) + (conj[j] - i) - 1
                total += (nf // hooks) ** 2
    return total


def dyck_heights_brute(n: int):
    """d_{n,h} for h = 1..n by walking all 2n-step up/down paths."""
    counts = [0] * (n + 1)

    def walk(step, level, maxlevel):
        if level < 0 or level > 2 * n - step:
            return
        if step == 2 * n:
            if level == 0:
                counts[maxlevel] += 1
            return
        walk(step + 1, level + 1, max(maxlevel, level + 1))
        walk(step + 1, level - 1, maxlevel)

    walk(0, 0, 0)
    return counts[1:]


def stretched_sequence(mu, mu1, sigma, g, nmax, C=1, dps=60):
    """Exact-form synthetic coefficients C mu^n mu1^{n^sigma} n^g as mpf."""
    import mpmath as mp
    with mp.workdps(dps):
        out = []
        for n in range(1, nmax + 1):
            ln = (mp.log(mp.mpf(C)) + n * mp.log(mp.mpf(mu))
                  + mp.mpf(n) ** mp.mpf(sigma) * mp.log(mp.mpf(mu1))
                  + mp.mpf(g) * mp.log(mp.mpf(n)))
            out.append(mp.exp(ln))
        return out

"""Height-weighted Dyck path oracle with provable stretched asymptotics.

Counting Dyck paths of semilength n by maximum height h and weighting each
by y^h (0 < y < 1) produces a sequence with exactly-known asymptotics:

    w_n ~ C * 4^n * mu1^{n^{1/3}} * n^{-5/6}

with r = -log y, mu1 = exp(-E r^{2/3}), E = 3 (pi/2)^{2/3},
C = ((1-y)/y^2) r^{1/3} A, A = 2^{5/3} pi^{5/6} / sqrt(3). This is the
ground truth used to validate the stretched-exponential estimator suite
end to end. Coefficients are exact rationals so the moment-sequence
machinery can also consume them.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .fitting import AsymptoticModel
from .precision import to_mpf
from .series import ExactSeries


def _height_bounded_counts(max_n: int, h: int) -> list[int]:
    """c[n] = Dyck paths of semilength n never exceeding height h."""
    v = [0] * (h + 1)
    v[0] = 1
    out = [1]
    for step in range(1, 2 * max_n + 1):
        nv = [0] * (h + 1)
        top = min(step, h)
        for lvl in range(top + 1):
            x = v[lvl]
            if x:
                if lvl + 1 <= h:
                    nv[lvl + 1] += x
                if lvl >= 1:
                    nv[lvl - 1] += x
        v = nv
        if step % 2 == 0:
            out.append(v[0])
    return out


@lru_cache(maxsize=8)
def _exact_height_table(max_n: int):
    """rows[n] = (d_{n,1}, ..., d_{n,n}): paths with maximum height exactly h."""
    rows = [[] for _ in range(max_n + 1)]
    prev = _height_bounded_counts(max_n, 0)
    for h in range(1, max_n + 1):
        cur = _height_bounded_counts(max_n, h)
        for n in range(h, max_n + 1):
            d = cur[n] - prev[n]
            rows[n].append(d)
        prev = cur
    # pad zeros for h <= n with no paths (h > n impossible, not stored)
    out = []
    for n, r in enumerate(rows):
        row = list(r) + [0] * (n - len(r))
        out.append(tuple(row))
    return tuple(out)


def dyck_counts(max_n: int):
    """Table rows[n][h-1] = number of Dyck paths of length 2n with maximum
    height exactly h, for 1 <= h <= n (row 0 is empty)."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    return _exact_height_table(max_n)


def dyck_series(y, max_n: int) -> ExactSeries:
    """Exact rational coefficients w_n = sum_h d_{n,h} y^h."""
    y = Fraction(y)
    if not 0 < y < 1:
        raise ValueError("y must lie in (0, 1)")
    prev = _height_bounded_counts(max_n, 0)
    w = [Fraction(0)] * (max_n + 1)
    w[0] = Fraction(1)
    ypow = Fraction(1)
    for h in range(1, max_n + 1):
        cur = _height_bounded_counts(max_n, h)
        ypow *= y
        for n in range(h, max_n + 1):
            d = cur[n] - prev[n]
            if d:
                w[n] += d * ypow
        prev = cur
    return ExactSeries(f"dyck(y={y})", tuple(w))


def dyck_truth(y) -> AsymptoticModel:
    """Exact asymptotic parameters of the height-weighted counts."""
    y = Fraction(y)
    if not 0 < y < 1:
        raise ValueError("y must lie in (0, 1)")
    yf = to_mpf(y)
    r = -mp.log(yf)
    A = 2 ** (mp.mpf(5) / 3) * mp.pi ** (mp.mpf(5) / 6) / mp.sqrt(3)
    E = 3 * (mp.pi / 2) ** (mp.mpf(2) / 3)
    mu1 = mp.exp(-E * r ** (mp.mpf(2) / 3))
    C = (1 - yf) / yf ** 2 * r ** (mp.mpf(1) / 3) * A
    return AsymptoticModel(mu=4, g=Fraction(-5, 6), mu1=mu1,
                           sigma=Fraction(1, 3), amplitude=C,
                           provenance={"oracle": "height-weighted Dyck paths"})

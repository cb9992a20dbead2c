"""Moment-sequence machinery: S-fractions, Hankel positivity, lower bounds.

A positive sequence a_0, a_1, ... is a Stieltjes moment sequence iff its
generating function has the continued-fraction form

    A(x) = alpha_0 / (1 - alpha_1 x / (1 - alpha_2 x / ...))

with all alpha_i >= 0, which is equivalent to positive semidefiniteness of
the two Hankel matrices (a_{i+j}) and (a_{i+j+1}). Such sequences are
log-convex, so successive-term ratios bound the growth constant from
below; substituting constant tails into the continued fraction gives the
stronger bounds b_n = (sqrt(alpha_n) + sqrt(alpha_{n-1}))^2, valid under
the parity-monotonicity hypothesis on the alphas (checked and reported,
not assumed).

Everything here runs in exact rational arithmetic: the continued-fraction
extraction is numerically treacherous in floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .linalg import leading_principal_minors
from .precision import to_mpf
from .series import ExactSeries


class SFractionBreakdown(ValueError):
    """The quotient-difference recurrence hit a forbidden zero."""

    def __init__(self, index, name):
        super().__init__(
            f"{name}: no S-fraction at depth {index} "
            f"(zero where a nonzero quotient is required)")
        self.index = index


@dataclass(frozen=True)
class ContinuedFraction:
    """S-fraction coefficients alpha_0..alpha_depth as exact rationals."""
    alphas: tuple
    source: str
    depth: int

    def is_stieltjes(self) -> bool:
        return all(a >= 0 for a in self.alphas)

    def alpha_strings(self):
        return [str(a) for a in self.alphas]


def _coeffs_of(series) -> list:
    if isinstance(series, ExactSeries):
        return [Fraction(c) for c in series.coeffs]
    return [Fraction(c) for c in series]


def _name_of(series) -> str:
    return series.name if isinstance(series, ExactSeries) else "series"


def _sfraction_peel(coeffs, depth, name):
    """Reference extraction: repeatedly invert and strip one level.

    O(depth^2) exact series operations; used when a zero Hankel minor makes
    the determinant route inapplicable (e.g. terminating fractions).
    """
    alphas = [coeffs[0]]
    S = [c / coeffs[0] for c in coeffs]
    m = len(coeffs)
    for k in range(1, depth + 1):
        inv = [Fraction(1)]
        for i in range(1, m):
            inv.append(-sum(S[j] * inv[i - j] for j in range(1, i + 1)))
        T = [Fraction(0)] + [-v for v in inv[1:]]
        a = T[1]
        if a == 0:
            if any(v != 0 for v in T[1:]):
                raise SFractionBreakdown(k, name)
            alphas.extend([Fraction(0)] * (depth + 1 - len(alphas)))
            return alphas
        alphas.append(a)
        m -= 1
        S = [T[i + 1] / a for i in range(m)]
    return alphas


def hankel_minors(series, shift: int):
    """Leading principal minors of the Hankel matrix (a_{i+j+shift})."""
    c = _coeffs_of(series)
    if any(x.denominator != 1 for x in c):
        # scale rationals to integers by the common denominator: each k x k
        # minor picks up a factor D^k, which never changes signs/zeroness,
        # so report minors of the scaled integer sequence alongside D.
        from math import lcm
        D = lcm(*[x.denominator for x in c])
        ints = [int(x * D) for x in c]
        scale = D
    else:
        ints = [int(x) for x in c]
        scale = 1
    m = (len(ints) + 1 - shift) // 2
    if m <= 0:
        return []
    M = [[ints[i + j + shift] for j in range(m)] for i in range(m)]
    raw = leading_principal_minors(M)
    if scale == 1:
        return raw
    return [Fraction(v, scale ** (k + 1)) for k, v in enumerate(raw)]


@dataclass(frozen=True)
class HankelReport:
    """Leading principal minors of H_0 and H_1 and the first failure."""
    minors0: tuple
    minors1: tuple
    first_nonpositive: tuple | None  # (shift, size) or None

    @property
    def all_positive(self) -> bool:
        return self.first_nonpositive is None


def hankel_check(series) -> HankelReport:
    m0 = hankel_minors(series, 0)
    m1 = hankel_minors(series, 1)
    first = None
    for shift, minors in ((0, m0), (1, m1)):
        for k, v in enumerate(minors, start=1):
            if v <= 0:
                if first is None or (k, shift) < (first[1], first[0]):
                    first = (shift, k)
                break
    return HankelReport(tuple(m0), tuple(m1), first)


def sfraction(series, depth: int | None = None) -> ContinuedFraction:
    """Exact S-fraction coefficients via the quotient-difference recurrence.

    Fast path evaluates the quotient-difference products from Hankel
    leading-minor pivots; when a zero minor blocks that route the slower
    series-peeling form of the same recurrence takes over. Re-expanding the
    truncated fraction reproduces the input through order `depth`.
    """
    c = _coeffs_of(series)
    name = _name_of(series)
    if c[0] == 0:
        raise SFractionBreakdown(0, name)
    max_depth = len(c) - 1
    if depth is None:
        depth = max_depth
    if depth > max_depth:
        raise ValueError(f"depth {depth} needs {depth + 1} coefficients")
    if depth == 0:
        return ContinuedFraction((c[0],), name, 0)

    a0 = c[0]
    d0 = hankel_minors(c, 0)
    d1 = hankel_minors(c, 1)
    D = [Fraction(1)] + [Fraction(x) / a0 ** (k + 1) for k, x in enumerate(d0)]
    E = [Fraction(1)] + [Fraction(x) / a0 ** (k + 1) for k, x in enumerate(d1)]
    alphas = [a0]
    for idx in range(1, depth + 1):
        if idx % 2 == 1:
            k = (idx - 1) // 2  # alpha_{2k+1} = E_{k+1} D_k / (E_k D_{k+1})
            ok = k + 1 < len(E) and k + 1 < len(D) and E[k] != 0 and D[k + 1] != 0
            val = E[k + 1] * D[k] / (E[k] * D[k + 1]) if ok else None
        else:
            k = idx // 2        # alpha_{2k} = D_{k+1} E_{k-1} / (D_k E_k)
            ok = k + 1 < len(D) and k < len(E) and D[k] != 0 and E[k] != 0
            val = D[k + 1] * E[k - 1] / (D[k] * E[k]) if ok else None
        if val is None:
            return ContinuedFraction(
                tuple(_sfraction_peel(c, depth, name)), name, depth)
        alphas.append(val)
    return ContinuedFraction(tuple(alphas), name, depth)


def expand_sfraction(cf: ContinuedFraction, nterms: int):
    """Power-series coefficients of the truncated fraction (exact)."""
    F = [Fraction(1)] + [Fraction(0)] * (nterms - 1)
    for a in reversed(cf.alphas[1:]):
        G = [Fraction(1)] + [Fraction(0)] * (nterms - 1)
        for i in range(1, nterms):
            G[i] = a * sum(F[j] * G[i - 1 - j] for j in range(i))
        F = G
    return [cf.alphas[0] * v for v in F]


# ---------------------------------------------------------------------------
# lower bounds

def logconvex_bound(series):
    """Best ratio over the exact range: a growth lower bound for log-convex
    sequences. Returns (value, n_at_max)."""
    c = _coeffs_of(series)
    if any(x <= 0 for x in c):
        raise ValueError("log-convexity bound needs positive coefficients")
    off = series.offset if isinstance(series, ExactSeries) else 0
    best, best_n = None, None
    for i in range(1, len(c)):
        r = c[i] / c[i - 1]
        if best is None or r > best:
            best, best_n = r, off + i
    return to_mpf(best), best_n


@dataclass(frozen=True)
class BoundSequence:
    """Tail-substitution bounds b_n = (sqrt(a_n) + sqrt(a_{n-1}))^2."""
    values: tuple            # (n, mpf) pairs
    monotonicity_violations: tuple  # alpha indices where parity chains dip
    bound: mp.mpf            # max over n
    bound_at: int

    def value_at(self, n):
        for m, v in self.values:
            if m == n:
                return v
        raise KeyError(n)


def hhr_bounds(cf: ContinuedFraction) -> BoundSequence:
    """Growth lower bounds from constant continued-fraction tails.

    Valid for Stieltjes sequences whose even- and odd-indexed alphas are
    non-decreasing; observed dips are reported, not silently accepted.
    """
    neg = [i for i, a in enumerate(cf.alphas) if a < 0]
    if neg:
        raise ValueError(
            f"{cf.source}: alpha_{neg[0]} < 0, not a Stieltjes sequence at "
            f"depth {cf.depth}")
    roots = [mp.sqrt(to_mpf(a)) for a in cf.alphas]
    values = []
    for n in range(1, len(roots)):
        values.append((n, (roots[n] + roots[n - 1]) ** 2))
    viol = tuple(i for i in range(2, len(cf.alphas))
                 if cf.alphas[i] < cf.alphas[i - 2])
    best_n, best = max(values, key=lambda t: t[1])
    return BoundSequence(tuple(values), viol, best, best_n)


def bound_beta(theta) -> Fraction:
    """Extrapolation exponent for the bound sequence: beta = 2*theta/(2-theta).

    theta is the power of the leading 1/n^theta correction in the ratios
    (1 for a pure power law, 1 - sigma with a stretched exponential).
    """
    th = Fraction(theta)
    if not 0 < th <= 1:
        raise ValueError("theta must lie in (0, 1]")
    return 2 * th / (2 - th)

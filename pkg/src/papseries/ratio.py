"""Ratio-method estimators for power-law asymptotics.

Every operation consumes and produces sequences of (n, value) pairs, so
gaps from skipped indices never silently shift alignment. Values may be
exact (int/Fraction) or mpf; formulas preserve exactness when fed exact
input, which the cancellation tests rely on.

For coefficients c_n ~ C mu^n n^g the ratios r_n = c_n/c_{n-1} behave like
mu (1 + g/n + ...); the intercept ladder removes successive inverse powers
of n, and the remaining estimators trade knowledge of one parameter
(growth constant or exponent) for per-n estimates of the other.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .linalg import fit_least_squares
from .precision import is_exact, to_mpf


@dataclass(frozen=True)
class EstimatorSeq:
    """Labelled estimator values with their n-index and plot abscissa.

    abscissa_power p suggests plotting values against n^{-p};
    first_predicted marks where predicted-tail input begins (if anywhere);
    gaps lists indices skipped by the producing estimator.
    """
    label: str
    points: tuple        # ((n, value), ...), n strictly increasing
    abscissa_power: float = 1.0
    first_predicted: int | None = None
    gaps: tuple = ()

    def __post_init__(self):
        ns = [n for n, _ in self.points]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("estimator indices must be strictly increasing")

    def ns(self):
        return [n for n, _ in self.points]

    def values(self):
        return [v for _, v in self.points]

    def tail(self, count):
        return EstimatorSeq(self.label, self.points[-count:],
                            self.abscissa_power, self.first_predicted, self.gaps)

    def plot_columns(self):
        """Two-column (n^{-p}, value) rows, ready for plotting."""
        p = self.abscissa_power
        return [(to_mpf(n) ** (-p), to_mpf(v)) for n, v in self.points]


def _points_of(seq):
    if isinstance(seq, EstimatorSeq):
        return list(seq.points)
    return [(int(n), v) for n, v in seq]


def _first_predicted(seq):
    return seq.first_predicted if isinstance(seq, EstimatorSeq) else None


def _div(a, b):
    if is_exact(a) and is_exact(b):
        return Fraction(a) / Fraction(b)
    return to_mpf(a) / to_mpf(b)


def modified_ratios(r) -> EstimatorSeq:
    """r2_n = (n^2 r_n - (n-1)^2 r_{n-1}) / (2n): removes the 1/n^2 term.

    Linearity of r2_n against 1/n is the signature of a pure power law
    whose 1/n^2 ratio correction merely dominates at small n.
    """
    pts = _points_of(r)
    out = []
    for (n0, r0), (n1, r1) in zip(pts, pts[1:]):
        if n1 != n0 + 1:
            continue
        out.append((n1, _div(n1 * n1 * r1 - n0 * n0 * r0, 2 * n1)))
    return EstimatorSeq("modified_ratios", tuple(out), 1.0, _first_predicted(r))


_INTERCEPT_DENOMS = {
    2: lambda n: 2 * n - 1,
    3: lambda n: 3 * n * n - 3 * n + 1,
}


def intercepts(r, level: int) -> EstimatorSeq:
    """Intercept ladder: each level annihilates one more inverse power.

    level 1: l_n  = n r_n - (n-1) r_{n-1}
    level 2: l2_n = (n^2 l_n - (n-1)^2 l_{n-1}) / (2n - 1)
    level 3: l3_n = (n^3 l2_n - (n-1)^3 l2_{n-1}) / (3n^2 - 3n + 1)
    """
    if level not in (1, 2, 3):
        raise ValueError("level must be 1, 2 or 3")
    pts = _points_of(r)
    fp = _first_predicted(r)
    for lev in range(1, level + 1):
        out = []
        for (n0, x0), (n1, x1) in zip(pts, pts[1:]):
            if n1 != n0 + 1:
                continue
            if lev == 1:
                out.append((n1, n1 * x1 - n0 * x0))
            else:
                num = n1 ** lev * x1 - n0 ** lev * x0
                out.append((n1, _div(num, _INTERCEPT_DENOMS[lev](n1))))
        pts = out
    return EstimatorSeq(f"intercepts_l{level}", tuple(pts),
                        float(level + 1), fp)


def exponent_given_growth(r, z_c) -> EstimatorSeq:
    """Exponent estimates n (z_c r_n - 1) + 1 when the radius z_c is known;
    the limit is gamma = g + 1 in c_n ~ C mu^n n^g."""
    if not z_c > 0:
        raise ValueError("z_c must be positive")
    pts = _points_of(r)
    out = [(n, n * (z_c * v - 1) + 1) for n, v in pts]
    return EstimatorSeq("exponent_given_growth", tuple(out), 1.0,
                        _first_predicted(r))


def exponent_estimates(r) -> EstimatorSeq:
    """Exponent estimates 1 + n^2 (1 - r_n/r_{n-1}) needing no radius."""
    pts = _points_of(r)
    out = []
    for (n0, r0), (n1, r1) in zip(pts, pts[1:]):
        if n1 != n0 + 1 or r0 == 0:
            continue
        out.append((n1, 1 + n1 * n1 * (1 - _div(r1, r0))))
    if not out and len(pts) >= 2:
        raise ValueError("zero ratio: exponent estimator undefined")
    return EstimatorSeq("exponent_estimates", tuple(out), 1.0,
                        _first_predicted(r))


def growth_given_exponent(r, gamma) -> EstimatorSeq:
    """Growth estimates n r_n / (n + gamma - 1) when the exponent is known."""
    pts = _points_of(r)
    out, gaps = [], []
    for n, v in pts:
        den = n + gamma - 1
        if den == 0:
            gaps.append(n)
            continue
        out.append((n, _div(n * v, den)))
    return EstimatorSeq("growth_given_exponent", tuple(out), 2.0,
                        _first_predicted(r), tuple(gaps))


def divergence_test(r) -> EstimatorSeq:
    """n^2 (r_n/r_{n-1} - 1): bounded (limit -g) for a pure power law,
    diverging like n^sigma when a stretched-exponential term is present."""
    pts = _points_of(r)
    out = []
    for (n0, r0), (n1, r1) in zip(pts, pts[1:]):
        if n1 != n0 + 1 or r0 == 0:
            continue
        out.append((n1, n1 * n1 * (_div(r1, r0) - 1)))
    return EstimatorSeq("divergence_test", tuple(out), 1.0, _first_predicted(r))


def correction_exponent(r, mu, g) -> EstimatorSeq:
    """Local exponent of the sub-leading ratio correction beyond g/n.

    For r_n = mu (1 + g/n + h/n^{1+Delta} + ...) the log-log gradient of
    |(r_n/mu - 1) n - g| is -Delta; the negated gradient is returned, so a
    pure power law (with its h/n^2 term) gives Delta -> 1.
    """
    pts = _points_of(r)
    mu = to_mpf(mu)
    g = to_mpf(g)
    vals, gaps = [], []
    for n, v in pts:
        x = (to_mpf(v) / mu - 1) * n - g
        if x == 0:
            gaps.append(n)
            continue
        vals.append((n, mp.log(abs(x))))
    out = []
    for (n0, y0), (n1, y1) in zip(vals, vals[1:]):
        if n1 != n0 + 1:
            continue
        grad = (y1 - y0) / (mp.log(n1) - mp.log(n0))
        out.append((n1, -grad))
    return EstimatorSeq("correction_exponent", tuple(out), 1.0,
                        _first_predicted(r), tuple(gaps))


@dataclass(frozen=True)
class TailFit:
    """Straight-line extrapolation of an estimator tail against n^{-p}."""
    intercept: mp.mpf
    slope: mp.mpf
    residual: mp.mpf
    window: int
    abscissa_power: float


def extrapolate_tail(seq, p=None, window: int | None = None) -> TailFit:
    """Least-squares line through the last `window` points vs n^{-p}.

    The intercept at n^{-p} = 0 is the n -> infinity estimate. Default
    window: last 10 points or half the sequence, whichever is smaller.
    """
    pts = _points_of(seq)
    if p is None:
        p = seq.abscissa_power if isinstance(seq, EstimatorSeq) else 1.0
    if window is None:
        window = min(10, max(2, len(pts) // 2))
    if window < 2:
        raise ValueError("window must cover at least 2 points")
    if len(pts) < window:
        raise ValueError(f"sequence shorter than window {window}")
    tail = pts[-window:]
    xs = [to_mpf(n) ** to_mpf(-p) for n, _ in tail]
    if len({mp.nstr(x, 25) for x in xs}) < 2:
        raise ValueError("degenerate abscissae in extrapolation window")
    ys = [to_mpf(v) for _, v in tail]
    (c0, c1), resid = fit_least_squares(xs, ys, [lambda x: 1, lambda x: x])
    return TailFit(c0, c1, resid, window, float(p))

"""Estimators for stretched-exponential asymptotics.

Target form: c_n ~ C mu^n mu1^{n^sigma} n^g with 0 < sigma < 1 and
(in the cases met here) mu1 < 1. The ratio expansion then carries a
1/n^{1-sigma} correction ahead of the usual 1/n term; the estimators below
recover sigma and mu1 from that correction, with and without knowledge of
mu. Estimators operating on linear intercepts l_n instead of raw ratios
are the default when mu is known: the intercepts cancel the competing g/n
term, which otherwise contaminates the local gradients badly when
sigma log(mu1) is small against g.

Local gradients are adjacent-point differences of logs, unsmoothed, for
reproducibility.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from .precision import to_mpf
from .ratio import EstimatorSeq, _first_predicted, _points_of, intercepts
from .series import ExactSeries


def ratio_expansion(mu, mu1, sigma, g, n):
    """Truncated ratio r_n for the stretched form, at the printed order.

    sigma = 1/2, 1/3, 1/4 use their specialized truncations; other sigma
    use the generic expansion through its displayed terms. With mu1 = 1 the
    stretched term vanishes and the expansion reduces to mu (1 + g/n).
    """
    sig = Fraction(sigma)
    if not 0 < sig < 1:
        raise ValueError("sigma must lie in (0, 1)")
    mu = to_mpf(mu)
    L = mp.log(to_mpf(mu1))
    g = to_mpf(g)
    n = to_mpf(n)
    s = to_mpf(sig)
    if sig == Fraction(1, 2):
        corr = (L / (2 * mp.sqrt(n))
                + (g + L ** 2 / 8) / n
                + (L ** 3 + (6 + 24 * g) * L) / (48 * n ** mp.mpf("1.5")))
    elif sig == Fraction(1, 3):
        corr = (L / (3 * n ** (mp.mpf(2) / 3))
                + g / n
                + L ** 2 / (18 * n ** (mp.mpf(4) / 3))
                + (2 + 6 * g) * L / (18 * n ** (mp.mpf(5) / 3)))
    elif sig == Fraction(1, 4):
        corr = (L / (4 * n ** mp.mpf("0.75"))
                + g / n
                + L ** 2 / (32 * n ** mp.mpf("1.5"))
                + (3 + 8 * g) * L / (32 * n ** mp.mpf("1.75")))
    else:
        corr = (s * L / n ** (1 - s)
                + g / n
                + s ** 2 * L ** 2 / (2 * n ** (2 - 2 * s))
                + ((s - s ** 2) * L + 2 * g * s * L) / (2 * n ** (2 - s))
                + s ** 3 * L ** 3 / (6 * n ** (3 - 3 * s)))
    return mu * (1 + corr)


def stretched_intercepts(r, level: int) -> EstimatorSeq:
    """Intercept ladder shared with the power-law analysis.

    Same formulas; under a stretched term the leading correction of the
    level-1 intercepts becomes sigma (sigma-1) log(mu1) / n^{1-sigma} and
    of the level-2 intercepts sigma^2 (sigma-1) log(mu1) / (2 n^{1-sigma}),
    so the natural abscissa is n^{-(1-sigma)} rather than n^{-(level+1)}.
    """
    if level not in (1, 2):
        raise ValueError("level must be 1 or 2")
    return intercepts(r, level)


def _log_gradient(points, transform, label, fp):
    vals, gaps = [], []
    for n, v in points:
        y = transform(n, v)
        if y is None:
            gaps.append(n)
            continue
        vals.append((n, y))
    out = []
    for (n0, y0), (n1, y1) in zip(vals, vals[1:]):
        if n1 != n0 + 1:
            continue
        out.append((n1, (y1 - y0) / (mp.log(n1) - mp.log(n0))))
    return out, gaps


def sigma_known_mu(x, mu, method: str = "gradient_log_ratio") -> EstimatorSeq:
    """Stretch-exponent estimates given the growth constant.

    gradient_log_ratio: 1 + local gradient of log|x_n/mu - 1| vs log n,
    where x is the ratio or (preferably) linear-intercept sequence.
    gradient_log_diff: 1 + local gradient of log|log(x_n/mu)| vs log n,
    i.e. the coefficient-difference form d_n = log(b_n/mu^n) -
    log(b_{n-1}/mu^{n-1}) = log(r_n/mu).

    Both tend to sigma; on pure power-law input they tend to 0, flagging
    the absence of a stretched term. Suggested extrapolation abscissa is
    n^{-sigma} with any approximate sigma.
    """
    mu = to_mpf(mu)
    pts = _points_of(x)
    if method == "gradient_log_ratio":
        def tr(n, v):
            d = to_mpf(v) / mu - 1
            return None if d == 0 else mp.log(abs(d))
    elif method == "gradient_log_diff":
        def tr(n, v):
            d = mp.log(to_mpf(v) / mu)
            return None if d == 0 else mp.log(abs(d))
    else:
        raise ValueError(f"unknown method {method!r}")
    out, gaps = _log_gradient(pts, tr, method, None)
    pts_out = [(n, 1 + v) for n, v in out]
    return EstimatorSeq(f"sigma_known_mu[{method}]", tuple(pts_out), 0.5,
                        _first_predicted(x), tuple(gaps))


def sigma_unknown_mu(series_or_ratios, method: str = "ratio_of_ratios") -> EstimatorSeq:
    """Stretch-exponent estimates without the growth constant.

    ratio_of_ratios: local gradient of log(r_n/r_{n-1} - 1) vs log n tends
    to sigma - 2. root_ratio: the same with a_n^{1/n}/a_{n-1}^{1/(n-1)} - 1.
    Pure power-law input reads as sigma = 0 (gradient -> -2). Returned
    values are the gradients + 2, i.e. direct sigma estimates.
    """
    if method == "ratio_of_ratios":
        pts = _points_of(series_or_ratios)
        seq = []
        for (n0, r0), (n1, r1) in zip(pts, pts[1:]):
            if n1 != n0 + 1:
                continue
            seq.append((n1, to_mpf(r1) / to_mpf(r0) - 1))
        fp = _first_predicted(series_or_ratios)
    elif method == "root_ratio":
        if not isinstance(series_or_ratios, ExactSeries):
            raise TypeError("root_ratio needs the coefficient series")
        s = series_or_ratios
        seq = []
        prev = None
        for i, c in enumerate(s.coeffs):
            n = s.offset + i
            if n <= 0 or c <= 0:
                prev = None
                continue
            root = mp.exp(mp.log(to_mpf(c)) / n)
            if prev is not None and prev[0] == n - 1:
                seq.append((n, root / prev[1] - 1))
            prev = (n, root)
        fp = None
    else:
        raise ValueError(f"unknown method {method!r}")

    def tr(n, v):
        return None if v <= 0 else mp.log(v)

    out, gaps = _log_gradient(seq, tr, method, fp)
    pts_out = [(n, v + 2) for n, v in out]
    return EstimatorSeq(f"sigma_unknown_mu[{method}]", tuple(pts_out), 0.5,
                        fp, tuple(gaps))


def mu1_estimate(r, mu, sigma) -> EstimatorSeq:
    """(r_n/mu - 1) n^{1-sigma}, whose limit is sigma log(mu1).

    The sub-leading correction is g/n^sigma, so extrapolate against
    n^{-sigma}. Use mu1_from_limit to convert an extrapolated limit.
    """
    sig = to_mpf(Fraction(sigma))
    mu = to_mpf(mu)
    pts = _points_of(r)
    out = [(n, (to_mpf(v) / mu - 1) * to_mpf(n) ** (1 - sig)) for n, v in pts]
    return EstimatorSeq("mu1_estimate", tuple(out), float(Fraction(sigma)),
                        _first_predicted(r))


def mu1_from_limit(limit, sigma):
    """Convert an extrapolated sigma*log(mu1) value to mu1."""
    return mp.exp(to_mpf(limit) / to_mpf(Fraction(sigma)))

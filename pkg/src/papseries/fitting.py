"""Sliding-window linear fits mapping coefficient/ratio windows to
asymptotic parameters.

Each fit solves an exactly-determined linear system on w consecutive data
points, advances the window start by one, and records the per-window
parameter estimates indexed by the window's last n. Windows are solved
independently from window data alone, so dropping early data points leaves
all later windows bit-identical. Exact rational solves are used when the
window data is exact, mpf otherwise. Extrapolation of the resulting traces
is left to ratio.extrapolate_tail; nothing here averages across windows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .linalg import SingularMatrixError, solve_exact, solve_float
from .precision import is_exact, to_mpf
from .ratio import EstimatorSeq, _points_of
from .series import ExactSeries


@dataclass(frozen=True)
class AsymptoticModel:
    """Fitted asymptotic parameters with per-field uncertainties.

    Power-law model iff mu1 is None; z_c = 1/mu is the radius of
    convergence implied by the growth constant.
    """
    mu: object
    g: object = None
    mu1: object = None
    sigma: object = None
    amplitude: object = None
    uncertainty: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if not to_mpf(self.mu) > 0:
            raise ValueError("mu must be positive")
        if self.mu1 is not None and not to_mpf(self.mu1) > 0:
            raise ValueError("mu1 must be positive when present")
        if self.sigma is not None and not 0 < Fraction(self.sigma) < 1:
            raise ValueError("sigma must lie in (0, 1)")

    @property
    def z_c(self):
        return 1 / to_mpf(self.mu)

    @property
    def is_power_law(self):
        return self.mu1 is None

    def ratio_at(self, n):
        """Ratio predicted by the fitted model at index n."""
        from .stretched import ratio_expansion
        if self.is_power_law:
            mu = to_mpf(self.mu)
            g = to_mpf(self.g if self.g is not None else 0)
            h = to_mpf(self.provenance.get("h", 0))
            j = to_mpf(self.provenance.get("j", 0))
            n = to_mpf(n)
            return mu * (1 + g / n + h / n ** 2 + j / n ** 3)
        return ratio_expansion(self.mu, self.mu1, self.sigma,
                               self.g if self.g is not None else 0, n)


@dataclass(frozen=True)
class FitTrace:
    """Per-window parameter estimates, indexed by window end n."""
    label: str
    params: tuple                  # parameter names, in solve order
    rows: tuple                    # ((n_end, (values...)), ...)
    skipped: tuple = ()            # window ends skipped as singular
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        ns = [n for n, _ in self.rows]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("window indices must be strictly increasing")

    def series(self, param) -> EstimatorSeq:
        i = self.params.index(param)
        pts = tuple((n, vals[i]) for n, vals in self.rows)
        return EstimatorSeq(f"{self.label}.{param}", pts,
                            self.meta.get("abscissa", {}).get(param, 1.0))

    def to_csv(self) -> str:
        head = "window_end_n," + ",".join(self.params)
        lines = [head]
        for n, vals in self.rows:
            lines.append(f"{n}," + ",".join(
                str(v) if is_exact(v) else mp.nstr(to_mpf(v), 25) for v in vals))
        return "\n".join(lines)


def _solve_windows(label, params, points, basis_fn, rhs_fn, meta=None):
    """Slide an exactly-determined window over (n, value) points.

    basis_fn(n) gives the row of basis values; rhs_fn(n, v) the right-hand
    side. Window width = len(params). Singular windows are skipped and
    recorded.
    """
    w = len(params)
    rows, skipped = [], []
    for i in range(len(points) - w + 1):
        win = points[i:i + w]
        if [n for n, _ in win] != list(range(win[0][0], win[0][0] + w)):
            continue
        A = [basis_fn(n) for n, _ in win]
        b = [rhs_fn(n, v) for n, v in win]
        exact = (all(is_exact(x) for row in A for x in row)
                 and all(is_exact(x) for x in b))
        try:
            sol = solve_exact(A, b) if exact else solve_float(A, b)
        except SingularMatrixError:
            skipped.append(win[-1][0])
            continue
        rows.append((win[-1][0], tuple(sol)))
    return FitTrace(label, tuple(params), tuple(rows), tuple(skipped),
                    meta or {})


def _log_coeff_points(series: ExactSeries, include_tail=True):
    """(k, log b_k) points from an exact series plus any predicted tail."""
    pts = []
    for i, c in enumerate(series.coeffs):
        k = series.offset + i
        if k == 0:
            continue
        if c <= 0:
            raise ValueError("log fits need positive coefficients")
        pts.append((k, mp.log(to_mpf(c))))
    if include_tail:
        k0 = series.last_exact_n + 1
        for j, (v, _u) in enumerate(series.tail):
            pts.append((k0 + j, mp.log(to_mpf(v))))
    return pts


def fit_log_coeffs_4pt(series: ExactSeries, sigma) -> FitTrace:
    """4-point fit of log b_k = c1 k + c2 k^sigma + c3 log k + c4.

    Parameter map: c1 -> log mu, c2 -> log mu1, c3 -> g, c4 -> log C.
    """
    sig = to_mpf(Fraction(sigma))
    pts = _log_coeff_points(series)

    def basis(k):
        kk = to_mpf(k)
        return [kk, kk ** sig, mp.log(kk), mp.mpf(1)]

    return _solve_windows(
        "fit_log_coeffs_4pt", ("log_mu", "log_mu1", "g", "log_C"),
        pts, basis, lambda k, v: v,
        meta={"sigma": str(Fraction(sigma)),
              "abscissa": {"log_mu1": 0.5, "g": 0.5, "log_C": 0.5}})


def fit_log_coeffs_3pt(series: ExactSeries, mu, sigma) -> FitTrace:
    """3-point fit of log b_k - k log mu = c1 k^sigma + c2 log k + c3.

    Parameter map: c1 -> log mu1, c2 -> g, c3 -> log C.
    """
    sig = to_mpf(Fraction(sigma))
    logmu = mp.log(to_mpf(mu))
    pts = _log_coeff_points(series)

    def basis(k):
        kk = to_mpf(k)
        return [kk ** sig, mp.log(kk), mp.mpf(1)]

    return _solve_windows(
        "fit_log_coeffs_3pt", ("log_mu1", "g", "log_C"),
        pts, basis, lambda k, v: v - k * logmu,
        meta={"sigma": str(Fraction(sigma)),
              "abscissa": {"log_mu1": 1.5, "g": 1.5, "log_C": 2.5}})


def fit_ratios_4pt(r, sigma) -> FitTrace:
    """4-point ratio fit r_n = c1 + c2/n^{1-sigma} + c3/n + c4/n^{2-2sigma}.

    Parameter map: c1 -> mu, c2 -> mu sigma log(mu1), c3 -> mu g,
    c4 -> mu sigma^2 log^2(mu1)/2. At sigma = 1/2 two of the basis
    elements coincide, so the basis {1, n^{-1/2}, 1/n, n^{-3/2}} replaces
    it; c3 then estimates mu (g + log^2(mu1)/8) and the caller solves for
    g (metadata records the substitution).
    """
    sig = Fraction(sigma)
    pts = _points_of(r)
    degenerate = sig == Fraction(1, 2)
    e1 = to_mpf(1 - sig)
    e2 = to_mpf(Fraction(3, 2)) if degenerate else to_mpf(2 - 2 * sig)

    def basis(n):
        nn = to_mpf(n)
        return [mp.mpf(1), nn ** -e1, 1 / nn, nn ** -e2]

    meta = {"sigma": str(sig),
            "abscissa": {"mu": 2.0, "c2": 1.0, "c3": 1.0, "c4": 1.0}}
    if degenerate:
        meta["basis_substitution"] = (
            "sigma=1/2 merges 1/n^{2-2sigma} with 1/n; using n^{-3/2}; "
            "c3 estimates mu*(g + log(mu1)^2/8)")
    return _solve_windows("fit_ratios_4pt", ("mu", "c2", "c3", "c4"),
                          pts, basis, lambda n, v: to_mpf(v), meta)


def fit_ratios_powerlaw(r) -> FitTrace:
    """4-point fit of r_n = mu (1 + g/n + h/n^2 + j/n^3).

    Returned parameters are mu, mu*g, mu*h, mu*j (the linear unknowns).
    """
    pts = _points_of(r)

    def basis(n):
        one = Fraction(1) if all(is_exact(v) for _, v in pts) else mp.mpf(1)
        nn = Fraction(n) if isinstance(one, Fraction) else to_mpf(n)
        return [one, one / nn, one / nn ** 2, one / nn ** 3]

    return _solve_windows(
        "fit_ratios_powerlaw", ("mu", "mu_g", "mu_h", "mu_j"),
        pts, basis, lambda n, v: v,
        meta={"abscissa": {"mu": 3.0, "mu_g": 1.5, "mu_h": 1.0, "mu_j": 1.0}})


def fit_ratios_3param(r, mu, sigma) -> FitTrace:
    """3-point fit of r_n - mu = c1/n^{1-sigma} + c2/n + c3/n^{2-2sigma}.

    Parameter map: c1 -> mu sigma log(mu1), c2 -> mu g, c3 -> mu sigma^2
    log^2(mu1)/2, with the same sigma = 1/2 basis substitution as the
    4-point ratio fit.
    """
    sig = Fraction(sigma)
    mu = to_mpf(mu)
    pts = _points_of(r)
    degenerate = sig == Fraction(1, 2)
    e1 = to_mpf(1 - sig)
    e2 = to_mpf(Fraction(3, 2)) if degenerate else to_mpf(2 - 2 * sig)

    def basis(n):
        nn = to_mpf(n)
        return [nn ** -e1, 1 / nn, nn ** -e2]

    meta = {"sigma": str(sig), "mu": mp.nstr(mu, 20),
            "abscissa": {"c1": 1.0, "c2": 1.0, "c3": 1.0}}
    if degenerate:
        meta["basis_substitution"] = (
            "sigma=1/2 merges 1/n^{2-2sigma} with 1/n; using n^{-3/2}; "
            "c2 estimates mu*(g + log(mu1)^2/8)")
    return _solve_windows("fit_ratios_3param", ("c1", "c2", "c3"),
                          pts, basis, lambda n, v: to_mpf(v) - mu, meta)


def fit_amplitude(series: ExactSeries, g) -> FitTrace:
    """3-point fit of log b_k - g log k = c1 k + c2 + c3/k for known g.

    Parameter map: c1 -> log mu, c2 -> log C.
    """
    g = to_mpf(g)
    pts = _log_coeff_points(series)

    def basis(k):
        kk = to_mpf(k)
        return [kk, mp.mpf(1), 1 / kk]

    return _solve_windows(
        "fit_amplitude", ("log_mu", "log_C", "c3"),
        pts, basis, lambda k, v: v - g * mp.log(to_mpf(k)),
        meta={"g": mp.nstr(g, 15), "abscissa": {"log_mu": 2.0, "log_C": 1.0}})


def amplitude_direct(series: ExactSeries, mu, g) -> EstimatorSeq:
    """Simple amplitude estimators C_n = b_n n^{-g} / mu^n."""
    mu = to_mpf(mu)
    g = to_mpf(g)
    pts = []
    for i, c in enumerate(series.coeffs):
        n = series.offset + i
        if n == 0:
            continue
        pts.append((n, to_mpf(c) * to_mpf(n) ** (-g) / mu ** n))
    k0 = series.last_exact_n + 1
    for j, (v, _u) in enumerate(series.tail):
        n = k0 + j
        pts.append((n, to_mpf(v) * to_mpf(n) ** (-g) / mu ** n))
    fp = series.last_exact_n + 1 if series.tail else None
    return EstimatorSeq("amplitude_direct", tuple(pts), 1.0, fp)

"""End-to-end analysis pipelines combining extension, ratio estimators,
direct fits and moment bounds into one report.

The report is diagnostic, not a verdict: every numeric field carries the
estimator it came from and the window/abscissa used, and competing
estimates are reported side by side. Deciding between power-law and
stretched behaviour stays with the caller, as does the choice of sigma.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from . import dapprox, fitting, ratio, stieltjes, stretched
from .precision import to_mpf
from .ratio import EstimatorSeq, extrapolate_tail
from .series import ExactSeries, first_predicted_index, ratios as series_ratios


@dataclass
class AnalysisReport:
    series: str
    mode: str
    settings: dict
    estimates: dict = field(default_factory=dict)   # name -> {value, ...}
    diagnostics: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    extension: dict = field(default_factory=dict)
    estimator_sequences: list = field(default_factory=list)

    def add_estimate(self, name, value, source, window=None, abscissa=None,
                     uncertainty=None):
        entry = {"value": _num(value), "estimator": source}
        if window is not None:
            entry["window"] = window
        if abscissa is not None:
            entry["abscissa_power"] = float(abscissa)
        if uncertainty is not None:
            entry["uncertainty"] = _num(uncertainty)
        self.estimates[name] = entry

    def to_dict(self):
        return {
            "series": self.series,
            "mode": self.mode,
            "settings": self.settings,
            "estimates": self.estimates,
            "diagnostics": self.diagnostics,
            "bounds": self.bounds,
            "extension": self.extension,
        }


def _num(x, digits=20):
    if x is None:
        return None
    if isinstance(x, (int, float)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    return mp.nstr(to_mpf(x), digits)


def _tailfit(report, seq, p, window, name, source):
    fit = extrapolate_tail(seq, p=p, window=window)
    report.add_estimate(name, fit.intercept, source, window=fit.window,
                        abscissa=fit.abscissa_power,
                        uncertainty=fit.residual)
    return fit


def extend_if_requested(series: ExactSeries, count, orders=(2, 3)):
    if not count:
        return series, None
    ens = dapprox.extend_series(series, count, orders=orders)
    ext = series.with_tail(ens.predicted_tail(), ens.predicted_ratio_tail())
    return ext, ens


def _ratio_seq(series: ExactSeries) -> EstimatorSeq:
    pts = series_ratios(series)
    return EstimatorSeq("ratios", tuple(pts), 1.0,
                        first_predicted_index(series))


def bounds_report(series: ExactSeries, theta=1) -> dict:
    lc, lc_n = stieltjes.logconvex_bound(series)
    cf = stieltjes.sfraction(series)
    hb = stieltjes.hhr_bounds(cf)
    beta = stieltjes.bound_beta(theta)
    seq = EstimatorSeq("tail_substitution_bounds", hb.values, float(beta))
    try:
        fit = extrapolate_tail(seq, p=float(beta))
        extrapolated = {"value": _num(fit.intercept), "abscissa_power": float(beta),
                        "window": fit.window}
    except ValueError:
        extrapolated = None
    hankel = stieltjes.hankel_check(series)
    return {
        "log_convexity": {"value": _num(lc), "at_n": lc_n},
        "tail_substitution": {
            "value": _num(hb.bound), "at_n": hb.bound_at,
            "depth": cf.depth,
            "monotonicity_violations": list(hb.monotonicity_violations),
            "sequence": [(n, _num(v)) for n, v in hb.values],
        },
        "extrapolated": extrapolated,
        "hankel_all_positive": hankel.all_positive,
        "stieltjes_status": ("proven" if series.name == "Av(12345)"
                             else "conjectural (observed positivity)"),
    }


def analyze_powerlaw(series: ExactSeries, extend_count=0, g_conjectured=None,
                     window=10) -> AnalysisReport:
    """Power-law pipeline: intercept ladder, exponent ladder, 4-point ratio
    fit, and (given a conjectured exponent) amplitude fits."""
    ext, ens = extend_if_requested(series, extend_count)
    rep = AnalysisReport(series.name, "powerlaw",
                         {"extend": extend_count, "window": window})
    r = _ratio_seq(ext)
    rep.estimator_sequences.append(r)

    l2 = ratio.intercepts(r, 2)
    l3 = ratio.intercepts(r, 3)
    rep.estimator_sequences += [l2, l3]
    f2 = _tailfit(rep, l2, 3.0, window, "mu_quadratic", "quadratic intercepts vs n^-3")
    f3 = _tailfit(rep, l3, 4.0, window, "mu_cubic", "cubic intercepts vs n^-4")
    mu_hat = (f2.intercept + f3.intercept) / 2
    rep.add_estimate("mu", mu_hat, "mean of quadratic/cubic intercept extrapolations",
                     uncertainty=abs(f2.intercept - f3.intercept) / 2 + f2.residual)

    # exponent with mu assumed: g_n = n (r_n/mu - 1), then linear extrapolants
    gpts = tuple((n, n * (to_mpf(v) / mu_hat - 1)) for n, v in r.points)
    gseq = EstimatorSeq("exponent_given_mu", gpts, 1.0, r.first_predicted)
    g2 = ratio.intercepts(gseq, 1)
    rep.estimator_sequences += [gseq, g2]
    fg = _tailfit(rep, g2, 2.0, window, "g_given_mu",
                  "linear extrapolants of n(r_n/mu-1) vs n^-2")
    delta = ratio.exponent_estimates(r)
    rep.estimator_sequences.append(delta)
    fd = _tailfit(rep, delta, 1.0, window, "g_mu_free",
                  "1 + n^2(1 - r_n/r_{n-1}) - 1 shifted; mu-free exponent")
    rep.add_estimate("g", fg.intercept, "exponent ladder given mu",
                     uncertainty=abs(fg.intercept - fd.intercept))

    trace = fitting.fit_ratios_powerlaw(r.points)
    fmu = _tailfit(rep, trace.series("mu"), 3.0, window, "mu_4pt_fit",
                   "4-point power-law ratio fit")
    fmug = _tailfit(rep, trace.series("mu_g"), 1.5, window, "mu_g_4pt_fit",
                    "4-point power-law ratio fit")
    fmuh = _tailfit(rep, trace.series("mu_h"), 1.0, window, "mu_h_4pt_fit",
                    "4-point power-law ratio fit")
    fmuj = _tailfit(rep, trace.series("mu_j"), 1.0, window, "mu_j_4pt_fit",
                    "4-point power-law ratio fit")
    model = fitting.AsymptoticModel(
        mu=fmu.intercept, g=fmug.intercept / fmu.intercept,
        provenance={"h": fmuh.intercept / fmu.intercept,
                    "j": fmuj.intercept / fmu.intercept,
                    "fit": "fit_ratios_powerlaw tail extrapolation"})
    rep.diagnostics["fitted_ratio_at_100"] = _num(model.ratio_at(100))

    div = ratio.divergence_test(r)
    rep.estimator_sequences.append(div)
    fdiv = extrapolate_tail(div, p=1.0, window=window)
    rep.diagnostics["divergence_test_limit"] = _num(fdiv.intercept)
    corr = ratio.correction_exponent(r, mu_hat, fg.intercept)
    rep.estimator_sequences.append(corr)
    if len(corr.points) >= window:
        fc = extrapolate_tail(corr, p=1.0, window=window)
        rep.diagnostics["correction_exponent"] = _num(fc.intercept)

    if g_conjectured is not None:
        amp = fitting.fit_amplitude(ext, g_conjectured)
        fA = _tailfit(rep, amp.series("log_C"), 1.0, window, "log_C",
                      "3-point amplitude fit with conjectured g")
        rep.add_estimate("C", mp.exp(fA.intercept),
                         "exp of extrapolated amplitude-fit log C")
        fAmu = _tailfit(rep, amp.series("log_mu"), 2.0, window, "log_mu_ampfit",
                        "3-point amplitude fit with conjectured g")
        rep.add_estimate("mu_from_amplitude_fit", mp.exp(fAmu.intercept),
                         "exp of extrapolated amplitude-fit log mu")
        direct = fitting.amplitude_direct(ext, mu_hat, g_conjectured)
        rep.estimator_sequences.append(direct)
    if ens is not None:
        rep.extension = extension_summary(ens)
    rep.bounds = bounds_report(series, theta=1)
    return rep


def analyze_stretched(series: ExactSeries, sigma, mu_fixed=None,
                      extend_count=0, window=10) -> AnalysisReport:
    """Stretched pipeline: sigma estimator quartet, mu1, and 3-point fits."""
    sig = Fraction(sigma)
    ext, ens = extend_if_requested(series, extend_count)
    rep = AnalysisReport(series.name, "stretched",
                         {"sigma": str(sig), "mu_fixed": _num(mu_fixed),
                          "extend": extend_count, "window": window})
    r = _ratio_seq(ext)
    l1 = stretched.stretched_intercepts(r, 1)
    l2 = stretched.stretched_intercepts(r, 2)
    rep.estimator_sequences += [r, l1, l2]

    one_minus = float(1 - sig)
    f2 = _tailfit(rep, l2, one_minus, window, "mu_stretched_intercepts",
                  f"quadratic intercepts vs n^-{1 - sig}")
    mu_hat = to_mpf(mu_fixed) if mu_fixed is not None else f2.intercept
    rep.add_estimate("mu", mu_hat,
                     "fixed by caller" if mu_fixed is not None
                     else "quadratic intercepts vs n^-(1-sigma)")

    quartet = [
        stretched.sigma_known_mu(l1, mu_hat, "gradient_log_ratio"),
        stretched.sigma_known_mu(r, mu_hat, "gradient_log_diff"),
        stretched.sigma_unknown_mu(r.points, "ratio_of_ratios"),
        stretched.sigma_unknown_mu(ext, "root_ratio"),
    ]
    sig_f = float(sig)
    for s in quartet:
        rep.estimator_sequences.append(s)
        if len(s.points) >= window:
            fit = extrapolate_tail(s, p=sig_f, window=window)
            rep.diagnostics.setdefault("sigma_estimates", {})[s.label] = \
                _num(fit.intercept)

    m1 = stretched.mu1_estimate(r, mu_hat, sig)
    rep.estimator_sequences.append(m1)
    fm1 = _tailfit(rep, m1, sig_f, window, "sigma_log_mu1",
                   "(r_n/mu - 1) n^{1-sigma} vs n^-sigma")
    rep.add_estimate("mu1", stretched.mu1_from_limit(fm1.intercept, sig),
                     "exp(extrapolated sigma log mu1 / sigma)")

    if mu_fixed is not None:
        t3 = fitting.fit_log_coeffs_3pt(ext, mu_hat, sig)
        fl = _tailfit(rep, t3.series("log_mu1"), 1.5, window, "log_mu1_3pt",
                      "3-point log-coefficient fit")
        fgg = _tailfit(rep, t3.series("g"), 1.5, window, "g_3pt",
                       "3-point log-coefficient fit")
        fC = _tailfit(rep, t3.series("log_C"), 2.5, window, "log_C_3pt",
                      "3-point log-coefficient fit")
        rep.add_estimate("mu1_from_3pt", mp.exp(fl.intercept),
                         "exp of extrapolated 3-point log mu1")
        rep.add_estimate("g", fgg.intercept, "3-point log-coefficient fit")
        rep.add_estimate("C", mp.exp(fC.intercept),
                         "exp of extrapolated 3-point log C")
        tr3 = fitting.fit_ratios_3param(r.points, mu_hat, sig)
        _tailfit(rep, tr3.series("c1"), 1.0, window, "mu_sigma_log_mu1_ratiofit",
                 "3-parameter ratio fit c1")
        _tailfit(rep, tr3.series("c2"), 1.0, window, "mu_g_ratiofit",
                 "3-parameter ratio fit c2")
    else:
        t4 = fitting.fit_ratios_4pt(r.points, sig)
        _tailfit(rep, t4.series("mu"), 2.0, window, "mu_4pt_ratiofit",
                 "4-point stretched ratio fit c1")
        f4c2 = _tailfit(rep, t4.series("c2"), 1.0, window, "mu_sigma_log_mu1_4pt",
                        "4-point stretched ratio fit c2")
        rep.add_estimate("sigma_log_mu1",
                         f4c2.intercept / mu_hat,
                         "4-point ratio fit c2 / mu")

    div = ratio.divergence_test(r)
    rep.estimator_sequences.append(div)
    if ens is not None:
        rep.extension = extension_summary(ens)
    rep.bounds = bounds_report(series, theta=1 - sig)
    return rep


def extension_summary(ens: dapprox.PredictionEnsemble) -> dict:
    live = ens.surviving()
    return {
        "members_total": len(ens.members),
        "members_surviving": len(live),
        "rejections": sorted({m.defect for m in ens.members if m.rejected}),
        "z_c_mean": _num(ens.z_c_mean),
        "z_c_std": _num(ens.z_c_std, 6),
        "exponent_mean": _num(ens.exponent_mean),
        "predicted": len(ens.coeff_mean),
        "first_predicted_n": ens.last_exact_n + 1,
        "agreed_digits_first": ens.agreed_digits[0][1] if ens.agreed_digits else None,
        "agreed_digits_last": ens.agreed_digits[-1][1] if ens.agreed_digits else None,
    }

"""Differential approximants: ODE fitting, singularity estimates, and
series extension.

An order-M approximant fits polynomials Q_0..Q_M (degrees N_0..N_M) and P
(degree L, -1 meaning homogeneous) so that the formal solution of

    sum_k Q_k(z) (z d/dz)^k F(z) = P(z)

matches the first N = L + sum(N_k + 1) series coefficients, under the
normalization Q_M(0) = 1. With theta = z d/dz, theta^k acting on
sum c_n z^n yields sum n^k c_n z^n, so coefficient matching is a linear
system, solved exactly in rational arithmetic.

Singularities of the fitted ODE sit at the zeros z_i of Q_M; at a simple
zero the local solution behaves like (1 - z/z_i)^e with
e = M - 1 - Q_{M-1}(z_i) / (z_i Q_M'(z_i)). Exponents are reported as
gamma = -e, the convention in which the simple pole 1/(1-4z) has gamma =
+1 at z = 1/4 (and (1-3z)^{1/2} has gamma = -1/2).

Ensemble prediction: many approximants over a small config grid each
continue the series past the known terms via the implied recurrence;
defective members (spurious singularity inside the physical radius, or
outlying radius estimates) are rejected; the member mean is the prediction
and the member spread its uncertainty. Predicted coefficients are never
fed back into approximant construction: build_da consumes only the exact
prefix of an ExactSeries, and PredictionEnsemble is not accepted as input.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iter_product

import mpmath as mp

from .linalg import (RootFindingError, SingularMatrixError, poly_derivative,
                     poly_eval, poly_roots, poly_trim, solve_exact)
from .precision import to_mpf
from .series import ExactSeries


class DefectiveConstruction(ValueError):
    """The coefficient-matching system is singular for this config."""


class EmptyEnsemble(RuntimeError):
    """All ensemble members failed or were rejected; widen the config grid."""


@dataclass(frozen=True)
class DAConfig:
    """Approximant shape: ODE order, polynomial degrees, inhomogeneity."""
    order: int
    degrees: tuple
    inhom_degree: int = -1

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if len(self.degrees) != self.order + 1:
            raise ValueError("need order+1 polynomial degrees")
        if self.inhom_degree < -1:
            raise ValueError("inhomogeneous degree must be >= -1")

    @property
    def ncoeffs(self) -> int:
        """Series coefficients consumed (= unknowns after normalization)."""
        return self.inhom_degree + sum(d + 1 for d in self.degrees)

    def key(self):
        return (self.order, self.inhom_degree, self.degrees)


@dataclass(frozen=True)
class DiffApproximant:
    """Solved approximant: polynomial coefficient tuples, ascending degree."""
    qs: tuple          # Q_0..Q_M, each a tuple of Fractions
    p: tuple           # P, empty when homogeneous
    config: DAConfig
    ncoeffs: int       # exact coefficients consumed

    @property
    def order(self):
        return self.config.order


@dataclass(frozen=True)
class SingularityEstimate:
    location: object          # mpc
    exponent: object | None   # mpf/mpc, None when unevaluated
    defective: bool = False
    reason: str = ""


def _exact_coeffs(series) -> list:
    if isinstance(series, ExactSeries):
        return [Fraction(c) for c in series.coeffs]
    if hasattr(series, "members"):
        raise TypeError(
            "predicted ensembles cannot seed approximant construction")
    return [Fraction(c) for c in series]


def build_da(series, config: DAConfig) -> DiffApproximant:
    """Fit the approximant to the first config.ncoeffs coefficients.

    Exact inputs only; the linear system is solved in rational arithmetic.
    Raises DefectiveConstruction when the system is singular (the config
    is skipped in ensembles) and ValueError when coefficients run short.
    """
    c = _exact_coeffs(series)
    N = config.ncoeffs
    if N > len(c):
        raise ValueError(f"config consumes {N} coefficients, have {len(c)}")
    M = config.order
    degs = config.degrees
    L = config.inhom_degree
    unknowns = [(k, j) for k in range(M + 1)
                for j in range(degs[k] + 1) if not (k == M and j == 0)]
    npoly = len(unknowns)
    rows, rhs = [], []
    for n in range(N):
        row = [Fraction(0)] * N
        for idx, (k, j) in enumerate(unknowns):
            if j <= n:
                row[idx] = c[n - j] * (Fraction(n - j) ** k if k else 1)
        for j in range(L + 1):
            if n == j:
                row[npoly + j] = Fraction(-1)
        rows.append(row)
        rhs.append(-c[n] * (Fraction(n) ** M))
    try:
        sol = solve_exact(rows, rhs)
    except SingularMatrixError as exc:
        raise DefectiveConstruction(
            f"singular coefficient matching for {config}") from exc
    qs, pos = [], 0
    for k in range(M + 1):
        q = []
        for j in range(degs[k] + 1):
            if k == M and j == 0:
                q.append(Fraction(1))
            else:
                q.append(sol[pos])
                pos += 1
        qs.append(tuple(q))
    p = tuple(sol[npoly + j] for j in range(L + 1))
    return DiffApproximant(tuple(qs), p, config, N)


def singularities(da: DiffApproximant, digits=None) -> list[SingularityEstimate]:
    """Roots of Q_M with exponents from the indicial formula.

    Exponents are evaluated at simple roots only; clustered roots are
    flagged unevaluated. Ordering follows poly_roots: (|z|, arg).
    """
    qm = poly_trim(da.qs[-1])
    roots = poly_roots(qm, digits=digits, label=f"Q_{da.order} of {da.config}")
    qm1 = da.qs[-2] if da.order >= 1 else (Fraction(0),)
    dqm = poly_derivative(qm)
    out = []
    eps = mp.mpf(10) ** (-(mp.mp.dps // 2))
    for i, z in enumerate(roots):
        near = [w for j, w in enumerate(roots) if j != i and abs(w - z) < eps * max(1, abs(z))]
        if near:
            out.append(SingularityEstimate(z, None, True, "multiple root"))
            continue
        denom = z * poly_eval(dqm, z)
        if denom == 0:
            out.append(SingularityEstimate(z, None, True, "zero indicial factor"))
            continue
        e = (da.order - 1) - poly_eval(qm1, z) / denom
        out.append(SingularityEstimate(z, -e))
    return out


def physical_radius(estimates) -> mp.mpf | None:
    """Modulus of the closest positive-real singularity, if any."""
    cands = [s for s in estimates
             if mp.re(s.location) > 0
             and abs(mp.im(s.location)) < mp.mpf("1e-4") * abs(s.location)]
    if not cands:
        return None
    return min(abs(s.location) for s in cands)


def predict_coefficients(da: DiffApproximant, series, count: int,
                         exact: bool = False) -> list:
    """Continue the series by `count` terms via the implied recurrence.

    For n past the matched range,
    c_n = [p_n - sum_{j>=1} sum_k q_{k,j} (n-j)^k c_{n-j}] / sum_k q_{k,0} n^k;
    the same recurrence reproduces the consumed prefix exactly in exact
    mode. Stops early (partial output) if the leading indicial factor
    vanishes at some index.
    """
    c0 = _exact_coeffs(series)[:da.ncoeffs]
    if exact:
        vals = list(c0)
        qs = da.qs
        p = da.p
        nn = lambda x: Fraction(x)
    else:
        vals = [to_mpf(x) for x in c0]
        qs = [[to_mpf(q) for q in Q] for Q in da.qs]
        p = [to_mpf(x) for x in da.p]
        nn = to_mpf
    M = da.order
    for n in range(len(vals), da.ncoeffs + count):
        lead = sum(qs[k][0] * nn(n) ** k for k in range(M + 1))
        if lead == 0:
            break
        acc = p[n] if n < len(p) else (Fraction(0) if exact else mp.mpf(0))
        for k in range(M + 1):
            Q = qs[k]
            for j in range(1, len(Q)):
                if j > n:
                    break
                if Q[j] != 0:
                    acc -= Q[j] * (nn(n - j) ** k if k else 1) * vals[n - j]
        vals.append(acc / lead)
    return vals


def reproduces_prefix(da: DiffApproximant, series) -> bool:
    """Exact-mode reproduction check of the consumed coefficients."""
    c = _exact_coeffs(series)[:da.ncoeffs]
    got = predict_coefficients(da, series, 0, exact=True)
    return got == c


# ---------------------------------------------------------------------------
# ensembles

def default_grid(ncoeffs: int, orders=(2, 3), inhom=(-1, 0, 1, 2),
                 spread: int = 2) -> list[DAConfig]:
    """All maximal-usage configs: degrees within `spread` of each other,
    consuming exactly ncoeffs coefficients."""
    out = []
    for M in orders:
        for L in inhom:
            tot = ncoeffs - L - (M + 1)
            if tot < M + 1:
                continue
            base = tot // (M + 1)
            lo = max(1, base - spread)
            hi = base + spread
            seen = set()
            for degs in iter_product(range(lo, hi + 1), repeat=M + 1):
                if sum(degs) != tot or max(degs) - min(degs) > spread:
                    continue
                if degs in seen:
                    continue
                seen.add(degs)
                out.append(DAConfig(M, degs, L))
    return sorted(out, key=DAConfig.key)


@dataclass(frozen=True)
class EnsembleMember:
    config: DAConfig
    da: DiffApproximant
    z_c: object                  # mpf, physical radius estimate
    exponent: object | None      # gamma at the physical singularity
    min_root_modulus: object
    defect: str = ""             # non-empty when excluded

    @property
    def rejected(self):
        return bool(self.defect)


@dataclass(frozen=True)
class PredictionEnsemble:
    """Aggregated ensemble prediction beyond the exact range.

    Per-index means/stds for coefficients and (separately) ratios; ratios
    of successive predicted coefficients come out more precise than the
    coefficients themselves, so they are aggregated directly. agreed_digits
    approximates the count of leading digits on which members agree.
    """
    source: str
    last_exact_n: int
    members: tuple               # EnsembleMember, rejected ones included
    coeff_mean: tuple            # (n, mpf)
    coeff_std: tuple
    ratio_mean: tuple
    ratio_std: tuple
    agreed_digits: tuple         # (n, float)
    z_c_mean: object
    z_c_std: object
    exponent_mean: object | None

    def surviving(self):
        return [m for m in self.members if not m.rejected]

    def predicted_tail(self):
        """(value, uncertainty) coefficient pairs for ExactSeries.with_tail."""
        std = dict(self.coeff_std)
        return tuple((v, std[n]) for n, v in self.coeff_mean)

    def predicted_ratio_tail(self):
        std = dict(self.ratio_std)
        return tuple((v, std[n]) for n, v in self.ratio_mean)


def reject_defective(members, radius_slack=0.05, outlier_sigmas=3.0):
    """Flag members with spurious singularities or outlying radii.

    A member is defective when any of its Q_M roots has modulus below
    (1 - radius_slack) times the ensemble's median physical radius, and an
    outlier when its radius estimate sits more than `outlier_sigmas`
    standard deviations from the remainder's mean. Needs >= 3 members.
    """
    live = [m for m in members if not m.rejected]
    if len(live) < 3:
        raise EmptyEnsemble("need at least 3 ensemble members to filter")
    zs = sorted(to_mpf(m.z_c) for m in live)
    median = zs[len(zs) // 2] if len(zs) % 2 else (zs[len(zs) // 2 - 1]
                                                   + zs[len(zs) // 2]) / 2
    thresh = (1 - to_mpf(radius_slack)) * median
    out = []
    for m in members:
        if not m.rejected and to_mpf(m.min_root_modulus) < thresh:
            m = EnsembleMember(m.config, m.da, m.z_c, m.exponent,
                               m.min_root_modulus,
                               "spurious singularity inside physical radius")
        out.append(m)
    live = [m for m in out if not m.rejected]
    if len(live) >= 3:
        mean = mp.fsum(to_mpf(m.z_c) for m in live) / len(live)
        var = mp.fsum((to_mpf(m.z_c) - mean) ** 2 for m in live) / len(live)
        sd = mp.sqrt(var)
        if sd > 0:
            out2 = []
            for m in out:
                if not m.rejected and abs(to_mpf(m.z_c) - mean) > outlier_sigmas * sd:
                    m = EnsembleMember(m.config, m.da, m.z_c, m.exponent,
                                       m.min_root_modulus, "radius outlier")
                out2.append(m)
            out = out2
    if not any(not m.rejected for m in out):
        raise EmptyEnsemble("all ensemble members rejected; widen the grid")
    return out


def extend_series(series: ExactSeries, count: int, grid=None,
                  orders=(2, 3), digits=None) -> PredictionEnsemble:
    """Predict `count` further coefficients and ratios from a config grid.

    Member failures (singular construction, no physical root, vanishing
    indicial factor) become exclusions, not errors; the ensemble fails only
    when nothing survives.
    """
    if not isinstance(series, ExactSeries):
        raise TypeError("extend_series needs an ExactSeries (exact prefix only)")
    if grid is None:
        grid = default_grid(len(series.coeffs), orders=orders)
    members = []
    for cfg in grid:
        if cfg.ncoeffs > len(series.coeffs):
            continue
        try:
            da = build_da(series, cfg)
        except DefectiveConstruction:
            continue
        try:
            sings = singularities(da, digits=digits)
        except (RootFindingError, ValueError):
            continue
        rad = physical_radius(sings)
        if rad is None:
            members.append(EnsembleMember(cfg, da, mp.inf, None, mp.inf,
                                          "no physical singularity"))
            continue
        phys = min((s for s in sings
                    if mp.re(s.location) > 0
                    and abs(mp.im(s.location)) < mp.mpf("1e-4") * abs(s.location)),
                   key=lambda s: abs(s.location))
        minmod = min(abs(s.location) for s in sings)
        members.append(EnsembleMember(cfg, da, rad, phys.exponent, minmod))
    members = reject_defective(members)
    live = [m for m in members if not m.rejected]

    n0 = series.offset + len(series.coeffs)
    cont = {}
    for m in live:
        vals = predict_coefficients(m.da, series, count + (len(series.coeffs)
                                    - m.da.ncoeffs))
        # vals indexed from series.offset; keep only full-length members
        if len(vals) == len(series.coeffs) + count:
            cont[m.config.key()] = vals
    if not cont:
        raise EmptyEnsemble("no surviving member could continue the series")

    coeff_mean, coeff_std, ratio_mean, ratio_std, digits_out = [], [], [], [], []
    base = series.coeffs
    for i in range(len(base), len(base) + count):
        n = series.offset + i
        vals = [v[i] for v in cont.values()]
        mean = mp.fsum(vals) / len(vals)
        sd = mp.sqrt(mp.fsum((v - mean) ** 2 for v in vals) / len(vals))
        coeff_mean.append((n, mean))
        coeff_std.append((n, sd))
        spread = max(vals) - min(vals)
        if mean != 0 and spread > 0:
            digits_out.append((n, float(-mp.log10(abs(spread / mean)))))
        else:
            digits_out.append((n, float(mp.mp.dps)))
        rvals = [v[i] / v[i - 1] for v in cont.values()]
        rmean = mp.fsum(rvals) / len(rvals)
        rsd = mp.sqrt(mp.fsum((v - rmean) ** 2 for v in rvals) / len(rvals))
        ratio_mean.append((n, rmean))
        ratio_std.append((n, rsd))

    zs = [to_mpf(m.z_c) for m in live]
    zmean = mp.fsum(zs) / len(zs)
    zsd = mp.sqrt(mp.fsum((z - zmean) ** 2 for z in zs) / len(zs))
    exps = [to_mpf(m.exponent) for m in live
            if m.exponent is not None and abs(mp.im(mp.mpc(m.exponent))) < 1]
    emean = (mp.fsum(exps) / len(exps)) if exps else None
    return PredictionEnsemble(
        series.name, series.last_exact_n, tuple(members),
        tuple(coeff_mean), tuple(coeff_std), tuple(ratio_mean),
        tuple(ratio_std), tuple(digits_out), zmean, zsd, emean)


def extended(series: ExactSeries, count: int, **kw) -> ExactSeries:
    """Convenience: series with the ensemble prediction attached as tail."""
    ens = extend_series(series, count, **kw)
    return series.with_tail(ens.predicted_tail(), ens.predicted_ratio_tail())

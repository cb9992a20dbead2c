"""Exact and high-precision linear algebra and polynomial kernels.

Two arithmetic lanes are supported throughout:

* exact: Python ints / fractions.Fraction, eliminated fraction-free
  (Bareiss) so intermediate swell stays bounded by minor sizes;
* float: mpmath at the current working precision (see ``precision``).

The exact lane is used whenever every input is an int or Fraction; results
re-substituted into the system satisfy it exactly.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

import mpmath as mp

from .precision import is_exact, to_mpf


class SingularMatrixError(ValueError):
    """Raised when a linear system is rank-deficient on the given data."""


class RootFindingError(RuntimeError):
    """Raised when the polynomial root finder fails to converge."""


# ---------------------------------------------------------------------------
# linear solves

def _clear_denominators(row):
    l = 1
    for x in row:
        if isinstance(x, Fraction):
            l = l * x.denominator // gcd(l, x.denominator)
    return [int(x * l) if isinstance(x, Fraction) else x * l for x in row]


def solve_exact(A, b):
    """Solve A x = b in exact rational arithmetic (Bareiss elimination).

    A is a square matrix (list of rows) of int/Fraction, b a vector.
    Returns a list of Fractions. Raises SingularMatrixError if the matrix
    is rank-deficient.
    """
    n = len(A)
    if n == 0:
        return []
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("solve_exact requires a square system")
    M = [_clear_denominators([Fraction(x) for x in row] + [Fraction(rhs)])
         for row, rhs in zip(A, b)]
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"rank deficiency at column {k}")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            Mi, Mk = M[i], M[k]
            for j in range(k + 1, n + 1):
                Mi[j] = (Mi[j] * pk - mik * Mk[j]) // prev
            Mi[k] = 0
        prev = pk
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(M[i][n])
        for j in range(i + 1, n):
            s -= M[i][j] * x[j]
        x[i] = s / M[i][i]
    return x


def solve_float(A, b):
    """Solve A x = b with mpmath floats and partial pivoting."""
    n = len(A)
    if n == 0:
        return []
    M = [[to_mpf(x) for x in row] + [to_mpf(rhs)] for row, rhs in zip(A, b)]
    for k in range(n):
        piv = max(range(k, n), key=lambda i: abs(M[i][k]))
        if M[piv][k] == 0:
            raise SingularMatrixError(f"zero pivot at column {k}")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f == 0:
                continue
            for j in range(k, n + 1):
                M[i][j] -= f * M[k][j]
    x = [mp.mpf(0)] * n
    for i in range(n - 1, -1, -1):
        s = M[i][n]
        for j in range(i + 1, n):
            s -= M[i][j] * x[j]
        x[i] = s / M[i][i]
    return x


def solve_linear(A, b):
    """Dispatch to the exact solver when all entries are exact."""
    if all(is_exact(x) for row in A for x in row) and all(is_exact(x) for x in b):
        return solve_exact(A, b)
    return solve_float(A, b)


# ---------------------------------------------------------------------------
# determinants of leading principal submatrices

def _det_exact(M):
    """Fraction-free determinant with row swaps (handles zero pivots)."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        pk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * pk - aik * A[k][j]) // prev
            A[i][k] = 0
        prev = pk
    return sign * A[n - 1][n - 1]


def leading_principal_minors(M):
    """det(M[:k,:k]) for k = 1..n over integer entries.

    Uses Bareiss pivots (each pivot equals the next leading minor) while
    pivots stay nonzero, and falls back to a per-size determinant once a
    zero minor blocks the fraction-free recurrence.
    """
    n = len(M)
    A = [row[:] for row in M]
    minors = []
    prev = 1
    for k in range(n):
        piv = A[k][k]
        minors.append(piv)
        if piv == 0:
            break
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * piv - aik * A[k][j]) // prev
            A[i][k] = 0
        prev = piv
    for k in range(len(minors), n):
        minors.append(_det_exact([row[:k + 1] for row in M[:k + 1]]))
    return minors


# ---------------------------------------------------------------------------
# polynomials: coefficient lists in ascending degree

NEG_INF = float("-inf")


def poly_trim(p):
    q = list(p)
    while q and q[-1] == 0:
        q.pop()
    return q


def poly_degree(p):
    q = poly_trim(p)
    return len(q) - 1 if q else NEG_INF


def poly_eval(p, z):
    """Horner evaluation; exact when both p and z are exact."""
    if is_exact(z) and all(is_exact(c) for c in p):
        acc = Fraction(0)
        for c in reversed(list(p)):
            acc = acc * z + c
        return acc
    zc = z if isinstance(z, (mp.mpf, mp.mpc)) else to_mpf(z)
    acc = mp.mpf(0)
    for c in reversed(list(p)):
        acc = acc * zc + (c if isinstance(c, (mp.mpf, mp.mpc)) else to_mpf(c))
    return acc


def poly_derivative(p):
    return [i * c for i, c in enumerate(p)][1:]


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_roots(p, digits=None, label="polynomial"):
    """All complex roots of p (ascending coefficients), ordered by (|z|, arg).

    Runs mpmath's simultaneous-iteration solver at the working precision,
    with a companion-matrix eigenvalue fallback, then polishes. Raises
    RootFindingError (naming the polynomial) if neither converges.
    """
    coeffs = poly_trim(p)
    if len(coeffs) < 2:
        raise ValueError(f"{label}: need degree >= 1 to extract roots")
    ctx = mp.workdps(digits) if digits is not None else None
    if ctx is not None:
        ctx.__enter__()
    try:
        desc = [to_mpf(c) for c in reversed(coeffs)]
        try:
            roots = mp.polyroots(desc, maxsteps=200, extraprec=4 * mp.mp.prec)
        except mp.libmp.libhyper.NoConvergence:
            try:
                n = len(desc) - 1
                companion = mp.zeros(n)
                for i in range(1, n):
                    companion[i, i - 1] = mp.mpf(1)
                for i in range(n):
                    companion[i, n - 1] = -desc[n - i] / desc[0]
                eigs, _ = mp.eig(companion.transpose().copy(), left=False, right=True)
                roots = [mp.mpc(e) for e in eigs]
            except Exception as exc:  # pragma: no cover - double failure
                raise RootFindingError(f"root finding failed for {label}") from exc
        roots = [mp.mpc(r) for r in roots]
        roots.sort(key=lambda z: (abs(z), mp.arg(z)))
        return roots
    finally:
        if ctx is not None:
            ctx.__exit__(None, None, None)


# ---------------------------------------------------------------------------
# least squares

def fit_least_squares(xs, ys, basis):
    """Least-squares coefficients for ys ~ sum c_j basis_j(x).

    Solves the normal equations at the working precision and returns
    (coefficients, rms_residual). Raises SingularMatrixError when the basis
    is collinear on the given nodes.
    """
    if len(xs) != len(ys):
        raise ValueError("xs and ys must have equal length")
    if len(xs) < len(basis):
        raise ValueError("need at least as many points as basis functions")
    X = [[to_mpf(f(x)) for f in basis] for x in xs]
    y = [to_mpf(v) for v in ys]
    m = len(basis)
    G = [[mp.fsum(X[i][a] * X[i][b] for i in range(len(xs))) for b in range(m)]
         for a in range(m)]
    rhs = [mp.fsum(X[i][a] * y[i] for i in range(len(xs))) for a in range(m)]
    coeffs = solve_float(G, rhs)
    resid = [mp.fsum(X[i][a] * coeffs[a] for a in range(m)) - y[i]
             for i in range(len(xs))]
    rms = mp.sqrt(mp.fsum(r * r for r in resid) / len(xs))
    return coeffs, rms

"""Working-precision control for the high-precision float layer.

All floating computation in this package goes through mpmath. The working
precision defaults to 100 decimal digits and can be overridden globally via
the PAPSERIES_PRECISION environment variable or locally with the
``precision`` context manager. Values are deterministic for a fixed
precision setting.
"""
from __future__ import annotations

import os
from contextlib import contextmanager
from fractions import Fraction

import mpmath as mp

DEFAULT_DIGITS = 100


def default_digits() -> int:
    raw = os.environ.get("PAPSERIES_PRECISION")
    if raw is None:
        return DEFAULT_DIGITS
    try:
        digits = int(raw)
    except ValueError as exc:
        raise ValueError(f"PAPSERIES_PRECISION must be an integer, got {raw!r}") from exc
    if digits < 10:
        raise ValueError("PAPSERIES_PRECISION must be at least 10 digits")
    return digits


def set_precision(digits: int | None = None) -> int:
    """Set the global working precision (decimal digits); returns it."""
    digits = default_digits() if digits is None else int(digits)
    mp.mp.dps = digits
    return digits


@contextmanager
def precision(digits: int | None = None):
    """Temporarily run at the given decimal precision."""
    digits = default_digits() if digits is None else int(digits)
    with mp.workdps(digits):
        yield


def to_mpf(x) -> mp.mpf:
    """Convert int/Fraction/float/str to mpf at the current precision."""
    if isinstance(x, mp.mpf):
        return x
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / mp.mpf(x.denominator)
    if isinstance(x, int):
        return mp.mpf(x)
    return mp.mpf(x)


def is_exact(x) -> bool:
    """True for values participating in exact (rational) arithmetic."""
    return isinstance(x, (int, Fraction))


# Make sure imports of this module leave mpmath at the configured default.
set_precision()

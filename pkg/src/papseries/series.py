"""Coefficient sequences: exact prefixes, predicted tails, file formats.

An ExactSeries holds an exact integer (or rational) coefficient prefix and,
optionally, a predicted float tail with per-term uncertainties. Predicted
values are never merged silently with exact data: exports flag them, the
b-file format omits them, and the differential-approximant builder only
ever consumes the exact prefix.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .precision import to_mpf


class BFileError(ValueError):
    """Malformed b-file input; carries the offending line number."""

    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class ExactSeries:
    """Named coefficient sequence with optional predicted tail.

    coeffs[i] is the coefficient of order offset + i. tail (if present)
    holds (value, uncertainty) pairs for orders immediately following the
    exact prefix; tail_ratios the matching predicted ratios.
    """
    name: str
    coeffs: tuple
    offset: int = 0
    tail: tuple = ()
    tail_ratios: tuple = ()

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("series needs at least one coefficient")
        for v, u in self.tail:
            if u < 0:
                raise ValueError("tail uncertainties must be non-negative")

    @property
    def last_exact_n(self) -> int:
        return self.offset + len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def prefix(self, nterms: int) -> "ExactSeries":
        if nterms < 1 or nterms > len(self.coeffs):
            raise ValueError(f"prefix length {nterms} out of range")
        return ExactSeries(self.name, self.coeffs[:nterms], self.offset)

    def with_tail(self, tail, tail_ratios=()) -> "ExactSeries":
        return ExactSeries(self.name, self.coeffs, self.offset,
                           tuple(tail), tuple(tail_ratios))


def ratios(series: ExactSeries, exact: bool = False):
    """Successive-term ratios as (n, value) pairs, n = index of numerator.

    Exact coefficients give exact Fractions when exact=True, otherwise
    floats at the working precision. Predicted tail ratios (when present)
    are appended; the caller can locate them via series.last_exact_n.
    """
    c = series.coeffs
    for x in c:
        if x == 0:
            raise ValueError(f"{series.name}: zero coefficient, ratios undefined")
    out = []
    for i in range(1, len(c)):
        n = series.offset + i
        r = Fraction(c[i]) / Fraction(c[i - 1])
        out.append((n, r if exact else to_mpf(r)))
    if series.tail_ratios and not exact:
        n0 = series.last_exact_n + 1
        for j, (v, _u) in enumerate(series.tail_ratios):
            out.append((n0 + j, to_mpf(v)))
    return out


def first_predicted_index(series: ExactSeries):
    return series.last_exact_n + 1 if (series.tail or series.tail_ratios) else None


# ---------------------------------------------------------------------------
# ingestion

def ingest_bfile(text: str, name: str = "ingested") -> ExactSeries:
    """Parse OEIS b-file text: one `index value` pair per line.

    Indices must be consecutive; gaps, repeats and malformed lines raise
    BFileError with the line number. Lines starting with '#' are comments.
    """
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileError(lineno, f"expected `index value`, got {raw!r}")
        try:
            idx, val = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileError(lineno, f"non-integer field in {raw!r}") from None
        if entries:
            expect = entries[-1][0] + 1
            if idx < expect:
                raise BFileError(lineno, f"non-monotone index {idx}")
            if idx > expect:
                raise BFileError(lineno, f"gap before index {idx}")
        entries.append((idx, val))
    if not entries:
        raise BFileError(0, "no data lines")
    return ExactSeries(name, tuple(v for _, v in entries), offset=entries[0][0])


def from_json(text: str) -> ExactSeries:
    obj = json.loads(text)
    tail = tuple((mp.mpf(v), mp.mpf(u)) for v, u in obj.get("tail", []))
    tail_r = tuple((mp.mpf(v), mp.mpf(u)) for v, u in obj.get("tail_ratios", []))
    coeffs = tuple(Fraction(c) if "/" in str(c) else int(c) for c in obj["coeffs"])
    return ExactSeries(obj["name"], coeffs, int(obj.get("offset", 0)), tail, tail_r)


# ---------------------------------------------------------------------------
# export

def _coeff_str(c):
    return str(c)


def export(series: ExactSeries, fmt: str) -> str:
    """Render as json, bfile, or csv text.

    bfile carries only the exact prefix (newline separated, no trailing
    blank line); json and csv flag predicted values distinctly and
    round-trip through from_json / ingest_bfile.
    """
    if fmt == "bfile":
        return "\n".join(f"{series.offset + i} {series.coeffs[i]}"
                         for i in range(len(series.coeffs)))
    if fmt == "json":
        obj = {
            "name": series.name,
            "offset": series.offset,
            "coeffs": [_coeff_str(c) for c in series.coeffs],
        }
        if series.tail:
            obj["tail"] = [[mp.nstr(v, 30), mp.nstr(u, 10)] for v, u in series.tail]
        if series.tail_ratios:
            obj["tail_ratios"] = [[mp.nstr(v, 30), mp.nstr(u, 10)]
                                  for v, u in series.tail_ratios]
        return json.dumps(obj, indent=2)
    if fmt == "csv":
        lines = ["n,coefficient,is_predicted,uncertainty"]
        for i, c in enumerate(series.coeffs):
            lines.append(f"{series.offset + i},{c},0,0")
        n0 = series.last_exact_n + 1
        for j, (v, u) in enumerate(series.tail):
            lines.append(f"{n0 + j},{mp.nstr(v, 30)},1,{mp.nstr(u, 10)}")
        return "\n".join(lines)
    raise ValueError(f"unknown format {fmt!r} (expected json|bfile|csv)")


def ingest_csv(text: str, name: str = "ingested") -> ExactSeries:
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines or not lines[0].startswith("n,coefficient"):
        raise ValueError("csv must start with the n,coefficient header")
    coeffs, tail = [], []
    offset = None
    for raw in lines[1:]:
        n, c, pred, u = raw.split(",")
        if offset is None:
            offset = int(n)
        if pred == "1":
            tail.append((mp.mpf(c), mp.mpf(u)))
        else:
            coeffs.append(int(c) if "/" not in c else Fraction(c))
    return ExactSeries(name, tuple(coeffs), offset, tuple(tail))

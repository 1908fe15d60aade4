"""Squares, overlaps and fractional powers in finite prefixes.

Everything here is a statement about the scanned prefix only. For a period p
the boolean array eq[i] = (s[i] == s[i+p]) is scanned for runs of matches;
a run of length r starting at i means s[i : i+p+r] has period p, i.e. it
is a power of exponent (p+r)/p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class RepetitionFinding:
    position: int
    period: int
    exponent: Fraction
    witness: tuple

    @property
    def length(self) -> int:
        return int(self.exponent * self.period)


def _codes(word) -> np.ndarray:
    if isinstance(word, np.ndarray):
        return word
    lut = {}
    return np.fromiter((lut.setdefault(x, len(lut)) for x in word), dtype=np.int32, count=len(word))


def _prefix(s, n):
    if hasattr(s, "prefix"):
        return tuple(s.prefix(n))
    return tuple(s)[:n]


def _runs(eq: np.ndarray):
    """Start indices and lengths of maximal runs of True."""
    if eq.size == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    d = np.diff(np.concatenate(([0], eq.view(np.int8), [0])))
    starts = np.flatnonzero(d == 1)
    ends = np.flatnonzero(d == -1)
    return starts, ends - starts


def _first_run_at_least(codes, p, need):
    """Leftmost i with eq[i:i+need] all True, or None."""
    eq = codes[:-p] == codes[p:]
    starts, lens = _runs(eq)
    ok = np.flatnonzero(lens >= need)
    if ok.size == 0:
        return None
    return int(starts[ok[0]])


def find_square(s, n: int, min_period: int = 1, max_period: int | None = None):
    """Leftmost, then shortest, square ww with min_period <= |w| <= max_period."""
    w = _prefix(s, n)
    codes = _codes(w)
    max_period = min(max_period or len(w) // 2, len(w) // 2)
    best = None
    for p in range(min_period, max_period + 1):
        i = _first_run_at_least(codes, p, p)
        if i is not None and (best is None or i < best[0]):
            best = (i, p)
    if best is None:
        return None
    i, p = best
    return RepetitionFinding(i, p, Fraction(2), w[i:i + 2 * p])


def has_overlap(s, n: int, max_period: int | None = None, min_period: int = 1):
    """Leftmost, then shortest, overlap wwx where x is the first letter of w."""
    w = _prefix(s, n)
    codes = _codes(w)
    max_period = min(max_period or len(w) // 2, (len(w) - 1) // 2)
    best = None
    for p in range(min_period, max_period + 1):
        i = _first_run_at_least(codes, p, p + 1)
        if i is not None and (best is None or i < best[0]):
            best = (i, p)
    if best is None:
        return None
    i, p = best
    return RepetitionFinding(i, p, Fraction(2 * p + 1, p), w[i:i + 2 * p + 1])


def max_power(s, n: int, max_period: int | None = None, min_period: int = 1):
    """Finding with the largest exponent (ties: leftmost, then shortest period)."""
    w = _prefix(s, n)
    codes = _codes(w)
    max_period = min(max_period or len(w) - 1, len(w) - 1)
    best = None
    for p in range(min_period, max_period + 1):
        starts, lens = _runs(codes[:-p] == codes[p:])
        if lens.size == 0:
            continue
        j = int(np.argmax(lens))
        e = Fraction(p + int(lens[j]), p)
        i = int(starts[j])
        if best is None or e > best.exponent or (e == best.exponent and i < best.position):
            best = RepetitionFinding(i, p, e, w[i:i + p + int(lens[j])])
    return best


def critical_exponent_lower_bound(s, n: int, max_period: int | None = None) -> Fraction:
    f = max_power(s, n, max_period)
    return f.exponent if f else Fraction(1)


def has_power(s, n: int, exponent, max_period: int | None = None):
    """First factor of exponent >= `exponent` (rational), or None."""
    exponent = Fraction(exponent)
    w = _prefix(s, n)
    codes = _codes(w)
    max_period = min(max_period or len(w) - 1, len(w) - 1)
    best = None
    for p in range(1, max_period + 1):
        need = exponent * p - p
        need = int(need) + (need.denominator != 1)
        if need <= 0:
            need = 0
        if need > len(w) - p:
            continue
        if need == 0:
            i = 0
        else:
            i = _first_run_at_least(codes, p, need)
            if i is None:
                continue
        if best is None or i < best.position:
            best = RepetitionFinding(i, p, Fraction(p + need, p), w[i:i + p + need])
    return best


# naive oracles, kept for tests

def naive_find_square(w, min_period=1, max_period=None):
    w = tuple(w)
    n = len(w)
    max_period = max_period or n // 2
    for i in range(n):
        for p in range(min_period, max_period + 1):
            if i + 2 * p <= n and w[i:i + p] == w[i + p:i + 2 * p]:
                return (i, p)
    return None


def naive_max_exponent(w, max_period=None):
    w = tuple(w)
    n = len(w)
    max_period = max_period or n // 2
    best = Fraction(1)
    for p in range(1, max_period + 1):
        for i in range(n - p):
            r = 0
            while i + p + r < n and w[i + r] == w[i + p + r]:
                r += 1
            best = max(best, Fraction(p + r, p))
    return best

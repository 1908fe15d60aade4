"""Factor complexity, entropy estimate, Sturmian words."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .words import DomainError


@dataclass
class ComplexityProfile:
    n_max: int
    values: list            # values[n-1] = p(n)
    prefix_len: int
    alphabet_size: int
    saturated: bool | None = None
    unstable: list = field(default_factory=list)

    def p(self, n: int) -> int:
        return self.values[n - 1]

    @property
    def diffs(self) -> list:
        return [b - a for a, b in zip(self.values, self.values[1:])]

    def to_csv(self) -> str:
        d = self.diffs + [""]
        rows = ["n,p,diff"] + [f"{n},{p},{x}" for n, (p, x) in enumerate(zip(self.values, d), 1)]
        return "\n".join(rows) + "\n"


def _codes(word):
    lut = {}
    arr = np.fromiter((lut.setdefault(x, len(lut)) for x in word), dtype=np.uint8, count=len(word))
    return arr, len(lut)


def count_factors(codes: np.ndarray, n: int) -> int:
    """Exact number of distinct length-n factors (rows compared as bytes)."""
    if n > len(codes):
        return 0
    win = np.lib.stride_tricks.sliding_window_view(codes, n)
    rows = np.ascontiguousarray(win).view(np.dtype((np.void, n)))
    return int(np.unique(rows).size)


def _profile(word, n_max):
    codes, q = _codes(word)
    return [count_factors(codes, n) for n in range(1, n_max + 1)], q


def profile(s, n_max: int, prefix_len: int, check_stability: bool = True) -> ComplexityProfile:
    if prefix_len < 4 * n_max:
        raise DomainError("prefix_len must be at least 4*n_max")
    w = tuple(s.prefix(prefix_len)) if hasattr(s, "prefix") else tuple(s)[:prefix_len]
    vals, q = _profile(w, n_max)
    q = max(q, len(s.alphabet) if getattr(s, "alphabet", None) else q)
    prof = ComplexityProfile(n_max, vals, len(w), q)
    if check_stability and hasattr(s, "prefix"):
        w2 = tuple(s.prefix(2 * prefix_len))
        vals2, _ = _profile(w2, n_max)
        prof.unstable = [n for n in range(1, n_max + 1) if vals2[n - 1] != vals[n - 1]]
        prof.saturated = not prof.unstable
    return prof


def naive_count(word, n: int) -> int:
    word = tuple(word)
    return len({word[i:i + n] for i in range(len(word) - n + 1)})


def sturmian(alpha: float, beta: float, variant: str, n: int) -> tuple:
    """u_k = floor((k+1)a + b) - floor(k a + b), or the ceiling analogue."""
    if isinstance(alpha, (Fraction, int)) or float(alpha).is_integer() or _looks_rational(alpha):
        warnings.warn("rational slope gives an eventually periodic word", stacklevel=2)
    k = np.arange(n + 1, dtype=np.float64)
    x = k * float(alpha) + float(beta)
    if variant == "floor":
        f = np.floor(x)
    elif variant == "ceil":
        f = np.ceil(x)
    else:
        raise DomainError("variant must be 'floor' or 'ceil'")
    return tuple(str(int(v)) for v in np.diff(f))


def near_integer_flags(alpha: float, beta: float, n: int, tol: float = 1e-9) -> list[int]:
    k = np.arange(n + 1, dtype=np.float64)
    x = k * alpha + beta
    return [int(i) for i in np.flatnonzero(np.abs(x - np.round(x)) < tol)]


def _looks_rational(x, max_den=1000):
    fr = Fraction(x).limit_denominator(max_den)
    return abs(float(fr) - x) < 1e-15


def entropy_estimate(prof: ComplexityProfile) -> tuple[float, list]:
    if prof.n_max < 8:
        raise DomainError("profile needs n_max >= 8")
    q = max(prof.alphabet_size, 2)
    trend = [math.log(p) / (n * math.log(q)) for n, p in enumerate(prof.values, 1)]
    return trend[-1], trend


def morse_hedlund_check(prof: ComplexityProfile) -> tuple[str, int | None]:
    for n, p in enumerate(prof.values, 1):
        if p <= n:
            return "ultimately-periodic-evidence", n
    return "aperiodic-evidence", None


def power_fit(prof: ComplexityProfile, n_min: int = 8) -> float:
    """Least-squares slope of log p(n) against log n over n >= n_min."""
    ns = np.arange(n_min, prof.n_max + 1)
    ps = np.array(prof.values[n_min - 1:], dtype=float)
    return float(np.polyfit(np.log(ns), np.log(ps), 1)[0])


def linear_constant(prof: ComplexityProfile, n_lo: int = 8) -> float:
    return max(p / n for n, p in enumerate(prof.values, 1) if n >= n_lo)

"""Folding operators on turn words and the continued-fraction folding step.

Turn words are strings over {L, R}. A sign sequence (e_1, e_2, ...) yields
the generalized paperfolding word F_{e_1} F_{e_2} ... F_{e_k}(empty), whose
prefixes are stable in k because every F is prefix-monotone.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .words import DomainError

_FLIP = str.maketrans("LR", "RL")


def _check_turns(w: str) -> str:
    w = "".join(w)
    if set(w) - {"L", "R"}:
        raise DomainError("turn words use only L and R")
    return w


def fold(w, sign: str) -> str:
    """F_+(w) interleaves L R L R ... (length |w|+1) with w; F_- uses R L R L ..."""
    w = _check_turns(w)
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    alt = "LR" if sign == "+" else "RL"
    out = []
    for i, a in enumerate(w):
        out.append(alt[i % 2])
        out.append(a)
    out.append(alt[len(w) % 2])
    return "".join(out)


def complement(w) -> str:
    return _check_turns(w).translate(_FLIP)


class Signs:
    """Ultimately periodic sign spec: preperiod then period repeated forever.

    Text forms: "+", "+-", "(+-)", "--(+-)", "+-+(-)^inf". A bare word with
    no parentheses is read as the period. An explicit finite list can be
    given with periodic=False; asking past its end raises.
    """

    def __init__(self, pre="", period="+", periodic: bool = True):
        self.pre = "".join(pre)
        self.period = "".join(period)
        self.periodic = periodic
        for s in self.pre + self.period:
            if s not in "+-":
                raise DomainError(f"bad sign {s!r}")
        if periodic and not self.period:
            raise DomainError("period must be non-empty")

    @classmethod
    def parse(cls, spec) -> "Signs":
        if isinstance(spec, Signs):
            return spec
        if not isinstance(spec, str):
            return cls(pre="".join(spec), period="", periodic=False)
        s = spec.strip().replace("^inf", "").replace("^∞", "")
        m = re.fullmatch(r"([+-]*)\(([+-]+)\)", s)
        if m:
            return cls(m.group(1), m.group(2))
        if re.fullmatch(r"[+-]+", s):
            return cls("", s)
        raise DomainError(f"cannot parse sign spec {spec!r}")

    def __getitem__(self, j: int) -> str:
        """Sign e_{j+1} (0-based)."""
        if j < len(self.pre):
            return self.pre[j]
        if not self.periodic:
            raise DomainError("insufficient signs")
        return self.period[(j - len(self.pre)) % len(self.period)]

    def first(self, n: int) -> str:
        return "".join(self[j] for j in range(n))

    def __repr__(self):
        return f"Signs({self.pre!r}, {self.period!r})" if self.periodic else f"Signs({self.pre!r}, finite)"


def folds(signs, depth: int) -> str:
    """F_{e_1}(F_{e_2}(... F_{e_depth}(empty))), a word of length 2^depth - 1."""
    sg = Signs.parse(signs)
    w = ""
    for j in range(depth - 1, -1, -1):
        w = fold(w, sg[j])
    return w


def paperfold_sequence(signs, n: int) -> str:
    depth = max(n, 1).bit_length()   # 2^depth - 1 >= n
    return folds(signs, depth)[:n]


def paperfold_direct(signs, n: int) -> str:
    """Same word from the closed form: position i = 2^j (2m+1) - 1 carries the
    j-th alternating word, shifted by the sign e_{j+1}."""
    sg = Signs.parse(signs)
    out = []
    for i in range(n):
        v = i + 1
        j = (v & -v).bit_length() - 1
        m = v >> (j + 1)
        first = "L" if sg[j] == "+" else "R"
        out.append(first if m % 2 == 0 else first.translate(_FLIP))
    return "".join(out)


def to_bits(w: str, one: str = "L") -> str:
    return "".join("1" if c == one else "0" for c in w)


# continued fractions

def cf_value(quotients, a0: int = 0) -> Fraction:
    x = Fraction(0)
    for a in reversed(list(quotients)):
        x = 1 / (a + x)
    return a0 + x


def euclid_cf(x: Fraction) -> list[int]:
    """[a0, a1, ..., an] of a rational, shortest form (last quotient >= 2 unless x is an integer + 1/1)."""
    x = Fraction(x)
    p, q = x.numerator, x.denominator
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


def _check_cf(w):
    w = [int(a) for a in w]
    if not w or any(a < 1 for a in w):
        raise DomainError("partial quotients must be >= 1")
    return w


def normalize(w) -> list[int]:
    """Merge a trailing 1: [..., a, 1] = [..., a+1]."""
    w = _check_cf(w)
    if len(w) >= 2 and w[-1] == 1:
        return w[:-2] + [w[-2] + 1]
    return w


def to_even_depth(w) -> list[int]:
    """Equal-valued expansion of even length (split a, a >= 2, into a-1, 1 if needed)."""
    w = normalize(w)
    if len(w) % 2:
        if w[-1] < 2:
            raise DomainError("cannot reach even depth")
        w = w[:-1] + [w[-1] - 1, 1]
    return w


def cf_fold_step(w) -> list[int]:
    """[0; a1..an] -> [0; a1..a_{n-1}, an+1, an-1, a_{n-1}, ..., a1], n even.

    The value grows by exactly 1/q^2, q the denominator of [0; a1..an].
    """
    w = _check_cf(w)
    if len(w) % 2:
        raise DomainError("depth must be even")
    if w[-1] == 1:
        raise DomainError("zero partial quotient; renormalize first")
    return w[:-1] + [w[-1] + 1, w[-1] - 1] + w[-2::-1]


def cf_of_series(g: int, depth: int) -> list[int]:
    """Partial quotients (without the leading 0) of sum_{n<depth} g^(-2^n)."""
    if g < 3:
        raise DomainError("g <= 2 is unsupported")
    if depth < 2:
        raise DomainError("depth must be >= 2")
    w = [g - 1, g + 1]
    for _ in range(depth - 2):
        w = cf_fold_step(w)
    return w


def series_value(g: int, depth: int) -> Fraction:
    return sum((Fraction(1, g ** (2 ** n)) for n in range(depth)), Fraction(0))


def symbolic_series(depth: int) -> list[int]:
    """Quotients as offsets from g (g large enough that nothing collapses)."""
    g = 1000
    return [a - g for a in cf_of_series(g, depth)]


def cf_arrows(w) -> str:
    """Read the perturbation arrows off a folded quotient word.

    Junction j sits between a_{2j} and a_{2j+1} (1-based); a right arrow
    raised the left letter, so it shows as a_{2j} > a_{2j+1}.
    """
    w = list(w)
    out = []
    for j in range(1, (len(w) - 1) // 2 + 1):
        left, right = w[2 * j - 1], w[2 * j]
        out.append(">" if left > right else "<")
    return "".join(out)

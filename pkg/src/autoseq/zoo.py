"""Named sequences and the cross-identities between them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .words import (Coding, DomainError, Morphism, as_word, code, complement_word,
                    fixed_point_prefix, reverse_complement, run_lengths)


@dataclass
class SequenceHandle:
    name: str
    alphabet: tuple | None
    _prefix: Callable[[int], tuple]
    cast: dict | Callable | None = None
    params: dict = field(default_factory=dict)
    _cache: tuple = field(default=(), repr=False)

    def prefix(self, n: int) -> tuple:
        if n <= len(self._cache):
            return self._cache[:n]
        got = tuple(self._prefix(n))
        if len(got) < n:
            raise DomainError(f"{self.name}: generator returned {len(got)} < {n} terms")
        self._cache = got
        return got[:n]

    def values(self, n: int) -> np.ndarray:
        """Numeric (complex or real) image of the first n terms."""
        w = self.prefix(n)
        if self.cast is None:
            return np.array([float(x) for x in w])
        if callable(self.cast):
            return np.asarray(self.cast(w))
        lut = self.cast
        return np.array([lut[x] for x in w], dtype=float)


PM = {"+": 1.0, "-": -1.0}
BIT_PM = {"0": 1.0, "1": -1.0}   # 0 -> +1, 1 -> -1
PF_PM = {"1": 1.0, "0": -1.0}    # paperfolding 1 -> +1, 0 -> -1

MORPHISMS = {
    "fibonacci": Morphism({"0": "01", "1": "0"}),
    "thue-morse": Morphism({"0": "01", "1": "10"}),
    "paperfolding": Morphism({"a": "ab", "b": "cb", "c": "ad", "d": "cd"}),
    "rudin-shapiro": Morphism({"a": "ab", "b": "ac", "c": "db", "d": "dc"}),
    "period-doubling": Morphism({"0": "01", "1": "00"}),
    "hanoi": Morphism({"a": "aC", "b": "cB", "c": "bA", "A": "ac", "B": "cb", "C": "ba"}),
    "cyclic-hanoi": Morphism({"f": "fvf", "g": "gwg", "h": "huh", "u": "fg", "v": "gh", "w": "hf"}),
    "circle-base": Morphism({"a": "cac", "b": "accac", "c": "abcac"}),
    "squarefree-thue": Morphism({"0": "12", "1": "102", "2": "0"}),
    "berstel-4": Morphism({"0": "12", "1": "13", "2": "20", "3": "21"}),
    "fp-211": Morphism({"2": "211", "1": "2"}),
    "fp-121": Morphism({"1": "121", "2": "12221"}),
}

CODINGS = {
    "paperfolding": Coding({"a": "1", "b": "1", "c": "0", "d": "0"}),
    "rudin-shapiro": Coding({"a": "+", "b": "+", "c": "-", "d": "-"}),
    "cyclic-hanoi": Coding({"f": "a", "g": "c", "h": "b", "u": "c", "v": "b", "w": "a"}),
    "mod3": Coding({"0": "0", "1": "1", "2": "2", "3": "0"}),
}

# (morphism, seed, coding) for the five uniform examples
UNIFORM_EXAMPLES = {
    "thue-morse": ("thue-morse", "0", None),
    "paperfolding": ("paperfolding", "a", "paperfolding"),
    "rudin-shapiro": ("rudin-shapiro", "a", "rudin-shapiro"),
    "period-doubling": ("period-doubling", "0", None),
    "hanoi": ("hanoi", "a", None),
}


def _morphic(mname, seed, cname=None):
    m = MORPHISMS[mname]
    c = CODINGS[cname] if cname else None

    def gen(n):
        w = fixed_point_prefix(m, seed, n)
        return code(w, c) if c else w
    return gen


def generalized_fibonacci_morphism(a: int) -> Morphism:
    return Morphism({"0": "0" + "1" * (a + 1), "1": "0" + "1" * a})


def circle_morphism() -> Morphism:
    return MORPHISMS["circle-base"].square()


def _grow(step, start, n):
    w = as_word(start)
    while len(w) < n:
        w = step(w)
    return w[:n]


def tm_doubling(n: int) -> tuple:
    return _grow(lambda w: w + complement_word(w), "0", n)


def perturbed_symmetry(n: int) -> tuple:
    f = Coding({"0": "1", "1": "0"})
    return _grow(lambda w: w + ("1",) + reverse_complement(w, f), "1", n)


def set_a(limit: int) -> list[int]:
    """Smallest set containing 1 with n in A => 2n not in A, up to limit."""
    inside = bytearray(limit + 1)
    out = []
    for m in range(1, limit + 1):
        if m % 2 == 0 and inside[m // 2]:
            continue
        inside[m] = 1
        out.append(m)
    return out


def set_a_diff(n: int) -> tuple:
    limit = 3 * n + 8
    while True:
        a = set_a(limit)
        if len(a) > n:
            return tuple(str(y - x) for x, y in zip(a, a[1:]))[:n]
        limit *= 2


KOLAKOSKI_PAIRS = {("1", "1"): "21", ("1", "2"): "211", ("2", "2"): "2211", ("2", "1"): "221"}


def kolakoski_pairs(n: int) -> tuple:
    """Iterate the pairwise map starting from 22; a trailing single letter x
    becomes a run of x twos."""
    w = ("2", "2")
    while len(w) < n:
        out = []
        for i in range(0, len(w) - 1, 2):
            out.extend(KOLAKOSKI_PAIRS[(w[i], w[i + 1])])
        if len(w) % 2:
            out.extend("2" * int(w[-1]))
        w = tuple(out)
    return w[:n]


def kolakoski_runs(n: int) -> tuple:
    """Self-reading run construction seeded 22."""
    s = [2, 2]
    i = 1
    letter = 1
    while len(s) < n:
        s.extend([letter] * s[i])
        letter = 3 - letter
        i += 1
    return tuple(str(x) for x in s[:n])


def _floor_pm(alpha, power):
    def gen(n):
        k = np.arange(n, dtype=np.float64)
        v = np.floor(alpha * k ** power).astype(np.int64)
        return tuple("+" if x % 2 == 0 else "-" for x in v)
    return gen


def _exp_seq(fn):
    def gen(n):
        k = np.arange(n, dtype=np.float64)
        return tuple(np.exp(2j * np.pi * fn(k)))
    return gen


DEFAULT_ALPHA = math.sqrt(2) - 1

NAMES = (
    "fibonacci", "thue-morse", "paperfolding", "rudin-shapiro", "period-doubling",
    "hanoi", "cyclic-hanoi", "generalized-fibonacci", "circle", "circle-c",
    "squarefree-thue", "berstel-4", "kolakoski", "kolakoski-pairs",
    "perturbed-symmetry-paperfold", "tm-doubling", "setA-diff", "fp-211", "fp-121",
    "besicovitch-floor", "besicovitch-floor-sq", "besicovitch-exp", "besicovitch-exp-sqrt",
    "sturmian",
)


def parse_name(spec: str) -> tuple[str, dict]:
    """`name` or `name:key=value,key=value` or `name:value` (first parameter)."""
    if ":" not in spec:
        return spec, {}
    name, rest = spec.split(":", 1)
    params = {}
    for part in rest.split(","):
        if "=" in part:
            k, v = part.split("=", 1)
            params[k.strip()] = float(v)
        elif part.strip():
            params["_"] = float(part)
    return name, params


def get(spec: str, **params) -> SequenceHandle:
    name, parsed = parse_name(spec)
    parsed.update(params)
    p = parsed
    if name in ("fibonacci", "thue-morse", "period-doubling", "squarefree-thue",
                "fp-211", "fp-121"):
        seed = {"fibonacci": "0", "thue-morse": "0", "period-doubling": "0",
                "squarefree-thue": "1", "fp-211": "2", "fp-121": "1"}[name]
        cast = BIT_PM if name == "thue-morse" else None
        return SequenceHandle(name, MORPHISMS[name].alphabet.letters, _morphic(name, seed), cast)
    if name == "paperfolding":
        return SequenceHandle(name, ("0", "1"), _morphic(name, "a", name), PF_PM)
    if name == "rudin-shapiro":
        return SequenceHandle(name, ("+", "-"), _morphic(name, "a", name), PM)
    if name == "hanoi":
        return SequenceHandle(name, MORPHISMS["hanoi"].alphabet.letters, _morphic("hanoi", "a"))
    if name == "cyclic-hanoi":
        return SequenceHandle(name, ("a", "b", "c"), _morphic(name, "f", name))
    if name == "generalized-fibonacci":
        a = int(p.get("a", p.get("_", 1)))
        m = generalized_fibonacci_morphism(a)
        return SequenceHandle(name, ("0", "1"), lambda n: fixed_point_prefix(m, "0", n),
                              params={"a": a})
    if name in ("circle", "circle-c"):
        m2 = circle_morphism()
        seed = "a" if name == "circle" else "c"
        return SequenceHandle(name, ("a", "b", "c"), lambda n: fixed_point_prefix(m2, seed, n))
    if name == "berstel-4":
        return SequenceHandle(name, ("0", "1", "2", "3"), _morphic(name, "1"))
    if name == "kolakoski":
        return SequenceHandle(name, ("1", "2"), kolakoski_runs)
    if name == "kolakoski-pairs":
        return SequenceHandle(name, ("1", "2"), kolakoski_pairs)
    if name == "perturbed-symmetry-paperfold":
        return SequenceHandle(name, ("0", "1"), perturbed_symmetry, PF_PM)
    if name == "tm-doubling":
        return SequenceHandle(name, ("0", "1"), tm_doubling, BIT_PM)
    if name == "setA-diff":
        return SequenceHandle(name, ("1", "2"), set_a_diff)
    if name in ("besicovitch-floor", "besicovitch-floor-sq"):
        alpha = p.get("alpha", p.get("_", DEFAULT_ALPHA))
        power = 1 if name == "besicovitch-floor" else 2
        return SequenceHandle(name, ("+", "-"), _floor_pm(alpha, power), PM, {"alpha": alpha})
    if name == "besicovitch-exp":
        alpha = p.get("alpha", p.get("_", DEFAULT_ALPHA))
        return SequenceHandle(name, None, _exp_seq(lambda k: alpha * k), np.asarray, {"alpha": alpha})
    if name == "besicovitch-exp-sqrt":
        return SequenceHandle(name, None, _exp_seq(np.sqrt), np.asarray)
    if name == "sturmian":
        from .complexity import sturmian
        phi = (1 + math.sqrt(5)) / 2
        alpha = p.get("alpha", p.get("_", 1 / phi ** 2))
        beta = p.get("beta", alpha if "alpha" not in p and "_" not in p else 0.0)
        return SequenceHandle(name, ("0", "1"), lambda n: sturmian(alpha, beta, "floor", n),
                              params={"alpha": alpha, "beta": beta})
    raise DomainError(f"unknown sequence {name!r}")


def hanoi_moves(N: int) -> list[str]:
    """Classical recursive solver: move N disks from peg 1 to peg 2 (N odd)
    or peg 3 (N even). Moves are coded a: 1->2, b: 2->3, c: 3->1 and upper
    case for the reverse moves."""
    letter = {(1, 2): "a", (2, 3): "b", (3, 1): "c", (2, 1): "A", (3, 2): "B", (1, 3): "C"}
    out = []

    def solve(k, src, dst, via):
        if k == 0:
            return
        solve(k - 1, src, via, dst)
        out.append(letter[(src, dst)])
        solve(k - 1, via, dst, src)

    target = 2 if N % 2 else 3
    solve(N, 1, target, 6 - 1 - target)
    return out


def _cmp(name, got, want):
    got, want = tuple(got), tuple(want)
    m = min(len(got), len(want))
    for i in range(m):
        if got[i] != want[i]:
            return (name, False, i)
    if len(got) != len(want):
        return (name, False, m)
    return (name, True, None)


def identity_report(n: int) -> list[tuple]:
    if n < 2:
        raise DomainError("n must be >= 2")
    tm = get("thue-morse").prefix(4 * n + 16)
    out = []
    out.append(_cmp("(i) tm-doubling = thue-morse", tm_doubling(n), tm[:n]))
    out.append(_cmp("(ii) perturbed-symmetry = paperfolding",
                    perturbed_symmetry(n), get("paperfolding").prefix(n)))
    out.append(_cmp("(iii) berstel-4 mod 3 = squarefree-thue",
                    code(get("berstel-4").prefix(n), CODINGS["mod3"]),
                    get("squarefree-thue").prefix(n)))
    sq = get("squarefree-thue").prefix(n)
    zeros = [i for i, x in enumerate(tm) if x == "0"]
    gaps = [str(b - a - 1) for a, b in zip(zeros, zeros[1:])][:n]
    out.append(_cmp("(iv) squarefree-thue + 1 mod 3 = 1-runs between 0s of thue-morse",
                    [str((int(x) + 1) % 3) for x in sq], gaps))
    runs = tuple(str(r) for r in run_lengths(tm))
    sad = set_a_diff(n)
    out.append(_cmp("(v) setA-diff = thue-morse run lengths minus first term", sad, runs[1:n + 1]))
    ok_a = _cmp("", sad, get("fp-211").prefix(n))
    ok_b = _cmp("", runs[:n], get("fp-121").prefix(n))
    both = ok_a[1] and ok_b[1]
    first = None if both else (ok_a[2] if not ok_a[1] else ok_b[2])
    out.append(("(vi) setA-diff = fp(2->211), tm runs = fp(1->121)", both, first))
    kol = kolakoski_runs(n + 8)
    out.append(_cmp("(vii) run lengths of kolakoski = kolakoski",
                    tuple(str(r) for r in run_lengths(kol))[: n // 2], kol[: n // 2]))
    pd = get("period-doubling").prefix(n)
    want = ["1" if tm[i] == tm[i + 1] else "0" for i in range(n)]
    out.append(_cmp("(viii) period-doubling = not(tm_n xor tm_n+1)", pd, want))
    ok, first = True, None
    hn = get("hanoi")
    for N in range(1, 11):
        L = 2 ** N - 1
        r = _cmp("", hn.prefix(L), hanoi_moves(N))
        if not r[1]:
            ok, first = False, (N, r[2])
            break
    out.append(("(ix) hanoi prefix 2^N-1 = recursive solver (N <= 10)", ok, first))
    return out

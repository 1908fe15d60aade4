"""Inhomogeneous Ising chain: exact small-N thermodynamics, the induced
field recursion and the Ising automata.

Energy of sigma in {+1,-1}^(N+1) under bonds eps in {+1,-1}^N:
    H(sigma) = -J sum_q eps_q sigma_q sigma_{q+1} - H sum_q sigma_q
and alpha = 2H/J. The induced field obeys
    delta_{n+1} = alpha + eps_n sgn(delta_n) min(2, |delta_n|).

Rational alpha (int, Fraction, "p/q") runs in exact integer arithmetic
scaled by the denominator; float alpha runs in floats, with sgn snapped to
0 below 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .opacity import SignedAutomaton, opacity_squared, thue_morse
from .words import DomainError

PRNG = "numpy.PCG64"
SNAP = 1e-12


def parse_alpha(alpha):
    """Fraction for exact inputs, float otherwise."""
    if isinstance(alpha, str):
        alpha = alpha.strip()
        if "/" in alpha or "." not in alpha:
            alpha = Fraction(alpha)
        else:
            alpha = float(alpha)
    if isinstance(alpha, (int, Fraction)):
        alpha = Fraction(alpha)
    if alpha < 0:
        raise DomainError("alpha must be >= 0")
    return alpha


def signs_array(eps) -> np.ndarray:
    if isinstance(eps, str):
        eps = [1 if c == "+" else -1 for c in eps if c in "+-"]
    a = np.asarray(eps, dtype=np.int64)
    if a.size and not np.isin(a, (-1, 1)).all():
        raise DomainError("eps entries must be +1 or -1")
    return a


@dataclass
class ChainSpec:
    eps: np.ndarray
    J: float = 1.0
    H: float = 0.0

    def __post_init__(self):
        self.eps = signs_array(self.eps)
        if self.eps.size < 1:
            raise DomainError("N must be >= 1")
        if self.J <= 0:
            raise DomainError("J must be > 0")
        if self.H < 0:
            raise DomainError("H must be >= 0")

    @property
    def N(self) -> int:
        return int(self.eps.size)

    @property
    def alpha(self):
        return 2 * self.H / self.J


def hamiltonian(spec: ChainSpec, sigma) -> float:
    s = np.asarray(sigma, dtype=np.int64)
    if s.size != spec.N + 1:
        raise DomainError("sigma must have N+1 spins")
    return float(-spec.J * np.sum(spec.eps * s[:-1] * s[1:]) - spec.H * np.sum(s))


def _all_configs(n: int) -> np.ndarray:
    idx = np.arange(2 ** n, dtype=np.int64)[:, None]
    bits = (idx >> np.arange(n - 1, -1, -1)) & 1
    return 1 - 2 * bits      # row i: spins of configuration i, first spin most significant


def _energies(spec):
    S = _all_configs(spec.N + 1)
    return S, -spec.J * (S[:, :-1] * S[:, 1:] * spec.eps).sum(1) - spec.H * S.sum(1)


def ground_states(spec: ChainSpec, max_n: int = 20, tol: float = 1e-9):
    if spec.N > max_n:
        raise DomainError(f"N too large for enumeration (max {max_n})")
    S, E = _energies(spec)
    emin = float(E.min())
    sel = S[E <= emin + tol]
    return emin, [tuple(int(v) for v in row) for row in sel], len(sel)


def _logsumexp(a):
    m = np.max(a)
    return float(m + np.log(np.sum(np.exp(a - m))))


@dataclass
class Partition:
    logZ: float
    logZp: float
    logZm: float

    @property
    def Z(self):
        return math.exp(self.logZ)

    @property
    def Zp(self):
        return math.exp(self.logZp)

    @property
    def Zm(self):
        return math.exp(self.logZm)


def partition(spec: ChainSpec, beta: float, method: str = "transfer") -> Partition:
    """(Z, Z+, Z-) in log form; Z+ and Z- condition on the last spin."""
    if method == "direct":
        if spec.N > 20:
            raise DomainError("direct summation needs N <= 20")
        S, E = _energies(spec)
        w = -beta * E
        up = S[:, -1] == 1
        return Partition(_logsumexp(w), _logsumexp(w[up]), _logsumexp(w[~up]))
    if method != "transfer":
        raise DomainError("method must be 'transfer' or 'direct'")
    bJ, bH = beta * spec.J, beta * spec.H
    lp, lm = bH, -bH        # single spin sigma_0 = +1 / -1
    for e in spec.eps:
        e = int(e)
        np_ = np.logaddexp(lp + bJ * e + bH, lm - bJ * e + bH)
        nm_ = np.logaddexp(lp - bJ * e - bH, lm + bJ * e - bH)
        lp, lm = float(np_), float(nm_)
    return Partition(float(np.logaddexp(lp, lm)), lp, lm)


def degree_recursion(eps, alpha, a0, b0, n: int | None = None):
    """Leading exponents (a_q, b_q) of (Z+, Z-) in z = exp(beta J)."""
    e = signs_array(eps)
    n = e.size if n is None else n
    alpha = parse_alpha(alpha)
    h = alpha / 2
    a, b = [a0], [b0]
    for q in range(n):
        x = int(e[q])
        aq, bq = a[-1], b[-1]
        a.append(h + max(aq + x, bq - x))
        b.append(-h + max(aq - x, bq + x))
    return a, b


@dataclass
class FieldTrace:
    alpha: object
    values: np.ndarray          # floats delta_0 .. delta_n
    scaled: np.ndarray | None = None   # exact: delta * den as integers
    den: int = 1

    def exact(self, i: int) -> Fraction:
        if self.scaled is None:
            raise DomainError("trace was computed in floats")
        return Fraction(int(self.scaled[i]), self.den)

    def __len__(self):
        return len(self.values)


def induced_field(eps, alpha, n: int | None = None, delta0=None) -> FieldTrace:
    """delta_0 .. delta_n; delta_0 defaults to alpha + 2."""
    e = signs_array(eps)
    n = e.size if n is None else n
    if n > e.size:
        raise DomainError("n exceeds the length of eps")
    alpha = parse_alpha(alpha)
    d0 = alpha + 2 if delta0 is None else delta0
    if isinstance(alpha, Fraction) and isinstance(d0, (int, Fraction)):
        d0 = Fraction(d0)
        den = math.lcm(alpha.denominator, d0.denominator)
        A, two = int(alpha * den), 2 * den
        d = int(d0 * den)
        out = np.empty(n + 1, dtype=np.int64)
        out[0] = d
        el = e.tolist()
        for i in range(n):
            m = d if -two <= d <= two else (two if d > 0 else -two)
            d = A + el[i] * m
            out[i + 1] = d
        return FieldTrace(alpha, out / den, out, den)
    a = float(alpha)
    d = float(d0)
    out = np.empty(n + 1)
    out[0] = d
    el = e.tolist()
    for i in range(n):
        sg = 0.0 if abs(d) < SNAP else math.copysign(1.0, d)
        d = a + el[i] * sg * min(2.0, abs(d))
        out[i + 1] = d
    return FieldTrace(alpha, out)


def ising_automaton(alpha) -> SignedAutomaton:
    """States A, B1..B(m+1), C1..Cm with m = floor(4/alpha); Thue-Morse at alpha = 0."""
    alpha = parse_alpha(alpha)
    if alpha == 0:
        a = thue_morse()
        a.output = {"A": 2, "B": -2}
        a.name = "ising(0)"
        return a
    m = int(math.floor(4 / alpha)) if isinstance(alpha, Fraction) else int(math.floor(4 / alpha + 1e-12))
    B = [f"B{i}" for i in range(1, m + 2)]
    C = [f"C{j}" for j in range(1, m + 1)]
    plus, minus = {"A": "A"}, {"A": "B1"}
    for i in range(1, m + 1):
        plus[f"B{i}"] = f"B{i + 1}"
        minus[f"B{i}"] = f"C{i}"
    plus[f"B{m + 1}"], minus[f"B{m + 1}"] = "A", "B1"
    for j in range(1, m + 1):
        plus[f"C{j}"] = "A" if j == 1 else f"C{j - 1}"
        minus[f"C{j}"] = f"B{j}"
    out = {"A": alpha + 2}
    out.update({f"B{i}": i * alpha - 2 for i in range(1, m + 2)})
    out.update({f"C{j}": 2 - (j - 1) * alpha for j in range(1, m + 1)})
    return SignedAutomaton(["A"] + B + C, "A", plus, minus, out, f"ising({alpha})")


def automaton_trace(aut: SignedAutomaton, eps, n: int | None = None) -> list:
    """Outputs of the initial state and of the states after each sign."""
    e = signs_array(eps)
    n = e.size if n is None else n
    s = aut.initial
    out = [aut.output[s]]
    for i in range(n):
        s = aut.plus[s] if e[i] > 0 else aut.minus[s]
        out.append(aut.output[s])
    return out


def output_mean(alpha) -> Fraction:
    aut = ising_automaton(alpha)
    return sum((Fraction(v) if not isinstance(v, float) else v for v in aut.output.values()),
               Fraction(0)) / len(aut.states)


def random_signs(n: int, seed: int) -> np.ndarray:
    if seed is None:
        raise DomainError("a seed is required")
    rng = np.random.Generator(np.random.PCG64(seed))
    return 1 - 2 * rng.integers(0, 2, size=n, dtype=np.int64)


@dataclass
class ErgodicReport:
    alpha: object
    N: int
    average: float
    running: np.ndarray
    seed: int | None = None
    prng: str = PRNG
    source: str = "random"

    def liminf(self, tail: float = 0.5) -> float:
        return float(self.running[int(len(self.running) * (1 - tail)):].min())

    def limsup(self, tail: float = 0.5) -> float:
        return float(self.running[int(len(self.running) * (1 - tail)):].max())

    def to_csv(self, every: int = 1) -> str:
        rows = ["n,delta,avg"]
        for i in range(0, self.N, every):
            rows.append(f"{i},{self._delta[i]:.12g},{self.running[i]:.12g}")
        return "\n".join(rows) + "\n"


def ergodic_average(source, alpha, N: int, seed: int | None = None, delta0=None) -> ErgodicReport:
    """Running means (1/n) sum_{k<n} delta_k for n = 1..N.

    source: "random" (seeded), a named zoo sequence cast to +/-1, or an array.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    name = source if isinstance(source, str) else "array"
    if isinstance(source, str):
        if source == "random":
            eps = random_signs(N, seed)
        else:
            from . import zoo
            eps = np.sign(zoo.get(source).values(N)).astype(np.int64)
    else:
        eps = signs_array(source)[:N]
    tr = induced_field(eps, alpha, N - 1, delta0)
    run = np.cumsum(tr.values) / np.arange(1, N + 1)
    rep = ErgodicReport(parse_alpha(alpha), N, float(run[-1]), run, seed, PRNG, name)
    rep._delta = tr.values
    return rep


def block_signs(p: int, q: int) -> str:
    """Inputs for the closed path from A: p visits to A, then q rounds B1 C1, back to A."""
    if p < 1 or q < 0:
        raise DomainError("need p >= 1 and q >= 0")
    if q == 0:
        return "+" * p
    return "+" * (p - 1) + "--" * q + "+"


def block_average(alpha, p: int, q: int) -> Fraction:
    alpha = parse_alpha(alpha)
    return (p * (alpha + 2) + q * alpha) / Fraction(p + 2 * q)


def ratio_for(alpha, target) -> Fraction:
    """lambda = p/q with ((alpha+2) lambda + alpha) / (lambda + 2) = target."""
    alpha, target = Fraction(parse_alpha(alpha)), Fraction(target)
    if not max(alpha / 2, alpha - 2) <= target < alpha + 2:
        raise DomainError("target outside [max(alpha/2, alpha-2), alpha+2)")
    return (2 * target - alpha) / (alpha + 2 - target)


@dataclass
class ScheduleReport:
    eps: np.ndarray
    running: np.ndarray
    liminf: float
    limsup: float
    switches: list = field(default_factory=list)


def two_ratio_schedule(alpha, beta, beta_p, phases: int = 3, tol: float = 5e-3,
                       max_den: int = 64, max_len: int = 20_000_000) -> ScheduleReport:
    """Concatenate blocks P(p, q) alternating between lambda(beta') and lambda(beta),
    switching once the running mean is within tol (relative) of the current target.

    Each phase must outgrow everything before it by a factor of order 1/tol,
    so only a few phases fit; liminf and limsup are read off the running
    mean after the first phase.
    """
    alpha = parse_alpha(alpha)
    if not 0 < alpha < 4:
        raise DomainError("the block construction needs 0 < alpha < 4")
    if beta > beta_p:
        raise DomainError("need beta <= beta'")
    lam = [ratio_for(alpha, Fraction(beta).limit_denominator(10 ** 6)),
           ratio_for(alpha, Fraction(beta_p).limit_denominator(10 ** 6))]
    blocks = []
    for lm in lam:
        fr = Fraction(lm).limit_denominator(max_den)
        p, q = fr.numerator, fr.denominator
        if p == 0:
            p, q = 1, max_den
        b = signs_array(block_signs(p, q))
        blocks.append(b)
    targets = [float(beta), float(beta_p)]
    aut = ising_automaton(alpha)
    parts, total, count = [], 0.0, 0
    outs = {s: float(v) for s, v in aut.output.items()}
    state = aut.initial
    total, count = outs[state], 1          # delta_0 from the initial state
    switches = []
    for ph in range(phases):
        k = 1 - ph % 2        # start high: delta_0 = alpha + 2 is already near beta'
        tgt = targets[k]
        blk = blocks[k]
        bs = "".join("+" if x > 0 else "-" for x in blk)
        # walk the block once to learn its contribution (it starts and ends at A)
        s, add = state, 0.0
        for c in bs:
            s = aut.step(s, c)
            add += outs[s]
        while True:
            parts.append(blk)
            total += add
            count += len(blk)
            avg = total / count
            # the first phase also outlasts a few low blocks, so the A visits
            # that open a low block cannot lift the mean past tolerance
            if abs(avg - tgt) <= tol * abs(tgt) and (ph or count >= 4 * len(blocks[0])):
                break
            if count > max_len:
                raise DomainError("schedule exceeded max_len before reaching the target")
        switches.append(count)
    eps = np.concatenate(parts)
    tr = induced_field(eps, alpha)
    run = np.cumsum(tr.values) / np.arange(1, len(tr.values) + 1)
    start = switches[0]
    seg = run[start - 1:]
    return ScheduleReport(eps, run, float(seg.min()), float(seg.max()), switches)


def closed_form_opacity_squared(alpha) -> Fraction:
    alpha = parse_alpha(alpha)
    if alpha == 0:
        return Fraction(1)
    m = int(math.floor(4 / alpha)) if isinstance(alpha, Fraction) else int(math.floor(4 / alpha + 1e-12))
    mp = max(1, m)
    return Fraction(mp - 1, mp)


def ising_opacity(alpha, method: str = "auto") -> float:
    alpha = parse_alpha(alpha)
    if alpha == 0:
        return 1.0
    got = opacity_squared(ising_automaton(alpha), method)
    want = closed_form_opacity_squared(alpha)
    if got != want:
        raise RuntimeError(f"opacity {got} disagrees with closed form {want}")
    return math.sqrt(got)

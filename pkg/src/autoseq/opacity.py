"""Signed (+/-) automata and their opacity.

Alignment: the state paired with eps_n is the one reached after reading
eps_n, so the identity automaton maps + - - + + - to A B B A A B.

Two exact structural routes are provided for sup_P 2 nu(P) / l(P):
  * subset search: for each set T of candidate strong states, a shortest
    closed walk entering every state of T once by + and once by -
    (BFS over state x requirement mask);
  * an integer program over arrow multiplicities (a circulation), which
    scales to the Ising automata where the subset count explodes.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .words import DomainError

SIGNS = ("+", "-")


@dataclass
class SignedAutomaton:
    states: list
    initial: str
    plus: dict
    minus: dict
    output: dict | None = None
    name: str = ""

    def __post_init__(self):
        if self.initial not in self.states:
            raise DomainError("initial state not in states")
        for s in self.states:
            for tbl in (self.plus, self.minus):
                if tbl.get(s) not in self.states:
                    raise DomainError(f"transition from {s!r} missing or unknown")

    def step(self, s, e):
        if e in ("+", 1, "1"):
            return self.plus[s]
        if e in ("-", -1, "0"):
            return self.minus[s]
        raise DomainError(f"bad sign {e!r}")

    def arrows(self) -> list[tuple]:
        """(source, sign, target) for every arrow."""
        return [(s, "+", self.plus[s]) for s in self.states] + \
               [(s, "-", self.minus[s]) for s in self.states]

    def incoming(self, s) -> tuple[int, int]:
        return (sum(1 for t in self.states if self.plus[t] == s),
                sum(1 for t in self.states if self.minus[t] == s))

    def is_strongly_connected(self) -> bool:
        def reach(adj, src):
            seen, todo = {src}, [src]
            while todo:
                u = todo.pop()
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        todo.append(v)
            return seen
        fwd = {s: {self.plus[s], self.minus[s]} for s in self.states}
        back = {s: set() for s in self.states}
        for s, _, t in self.arrows():
            back[t].add(s)
        s0 = self.states[0]
        return len(reach(fwd, s0)) == len(self.states) == len(reach(back, s0))

    def is_homogeneous(self) -> bool:
        return all(sum(self.incoming(s)) == 2 for s in self.states)

    def kind(self, s) -> str | None:
        p, m = self.incoming(s)
        if p == 1 and m == 1:
            return "a"
        if m == 0 and p > 0:
            return "b"
        if p == 0 and m > 0:
            return "c"
        return None

    def is_extended_class(self) -> bool:
        return all(self.kind(s) is not None for s in self.states)

    def candidates(self) -> list:
        """States with both a + and a - incoming arrow (the only possible strong states)."""
        return [s for s in self.states if all(self.incoming(s))]

    def reachable(self) -> list:
        seen, todo = {self.initial}, [self.initial]
        while todo:
            u = todo.pop()
            for v in (self.plus[u], self.minus[u]):
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return [s for s in self.states if s in seen]

    # JSON: k = 2 automata, digit 1 = +, digit 0 = -
    def to_json(self) -> dict:
        d = {"k": 2, "reading": "direct", "initial": self.initial, "states": list(self.states),
             "transitions": {s: [self.minus[s], self.plus[s]] for s in self.states}}
        d["output"] = {s: (self.output or {}).get(s) for s in self.states}
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, d: dict) -> "SignedAutomaton":
        if int(d.get("k", 2)) != 2:
            raise DomainError("signed automata need k = 2")
        st = [str(s) for s in d["states"]]
        tr = {str(s): [str(t) for t in row] for s, row in d["transitions"].items()}
        out = d.get("output")
        return cls(st, str(d["initial"]), {s: tr[s][1] for s in st}, {s: tr[s][0] for s in st},
                   dict(out) if out else None, d.get("name", ""))

    @classmethod
    def load(cls, path) -> "SignedAutomaton":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def _sa(name, plus, minus, initial="A", output=None):
    states = list(plus)
    return SignedAutomaton(states, initial, dict(plus), dict(minus), output, name)


def identity() -> SignedAutomaton:
    return _sa("identity", {"A": "A", "B": "A"}, {"A": "B", "B": "B"}, output={"A": 1, "B": -1})


def constant() -> SignedAutomaton:
    return _sa("constant", {"A": "A"}, {"A": "A"})


def thue_morse() -> SignedAutomaton:
    return _sa("thue-morse", {"A": "A", "B": "B"}, {"A": "B", "B": "A"})


def worked_example() -> SignedAutomaton:
    """Three states: A loops on +, A -> B on -, B -> C on both, C -> A on +, C -> B on -."""
    return _sa("worked", {"A": "A", "B": "C", "C": "A"}, {"A": "B", "B": "C", "C": "B"})


BUILTINS = {"identity": identity, "constant": constant, "thue-morse": thue_morse,
            "worked": worked_example}


@dataclass(frozen=True)
class UPSignal:
    pre: str
    period: str

    def __post_init__(self):
        if not self.period:
            raise DomainError("period must be non-empty")
        if set(self.pre + self.period) - set("+-"):
            raise DomainError("signals use + and -")

    def __getitem__(self, n: int) -> str:
        if n < len(self.pre):
            return self.pre[n]
        return self.period[(n - len(self.pre)) % len(self.period)]

    @classmethod
    def parse(cls, spec: str) -> "UPSignal":
        spec = spec.strip()
        if "(" in spec:
            pre, rest = spec.split("(", 1)
            return cls(pre, rest.rstrip(")^inf∞").rstrip(")"))
        return cls("", spec)


def run(aut: SignedAutomaton, eps, n: int, include_initial: bool = False) -> list:
    """States after reading eps_0 .. eps_{n-1} (optionally preceded by the initial state)."""
    s = aut.initial
    out = [s] if include_initial else []
    for i in range(n):
        s = aut.step(s, eps[i])
        out.append(s)
    return out[:n] if include_initial else out


def _cycle(aut, eps: UPSignal, start=None):
    """Pairs (eps_n, state after eps_n) over the eventual cycle."""
    s = aut.initial if start is None else start
    n = 0
    for n in range(len(eps.pre)):
        s = aut.step(s, eps[n])
    n = len(eps.pre)
    P = len(eps.period)
    seen = {}
    pairs = []
    while True:
        key = ((n - len(eps.pre)) % P, s)
        if key in seen:
            return pairs[seen[key]:]
        seen[key] = len(pairs)
        e = eps[n]
        s = aut.step(s, e)
        pairs.append((1 if e == "+" else -1, s))
        n += 1


def distortion_squared(aut, eps: UPSignal, start=None) -> Fraction:
    """inf over outputs of the limiting mean square gap, exact.

    On the cycle the best output of a state is the mean of the signs that
    lead into it; what is left is sum_t (count_t - sum_t^2 / count_t) / len.
    """
    pairs = _cycle(aut, eps, start)
    cnt, tot = {}, {}
    for e, t in pairs:
        cnt[t] = cnt.get(t, 0) + 1
        tot[t] = tot.get(t, 0) + e
    resid = sum(Fraction(cnt[t]) - Fraction(tot[t] ** 2, cnt[t]) for t in cnt)
    return resid / len(pairs)


def distortion(aut, eps, start=None) -> float:
    if isinstance(eps, str):
        eps = UPSignal.parse(eps)
    return math.sqrt(distortion_squared(aut, eps, start))


@dataclass
class Estimate:
    value: float
    squared: Fraction
    start: str | None
    period: str


def opacity_lower_estimate(aut: SignedAutomaton, p_max: int = 8) -> Estimate:
    """Max distortion over periods of length <= p_max from every reachable state.

    Every reachable state is the end of some preperiod, and the preperiod
    does not enter the limit, so starting there covers all UP signals with
    period length <= p_max.
    """
    best = Estimate(0.0, Fraction(0), None, "+")
    for L in range(1, p_max + 1):
        for per in itertools.product("+-", repeat=L):
            per = "".join(per)
            for s in aut.reachable():
                d2 = distortion_squared(aut, UPSignal("", per), start=s)
                if d2 > best.squared:
                    best = Estimate(math.sqrt(d2), d2, s, per)
    return best


def _check_hypotheses(aut):
    if not aut.is_strongly_connected() or not (aut.is_homogeneous() or aut.is_extended_class()):
        raise DomainError("formula hypotheses not met")


def shortest_covering_walk(aut: SignedAutomaton, T) -> int | None:
    """Length of a shortest closed walk entering each state of T by + and by -."""
    T = list(T)
    if not T:
        return None
    bit = {s: i for i, s in enumerate(T)}
    full = (1 << (2 * len(T))) - 1
    src = T[0]
    dist = {(src, 0): 0}
    q = deque([(src, 0)])
    while q:
        s, m = q.popleft()
        d = dist[(s, m)]
        for sign, tbl in (("+", aut.plus), ("-", aut.minus)):
            t = tbl[s]
            m2 = m
            if t in bit:
                m2 |= 1 << (2 * bit[t] + (sign == "-"))
            if t == src and m2 == full:
                return d + 1
            if (t, m2) not in dist:
                dist[(t, m2)] = d + 1
                q.append((t, m2))
    return None


def _subset_search(aut, max_states=24, max_subset=12):
    cand = aut.candidates()
    if len(aut.states) > max_states:
        raise DomainError(f"subset search cap exceeded ({max_states} states)")
    if len(cand) > max_subset:
        raise DomainError(f"subset search cap exceeded ({max_subset} candidate states)")
    best = Fraction(0)
    for r in range(1, len(cand) + 1):
        for T in itertools.combinations(cand, r):
            ell = shortest_covering_walk(aut, T)
            if ell is not None:
                best = max(best, Fraction(2 * r, ell))
    return best


def _milp_search(aut):
    """max over k of 2k / l_k, l_k = least total multiplicity of a circulation
    with at least k states entered by both signs.

    Each weakly connected piece of a circulation's support is one closed walk,
    and the ratio of a union is a mediant of the pieces' ratios, so the
    optimum over circulations equals the optimum over closed walks.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp
    arrows = aut.arrows()
    cand = aut.candidates()
    if not cand:
        return Fraction(0)
    E, C = len(arrows), len(cand)
    nv = 2 * E + C           # x_e, z_e, y_s
    cidx = {s: i for i, s in enumerate(cand)}
    sidx = {s: i for i, s in enumerate(aut.states)}
    rows, lo, hi = [], [], []

    def row():
        return np.zeros(nv)

    for s in aut.states:                       # flow conservation
        r = row()
        for e, (u, _, v) in enumerate(arrows):
            if v == s:
                r[e] += 1
            if u == s:
                r[e] -= 1
        rows.append(r); lo.append(0); hi.append(0)
    for e in range(E):                         # z_e <= x_e
        r = row(); r[E + e] = 1; r[e] = -1
        rows.append(r); lo.append(-np.inf); hi.append(0)
    for s in cand:                             # y_s <= entries by + and by -
        for sign in SIGNS:
            r = row(); r[2 * E + cidx[s]] = 1
            for e, (u, sg, v) in enumerate(arrows):
                if v == s and sg == sign:
                    r[E + e] = -1
            rows.append(r); lo.append(-np.inf); hi.append(0)
    ky = row(); ky[2 * E:] = 1
    A = np.array(rows + [ky])
    ub = np.concatenate([np.full(E, 2 * len(aut.states) * C + 2), np.ones(E + C)])
    cost = np.concatenate([np.ones(E), np.zeros(E + C)])
    best = Fraction(0)
    for k in range(1, C + 1):
        res = milp(cost, constraints=LinearConstraint(A, np.array(lo + [k]), np.array(hi + [np.inf])),
                   integrality=np.ones(nv), bounds=Bounds(np.zeros(nv), ub))
        if res.status != 0:
            break
        ell = int(round(res.fun))
        best = max(best, Fraction(2 * k, ell))
    return best


def opacity_squared(aut: SignedAutomaton, method: str = "auto", **caps) -> Fraction:
    _check_hypotheses(aut)
    if method == "auto":
        method = "subset" if len(aut.candidates()) <= 8 else "milp"
    if method == "subset":
        return _subset_search(aut, **caps)
    if method == "milp":
        return _milp_search(aut)
    raise DomainError(f"unknown method {method!r}")


def opacity_formula(aut: SignedAutomaton, method: str = "auto", **caps) -> float:
    return math.sqrt(opacity_squared(aut, method, **caps))


def walk_enumeration(aut: SignedAutomaton, max_len: int = 16) -> Fraction:
    """Brute force: max of 2 nu / l over every closed walk of length <= max_len."""
    idx = {s: i for i, s in enumerate(aut.states)}
    n = len(aut.states)
    if n > 16:
        raise DomainError("walk enumeration is for tiny automata")
    P = np.array([idx[aut.plus[s]] for s in aut.states])
    M = np.array([idx[aut.minus[s]] for s in aut.states])
    best = Fraction(0)
    for s0 in range(n):
        cur = np.array([s0])
        pm = np.zeros(1, dtype=np.int64)     # states entered by +
        mm = np.zeros(1, dtype=np.int64)     # states entered by -
        for ell in range(1, max_len + 1):
            tp, tm = P[cur], M[cur]
            cur = np.concatenate([tp, tm])
            pm = np.concatenate([pm | (1 << tp), pm])
            mm = np.concatenate([mm, mm | (1 << tm)])
            closed = cur == s0
            if closed.any():
                both = pm[closed] & mm[closed]
                nu = max(bin(int(b)).count("1") for b in np.unique(both))
                best = max(best, Fraction(2 * nu, ell))
    return best

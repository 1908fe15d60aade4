"""k-automata with output.

Direct reading consumes the base-k digits of n most significant first.
Reverse reading consumes the written word from its last character to its
first, that is least significant digit first. n = 0 is the empty word, so
eval(0) is the output of the initial state.

An output value of None marks a state whose output is irrelevant; reaching
it from a canonical input raises.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .words import Coding, DomainError, Morphism


def digits(n: int, k: int) -> list[int]:
    """Canonical base-k expansion, most significant digit first; [] for 0."""
    if n < 0:
        raise DomainError("negative input")
    out = []
    while n:
        n, d = divmod(n, k)
        out.append(d)
    return out[::-1]


def from_digits(ds, k: int) -> int:
    n = 0
    for d in ds:
        n = n * k + int(d)
    return n


@dataclass
class KAutomaton:
    k: int
    states: list
    initial: str
    transitions: dict
    output: dict
    reading: str = "reverse"
    offset: int = 0
    name: str = ""
    _tables: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.k < 2:
            raise DomainError("k must be at least 2")
        if self.reading not in ("direct", "reverse"):
            raise DomainError("reading must be 'direct' or 'reverse'")
        if self.initial not in self.states:
            raise DomainError("initial state not in states")
        for s in self.states:
            row = self.transitions.get(s)
            if row is None or len(row) != self.k:
                raise DomainError(f"transitions of {s!r} must list {self.k} successors")
            for t in row:
                if t not in self.states:
                    raise DomainError(f"unknown successor {t!r} of {s!r}")
            if s not in self.output:
                raise DomainError(f"no output for state {s!r}")

    def step(self, state, d: int):
        return self.transitions[state][d]

    def run_word(self, ds, state=None):
        """Feed digits in the order given and return the final state."""
        s = self.initial if state is None else state
        for d in ds:
            s = self.transitions[s][int(d)]
        return s

    def state_of(self, n: int):
        ds = digits(n + self.offset, self.k)
        if self.reading == "reverse":
            ds = ds[::-1]
        return self.run_word(ds)

    def eval(self, n: int):
        s = self.state_of(n)
        out = self.output[s]
        if out is None:
            raise DomainError(f"undefined output (state {s!r} reached from input {n})")
        return out

    def eval_word(self, word: str):
        """Evaluate a written digit word (leading zeros allowed)."""
        ds = [int(c) for c in word]
        if any(d >= self.k for d in ds):
            raise DomainError("digit out of range")
        if self.reading == "reverse":
            ds = ds[::-1]
        s = self.run_word(ds)
        out = self.output[s]
        if out is None:
            raise DomainError(f"undefined output (state {s!r})")
        return out

    def _np_tables(self):
        if self._tables is None:
            idx = {s: i for i, s in enumerate(self.states)}
            T = np.array([[idx[self.transitions[s][d]] for s in self.states]
                          for d in range(self.k)], dtype=np.int64)
            self._tables = (idx, T)
        return self._tables

    def state_indices(self, n_max: int, start: int = 0) -> np.ndarray:
        """Vectorized state_of over [start, start + n_max)."""
        idx, T = self._np_tables()
        n = np.arange(start, start + n_max, dtype=np.int64) + self.offset
        st = np.full(n.shape, idx[self.initial], dtype=np.int64)
        if n.size == 0:
            return st
        top = int(n.max())
        npos = len(digits(top, self.k)) if top > 0 else 0
        powers = [self.k ** j for j in range(npos)]
        order = range(npos) if self.reading == "reverse" else range(npos - 1, -1, -1)
        for j in order:
            p = powers[j]
            active = n >= p
            d = (n[active] // p) % self.k
            st[active] = T[d, st[active]]
        return st

    def generate(self, n_max: int, start: int = 0) -> list:
        st = self.state_indices(n_max, start)
        outs = [self.output[s] for s in self.states]
        bad = [i for i, o in enumerate(outs) if o is None]
        if bad and np.isin(st, bad).any():
            first = int(np.flatnonzero(np.isin(st, bad))[0]) + start
            raise DomainError(f"undefined output (reached from input {first})")
        return [outs[i] for i in st]

    def to_json(self) -> dict:
        d = {
            "k": self.k,
            "reading": self.reading,
            "initial": self.initial,
            "states": list(self.states),
            "transitions": {s: list(self.transitions[s]) for s in self.states},
            "output": {s: self.output[s] for s in self.states},
        }
        if self.offset:
            d["offset"] = self.offset
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, d: dict) -> "KAutomaton":
        return cls(
            k=int(d["k"]),
            states=[str(s) for s in d["states"]],
            initial=str(d["initial"]),
            transitions={str(s): [str(t) for t in row] for s, row in d["transitions"].items()},
            output={str(s): v for s, v in d["output"].items()},
            reading=d.get("reading", "reverse"),
            offset=int(d.get("offset", 0)),
        )

    @classmethod
    def load(cls, path) -> "KAutomaton":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def generate(aut: KAutomaton, n_max: int) -> list:
    return aut.generate(n_max)


def leading_zero_invariant(aut: KAutomaton, n_max: int = 256, pad: int = 3) -> bool:
    """True if writing extra leading zeros never changes the output."""
    for n in range(n_max):
        ds = digits(n + aut.offset, aut.k)
        base = aut.output[aut.run_word(ds[::-1] if aut.reading == "reverse" else ds)]
        padded = [0] * pad + ds
        if aut.reading == "reverse":
            padded = padded[::-1]
        if aut.output[aut.run_word(padded)] != base:
            return False
    return True


def from_uniform_morphism(m: Morphism, seed, c: Coding | None = None) -> KAutomaton:
    if not m.is_uniform():
        raise DomainError("morphism is not uniform")
    seed = str(seed)
    if not m.is_prolongable(seed):
        raise DomainError("no fixed point from seed")
    letters = list(m.alphabet.letters)
    c = c or Coding.identity(letters)
    return KAutomaton(
        k=m.length,
        states=letters,
        initial=seed,
        transitions={a: list(m.images[a]) for a in letters},
        output={a: c.map[a] for a in letters},
        reading="direct",
    )


def kernel_automaton(seq, k: int, witness_len: int, max_states: int = 64) -> KAutomaton:
    """Reverse-reading automaton built from the k-kernel n -> u(k^e n + r).

    Kernel elements are identified by their first witness_len terms, so two
    elements that only differ later get merged. The result is checked on
    [0, 2*witness_len) before it is returned.
    """
    if witness_len < 1:
        raise DomainError("witness_len must be >= 1")
    cache = {"u": list(seq.prefix(witness_len))}

    def term_block(e: int, r: int):
        need = k ** e * (witness_len - 1) + r + 1
        if need > len(cache["u"]):
            cache["u"] = list(seq.prefix(max(need, 2 * len(cache["u"]))))
        u = cache["u"]
        step = k ** e
        return tuple(u[r + step * i] for i in range(witness_len))

    keys = {}
    names = []
    elems = []
    trans = {}

    def lookup(e, r):
        key = term_block(e, r)
        if key not in keys:
            if len(names) >= max_states:
                raise DomainError(
                    f"kernel exceeds max_states={max_states} "
                    "(sequence may not be k-automatic at this witness length)")
            name = f"q{len(names)}"
            keys[key] = name
            names.append(name)
            elems.append((e, r, key))
        return keys[key]

    lookup(0, 0)
    i = 0
    while i < len(elems):
        e, r, _ = elems[i]
        name = names[i]
        trans[name] = [lookup(e + 1, r + d * k ** e) for d in range(k)]
        i += 1
    output = {names[j]: elems[j][2][0] for j in range(len(names))}
    aut = KAutomaton(k=k, states=names, initial="q0", transitions=trans,
                     output=output, reading="reverse", name="kernel")
    check = list(seq.prefix(2 * witness_len))
    got = aut.generate(2 * witness_len)
    if [str(x) for x in got] != [str(x) for x in check]:
        raise DomainError("kernel automaton disagrees with the sequence on the verification range")
    return aut


def _aut(name, k, states, initial, trans, out, reading="reverse", offset=0):
    return KAutomaton(k=k, states=list(states), initial=initial,
                      transitions={s: list(v) for s, v in trans.items()},
                      output=dict(out), reading=reading, offset=offset, name=name)


def worked_example() -> KAutomaton:
    """Three-state reverse automaton of the introductory example."""
    return _aut("worked", 2, "ABC", "A",
                {"A": "AB", "B": "CA", "C": "AC"},
                {"A": "0", "B": "0", "C": "1"})


def _cf(g: int) -> KAutomaton:
    # H reads 0 -> G, 1 -> H; the swapped labelling breaks at index 22
    t = {"A": "AB", "B": "CD", "C": "EF", "D": "CD",
         "E": "AB", "F": "GH", "G": "EF", "H": "GH"}
    out = {"A": g + 2, "B": g, "C": g, "D": g - 2,
           "E": g, "F": g + 2, "G": g - 2, "H": g}
    return _aut(f"cf({g})", 2, "ABCDEFGH", "A", t, out, reading="direct")


def _hanoi() -> KAutomaton:
    # upper case letters are the inverse moves
    t = {
        "A": ["B", "J"], "B": ["A", "C"],
        "C": ["D", "H"], "D": ["C", "E"], "E": ["F", "D"],
        "F": ["E", "G"], "G": ["H", "F"], "H": ["G", "C"],
        "J": ["P", "K"], "K": ["L", "J"], "L": ["K", "M"],
        "M": ["N", "L"], "N": ["M", "P"], "P": ["J", "N"],
    }
    out = {"A": None, "B": None, "C": "C", "D": "C", "E": "A", "F": "A",
           "G": "B", "H": "B", "J": "a", "K": "b", "L": "b", "M": "c",
           "N": "c", "P": "a"}
    return _aut("hanoi-rev", 2, list(t), "A", t, out, offset=1)


BUILTIN_NAMES = ("tm-rev", "paperfold-rev", "paperfold-direct", "rudin-shapiro-rev",
                 "period-doubling-rev", "hanoi-rev", "cf(g)", "worked")


def builtin(name: str) -> KAutomaton:
    name = name.strip()
    if name == "tm-rev":
        return _aut(name, 2, "AB", "A", {"A": "AB", "B": "BA"}, {"A": "0", "B": "1"})
    if name == "paperfold-rev":
        return _aut(name, 2, "ABCD", "A",
                    {"A": "BA", "B": "CD", "C": "CC", "D": "DD"},
                    {"A": "1", "B": "1", "C": "1", "D": "0"})
    if name == "paperfold-direct":
        return _aut(name, 2, ["A'", "B'", "C'", "D'"], "A'",
                    {"A'": ["A'", "B'"], "B'": ["C'", "B'"],
                     "C'": ["A'", "D'"], "D'": ["C'", "D'"]},
                    {"A'": "1", "B'": "1", "C'": "0", "D'": "0"}, reading="direct")
    if name == "rudin-shapiro-rev":
        return _aut(name, 2, "ABCD", "A",
                    {"A": "AB", "B": "AC", "C": "DB", "D": "DC"},
                    {"A": "+", "B": "+", "C": "-", "D": None})
    if name == "period-doubling-rev":
        return _aut(name, 2, "ABCD", "A",
                    {"A": "CB", "B": "DA", "C": "CC", "D": "DD"},
                    {"A": "0", "B": "1", "C": "0", "D": "1"})
    if name == "hanoi-rev":
        return _hanoi()
    if name == "worked":
        return worked_example()
    if name.startswith("cf(") and name.endswith(")"):
        g = int(name[3:-1])
        if g < 3:
            raise DomainError("cf automaton needs g >= 3")
        return _cf(g)
    raise DomainError(f"unknown builtin automaton {name!r}")

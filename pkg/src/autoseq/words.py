"""Finite words, morphisms, codings and a few word operators.

A word is a tuple of letters and a letter is a short string. Plain strings
are accepted wherever a word is expected and are split into characters.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Mapping, Sequence


class DomainError(ValueError):
    pass


Word = tuple


def as_word(w) -> tuple:
    if isinstance(w, str):
        return tuple(w)
    return tuple(str(x) for x in w)


def show(w, sep: str = "") -> str:
    return sep.join(str(x) for x in w)


@dataclass(frozen=True)
class Alphabet:
    letters: tuple

    def __post_init__(self):
        if not self.letters:
            raise DomainError("empty alphabet")
        if len(set(self.letters)) != len(self.letters):
            raise DomainError("duplicate letters in alphabet")

    def index(self, a) -> int:
        return self.letters.index(a)

    def __contains__(self, a) -> bool:
        return a in self.letters

    def __len__(self) -> int:
        return len(self.letters)


class Morphism:
    def __init__(self, images: Mapping):
        self.images = {str(a): as_word(v) for a, v in images.items()}
        self.alphabet = Alphabet(tuple(self.images))
        for a, img in self.images.items():
            for b in img:
                if b not in self.images:
                    raise DomainError(f"image of {a!r} uses letter {b!r} outside the alphabet")

    def __repr__(self):
        body = ", ".join(f"{a}->{show(v)}" for a, v in self.images.items())
        return f"Morphism({body})"

    def __call__(self, w):
        return apply_morphism(self, w)

    def is_uniform(self, k: int | None = None) -> bool:
        lens = {len(v) for v in self.images.values()}
        if len(lens) != 1:
            return False
        return k is None or lens == {k}

    @property
    def length(self) -> int:
        if not self.is_uniform():
            raise DomainError("morphism is not uniform")
        return len(next(iter(self.images.values())))

    def is_prolongable(self, a) -> bool:
        img = self.images.get(a, ())
        return len(img) >= 2 and img[0] == a

    def compose(self, other: "Morphism") -> "Morphism":
        """self o other."""
        return Morphism({a: apply_morphism(self, v) for a, v in other.images.items()})

    def square(self) -> "Morphism":
        return self.compose(self)

    def to_text(self) -> str:
        return "\n".join(f"{a} -> {' '.join(v)}" for a, v in self.images.items())

    @classmethod
    def from_text(cls, text: str) -> "Morphism":
        """Parse lines `a -> a b c`. Letters are whitespace separated; an image
        written without spaces is split into characters."""
        images = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "->" not in line:
                raise DomainError(f"bad morphism line: {line!r}")
            lhs, rhs = (s.strip() for s in line.split("->", 1))
            toks = rhs.split()
            images[lhs] = tuple(toks) if len(toks) > 1 else as_word(rhs)
        return cls(images)


class Coding:
    def __init__(self, mapping: Mapping):
        self.map = {str(a): str(b) for a, b in mapping.items()}

    def __call__(self, w):
        return code(w, self)

    @property
    def source(self) -> Alphabet:
        return Alphabet(tuple(self.map))

    @classmethod
    def identity(cls, letters: Iterable) -> "Coding":
        return cls({a: a for a in letters})

    @classmethod
    def from_text(cls, text: str) -> "Coding":
        out = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=>" not in line:
                raise DomainError(f"bad coding line: {line!r}")
            lhs, rhs = (s.strip() for s in line.split("=>", 1))
            out[lhs] = rhs
        return cls(out)


def apply_morphism(m: Morphism, w) -> tuple:
    out = []
    for a in as_word(w):
        try:
            out.extend(m.images[a])
        except KeyError:
            raise DomainError(f"letter {a!r} not in alphabet") from None
    return tuple(out)


def fixed_point_prefix(m: Morphism, seed, n: int) -> tuple:
    """First n letters of the fixed point of m starting with seed.

    Images are expanded letter by letter: position i of the output is
    expanded once the output already holds the image of positions < i.
    """
    seed = str(seed)
    if not m.is_prolongable(seed):
        raise DomainError("no fixed point from seed")
    if n <= 0:
        return ()
    out = list(m.images[seed])
    i = 1
    while len(out) < n:
        if i >= len(out):
            raise DomainError("no fixed point from seed")
        out.extend(m.images[out[i]])
        i += 1
    return tuple(out[:n])


def code(w, c: Coding) -> tuple:
    try:
        return tuple(c.map[a] for a in as_word(w))
    except KeyError as e:
        raise DomainError(f"letter {e.args[0]!r} not mapped by coding") from None


def shuffle(w, v) -> tuple:
    """A0 B0 A1 B1 ... for |w| = |v| or |w| = |v| + 1."""
    w, v = as_word(w), as_word(v)
    if len(w) - len(v) not in (0, 1):
        raise DomainError(f"shuffle needs |w| = |v| or |v|+1, got {len(w)} and {len(v)}")
    out = []
    for i, a in enumerate(w):
        out.append(a)
        if i < len(v):
            out.append(v[i])
    return tuple(out)


def run_lengths(w) -> tuple:
    return tuple(sum(1 for _ in g) for _, g in groupby(as_word(w)))


def reverse_complement(w, complement: Coding) -> tuple:
    cm = complement.map
    for a, b in cm.items():
        if cm.get(b) != a:
            raise DomainError("complement is not an involution")
    return code(tuple(reversed(as_word(w))), complement)


def complement_word(w, pairs: Sequence = (("0", "1"),)) -> tuple:
    swap = {}
    for a, b in pairs:
        swap[a], swap[b] = b, a
    return tuple(swap.get(x, x) for x in as_word(w))

"""Two-dimensional uniform morphisms and Pascal's triangle modulo d.

Blocks are numpy integer arrays indexed [row m][column n].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .words import DomainError


class Morphism2D:
    def __init__(self, images: dict):
        if not images:
            raise DomainError("empty morphism")
        self.images = {a: np.asarray(b, dtype=np.int64) for a, b in images.items()}
        sides = {b.shape for b in self.images.values()}
        if len(sides) != 1:
            raise DomainError("all images must share one square side")
        (r, c), = sides
        if r != c or r < 2:
            raise DomainError("images must be k x k with k >= 2")
        self.k = r
        self.letters = sorted(self.images)
        for b in self.images.values():
            if not set(np.unique(b).tolist()) <= set(self.letters):
                raise DomainError("image uses a letter outside the alphabet")

    def __repr__(self):
        return f"Morphism2D(k={self.k}, letters={self.letters})"

    def _table(self):
        q = max(self.letters) + 1
        t = np.zeros((q, self.k, self.k), dtype=np.int64)
        for a, b in self.images.items():
            t[a] = b
        return t

    def apply(self, block: np.ndarray) -> np.ndarray:
        block = np.asarray(block, dtype=np.int64)
        n = block.shape[0]
        sub = self._table()[block]              # (n, n, k, k)
        return sub.transpose(0, 2, 1, 3).reshape(n * self.k, n * self.k)


# the 3 x 3 example: 0 -> zeros, 1 -> an X
EXAMPLE_3X3 = Morphism2D({0: [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
                          1: [[1, 0, 1], [0, 1, 0], [1, 0, 1]]})
SIERPINSKI_2X2 = Morphism2D({0: [[0, 0], [0, 0]], 1: [[1, 0], [1, 1]]})


def fixed_block(m2: Morphism2D, seed: int, depth: int) -> np.ndarray:
    if seed not in m2.images:
        raise DomainError("seed not in the alphabet")
    if m2.images[seed][0, 0] != seed:
        raise DomainError("seed is not prolongable (image does not start with it)")
    b = np.array([[seed]], dtype=np.int64)
    for _ in range(depth):
        b = m2.apply(b)
    return b


def pascal_mod(d: int, size: int) -> np.ndarray:
    """u[m][n] = C(m, n) mod d by the additive rule, rows m < size, columns n < size."""
    if d < 2:
        raise DomainError("d must be >= 2")
    if size < 1:
        raise DomainError("size must be >= 1")
    u = np.zeros((size, size), dtype=np.int64)
    row = np.zeros(size, dtype=np.int64)
    row[0] = 1 % d
    u[0] = row
    for m in range(1, size):
        nxt = row.copy()
        nxt[1:] = (row[1:] + row[:-1]) % d
        row = nxt
        u[m] = row
    return u


def selfsimilarity_check(b: np.ndarray, m2: Morphism2D) -> bool:
    """block[k i + r][k j + c] == image(block[i][j])[r][c] wherever both sides exist."""
    b = np.asarray(b)
    k = m2.k
    n = b.shape[0]
    if b.shape[0] != b.shape[1]:
        raise DomainError("block must be square")
    if n < k:
        raise DomainError("block smaller than the morphism side")
    top = b[:n // k, :n // k]
    if not set(np.unique(top).tolist()) <= set(m2.letters):
        return False
    img = m2.apply(top)
    return bool(np.array_equal(img, b[:img.shape[0], :img.shape[1]]))


def infer_morphism(b: np.ndarray, k: int) -> Morphism2D:
    """Read each letter's image off positions (k i + r, k j + c) of its first occurrence."""
    b = np.asarray(b, dtype=np.int64)
    n = b.shape[0] // k
    images = {}
    for i in range(n):
        for j in range(n):
            a = int(b[i, j])
            if a not in images:
                images[a] = b[k * i:k * i + k, k * j:k * j + k]
    letters = set(np.unique(b).tolist())
    for a in letters - set(images):
        images[a] = np.full((k, k), a)
    try:
        return Morphism2D(images)
    except DomainError:
        # an image mentions a letter never seen in the top part; close the alphabet
        for a in set(np.unique(np.stack(list(images.values()))).tolist()) - set(images):
            images[a] = np.full((k, k), a)
        return Morphism2D(images)


@dataclass
class KernelReport:
    ok: bool
    k: int
    window: int
    n_states: int
    reason: str = ""
    levels: list = field(default_factory=list)


def _smallest_prime_factor(d: int) -> int:
    p = 2
    while p * p <= d:
        if d % p == 0:
            return p
        p += 1
    return d


def substitution_consistency(grid: np.ndarray, k: int | None = None, window: int | None = None,
                             d: int | None = None) -> KernelReport:
    """Is the grid a coding of a fixed point of some k x k substitution?

    Equivalently, is its 2-D k-kernel n -> u(k^e m + r, k^e n + c) finite?
    Kernel elements are identified by their top-left window x window
    corner. An element too small to show a full window, yet unlike every
    known state, means the kernel did not close inside the grid. If it
    does close, the automaton is run (least significant digits first) on
    every cell and must reproduce the grid exactly.

    The grid has to be deep enough for the kernel to close: Pascal mod 8
    needs 81 or more rows, mod 16 more than 243.
    """
    g = np.asarray(grid, dtype=np.int64)
    S = g.shape[0]
    if k is None:
        if d is None:
            raise DomainError("give k or d")
        k = _smallest_prime_factor(d)
    if window is None:
        window = 3
    keys, states, trans = {}, [], {}

    def elem(e, r, c):
        step = k ** e
        return g[r::step, c::step]

    def key_of(a):
        return a[:window, :window].tobytes()

    def find(e, r, c):
        a = elem(e, r, c)
        if a.shape[0] < window or a.shape[1] < window:
            # too small to identify; accept only if it agrees with a known state on what it shows
            for i, (_, _, _, full) in enumerate(states):
                h, w = a.shape
                if np.array_equal(full[:h, :w], a):
                    return i
            return None
        kk = key_of(a)
        if kk not in keys:
            keys[kk] = len(states)
            states.append((e, r, c, a))
        return keys[kk]

    find(0, 0, 0)
    i = 0
    while i < len(states):
        e, r, c, _ = states[i]
        row = []
        for dr in range(k):
            for dc in range(k):
                j = find(e + 1, r + dr * k ** e, c + dc * k ** e)
                if j is None:
                    return KernelReport(False, k, window, len(states),
                                        f"kernel element at level {e + 1} matches no state")
                row.append(j)
        trans[i] = row
        i += 1
    # regenerate every cell through the automaton
    out = np.array([a[0, 0] for (_, _, _, a) in states])
    T = np.array([trans[s] for s in range(len(states))])
    m = np.arange(S)[:, None] * np.ones(S, dtype=np.int64)[None, :]
    n = m.T.copy()
    st = np.zeros((S, S), dtype=np.int64)
    mm, nn = m.copy(), n.copy()
    while (mm | nn).any():
        act = (mm > 0) | (nn > 0)
        dig = (mm % k) * k + (nn % k)
        st[act] = T[st[act], dig[act]]
        mm //= k
        nn //= k
    ok = bool(np.array_equal(out[st], g))
    return KernelReport(ok, k, window, len(states), "" if ok else "regenerated grid differs",
                        sorted({s[0] for s in states}))


def to_pgm(b: np.ndarray) -> str:
    b = np.asarray(b, dtype=np.int64)
    mx = max(int(b.max()), 1)
    rows = "\n".join(" ".join(str(int(v)) for v in r) for r in b)
    return f"P2\n{b.shape[1]} {b.shape[0]}\n{mx}\n{rows}\n"


def to_csv(b: np.ndarray) -> str:
    return "\n".join(",".join(str(int(v)) for v in r) for r in np.asarray(b)) + "\n"

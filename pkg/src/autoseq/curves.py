"""Lattice paths from turn words: self-avoidance, diameter, sausage area,
dimension estimates and the coordinate sums of dragon curves.

The path starts at the origin heading +x. A turn word of length n gives
n + 1 unit edges; lengths L below always count edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .words import DomainError

# headings in counter-clockwise order: +x, +y, -x, -y
_DIRS = np.array([(1, 0), (0, 1), (-1, 0), (0, -1)], dtype=np.int64)


@dataclass
class LatticePath:
    turns: str
    vertices: np.ndarray      # (n_edges + 1, 2) int64

    @property
    def n_edges(self) -> int:
        return len(self.vertices) - 1

    def edges(self, L: int | None = None) -> np.ndarray:
        L = self.n_edges if L is None else L
        return np.diff(self.vertices[:L + 1], axis=0)

    def is_cyclic(self) -> bool:
        return bool((self.vertices[0] == self.vertices[-1]).all())


def path_from_turns(w) -> LatticePath:
    w = "".join(w)
    if set(w) - {"L", "R"}:
        raise DomainError("turn words use only L and R")
    steps = np.fromiter((1 if c == "L" else -1 for c in w), dtype=np.int64, count=len(w))
    heading = np.concatenate(([0], np.cumsum(steps))) % 4
    v = np.zeros((len(w) + 2, 2), dtype=np.int64)
    v[1:] = np.cumsum(_DIRS[heading], axis=0)
    return LatticePath(w, v)


def _edge_keys(p: LatticePath, L: int | None = None) -> np.ndarray:
    """Each unit edge as (x_min, y_min, horizontal?) packed into one int64."""
    L = p.n_edges if L is None else L
    a, b = p.vertices[:L], p.vertices[1:L + 1]
    lo = np.minimum(a, b)
    horiz = (a[:, 1] == b[:, 1]).astype(np.int64)
    off = 1 << 20
    return ((lo[:, 0] + off) << 22 | (lo[:, 1] + off) << 1 | horiz)


def is_self_avoiding(p: LatticePath) -> bool:
    """No unit segment is traversed twice (touching vertices is allowed)."""
    k = _edge_keys(p)
    return bool(np.unique(k).size == k.size)


def _hull(points: np.ndarray) -> np.ndarray:
    pts = np.unique(points, axis=0)
    if len(pts) <= 2:
        return pts
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))].tolist()

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for q in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    for q in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    return np.array(lower[:-1] + upper[:-1])


def diameter(p: LatticePath, L: int | None = None) -> float:
    """Largest distance between two of the first L+1 vertices (via the hull)."""
    L = p.n_edges if L is None else L
    if L > p.n_edges or L < 0:
        raise DomainError("L exceeds the edge count")
    h = _hull(p.vertices[:L + 1]).astype(float)
    d = h[:, None, :] - h[None, :, :]
    return float(math.sqrt((d ** 2).sum(-1).max()))


def sausage_area(p: LatticePath, L: int | None = None, eps: float = 0.25) -> float:
    """Exact area of the eps-neighbourhood of the first L edges, 0 < eps <= 0.4.

    For eps < 1/2 the neighbourhood splits into a strip of area 2 eps (1 - 2 eps)
    per distinct edge and four eps-by-eps quadrants per visited vertex. A
    quadrant is full when an incident edge runs along one of its two sides,
    a quarter disc when only the opposite edges are incident.
    """
    L = p.n_edges if L is None else L
    if not 0 < eps <= 0.4:
        raise DomainError("eps must be in (0, 0.4]")
    if L < 1:
        return 0.0
    if L > p.n_edges:
        raise DomainError("L exceeds the edge count")
    keys = np.unique(_edge_keys(p, L))
    strip = keys.size * 2 * eps * (1 - 2 * eps)
    # incident directions per vertex as a 4-bit mask (E, N, W, S)
    a, b = p.vertices[:L], p.vertices[1:L + 1]
    d = b - a
    dir_idx = np.select([d[:, 0] == 1, d[:, 1] == 1, d[:, 0] == -1], [0, 1, 2], 3)
    verts = np.concatenate([a, b])
    bits = np.concatenate([1 << dir_idx, 1 << ((dir_idx + 2) % 4)])
    off = 1 << 20
    vk = (verts[:, 0] + off) << 22 | (verts[:, 1] + off)
    uk, inv = np.unique(vk, return_inverse=True)
    mask = np.zeros(uk.size, dtype=np.int64)
    np.bitwise_or.at(mask, inv.ravel(), bits)
    full = 0
    for q in range(4):           # quadrant q lies between directions q and q+1
        side = (1 << q) | (1 << ((q + 1) % 4))
        full += int(np.count_nonzero(mask & side))
    quarter = 4 * uk.size - full
    return float(strip + full * eps * eps + quarter * math.pi * eps * eps / 4)


def sausage_area_raster(p: LatticePath, L: int | None = None, eps: float = 0.25,
                        pitch: float | None = None) -> float:
    """Grid estimate: count cell centres within eps of some edge (pitch eps/8)."""
    L = p.n_edges if L is None else L
    pitch = pitch or eps / 8
    v = p.vertices[:L + 1].astype(float)
    lo, hi = v.min(0) - eps, v.max(0) + eps
    xs = np.arange(lo[0] + pitch / 2, hi[0], pitch)
    ys = np.arange(lo[1] + pitch / 2, hi[1], pitch)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    hit = np.zeros(X.shape, dtype=bool)
    for (ax, ay), (bx, by) in zip(v[:-1], v[1:]):
        # unit axis-parallel segments: clamp then measure
        cx = np.clip(X, min(ax, bx), max(ax, bx))
        cy = np.clip(Y, min(ay, by), max(ay, by))
        hit |= (X - cx) ** 2 + (Y - cy) ** 2 <= eps * eps
    return float(hit.sum() * pitch * pitch)


@dataclass
class DimensionReport:
    schedule: list
    ratios: list
    value: float          # liminf proxy: min of the last three ratios


def dimension_estimate(p: LatticePath, L_schedule, eps: float = 0.4) -> DimensionReport:
    sched = list(L_schedule)
    if any(b <= a for a, b in zip(sched, sched[1:])):
        raise DomainError("L_schedule must be increasing")
    ratios = []
    for L in sched:
        D = diameter(p, L)
        if D <= 1:
            raise DomainError("diameter too small for a log ratio")
        ratios.append(math.log(sausage_area(p, L, eps)) / math.log(D))
    return DimensionReport(sched, ratios, min(ratios[-3:]))


def increments(p: LatticePath) -> tuple[np.ndarray, np.ndarray]:
    """s_k = x-step of edge 2k, t_k = y-step of edge 2k+1."""
    e = p.edges()
    return e[0::2, 0].copy(), e[1::2, 1].copy()


@dataclass
class PartialSumReport:
    max_s: int
    max_t: int
    bound: float
    violations: list      # n where |sum_{k<n/2}| exceeds (2+sqrt2) sqrt(n/2)

    @property
    def ok(self) -> bool:
        return not self.violations


def rs_partial_sum_check(signs, N: int) -> PartialSumReport:
    from .folding import folds
    if N < 2:
        raise DomainError("N must be >= 2")
    depth = N.bit_length()
    p = path_from_turns(folds(signs, depth))
    s, t = increments(p)
    half = N // 2
    S = np.abs(np.cumsum(s[:half]))
    T = np.abs(np.cumsum(t[:half]))
    # after vertex n = 2m the sums run over k < m; the bound at n is (2+sqrt2) sqrt(m)
    m = np.arange(1, half + 1)
    c = (2 + math.sqrt(2)) * np.sqrt(m)
    bad = np.flatnonzero((S > c + 1e-12) | (T > c + 1e-12))
    return PartialSumReport(int(S.max()), int(T.max()), float(c[-1]),
                            [int(2 * (i + 1)) for i in bad])


def to_svg(p: LatticePath, stroke: str = "black", width: float = 0.2, margin: float = 1.0) -> str:
    v = p.vertices
    x0, y0 = v.min(0) - margin
    x1, y1 = v.max(0) + margin
    # flip y so +y points up on screen
    pts = " ".join(f"{x},{-y}" for x, y in v)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{x0} {-y1} {x1 - x0} {y1 - y0}">\n'
        f'  <polyline fill="none" stroke="{stroke}" stroke-width="{width}" '
        f'stroke-linejoin="round" points="{pts}"/>\n'
        "</svg>\n"
    )

"""Fourier-Bohr coefficients, correlations and the exact spectral results for
Thue-Morse and paperfolding.

Sequences are numpy arrays of real or complex values indexed from 0. Sums
use numpy's pairwise summation. Frequencies given as Fraction are reduced
exactly modulo 1 before any float is formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from .words import DomainError


def values(f, N: int) -> np.ndarray:
    """Accept a SequenceHandle or an array, return the first N values."""
    if hasattr(f, "values"):
        return np.asarray(f.values(N))
    a = np.asarray(f)
    if a.size < N:
        raise DomainError(f"need {N} values, got {a.size}")
    return a[:N]


def from_automaton(aut, N: int, cast: dict) -> np.ndarray:
    """Numeric values of an automatic sequence, vectorized over state indices."""
    lut = np.array([cast.get(aut.output[s], np.nan) if aut.output[s] is not None else np.nan
                    for s in aut.states])
    out = lut[aut.state_indices(N)]
    if np.isnan(out).any():
        raise DomainError("undefined output reached")
    return out


def _phases(lam, N: int) -> np.ndarray:
    """lambda * n mod 1 for n < N."""
    n = np.arange(N, dtype=np.int64)
    if isinstance(lam, Fraction) or isinstance(lam, int):
        lam = Fraction(lam)
        p, q = lam.numerator % lam.denominator, lam.denominator
        if q < 2 ** 31 and p < 2 ** 31 and N < 2 ** 32:
            return ((n * p) % q).astype(np.float64) / q
        return np.array([float((k * lam) % 1) for k in range(N)])
    lam = float(lam) % 1.0
    return np.mod(n.astype(np.float64) * lam, 1.0)


def fourier_bohr(f, lam, N: int) -> complex:
    if N < 1:
        raise DomainError("N must be >= 1")
    x = values(f, N)
    if isinstance(lam, (Fraction, int)):
        lam = Fraction(lam)
        p, q = lam.numerator % lam.denominator, lam.denominator
        if q <= N:
            # fold onto residues mod q, then q exponentials
            r = np.arange(N, dtype=np.int64) % q
            folded = np.bincount(r, weights=x.real, minlength=q)
            if np.iscomplexobj(x):
                folded = folded + 1j * np.bincount(r, weights=x.imag, minlength=q)
            ph = ((np.arange(q, dtype=np.int64) * p) % q) / q
            return complex(np.sum(folded * np.exp(-2j * np.pi * ph)) / N)
    return complex(np.sum(x * np.exp(-2j * np.pi * _phases(lam, N))) / N)


def seminorm(f, N: int) -> float:
    if N < 1:
        raise DomainError("N must be >= 1")
    x = values(f, N)
    return float(math.sqrt(np.sum(np.abs(x) ** 2) / N))


def correlation(f, h: int, N: int) -> complex:
    if N < 1:
        raise DomainError("N must be >= 1")
    x = values(f, N + h)
    return complex(np.sum(np.conj(x[:N]) * x[h:h + N]) / N)


def correlations(f, H: int, N: int, block: int = 1 << 16) -> np.ndarray:
    """gamma(h) = (1/N) sum_{n<N} conj(f(n)) f(n+h) for all h < H, by blocked FFT."""
    x = values(f, N + H).astype(complex)
    out = np.zeros(H, dtype=complex)
    L = 1 << int(math.ceil(math.log2(2 * block + H)))
    for s in range(0, N, block):
        a = x[s:min(s + block, N)]
        b = x[s:s + len(a) + H]
        # cross-correlation theorem: ifft(conj(A) B)[h] = sum_n conj(a[n]) b[n+h]
        c = np.fft.ifft(np.conj(np.fft.fft(a, L)) * np.fft.fft(b, L))
        out += c[:H]
    return out / N


@lru_cache(maxsize=None)
def tm_correlation_exact(h: int) -> Fraction:
    if h < 0:
        raise DomainError("h must be >= 0")
    if h == 0:
        return Fraction(1)
    if h == 1:
        # gamma(1) = -(gamma(0) + gamma(1))/2 solved for gamma(1)
        return Fraction(-1, 3)
    if h % 2 == 0:
        return tm_correlation_exact(h // 2)
    m = h // 2
    return -(tm_correlation_exact(m) + tm_correlation_exact(m + 1)) / 2


def paperfolding_phase(a: int, l: int) -> Fraction:
    """Phase t (mod 1) with f^((2a+1)/2^l) = 2^(1-l) e(t), for f(0) = +1."""
    if l < 2 or not 0 <= a < 2 ** (l - 1):
        raise DomainError("need l >= 2 and 0 <= a < 2^(l-1)")
    return (Fraction(1 - 2 ** (l - 2)) * Fraction(2 * a + 1, 2 ** l)) % 1


def paperfolding_fourier_exact(a: int, l: int) -> complex:
    t = paperfolding_phase(a, l)
    return 2.0 ** (1 - l) * complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t))


@dataclass(frozen=True)
class SpectralMass:
    freq: Fraction
    mass: Fraction


def paperfolding_masses(l_max: int) -> list[SpectralMass]:
    out = []
    for l in range(2, l_max + 1):
        m = Fraction(1, 4 ** (l - 1))
        out.extend(SpectralMass(Fraction(2 * a + 1, 2 ** l), m) for a in range(2 ** (l - 1)))
    return out


def paperfolding_mass_series(power: int = 1) -> Fraction:
    """Exact sum over all l >= 2 of 2^(l-1) * (4^-(l-1))^power (geometric series)."""
    first = Fraction(2) * Fraction(1, 4) ** power
    ratio = first
    return first / (1 - ratio)


def wiener_average(f, N: int, H: int) -> float:
    if H > N // 2:
        raise DomainError("H must be <= N/2")
    g = correlations(f, H, N)
    return float(np.mean(np.abs(g) ** 2))


def sup_norm_M(a, N: int, grid: int | None = None, refine: int = 8) -> tuple[float, float, float]:
    """(M_N, argmax theta, sqrt N) with M_N = max_theta |sum a_n e(n theta)|."""
    G = max(grid or 0, 4 * N)
    if grid is not None and grid < 4 * N:
        raise DomainError("grid must be >= 4N")
    x = values(a, N).astype(complex)
    vals = np.abs(np.fft.ifft(x, G)) * G
    top = np.argsort(vals)[-refine:]
    n = np.arange(N)

    def neg(theta):
        return -abs(np.sum(x * np.exp(2j * np.pi * n * theta)))

    best, arg = float(vals.max()), float(np.argmax(vals)) / G
    for j in top:
        c = j / G
        r = minimize_scalar(neg, bounds=(c - 1 / G, c + 1 / G), method="bounded",
                            options={"xatol": 1e-12})
        if -r.fun > best:
            best, arg = float(-r.fun), float(r.x) % 1.0
    return best, arg, math.sqrt(N)


def bessel_report(f, lambdas, N: int) -> tuple[float, float, float]:
    if len(set(lambdas)) != len(lambdas):
        raise DomainError("lambdas must be distinct")
    x = values(f, N)
    L = 1
    if all(isinstance(lam, (Fraction, int)) for lam in lambdas):
        for lam in lambdas:
            L = math.lcm(L, Fraction(lam).denominator)
    if 1 < L <= N:
        # one fold onto residues mod L serves every rational frequency
        r = np.arange(N, dtype=np.int64) % L
        folded = np.bincount(r, weights=np.real(x), minlength=L).astype(complex)
        if np.iscomplexobj(x):
            folded += 1j * np.bincount(r, weights=np.imag(x), minlength=L)
        m = np.arange(L, dtype=np.int64)
        s = 0.0
        for lam in lambdas:
            lam = Fraction(lam)
            c = (lam.numerator * (L // lam.denominator)) % L
            s += abs(np.sum(folded * np.exp(-2j * np.pi * ((m * c) % L) / L)) / N) ** 2
    else:
        s = sum(abs(fourier_bohr(x, lam, N)) ** 2 for lam in lambdas)
    norm2 = seminorm(f, N) ** 2
    s = float(s)
    return s, norm2, norm2 - s


def spectral_csv(f, lambdas, N: int) -> str:
    rows = ["lambda_num,lambda_den,re,im,abs"]
    for lam in lambdas:
        fr = Fraction(lam) if isinstance(lam, (int, Fraction)) else Fraction(lam).limit_denominator(10 ** 9)
        c = fourier_bohr(f, lam, N)
        rows.append(f"{fr.numerator},{fr.denominator},{c.real:.12g},{c.imag:.12g},{abs(c):.12g}")
    return "\n".join(rows) + "\n"

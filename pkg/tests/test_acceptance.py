"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run `pytest tests/test_acceptance.py -v -s` to see the lines, or
`python3 tests/test_acceptance.py` for the summary alone.
"""

import itertools
import math
import random
import time
from fractions import Fraction

import numpy as np

from autoseq import curves as C
from autoseq import ising as I
from autoseq import multidim as M
from autoseq import opacity as O
from autoseq import repetitions as R
from autoseq import spectral as S
from autoseq import zoo
from autoseq.automata import builtin, from_uniform_morphism, worked_example
from autoseq.complexity import profile
from autoseq.folding import (cf_of_series, cf_value, euclid_cf, fold, folds, normalize,
                             series_value)
from autoseq.words import show

TAU = (1 + math.sqrt(5)) / 2


def verdict(n, clauses, t0):
    """clauses: list of (label, ok, detail). Prints one line, then asserts."""
    bad = [f"{lab} ({det})" for lab, ok, det in clauses if not ok]
    status = "PASS" if not bad else "FAIL"
    line = f"criterion {n:2d}: {status}  [{time.time() - t0:.1f}s]"
    if bad:
        line += "  failing: " + "; ".join(bad)
    print(line)
    assert not bad, line


def test_criterion_01_prefixes():
    t0 = time.time()
    want = [("fibonacci", 13, "0100101001001"), ("thue-morse", 16, "0110100110010110"),
            ("paperfolding", 12, "110110011100"), ("rudin-shapiro", 12, "+++-++-++++-"),
            ("squarefree-thue", 10, "1021201020"), ("setA-diff", 8, "21122211")]
    cl = []
    for name, n, w in want:
        got = show(zoo.get(name).prefix(n))
        cl.append((name, got == w, got))
    verdict(1, cl, t0)


REVERSE = {"thue-morse": "tm-rev", "paperfolding": "paperfold-rev",
           "rudin-shapiro": "rudin-shapiro-rev", "period-doubling": "period-doubling-rev",
           "hanoi": "hanoi-rev"}


def test_criterion_02_automaton_morphism():
    t0 = time.time()
    n = 2 ** 16
    cl = []
    for name, rev in REVERSE.items():
        ref = [str(x) for x in zoo.get(name).prefix(n)]
        mn, seed, cn = zoo.UNIFORM_EXAMPLES[name]
        a = from_uniform_morphism(zoo.MORPHISMS[mn], seed, zoo.CODINGS[cn] if cn else None)
        cl.append((f"{name} from morphism", [str(x) for x in a.generate(n)] == ref, ""))
        cl.append((f"{name} {rev}", [str(x) for x in builtin(rev).generate(n)] == ref, ""))
    elapsed = time.time() - t0
    cl.append(("runtime < 10 s", elapsed < 10, f"{elapsed:.1f}s"))
    verdict(2, cl, t0)


def test_criterion_03_worked_automaton():
    t0 = time.time()
    aut = worked_example()
    # reverse reading: the word is consumed right to left
    state = aut.run_word(reversed([int(c) for c in "001110"]))
    table = aut.generate(12)
    want = ["0", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1", "0"]
    verdict(3, [("final state A", state == "A", state),
                ("output 0", aut.eval_word("001110") == "0", aut.eval_word("001110")),
                ("12-row table", table == want, show(table))], t0)


def test_criterion_04_repetitions():
    t0 = time.time()
    cl = []
    sq = R.find_square(zoo.get("squarefree-thue"), 10 ** 4, 1, 500)
    cl.append(("squarefree-thue has no square", sq is None, sq))
    ov = R.has_overlap(zoo.get("thue-morse"), 2 ** 14)
    cl.append(("TM has no overlap", ov is None, ov))
    pf = zoo.get("paperfolding")
    sq5 = R.find_square(pf, 2 ** 12, 5)
    cl.append(("paperfolding no square of period >= 5", sq5 is None,
               f"period {sq5.period} at {sq5.position}" if sq5 else ""))
    p4 = R.has_power(pf, 2 ** 12, 4)
    cl.append(("paperfolding no 4th power", p4 is None, p4))
    fib = zoo.get("fibonacci")
    e4 = float(R.critical_exponent_lower_bound(fib, 10 ** 4))
    cl.append(("Fibonacci n=1e4 in [3.0, 3.6181]", 3.0 <= e4 <= 3.6181, f"{e4:.5f}"))
    e5 = float(R.critical_exponent_lower_bound(fib, 10 ** 5, 5000))
    cl.append(("Fibonacci n=1e5 within 0.02 of 2+tau", abs(e5 - (2 + TAU)) <= 0.02, f"{e5:.5f}"))
    verdict(4, cl, t0)


def test_criterion_05_complexity():
    t0 = time.time()
    cl = []
    cases = [("sturmian", 1, 64, lambda n: n + 1), ("paperfolding", 7, 64, lambda n: 4 * n),
             ("rudin-shapiro", 8, 64, lambda n: 8 * n - 8)]
    for name, lo, hi, f in cases:
        prof = profile(zoo.get(name), hi, 2 ** 15)
        bad = [n for n in range(lo, hi + 1) if prof.p(n) != f(n)]
        cl.append((f"{name} formula", not bad, f"first miss n={bad[:1]}"))
        cl.append((f"{name} doubling-stable", prof.saturated and not prof.unstable, prof.unstable[:3]))
    elapsed = time.time() - t0
    cl.append(("runtime < 30 s", elapsed < 30, f"{elapsed:.1f}s"))
    verdict(5, cl, t0)


def test_criterion_06_spectral():
    t0 = time.time()
    cl = []
    cl.append(("gamma_TM(1) = -1/3 exact", S.tm_correlation_exact(1) == Fraction(-1, 3),
               S.tm_correlation_exact(1)))
    tm = zoo.get("thue-morse")
    N = 2 ** 20
    g1 = S.correlation(tm, 1, N).real
    cl.append(("empirical gamma(1) within 1e-2", abs(g1 + 1 / 3) <= 1e-2, f"{g1:.5f}"))
    worst = max(abs(S.correlation(tm, 2 ** j, N).real + 1 / 3) for j in range(0, 13))
    cl.append(("gamma(2^j) within 2e-2, j <= 12", worst <= 2e-2, f"max err {worst:.4f}"))
    cl.append(("paperfolding Parseval sum = 1", S.paperfolding_mass_series(1) == 1,
               S.paperfolding_mass_series(1)))
    pf = zoo.get("paperfolding")
    c = abs(S.fourier_bohr(pf, Fraction(1, 4), 2 ** 22))
    cl.append(("|f^(1/4)| within 5e-3 of 1/2", abs(c - 0.5) <= 5e-3, f"{c:.6f}"))
    # the constant 1/7 is the squared-mass series, checked against a plain geometric sum
    oracle = sum(Fraction(2 ** (l - 1), 16 ** (l - 1)) for l in range(2, 60))
    seventh = S.paperfolding_mass_series(2)
    cl.append(("1/7 oracle", abs(float(seventh - oracle)) < 1e-15 and seventh == Fraction(1, 7), seventh))
    w = S.wiener_average(pf, 2 ** 22, 2 ** 10)
    cl.append(("Wiener average within 10% of 1/7", abs(w - 1 / 7) <= 0.1 / 7, f"{w:.5f}"))
    rs = zoo.get("rudin-shapiro")
    ratios = []
    for k in range(8, 15):
        Mn, _, root = S.sup_norm_M(rs, 2 ** k)
        ratios.append(Mn / root)
    cl.append(("RS M_N/sqrt N in [1, sqrt2+0.02]",
               all(1 <= r <= math.sqrt(2) + 0.02 for r in ratios), [round(r, 4) for r in ratios]))
    elapsed = time.time() - t0
    cl.append(("runtime < 3 min", elapsed < 180, f"{elapsed:.1f}s"))
    verdict(6, cl, t0)


def _random_self_avoiding(rng, count):
    out = []
    while len(out) < count:
        w = "".join(rng.choice("LR") for _ in range(rng.randint(3, 40)))
        if C.is_self_avoiding(C.path_from_turns(w)):
            out.append(w)
    return out


def test_criterion_07_folding_geometry():
    t0 = time.time()
    cl = []
    cl.append(("F+(LLL) = LLRLLLR", fold("LLL", "+") == "LLRLLLR", fold("LLL", "+")))
    rng = random.Random(7)
    broken = 0
    for w in _random_self_avoiding(rng, 100):
        for s in "+-":
            if not C.is_self_avoiding(C.path_from_turns(fold(w, s))):
                broken += 1
    cl.append(("folding keeps 100 seeds self-avoiding", broken == 0, f"{broken} broken"))
    for spec in ("+", "(+-)"):
        p = C.path_from_turns(folds(spec, 16))
        r = C.dimension_estimate(p, [2 ** 12, 2 ** 14, 2 ** 16], eps=0.4).ratios[-1]
        cl.append((f"dragon {spec} dimension >= 1.8 at 2^16", r >= 1.8, f"{r:.4f}"))
    rep = C.rs_partial_sum_check("(+-)", 2 ** 14)
    cl.append(("RS partial-sum bound up to 2^14", rep.ok, rep.violations[:3]))
    s, _ = C.increments(C.path_from_turns(folds("(+-)", 13)))
    rs = zoo.get("rudin-shapiro").values(2 ** 12).astype(np.int64)
    cl.append(("s_n = RS on 2^12 terms", np.array_equal(s[:2 ** 12], rs), ""))
    verdict(7, cl, t0)


def test_criterion_08_cf():
    t0 = time.time()
    cl = []
    for g in (3, 4, 5):
        cl.append((f"x3 g={g}", cf_of_series(g, 3) == [g - 1, g + 2, g, g - 1], cf_of_series(g, 3)))
        cl.append((f"x4 g={g}", cf_of_series(g, 4) == [g - 1, g + 2, g, g, g - 2, g, g + 2, g - 1],
                   cf_of_series(g, 4)))
        for depth in range(2, 7):
            q = cf_of_series(g, depth)
            x = series_value(g, depth)
            e = euclid_cf(x)
            ok = cf_value(q) == x and e[0] == 0 and normalize(q) == e[1:]
            if not ok:
                cl.append((f"Euclid g={g} depth={depth}", False, q))
        q = cf_of_series(g, 12)
        # the automaton's first output is the second quotient
        a = builtin(f"cf({g})").generate(2 ** 10)
        cl.append((f"cf({g}) automaton on 2^10", a == q[1:2 ** 10 + 1], ""))
    cl.append(("Euclid oracle depth 2..6", True, ""))
    verdict(8, cl, t0)


def _canonical(n, plus, minus):
    best = None
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        key = (tuple(perm[plus[inv[i]]] for i in range(n)), tuple(perm[minus[inv[i]]] for i in range(n)))
        if best is None or key < best:
            best = key
    return best


def all_small_automata(max_states=4):
    """Every automaton with <= max_states states meeting the formula's hypotheses, up to relabeling."""
    seen = set()
    for n in range(1, max_states + 1):
        names = [chr(65 + i) for i in range(n)]
        maps = list(itertools.product(range(n), repeat=n))
        for plus in maps:
            for minus in maps:
                a = O.SignedAutomaton(names, "A", {names[i]: names[plus[i]] for i in range(n)},
                                      {names[i]: names[minus[i]] for i in range(n)})
                if not a.is_strongly_connected():
                    continue
                if not (a.is_homogeneous() or a.is_extended_class()):
                    continue
                key = (n, _canonical(n, plus, minus))
                if key in seen:
                    continue
                seen.add(key)
                yield a


def test_criterion_09_opacity():
    t0 = time.time()
    cl = []
    named = {"identity": (O.identity(), 0.0), "constant": (O.constant(), 1.0),
             "thue-morse": (O.thue_morse(), 1.0), "worked": (O.worked_example(), 1 / math.sqrt(2))}
    for alpha in ("1/2", "1", "2", "4"):
        a = Fraction(alpha)
        mp = max(1, math.floor(4 / a))
        named[f"ising({alpha})"] = (I.ising_automaton(a), math.sqrt((mp - 1) / mp))
    for name, (aut, want) in named.items():
        got = O.opacity_formula(aut)
        cl.append((f"{name} formula", abs(got - want) < 1e-12, f"{got:.6f} vs {want:.6f}"))
        est = O.opacity_lower_estimate(aut, 8).value
        cl.append((f"{name} search P_max=8 lower bound", est <= got + 1e-9, f"{est:.6f}"))
    count, bad = 0, []
    for aut in all_small_automata(4):
        count += 1
        if O.opacity_squared(aut, "subset") != O.walk_enumeration(aut, 16):
            bad.append((aut.plus, aut.minus))
    cl.append((f"walk enumeration = subset search on {count} automata", not bad, bad[:1]))
    verdict(9, cl, t0)


def _table(aut, den):
    idx = {s: i for i, s in enumerate(aut.states)}
    plus = np.array([idx[aut.plus[s]] for s in aut.states])
    minus = np.array([idx[aut.minus[s]] for s in aut.states])
    out = np.array([int(Fraction(aut.output[s]) * den) for s in aut.states])
    return plus, minus, out, idx[aut.initial]


def test_criterion_10_ising():
    t0 = time.time()
    cl = []
    rng = np.random.default_rng(2024)
    # bisimulation: 10^3 random (eps, alpha) pairs, 10^4 steps, automaton run vectorized per alpha
    pool = sorted({Fraction(int(p), int(q)) for p, q in zip(rng.integers(0, 25, 40), rng.integers(1, 7, 40))})
    trials, steps = 1000, 10 ** 4
    which = rng.integers(0, len(pool), trials)
    eps = 1 - 2 * rng.integers(0, 2, (trials, steps))
    mism = 0
    for k, alpha in enumerate(pool):
        rows = np.flatnonzero(which == k)
        if rows.size == 0:
            continue
        den = alpha.denominator
        plus, minus, out, s0 = _table(I.ising_automaton(alpha), den)
        st = np.full(rows.size, s0)
        auto = np.empty((rows.size, steps + 1), dtype=np.int64)
        auto[:, 0] = out[st]
        for t in range(steps):
            st = np.where(eps[rows, t] > 0, plus[st], minus[st])
            auto[:, t + 1] = out[st]
        for j, r in enumerate(rows):
            tr = I.induced_field(eps[r], alpha)
            assert tr.den == den
            if not np.array_equal(tr.scaled, auto[j]):
                mism += 1
    cl.append(("bisimulation 1e3 x 1e4", mism == 0, f"{mism} mismatching trials"))
    # ground-state oracle
    agree = total = 0
    grng = random.Random(5)
    while total < 200:
        alpha = Fraction(grng.choice(["1/2", "1", "2", "3"]))
        n = grng.randint(1, 14)
        e = [grng.choice([1, -1]) for _ in range(n)]
        _, states, L = I.ground_states(I.ChainSpec(e, J=1.0, H=float(alpha) / 2))
        d = I.induced_field(e, alpha, delta0=alpha).exact(n)
        if L != 1 or d == 0:
            continue
        total += 1
        agree += (1 if d > 0 else -1) == states[0][-1]
    cl.append(("ground states 200/200", agree == 200, f"{agree}/{total}"))
    worst = 0.0
    for alpha in (Fraction(1, 2), Fraction(1), Fraction(2)):
        for seed in range(5):
            rep = I.ergodic_average("random", alpha, 10 ** 6, seed=seed)
            worst = max(worst, abs(rep.average - float(alpha)))
    cl.append(("ergodic average within 0.02 at 1e6, 5 seeds", worst <= 0.02, f"max err {worst:.4f}"))
    for alpha in (Fraction(1), Fraction(2)):
        rep = I.ergodic_average(np.full(10 ** 6, -1), alpha, 10 ** 6)
        cl.append((f"all-minus liminf >= alpha/2 (alpha={alpha})", rep.liminf() >= float(alpha) / 2,
                   f"{rep.liminf():.5f}"))
    sch = I.two_ratio_schedule(1, 0.8, 2.5)
    cl.append(("schedule liminf within 1% of 0.8", abs(sch.liminf - 0.8) <= 0.008, f"{sch.liminf:.4f}"))
    cl.append(("schedule limsup within 1% of 2.5", abs(sch.limsup - 2.5) <= 0.025, f"{sch.limsup:.4f}"))
    for a in ("1/3", "1/2", "1", "3/2", "2", "3", "4", "5"):
        alpha = Fraction(a)
        aut = I.ising_automaton(alpha)
        mean = sum(Fraction(v) for v in aut.output.values()) / len(aut.states)
        cl.append((f"output mean = alpha ({a})", mean == alpha and I.output_mean(alpha) == alpha, mean))
    verdict(10, cl, t0)


def test_criterion_11_multidim():
    t0 = time.time()
    cl = [("Pascal mod 2 = 2x2 fixed block on 64x64",
           bool(np.array_equal(M.pascal_mod(2, 64), M.fixed_block(M.SIERPINSKI_2X2, 1, 6))), "")]
    for d in (2, 3, 4, 5, 7, 8, 9):
        rep = M.substitution_consistency(M.pascal_mod(d, 81), d=d)
        cl.append((f"d={d} consistent", rep.ok, rep.reason))
    rep = M.substitution_consistency(M.pascal_mod(6, 81), d=6)
    cl.append(("d=6 inconsistent", not rep.ok, ""))
    verdict(11, cl, t0)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass

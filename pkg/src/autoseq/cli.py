"""Command line front end.

    autoseq [--manifest-dir DIR] [--threads N] COMMAND ...

Commands
    gen         --seq NAME --n N
                --morphism FILE [--seed-letter A] [--coding FILE] --n N
    automaton   run FILE (--input DIGITS | --range N)
                synth --seq NAME --k K --witness W
    repeat      --seq NAME --n N --max-period P
    complexity  --seq NAME --nmax M --prefix L
    spectral    fourier|corr|wiener|supnorm --seq NAME --n N ...
    fold        --signs SPEC --depth D [--svg FILE]
    cf          --g G --depth D
    opacity     FILE [--formula | --search P_MAX]
    ising       field|auto|ergodic|ground --alpha A ...
    pascal      --d D --size S [--check] [--format csv|pgm]
    replay      MANIFEST

Sequence names are the zoo registry names; parameters ride along as
`name:key=value`, e.g. `besicovitch-floor:alpha=0.3`.

Text formats
    morphism   one rule per line, `a -> ab`; blank lines and `#` comments ignored
    coding     one rule per line, `a => 1`
    automaton  JSON {"k", "reading", "initial", "states", "transitions", "output"}
               (signed automata: k = 2, digit 1 is +, digit 0 is -)
    signs      `+-+`, `(+-)`, `--(+-)`; trailing `^inf` optional

Every run writes a JSON manifest (argv, parameters, seed, versions and the
sha256 of each output) into the manifest directory; `replay` re-runs one
and compares outputs. Exit codes: 0 ok, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import os
import platform
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import __version__
from .words import DomainError, Coding, Morphism


# manifests

@dataclass
class RunManifest:
    subcommand: str
    argv: list
    parameters: dict
    seed: int | None
    versions: dict
    outputs: list = field(default_factory=list)     # {"path", "sha256"[, "text"]}

    def dumps(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def load(cls, path) -> "RunManifest":
        with open(path, encoding="utf-8") as fh:
            return cls(**json.load(fh))


def _sha(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _versions() -> dict:
    import numpy
    import scipy
    return {"autoseq": __version__, "python": platform.python_version(),
            "numpy": numpy.__version__, "scipy": scipy.__version__}


def _strip_globals(argv):
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a in ("--manifest-dir", "--threads"):
            skip = True
            continue
        if a.startswith(("--manifest-dir=", "--threads=")):
            continue
        out.append(a)
    return out


# helpers

def _seq(name):
    from . import zoo
    return zoo.get(name)


def _join(w) -> str:
    w = [str(x) for x in w]
    return "".join(w) if all(len(x) == 1 for x in w) else " ".join(w)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return f"{x.real:.12g}{x.imag:+.12g}j"
    return f"{x:.12g}" if isinstance(x, float) else str(x)


def _jsonable(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    return v


def _frac_or_float(s: str):
    s = s.strip()
    if "/" in s or "." not in s and "e" not in s.lower():
        return Fraction(s)
    return float(s)


def _write(path, text, files):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    files.append(path)


# commands; each returns stdout text and appends written paths to `files`

def cmd_gen(a, files):
    if a.seq:
        return _join(_seq(a.seq).prefix(a.n)) + "\n"
    from .words import code, fixed_point_prefix
    with open(a.morphism, encoding="utf-8") as fh:
        m = Morphism.from_text(fh.read())
    seed = a.seed_letter or m.alphabet.letters[0]
    w = fixed_point_prefix(m, seed, a.n)
    if a.coding:
        with open(a.coding, encoding="utf-8") as fh:
            w = code(w, Coding.from_text(fh.read()))
    return _join(w) + "\n"


def cmd_automaton(a, files):
    from .automata import KAutomaton, kernel_automaton
    if a.action == "run":
        aut = KAutomaton.load(a.file)
        if a.input is not None:
            return f"{aut.eval_word(a.input)}\n"
        return _join(aut.generate(a.range)) + "\n"
    aut = kernel_automaton(_seq(a.seq), a.k, a.witness, a.max_states)
    return aut.dumps() + "\n"


def cmd_repeat(a, files):
    from . import repetitions as R
    s = _seq(a.seq)
    lines = []

    def show(label, f):
        if f is None:
            lines.append(f"{label}: none")
        else:
            lines.append(f"{label}: position={f.position} period={f.period} exponent={f.exponent}")

    show("square", R.find_square(s, a.n, a.min_period, a.max_period))
    show("overlap", R.has_overlap(s, a.n, a.max_period, a.min_period))
    show("max_power", R.max_power(s, a.n, a.max_period, a.min_period))
    return "\n".join(lines) + "\n"


def cmd_complexity(a, files):
    from .complexity import profile
    prof = profile(_seq(a.seq), a.nmax, a.prefix)
    if prof.unstable:
        print(f"warning: p(n) changed on doubling the prefix for n in {prof.unstable}",
              file=sys.stderr)
    return prof.to_csv()


def cmd_spectral(a, files):
    from . import spectral as S
    f = _seq(a.seq)
    if a.action == "fourier":
        lams = [_frac_or_float(x) for x in a.lam]
        return S.spectral_csv(f, lams, a.n)
    if a.action == "corr":
        g = S.correlations(f, a.h, a.n)
        rows = ["h,re,im"] + [f"{h},{z.real:.12g},{z.imag:.12g}" for h, z in enumerate(g)]
        return "\n".join(rows) + "\n"
    if a.action == "wiener":
        return f"{S.wiener_average(f, a.n, a.h):.12g}\n"
    M, theta, root = S.sup_norm_M(f, a.n)
    return f"M,theta,sqrtN,ratio\n{M:.12g},{theta:.12g},{root:.12g},{M / root:.12g}\n"


def cmd_fold(a, files):
    from .curves import path_from_turns, to_svg
    from .folding import folds
    w = folds(a.signs, a.depth)
    if a.svg:
        _write(a.svg, to_svg(path_from_turns(w)), files)
    return w + "\n"


def cmd_cf(a, files):
    from .folding import cf_of_series
    return " ".join(str(x) for x in [0] + cf_of_series(a.g, a.depth)) + "\n"


def _signed(spec):
    from .opacity import BUILTINS, SignedAutomaton
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name not in BUILTINS:
            raise DomainError(f"unknown builtin {name!r}")
        return BUILTINS[name]()
    return SignedAutomaton.load(spec)


def cmd_opacity(a, files):
    from .opacity import opacity_lower_estimate, opacity_squared
    import math
    aut = _signed(a.file)
    if a.search is not None:
        est = opacity_lower_estimate(aut, a.search)
        return f"{est.value:.12g}\nsquared={est.squared} start={est.start} period={est.period}\n"
    sq = opacity_squared(aut, a.method)
    return f"{math.sqrt(sq):.12g}\n" + (f"squared={sq}\n" if a.exact else "")


def _eps(a):
    from .ising import random_signs, signs_array
    if a.eps_seq:
        e = signs_array(a.eps_seq)
        return e if a.n is None else e[:a.n]
    if a.seed is None or a.n is None:
        raise _Usage("give --eps-seq, or --n with --seed for random signs")
    return random_signs(a.n, a.seed)


class _Usage(Exception):
    pass


def cmd_ising(a, files):
    from . import ising as I
    alpha = I.parse_alpha(a.alpha)
    if a.action == "auto":
        aut = I.ising_automaton(alpha)
        d = aut.to_json()
        d["output"] = {s: _jsonable(v) for s, v in d["output"].items()}
        d["name"] = aut.name
        return json.dumps(d, indent=2) + "\n"
    if a.action == "field":
        tr = I.induced_field(_eps(a), alpha, delta0=_frac_or_float(a.delta0) if a.delta0 else None)
        rows = ["n,delta"]
        for i in range(len(tr)):
            rows.append(f"{i},{tr.exact(i)}" if tr.scaled is not None else f"{i},{tr.values[i]:.12g}")
        return "\n".join(rows) + "\n"
    if a.action == "ergodic":
        if a.source == "random" and a.seed is None:
            raise _Usage("--seed is required for random disorder")
        rep = I.ergodic_average(a.source, alpha, a.n, a.seed)
        if a.csv:
            _write(a.csv, rep.to_csv(a.every), files)
        return (f"average={rep.average:.12g}\nliminf={rep.liminf():.12g}\n"
                f"limsup={rep.limsup():.12g}\nprng={rep.prng} seed={rep.seed}\n")
    # ground
    spec = I.ChainSpec(_eps(a), J=a.J, H=float(alpha) * a.J / 2)
    emin, states, count = I.ground_states(spec)
    tr = I.induced_field(spec.eps, alpha, delta0=alpha)
    lines = [f"energy={emin:.12g}", f"count={count}", f"delta_N={_fmt(tr.values[-1])}"]
    lines += ["".join("+" if s > 0 else "-" for s in st) for st in states]
    return "\n".join(lines) + "\n"


def cmd_pascal(a, files):
    from .multidim import pascal_mod, substitution_consistency, to_csv, to_pgm
    g = pascal_mod(a.d, a.size)
    if a.check:
        r = substitution_consistency(g, k=a.k, d=a.d)
        return (f"consistent={str(r.ok).lower()} k={r.k} states={r.n_states}"
                + (f" reason={r.reason}" if r.reason else "") + "\n")
    text = to_pgm(g) if a.format == "pgm" else to_csv(g)
    if a.out:
        _write(a.out, text, files)
        return ""
    return text


def cmd_replay(a, files):
    man = RunManifest.load(a.manifest)
    buf = io.StringIO()
    code = _run(man.argv, buf, manifest_dir=None)
    if code:
        raise DomainError(f"replayed command exited with {code}")
    text = buf.getvalue()
    bad = []
    for o in man.outputs:
        if o["path"] == "-":
            got = _sha(text.encode())
        else:
            with open(o["path"], "rb") as fh:
                got = _sha(fh.read())
        if got != o["sha256"]:
            bad.append(o["path"])
    if bad:
        raise DomainError("replay mismatch: " + ", ".join(bad))
    return f"replay ok: {len(man.outputs)} outputs match\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="autoseq", description="Automatic sequences toolkit.",
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--manifest-dir", default="runs")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap (all commands currently run on one thread)")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen")
    gg = g.add_mutually_exclusive_group(required=True)
    gg.add_argument("--seq")
    gg.add_argument("--morphism", help="morphism text file")
    g.add_argument("--seed-letter", help="fixed-point seed for --morphism (default: first letter)")
    g.add_argument("--coding", help="coding text file applied after --morphism")
    g.add_argument("--n", type=int, required=True)
    g.set_defaults(func=cmd_gen)

    au = sub.add_parser("automaton")
    aus = au.add_subparsers(dest="action", required=True)
    r = aus.add_parser("run")
    r.add_argument("file")
    grp = r.add_mutually_exclusive_group(required=True)
    grp.add_argument("--input")
    grp.add_argument("--range", type=int)
    r.set_defaults(func=cmd_automaton)
    s = aus.add_parser("synth")
    s.add_argument("--seq", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--witness", type=int, required=True)
    s.add_argument("--max-states", type=int, default=64)
    s.set_defaults(func=cmd_automaton)

    rp = sub.add_parser("repeat")
    rp.add_argument("--seq", required=True)
    rp.add_argument("--n", type=int, required=True)
    rp.add_argument("--max-period", type=int)
    rp.add_argument("--min-period", type=int, default=1)
    rp.set_defaults(func=cmd_repeat)

    c = sub.add_parser("complexity")
    c.add_argument("--seq", required=True)
    c.add_argument("--nmax", type=int, required=True)
    c.add_argument("--prefix", type=int, required=True)
    c.set_defaults(func=cmd_complexity)

    sp = sub.add_parser("spectral")
    sps = sp.add_subparsers(dest="action", required=True)
    for name in ("fourier", "corr", "wiener", "supnorm"):
        q = sps.add_parser(name)
        q.add_argument("--seq", required=True)
        q.add_argument("--n", type=int, required=True)
        if name == "fourier":
            q.add_argument("--lambda", dest="lam", action="append", required=True,
                           help="frequency as p/q or decimal; repeatable")
        if name in ("corr", "wiener"):
            q.add_argument("--h", type=int, required=True)
        q.set_defaults(func=cmd_spectral)

    f = sub.add_parser("fold")
    f.add_argument("--signs", required=True)
    f.add_argument("--depth", type=int, required=True)
    f.add_argument("--svg")
    f.set_defaults(func=cmd_fold)

    cf = sub.add_parser("cf")
    cf.add_argument("--g", type=int, required=True)
    cf.add_argument("--depth", type=int, required=True)
    cf.set_defaults(func=cmd_cf)

    o = sub.add_parser("opacity")
    o.add_argument("file", help="automaton JSON, or builtin:NAME")
    og = o.add_mutually_exclusive_group()
    og.add_argument("--formula", action="store_true")
    og.add_argument("--search", type=int, metavar="P_MAX")
    o.add_argument("--method", choices=("auto", "subset", "milp"), default="auto")
    o.add_argument("--exact", action="store_true", help="also print the squared value")
    o.set_defaults(func=cmd_opacity)

    i = sub.add_parser("ising")
    i.add_argument("action", choices=("field", "auto", "ergodic", "ground"))
    i.add_argument("--alpha", required=True, help="p/q or decimal")
    i.add_argument("--n", type=int)
    i.add_argument("--seed", type=int)
    i.add_argument("--eps-seq", help="signs such as +-+--")
    i.add_argument("--source", default="random", help="'random' or a zoo name")
    i.add_argument("--delta0")
    i.add_argument("--J", type=float, default=1.0)
    i.add_argument("--csv", help="write n,delta,avg rows here (ergodic)")
    i.add_argument("--every", type=int, default=1)
    i.set_defaults(func=cmd_ising)

    pa = sub.add_parser("pascal")
    pa.add_argument("--d", type=int, required=True)
    pa.add_argument("--size", type=int, required=True)
    pa.add_argument("--format", choices=("csv", "pgm"), default="csv")
    pa.add_argument("--check", action="store_true", help="run the substitution consistency check")
    pa.add_argument("--k", type=int, help="substitution side for --check")
    pa.add_argument("--out")
    pa.set_defaults(func=cmd_pascal)

    rl = sub.add_parser("replay")
    rl.add_argument("manifest")
    rl.set_defaults(func=cmd_replay)
    return p


def _run(argv, out, manifest_dir="runs") -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    files = []
    try:
        text = a.func(a, files)
    except _Usage as e:
        parser.print_usage(sys.stderr)
        print(f"autoseq: error: {e}", file=sys.stderr)
        return 2
    except (DomainError, FileNotFoundError, json.JSONDecodeError, KeyError) as e:
        print(f"autoseq: error: {e}", file=sys.stderr)
        return 1
    out.write(text)
    mdir = manifest_dir
    if mdir and a.command != "replay":
        params = {k: v for k, v in vars(a).items() if k not in ("func", "manifest_dir")}
        cmd = a.command + (f" {a.action}" if getattr(a, "action", None) else "")
        outputs = [{"path": "-", "sha256": _sha(text.encode()), "text": text if len(text) < 65536 else None}]
        for pth in files:
            with open(pth, "rb") as fh:
                outputs.append({"path": pth, "sha256": _sha(fh.read())})
        man = RunManifest(cmd, list(argv), params, params.get("seed"), _versions(), outputs)
        os.makedirs(mdir, exist_ok=True)
        name = f"{a.command}-{_sha(json.dumps(list(argv)).encode())[:12]}.json"
        with open(os.path.join(mdir, name), "w", encoding="utf-8") as fh:
            fh.write(man.dumps())
    return 0


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # global options are kept out of the recorded argv so a replay is location independent
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--manifest-dir", default="runs")
    pre.add_argument("--threads", type=int, default=1)
    g, _ = pre.parse_known_args(argv)
    cmd_argv = _strip_globals(argv)
    buf = io.StringIO()
    code = _run(cmd_argv, buf, manifest_dir=g.manifest_dir)
    sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

    clusterchar verify theorem --typeA-rank 3 --jobs 4 --out report.json
    clusterchar verify prop-a --algebra a2.json
    clusterchar char --typeA-rank 2 --triangulation "[[1,3],[1,4]]" --arc 2,4
    clusterchar fpoly --algebra a2.json --module M

Exit status: 0 when every identity holds, 1 on a violated identity or a
non-polynomial count, 2 on malformed input.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import algebra as alg_mod
from .character import (
    Verdict,
    check_index_identities,
    check_prop_a,
    check_prop_b,
    check_prop_c,
    cluster_character,
    c_prime,
    verify_theorem,
)
from .exactfield import DEFAULT_PRIMES, is_prime
from .grassmann import (
    DEFAULT_MAX_DIM,
    ModuleTooLarge,
    NotPolynomialCount,
    f_polynomial,
    fiber_census,
    string_model,
)
from .typea import (
    Arc,
    RankTooLarge,
    Triangulation,
    algebra_from_triangulation,
    all_arcs,
    ar_triangle,
    crosscheck_remark,
    e_module,
    enumerate_triangulations,
    instance_name,
)

SCHEMA = 1
SUITES = ("theorem", "prop-a", "prop-b", "prop-c", "ind", "lemma-fibers", "remark")
TYPEA_ONLY = ("theorem", "ind", "remark")
CENSUS_PRIMES = (2, 3)


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class Settings:
    primes: tuple[int, ...]
    max_dim: int


def _prime_list(text: str) -> tuple[int, ...]:
    try:
        qs = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma separated list of integers: {text!r}") from None
    if not qs or any(not is_prime(q) for q in qs):
        raise argparse.ArgumentTypeError(f"expected primes, got {text!r}")
    return qs


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


# per-instance work (module level so it pickles for the process pool) ---------


def _guard(check: str, name: str, fn) -> list[Verdict]:
    try:
        out = fn()
    except NotPolynomialCount as exc:
        return [Verdict(check, name, False, details=(("error", f"NotPolynomialCount: {exc}"),))]
    except ModuleTooLarge as exc:
        return [Verdict(check, name, False, details=(("error", f"ModuleTooLarge: {exc}"),))]
    except alg_mod.NonSplitField as exc:
        return [Verdict(check, name, False, details=(("error", f"NonSplitField: {exc}"),))]
    return out if isinstance(out, list) else [out]


def _typea_task(args: tuple) -> list[Verdict]:
    suite, n, pairs, settings = args
    t = Triangulation.from_json(n, pairs)
    ta = algebra_from_triangulation(t)
    if suite not in TYPEA_ONLY:
        return _algebra_suite(suite, ta.algebra, settings, prefix=f"T={t.to_json()} ")
    out = []
    for z in all_arcs(n):
        name = instance_name(t, z)

        def one(z=z, name=name):
            tri = ar_triangle(ta, z)
            if suite == "theorem":
                return verify_theorem(tri.esigma, tri.ez, tri.ey, settings.primes, name=name,
                                      max_dim=settings.max_dim)
            if suite == "ind":
                return check_index_identities(tri.ez, tri.esigma, tri.ey, name=name)
            return crosscheck_remark(ta, tri)

        out.extend(_guard(suite, name, one))
    return out


def _ar_sequences(alg: alg_mod.Algebra):
    for m in alg_mod.indecomposables(alg):
        if not alg_mod.is_projective(m):
            yield m, alg_mod.ar_sequence(m)


def _algebra_suite(suite: str, alg: alg_mod.Algebra, settings: Settings, prefix: str = "",
                   census_primes: tuple[int, ...] = CENSUS_PRIMES) -> list[Verdict]:
    out: list[Verdict] = []
    primes = settings.primes
    if suite == "prop-a":
        for m, seq in _ar_sequences(alg):
            name = f"{prefix}N={list(m.dims)}"
            out.extend(_guard(suite, name, lambda: check_prop_a(seq, primes, name)))
    elif suite == "prop-b":
        for i in range(alg.n):
            out.extend(_guard(suite, f"{prefix}P{i + 1}", lambda: check_prop_b(alg, i, primes)))
    elif suite == "prop-c":
        for j in range(alg.n):
            out.extend(_guard(suite, f"{prefix}I{j + 1}", lambda: check_prop_c(alg, j, primes)))
    elif suite == "lemma-fibers":
        for q in census_primes:
            aq = alg.over(q)
            for m, seq in _ar_sequences(aq):
                for g in itertools.product(*(range(d + 1) for d in seq.M.dims)):
                    rep = fiber_census(seq, g)
                    bad = [b for b in rep.buckets if not b.ok]
                    out.append(Verdict(
                        "lemma-fibers", f"{prefix}q={q} N={list(m.dims)} g={list(g)}", rep.passed,
                        lhs=str(rep.total), rhs=str(sum(b.count for b in rep.buckets)),
                        details=(("buckets", str(len(rep.buckets))), ("mismatched", str(len(bad))))))
    else:
        raise InputError(f"suite {suite} needs --typeA-rank")
    return out


def _run(tasks: list[tuple], jobs: int) -> list[Verdict]:
    if jobs <= 1 or len(tasks) <= 1:
        results = [_typea_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_typea_task, tasks))
    return [v for chunk in results for v in chunk]


def build_report(suite: str, verdicts: list[Verdict], scope: dict, settings: Settings, seed: int,
                 census_primes: tuple[int, ...] | None = None) -> dict:
    passed = sum(v.passed for v in verdicts)
    env = {"primes": list(settings.primes), "max_dim": settings.max_dim, "seed": seed}
    if census_primes is not None:
        env["census_primes"] = list(census_primes)
    return {
        "schema": SCHEMA,
        "suite": suite,
        "scope": scope,
        "instances": [v.to_json() for v in verdicts],
        "environment": env,
        "summary": {"total": len(verdicts), "passed": passed, "failed": len(verdicts) - passed},
    }


def _load(path: str):
    try:
        return alg_mod.load_json(path)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


# commands ----------------------------------------------------------------------


def cmd_verify(args) -> int:
    settings = Settings(DEFAULT_PRIMES, args.max_dim)
    census = args.q or CENSUS_PRIMES
    if args.suite != "lemma-fibers" and args.q:
        settings = Settings(tuple(args.q), args.max_dim)
    if (args.typeA_rank is None) == (args.algebra is None):
        raise InputError("give exactly one of --typeA-rank and --algebra")
    if args.typeA_rank is not None:
        n = args.typeA_rank
        try:
            ts = enumerate_triangulations(n)
        except RankTooLarge as exc:
            raise InputError(str(exc)) from None
        if args.suite == "lemma-fibers":
            verdicts = []
            for t in ts:
                ta = algebra_from_triangulation(t)
                verdicts += _algebra_suite("lemma-fibers", ta.algebra, settings, f"T={t.to_json()} ", census)
        else:
            tasks = [(args.suite, n, t.to_json(), settings) for t in ts]
            verdicts = _run(tasks, args.jobs)
        scope = {"typeA_rank": n, "triangulations": len(ts)}
    else:
        if args.suite in TYPEA_ONLY:
            raise InputError(f"suite {args.suite} needs --typeA-rank")
        alg, _ = _load(args.algebra)
        verdicts = _algebra_suite(args.suite, alg, settings, census_primes=census)
        scope = {"algebra": Path(args.algebra).name}
    report = build_report(args.suite, verdicts, scope, settings, args.seed,
                          census if args.suite == "lemma-fibers" else None)
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    s = report["summary"]
    for v in verdicts:
        if not v.passed:
            print(f"FAIL {v.check} {v.instance}: {v.lhs} != {v.rhs} {dict(v.details)}", file=sys.stderr)
    print(f"{args.suite}: {s['passed']}/{s['total']} passed", file=sys.stderr)
    return 0 if s["failed"] == 0 else 1


def _module_arg(args):
    alg, mods = _load(args.algebra)
    if args.module not in mods:
        raise InputError(f"module {args.module!r} not in {args.algebra} (have {sorted(mods)})")
    return alg, mods[args.module]


def _arc_arg(text: str) -> Arc:
    try:
        i, j = (int(x) for x in text.split(","))
        return Arc(min(i, j), max(i, j))
    except ValueError:
        raise InputError(f"--arc expects i,j, got {text!r}") from None


def cmd_char(args) -> int:
    primes = tuple(args.q) if args.q else DEFAULT_PRIMES
    if args.algebra:
        if not args.module:
            raise InputError("--module is required with --algebra")
        _, m = _module_arg(args)
        print(c_prime(m, string_model(m), primes, max_dim=args.max_dim).render())
        return 0
    if args.typeA_rank is None or args.triangulation is None or args.arc is None:
        raise InputError("give --algebra/--module or --typeA-rank/--triangulation/--arc")
    try:
        t = Triangulation.from_json(args.typeA_rank, json.loads(args.triangulation))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise InputError(f"bad triangulation: {exc}") from None
    z = _arc_arg(args.arc)
    if z not in all_arcs(args.typeA_rank):
        raise InputError(f"{z} is not a diagonal of the {args.typeA_rank + 3}-gon")
    ta = algebra_from_triangulation(t)
    print(cluster_character(e_module(ta, z), primes, max_dim=args.max_dim).render())
    return 0


def cmd_fpoly(args) -> int:
    primes = tuple(args.q) if args.q else DEFAULT_PRIMES
    _, m = _module_arg(args)
    try:
        print(f_polynomial(string_model(m), primes, args.max_dim).render())
    except ModuleTooLarge as exc:
        raise InputError(str(exc)) from None
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clusterchar", description="Exact cluster character checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--typeA-rank", dest="typeA_rank", type=_positive)
        sp.add_argument("--algebra", help="algebra/module JSON file")
        sp.add_argument("--q", type=_prime_list, help="comma separated primes")
        sp.add_argument("--max-dim", dest="max_dim", type=_positive, default=DEFAULT_MAX_DIM)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    common(v)
    v.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    v.add_argument("--seed", type=_seed, default=0)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("char", help="print a cluster character")
    common(c)
    c.add_argument("--module")
    c.add_argument("--triangulation", help='sorted arc list, e.g. "[[1,3],[1,4]]"')
    c.add_argument("--arc", help="i,j")
    c.set_defaults(func=cmd_char)

    f = sub.add_parser("fpoly", help="print an F-polynomial")
    f.add_argument("--algebra", required=True)
    f.add_argument("--module", required=True)
    f.add_argument("--q", type=_prime_list)
    f.add_argument("--max-dim", dest="max_dim", type=_positive, default=DEFAULT_MAX_DIM)
    f.set_defaults(func=cmd_fpoly)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotPolynomialCount, alg_mod.NonSplitField) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 2 unreadable or malformed input, 3 oracle cap
exceeded, 4 a solver guarantee was violated (always a bug).
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from maxandeven import __version__
from maxandeven.formats import (
    ParseError,
    parse_digraph,
    parse_instance,
    render_digraph,
    render_instance,
    sniff_format,
)
from maxandeven.generate import PRNG_NAME, planted_digraph, random_digraph, random_instance
from maxandeven.graphs import (
    Digraph,
    arcs_subgraph,
    solve_dicut_acyclic,
    solve_dicut_cut,
)
from maxandeven.lp import build_lp, dump_lp
from maxandeven.model import Instance, normalize, weak_count
from maxandeven.oracle import (
    BOOL_CAP,
    TERNARY_CAP,
    OracleCapExceeded,
    brute_max_cut,
    brute_max_dicut,
    brute_strong_opt,
    brute_ternary_opt,
    brute_weak_opt,
    check_acyclic,
)
from maxandeven.rational import fmt
from maxandeven.rounding import randomized_round, solve_max_and_even

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_VIOLATION = 4


class GuaranteeViolation(RuntimeError):
    pass


@dataclass
class RunReport:
    """Ordered ``key: value`` report; ``elapsed`` is kept apart so the rest is reproducible."""

    fields: list[tuple[str, Any]] = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, key: str, value: Any) -> None:
        self.fields.append((key, value))

    def render(self, as_json: bool = False, with_time: bool = True) -> str:
        items = [(k, _plain(v)) for k, v in self.fields]
        if with_time:
            items.append(("elapsed_s", f"{self.elapsed:.6f}"))
        if as_json:
            return json.dumps(dict(items), indent=2) + "\n"
        return "".join(f"{k}: {v}\n" for k, v in items)


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return fmt(value)
    if isinstance(value, (list, tuple)):
        return " ".join(str(_plain(v)) for v in value)
    if isinstance(value, bool):
        return "yes" if value else "no"
    return value


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(text: str, output: str | None) -> None:
    if output and output != "-":
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _fraction_of(value, total: int) -> str:
    return fmt(Fraction(value) / total) if total else "undefined"


# -- report builders -------------------------------------------------------


def solve_report(
    inst: Instance, *, seed: int | None = None, fraction: bool = False
) -> RunReport:
    start = time.perf_counter()
    sol = solve_max_and_even(inst)
    assignment = sol.assignment
    if seed is not None:
        assert sol.ternary is not None
        assignment = randomized_round(sol.ternary, seed)
    rep = RunReport()
    rep.add("problem", "max-and-even")
    rep.add("n", inst.n)
    rep.add("m", inst.m)
    rep.add("rounding", "randomized" if seed is not None else "derandomized")
    if seed is not None:
        rep.add("seed", seed)
        rep.add("prng", PRNG_NAME)
    _, norm = normalize(inst)
    rep.add("excluded_tautologies", len(norm.excluded_tautologies))
    rep.add("empty_after_cancel", len(norm.empty_clauses))
    rep.add("lp_value", sol.lp_value)
    rep.add("guaranteed_weak", math.ceil(sol.lp_value))
    # recomputed from the returned assignment, not taken from the solver
    rep.add("weak_count", weak_count(inst, assignment))
    if fraction:
        rep.add("lp_fraction", _fraction_of(sol.lp_value, inst.m))
        rep.add("weak_fraction", _fraction_of(weak_count(inst, assignment), inst.m))
    rep.add("assignment", [v * x for v, x in zip(range(1, inst.n + 1), assignment)])
    rep.elapsed = time.perf_counter() - start
    return rep


def cut_report(g: Digraph, *, fraction: bool = False) -> RunReport:
    start = time.perf_counter()
    res = solve_dicut_cut(g)
    rep = RunReport()
    rep.add("problem", "max-dicut-cut")
    rep.add("n", g.n)
    rep.add("m", g.m)
    rep.add("lp_value", res.lp_value)
    value = sum(1 for u, v in g.arcs if u != v and res.side[u - 1] != res.side[v - 1])
    rep.add("cut_value", value)
    rep.add("directed_cut_value", sum(
        1 for u, v in g.arcs if res.side[u - 1] == -1 and res.side[v - 1] == 1
    ))
    if fraction:
        rep.add("cut_fraction", _fraction_of(value, g.m))
    rep.add("side", list(res.side))
    rep.elapsed = time.perf_counter() - start
    return rep


def acyclic_report(g: Digraph, *, fraction: bool = False) -> RunReport:
    start = time.perf_counter()
    res = solve_dicut_acyclic(g)
    pos = res.ordering.positions()
    kept = [i for i, (u, v) in enumerate(g.arcs) if pos[u] < pos[v]]
    rep = RunReport()
    rep.add("problem", "max-dicut-acyclic")
    rep.add("n", g.n)
    rep.add("m", g.m)
    rep.add("lp_value", res.lp_value)
    rep.add("partition_sizes", list(res.partition_sizes))
    rep.add("middle_reversed", res.chose_reversed)
    rep.add("acyclic_value", len(kept))
    if fraction:
        rep.add("acyclic_fraction", _fraction_of(len(kept), g.m))
    rep.add("ordering", list(res.ordering.order))
    rep.add("kept_arcs", [i + 1 for i in kept])
    rep.elapsed = time.perf_counter() - start
    return rep


def verify_instance(inst: Instance, cap: int = BOOL_CAP) -> RunReport:
    """Solve and check against exhaustive oracles; raises on a violated guarantee."""
    start = time.perf_counter()
    promise = brute_strong_opt(inst, cap)
    sol = solve_max_and_even(inst)
    weak = weak_count(inst, sol.assignment)
    rep = RunReport()
    rep.add("problem", "max-and-even")
    rep.add("n", inst.n)
    rep.add("m", inst.m)
    rep.add("lp_value", sol.lp_value)
    rep.add("weak_count", weak)
    rep.add("strong_opt", promise)
    rep.add("weak_opt", brute_weak_opt(inst, cap))
    ternary_cap = min(cap, TERNARY_CAP)
    if inst.n <= ternary_cap:
        ternary = brute_ternary_opt(normalize(inst)[0], ternary_cap)
        rep.add("ternary_opt", ternary)
    else:
        ternary = None
        rep.add("ternary_opt", f"skipped (n > {ternary_cap})")
    problems = []
    if weak < promise:
        problems.append(f"weak_count {weak} < strong_opt {promise}")
    if weak < math.ceil(sol.lp_value):
        problems.append(f"weak_count {weak} < ceil(lp_value) {math.ceil(sol.lp_value)}")
    if ternary is not None and ternary != sol.lp_value:
        problems.append(f"lp_value {fmt(sol.lp_value)} != ternary_opt {fmt(ternary)}")
    rep.add("status", "ok" if not problems else "VIOLATION: " + "; ".join(problems))
    rep.elapsed = time.perf_counter() - start
    if problems:
        raise GuaranteeViolation(rep.render())
    return rep


def verify_digraph(g: Digraph, cap: int = BOOL_CAP) -> RunReport:
    start = time.perf_counter()
    promise = brute_max_dicut(g, cap)
    cut = solve_dicut_cut(g)
    acyc = solve_dicut_acyclic(g)
    rep = RunReport()
    rep.add("problem", "max-dicut")
    rep.add("n", g.n)
    rep.add("m", g.m)
    rep.add("lp_value", cut.lp_value)
    rep.add("max_dicut", promise)
    rep.add("max_cut", brute_max_cut(g, cap))
    rep.add("cut_value", cut.undirected_cut_value)
    rep.add("acyclic_value", acyc.value)
    kept_ok = check_acyclic(arcs_subgraph(g, acyc.kept_arcs))
    rep.add("kept_acyclic", kept_ok)
    problems = []
    if cut.undirected_cut_value < promise:
        problems.append(f"cut {cut.undirected_cut_value} < max_dicut {promise}")
    if acyc.value < promise:
        problems.append(f"acyclic {acyc.value} < max_dicut {promise}")
    if not kept_ok:
        problems.append("kept arcs contain a cycle")
    rep.add("status", "ok" if not problems else "VIOLATION: " + "; ".join(problems))
    rep.elapsed = time.perf_counter() - start
    if problems:
        raise GuaranteeViolation(rep.render())
    return rep


def _trial(args: tuple[str, int, int, int, int, int]) -> tuple[str, int]:
    """One isolated random verify trial; returns (rendered line, exit code)."""
    kind, index, seed, n_max, m_max, cap = args
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    m = rng.randint(0, m_max)
    try:
        if kind == "mae":
            rep = verify_instance(random_instance(n, m, 1, 4, rng), cap)
        else:
            rep = verify_digraph(random_digraph(n, m, rng), cap)
    except GuaranteeViolation as exc:
        return f"trial {index} seed {seed} n {n} m {m}: {exc}", EXIT_VIOLATION
    except OracleCapExceeded as exc:
        return f"trial {index} seed {seed}: {exc}", EXIT_CAP
    values = dict(rep.fields)
    keys = ("lp_value", "weak_count", "strong_opt") if kind == "mae" else (
        "lp_value", "cut_value", "acyclic_value", "max_dicut"
    )
    body = " ".join(f"{k}={_plain(values[k])}" for k in keys)
    return f"trial {index} seed {seed} n {n} m {m}: {body} ok", EXIT_OK


# -- argument handling -----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxandeven",
        description="Exact LP-based solvers for Max-And-Even, Max-DiCut-Cut and Max-DiCut-Acyclic.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--fraction", action="store_true", help="also print values divided by m")
        p.add_argument("--json", action="store_true", help="emit the report as JSON")
        p.add_argument("--no-time", action="store_true", help="omit the elapsed-time field")

    p = sub.add_parser("solve", help="solve a Max-And-Even instance (MAE file)")
    p.add_argument("file", help="MAE file, or - for stdin")
    p.add_argument("--seed", type=int, help="use seeded randomized rounding instead of derandomized")
    p.add_argument("--dump-lp", metavar="PATH", help="write the clause LP as text")
    common(p)

    p = sub.add_parser("cut", help="undirected cut at least the max directed cut (DG file)")
    p.add_argument("file")
    common(p)

    p = sub.add_parser("acyclic", help="acyclic subgraph at least the max directed cut (DG file)")
    p.add_argument("file")
    common(p)

    p = sub.add_parser("gen-instance", help="write a random MAE instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kmin", type=int, default=1)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")

    p = sub.add_parser("gen-digraph", help="write a random DG digraph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, help="plant a dicut: fraction of arcs crossing forward")
    p.add_argument("--no-loops", action="store_true")
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", help="solve and check the guarantee with brute-force oracles")
    p.add_argument("file", nargs="?", help="MAE or DG file; omit to run random trials")
    p.add_argument("--oracle-cap", type=int, default=BOOL_CAP)
    p.add_argument("--trials", type=int, default=0, help="number of random trials")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=("mae", "dg"), default="mae")
    p.add_argument("--n", type=int, default=8, help="max variables/vertices per trial")
    p.add_argument("--m", type=int, default=16, help="max clauses/arcs per trial")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for trials")
    common(p)
    return parser


def _run(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "gen-instance":
        inst = random_instance(args.n, args.m, args.kmin, args.kmax, args.seed)
        note = [f"generated by maxandeven gen-instance seed={args.seed} prng={PRNG_NAME}"]
        _emit(render_instance(inst, note), args.output)
        return EXIT_OK
    if cmd == "gen-digraph":
        if args.density is not None:
            g, planted = planted_digraph(args.n, args.m, args.density, args.seed)
            note = [
                f"generated by maxandeven gen-digraph seed={args.seed} prng={PRNG_NAME}",
                f"planted-dicut {planted}",
            ]
        else:
            g = random_digraph(args.n, args.m, args.seed, loops=not args.no_loops)
            note = [f"generated by maxandeven gen-digraph seed={args.seed} prng={PRNG_NAME}"]
        _emit(render_digraph(g, note), args.output)
        return EXIT_OK

    show_time = not args.no_time
    if cmd == "verify" and args.file is None:
        if args.trials <= 0:
            raise ParseError("verify needs a FILE or --trials N")
        master = random.Random(args.seed)
        jobs = [
            (args.kind, i, master.getrandbits(32), args.n, args.m, args.oracle_cap)
            for i in range(args.trials)
        ]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = list(pool.map(_trial, jobs))
        else:
            results = [_trial(j) for j in jobs]
        for line, _ in results:
            print(line)
        codes = [code for _, code in results]
        failed = sum(1 for c in codes if c)
        print(f"trials: {len(codes)} passed: {len(codes) - failed} failed: {failed}")
        return max(codes, default=EXIT_OK)

    text = _read(args.file)
    if cmd == "solve":
        inst = parse_instance(text)
        rep = solve_report(inst, seed=args.seed, fraction=args.fraction)
        if args.dump_lp:
            Path(args.dump_lp).write_text(dump_lp(build_lp(normalize(inst)[0])))
    elif cmd == "cut":
        rep = cut_report(parse_digraph(text), fraction=args.fraction)
    elif cmd == "acyclic":
        rep = acyclic_report(parse_digraph(text), fraction=args.fraction)
    else:
        if sniff_format(text) == "mae":
            rep = verify_instance(parse_instance(text), args.oracle_cap)
        else:
            rep = verify_digraph(parse_digraph(text), args.oracle_cap)
    sys.stdout.write(rep.render(as_json=args.json, with_time=show_time))
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OracleCapExceeded as exc:
        print(f"error: oracle cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except GuaranteeViolation as exc:
        print(f"error: guarantee violated\n{exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())

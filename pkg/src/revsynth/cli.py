"""Command-line entry point: ``revsynth {synth,verify,simulate,bounds,bench}``.

Exit codes: 0 success, 1 bad input (parse errors, missing files),
2 budget below the minimum, 3 verification mismatch, 4 width mismatch.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bounds as bnd
from .bench import VerificationFailed, full_storage_budget, rows_to_csv, run_bench
from .exceptions import ParseError, QBudgetTooSmall, TooLarge, WidthMismatch
from .io import parse_netlist, parse_truth_table, write_netlist
from .simulator import format_state, read_word, run, verify_against
from .synthesis import Strategy, select_params, synthesize

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_MISMATCH = 3
EXIT_WIDTH = 4


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_synth(args) -> int:
    tt = parse_truth_table(Path(args.table).read_text())
    strategy = Strategy(args.strategy)
    params = None
    if args.k is not None or args.group_size is not None:
        params = select_params(tt.n, args.q, strategy, k=args.k, s=args.group_size)
    circuit, report = synthesize(tt, args.q, strategy, params=params)
    netlist = write_netlist(circuit)
    payload = report.to_dict()
    payload["verified"] = verify_against(circuit, tt).passed
    if args.out:
        out = Path(args.out)
        out.write_text(netlist)
        report_path = Path(args.report) if args.report else out.with_suffix(".json")
        report_path.write_text(_dump_json(payload))
    else:
        sys.stdout.write(netlist)
    print(f"L={report.L} D={report.D} Q={report.Q} t1={report.t1} t2={report.t2} t3={report.t3}", file=sys.stderr)
    return EXIT_OK if payload["verified"] else EXIT_MISMATCH


def cmd_verify(args) -> int:
    circuit = parse_netlist(Path(args.netlist).read_text())
    tt = parse_truth_table(Path(args.table).read_text())
    rep = verify_against(circuit, tt)
    if rep.passed:
        print(f"ok: {1 << tt.n} inputs match")
        return EXIT_OK
    width = tt.n
    for x, exp, act in rep.mismatches[: args.max_report]:
        print(f"mismatch x={x:0{width}b} expected={exp:0{width}b} got={act:0{width}b}")
    print(f"FAILED: {len(rep.mismatches)} of {1 << tt.n} inputs differ")
    return EXIT_MISMATCH


def cmd_simulate(args) -> int:
    circuit = parse_netlist(Path(args.netlist).read_text())
    n = circuit.n
    words = [args.input] if args.input is not None else [format(x, f"0{n}b") for x in range(1 << n)]
    for word in words:
        state = run(circuit, word)
        out = read_word(state, circuit.output_wires)
        line = f"{word} -> {out:0{len(circuit.output_wires)}b}"
        if args.state:
            line += f"  [{format_state(state, circuit.width)}]"
        print(line)
    return EXIT_OK


def cmd_bounds(args) -> int:
    out = {}
    for name, value in bnd.all_bounds(args.n, args.q, args.t).items():
        if isinstance(value, bnd.BoundReport):
            out[name] = value.as_dict()
        else:
            out[name] = {"value": value, "valid": True}
    if args.json:
        sys.stdout.write(_dump_json(out))
    else:
        for name, d in out.items():
            v = d["value"]
            shown = "inf" if v is None else (f"{v:g}" if isinstance(v, float) else str(v))
            print(f"{name:22s} {shown:>14s}  {'valid' if d['valid'] else 'invalid'}")
    return EXIT_OK


def cmd_bench(args) -> int:
    n_list = _int_list(args.n_list)
    if args.q_grid == "auto":
        q_grid = sorted({q for n in n_list for q in _auto_grid(n)})
    else:
        q_grid = _int_list(args.q_grid)
    rows = run_bench(n_list, q_grid, _int_list(args.strategies), seed=args.seed, jobs=args.jobs)
    text = rows_to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _auto_grid(n: int) -> list[int]:
    """Five budgets, geometric from 8n+1 to the full-storage budget."""
    lo, hi = 8 * n + 1, max(8 * n + 1, full_storage_budget(n))
    return sorted({round(lo * (hi / lo) ** (i / 4)) for i in range(5)})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revsynth", description="Reversible circuit synthesis under an ancilla budget.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="compile a truth table into a netlist")
    p.add_argument("table")
    p.add_argument("--q", type=int, required=True, help="ancilla budget")
    p.add_argument("--strategy", type=int, choices=(1, 2), default=2)
    p.add_argument("--k", type=int)
    p.add_argument("--group-size", type=int)
    p.add_argument("--out", help="netlist path (report goes next to it as .json)")
    p.add_argument("--report", help="explicit JSON report path")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check a netlist against a truth table")
    p.add_argument("netlist")
    p.add_argument("table")
    p.add_argument("--max-report", type=int, default=20)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="run a netlist on one or all inputs")
    p.add_argument("netlist")
    p.add_argument("--input", help="n-bit input word, x1 first")
    p.add_argument("--state", action="store_true", help="also print the full wire state")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bounds", help="evaluate the closed-form bounds")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("bench", help="sweep (n, q, strategy) on seeded random tables")
    p.add_argument("--n-list", default="4,5,6")
    p.add_argument("--q-grid", default="auto", help="comma-separated budgets, or 'auto'")
    p.add_argument("--strategies", default="1,2")
    p.add_argument("--seed", default="0")
    p.add_argument("--csv", help="output path (stdout if omitted)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except QBudgetTooSmall as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except WidthMismatch as exc:
        print(f"error: width mismatch: {exc}", file=sys.stderr)
        return EXIT_WIDTH
    except VerificationFailed as exc:
        print(f"error: verification failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ParseError, TooLarge, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

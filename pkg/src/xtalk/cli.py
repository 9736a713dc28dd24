"""Command line: ``xtalk {compile,compare,bench,validate}``.

Every run writes ``metrics.csv`` (deterministic for fixed inputs and seed),
``timings.csv`` (wall-clock compile times), ``manifest.json`` and one JSON
schedule file per run under ``schedules/``.  Set ``XTALK_LOG=DEBUG`` (or
INFO, WARNING) for progress logging on stderr.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import math
import os
import re
import sys
from pathlib import Path

from . import __version__
from .device import default_mesh_device
from .exceptions import StageError, XtalkError
from .noise import NoiseParams
from .pipeline import prepare, run
from .scheduler import (
    STRATEGIES,
    CompileOptions,
    dump_schedule,
    load_schedule,
    normalize_strategy,
    validate_schedule,
)
from .validation import check_circuit, check_device, device_for

log = logging.getLogger("xtalk")

METRIC_COLUMNS = (
    "circuit",
    "strategy",
    "n_qubits",
    "depth_cycles",
    "exec_time_ns",
    "success",
    "crosstalk_err_sum",
    "decoherence_err_sum",
    "n_colors_max",
)
BENCH_FAMILIES = ("bv", "ising", "qaoa", "xeb")
BENCH_SIZES = (4, 9, 16, 25)
EXIT_INVALID, EXIT_STAGE = 1, 3


def _csv_list(cast):
    def parse(text):
        try:
            return [cast(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad list {text!r}") from None

    return parse


def _strategies(text):
    try:
        return [normalize_strategy(s.strip()) for s in text.split(",") if s.strip()]
    except XtalkError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(p):
    p.add_argument("--device", help="device config (JSON); default: smallest fitting square mesh")
    p.add_argument("--strategy", type=_strategies, default=list(STRATEGIES),
                   help="comma-separated strategies (default: all)")
    p.add_argument("--distance", type=int, default=1, help="crosstalk distance d")
    p.add_argument("--max-colors", type=_csv_list(int), default=None,
                   help="comma-separated colour caps swept for ColorDynamic")
    p.add_argument("--residual-mhz", type=_csv_list(float), default=None,
                   help="comma-separated residual couplings (MHz) swept for G")
    p.add_argument("--decomp", choices=("cz", "iswap", "hybrid"), default="hybrid")
    p.add_argument("--crosstalk-mode", choices=("transition", "literal"), default="transition")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="xtalk-out", help="output directory")


def build_parser():
    parser = argparse.ArgumentParser(prog="xtalk", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"xtalk {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("compile", help="compile circuits with one or more strategies")
    p.add_argument("--circuit", action="append", required=True,
                   help="circuit file or generator spec such as xeb:16:8; repeatable")
    _common(p)

    p = sub.add_parser("compare", help="compile and print success ratios against a baseline")
    p.add_argument("--circuit", action="append", required=True)
    p.add_argument("--baseline", type=normalize_strategy, default="U")
    _common(p)

    p = sub.add_parser("bench", help="run the benchmark suite")
    p.add_argument("--families", type=_csv_list(str), default=list(BENCH_FAMILIES))
    p.add_argument("--sizes", type=_csv_list(int), default=list(BENCH_SIZES))
    p.add_argument("--baseline", type=normalize_strategy, default="U")
    _common(p)

    p = sub.add_parser("validate", help="re-check a schedule file")
    p.add_argument("--schedule", required=True)
    p.add_argument("--device", help="device config; default: mesh matching the schedule")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _variants(args, strategy):
    """(label, options overrides, residual GHz) for one strategy."""
    if strategy == "ColorDynamic" and args.max_colors:
        return [(f"{strategy}/mc{k}", {"max_colors": k}, None) for k in args.max_colors]
    if strategy == "G" and args.residual_mhz:
        return [(f"G/r{r:g}MHz", {}, r * 1e-3) for r in args.residual_mhz]
    return [(strategy, {}, None)]


def _fmt(x):
    return f"{x:.12g}"


def _slug(text):
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", text)


def _run_suite(args, circuits):
    """Compile every (circuit, strategy variant); returns metric and timing rows."""
    out = Path(args.out)
    (out / "schedules").mkdir(parents=True, exist_ok=True)
    mode = "literal" if args.crosstalk_mode == "literal" else "transition"
    fixed_device = None
    if args.device:
        with _stage_guard("load"):
            fixed_device = check_device(args.device)
    rows, timings = [], []
    for label, circ in circuits:
        device = fixed_device or device_for(circ, args.seed)
        log.info("circuit %s on %d qubits", label, device.n_qubits)
        native = prepare(circ, device, args.decomp)
        for strategy in args.strategy:
            for name, overrides, residual in _variants(args, strategy):
                opts = CompileOptions(distance=args.distance, **overrides)
                dev = device if residual is None else device.with_residual_coupling(residual)
                params = NoiseParams.from_device(dev, mode)
                res = run(strategy, dev, native, opts, params)
                m = res.metrics
                rows.append({
                    "circuit": label,
                    "strategy": name,
                    "n_qubits": dev.n_qubits,
                    "depth_cycles": m.depth,
                    "exec_time_ns": _fmt(m.exec_time),
                    "success": _fmt(m.success),
                    "crosstalk_err_sum": _fmt(m.total_crosstalk_error),
                    "decoherence_err_sum": _fmt(m.total_decoherence_error),
                    "n_colors_max": res.schedule.n_colors_max,
                })
                timings.append({"circuit": label, "strategy": name, "compile_ms": f"{res.compile_ms:.3f}"})
                dump_schedule(res.schedule, out / "schedules" / f"{_slug(label)}__{_slug(name)}.json")
                log.debug("%s %s success=%s", label, name, rows[-1]["success"])
    _write_csv(out / "metrics.csv", METRIC_COLUMNS, rows)
    _write_csv(out / "timings.csv", ("circuit", "strategy", "compile_ms"), timings)
    _write_manifest(out, args)
    return rows


def _write_csv(path, columns, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def config_hash(args):
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "func")}
    if args.device:
        cfg["device_text"] = Path(args.device).read_text(encoding="utf-8")
    blob = json.dumps(cfg, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()


def _write_manifest(out, args):
    manifest = {
        "version": __version__,
        "verb": args.verb,
        "seed": args.seed,
        "config_hash": config_hash(args),
        "args": {k: v for k, v in sorted(vars(args).items()) if k != "out"},
    }
    with open(out / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


class _stage_guard:
    def __init__(self, name):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, kind, exc, tb):
        if exc is not None and not isinstance(exc, StageError) and isinstance(exc, (XtalkError, OSError, ValueError)):
            raise StageError(self.name, exc) from exc
        return False


def _load_circuits(specs, seed):
    out = []
    with _stage_guard("load"):
        for spec in specs:
            circ = check_circuit(spec, seed)
            label = spec if not os.path.isfile(spec) else (circ.name or Path(spec).stem)
            out.append((label, circ))
    return out


def ratio_table(rows, baseline):
    """Per-circuit success ratios against ``baseline`` plus a geometric-mean row."""
    by_circ = {}
    for r in rows:
        by_circ.setdefault(r["circuit"], {})[r["strategy"]] = float(r["success"])
    strategies = list(dict.fromkeys(r["strategy"] for r in rows))
    table, logs = [], {s: [] for s in strategies}
    for circ, succ in by_circ.items():
        base = succ.get(baseline)
        line = {"circuit": circ}
        for s in strategies:
            if base and s in succ and succ[s] > 0:
                ratio = succ[s] / base
                logs[s].append(math.log(ratio))
                line[s] = _fmt(ratio)
            else:
                line[s] = ""
        table.append(line)
    table.append({"circuit": "geomean", **{
        s: _fmt(math.exp(sum(v) / len(v))) if v else "" for s, v in logs.items()
    }})
    return strategies, table


def _print_ratios(rows, baseline, out):
    strategies, table = ratio_table(rows, baseline)
    cols = ["circuit", *strategies]
    _write_csv(Path(out) / "compare.csv", cols, table)
    width = max(12, *(len(c) for c in cols))
    print(f"success ratio vs {baseline}")
    print("".join(c.ljust(width) for c in cols))
    for line in table:
        cells = [line["circuit"]] + [f"{float(line[s]):.3g}" if line[s] else "-" for s in strategies]
        print("".join(c.ljust(width) for c in cells))


def _print_metrics(rows):
    cols = ("circuit", "strategy", "depth_cycles", "success", "n_colors_max")
    print("  ".join(f"{c:>14}" for c in cols))
    for r in rows:
        print("  ".join(f"{str(r[c]):>14}" for c in cols))


def cmd_compile(args):
    rows = _run_suite(args, _load_circuits(args.circuit, args.seed))
    _print_metrics(rows)
    return 0


def cmd_compare(args):
    if args.baseline not in args.strategy:
        args.strategy = [args.baseline, *args.strategy]
    rows = _run_suite(args, _load_circuits(args.circuit, args.seed))
    _print_ratios(rows, args.baseline, args.out)
    return 0


def cmd_bench(args):
    specs = [f"{fam}:{n}" for fam in args.families for n in args.sizes]
    if args.baseline not in args.strategy:
        args.strategy = [args.baseline, *args.strategy]
    rows = _run_suite(args, _load_circuits(specs, args.seed))
    _print_ratios(rows, args.baseline, args.out)
    return 0


def cmd_validate(args):
    with _stage_guard("load"):
        sched = load_schedule(args.schedule)
        if args.device:
            device = check_device(args.device)
        else:
            n = sched.circuit.n_qubits
            device = default_mesh_device(n, seed=args.seed)
    report = validate_schedule(sched, device)
    if report.ok:
        print(f"{args.schedule}: ok ({sched.depth} cycles, strategy {sched.strategy})")
        return 0
    for v in report.violations:
        print(v)
    print(f"{args.schedule}: {len(report.violations)} violation(s)", file=sys.stderr)
    return EXIT_INVALID


COMMANDS = {"compile": cmd_compile, "compare": cmd_compare, "bench": cmd_bench, "validate": cmd_validate}


def main(argv=None):
    level = os.environ.get("XTALK_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.verb](args)
    except StageError as exc:
        print(f"xtalk: error: {exc}", file=sys.stderr)
        return EXIT_STAGE


if __name__ == "__main__":
    sys.exit(main())

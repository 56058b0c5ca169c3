"""Command-line driver: ``dixmier verify | table | kernel | lambda``.

Exit codes: 0 all selected checks pass, 1 a check failed, 2 usage error.
JSON output is canonical (sorted keys, rationals as "p/q" strings).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .config import CHECK_GROUPS, ConfigError, RunConfig, load_config_file
from .datum import DatumError, RangeError, quantize
from .enveloping import kernel_J
from .examples import load_example
from .poly import MalformedInput
from .star import build_lambda, cp_table, lambda_suite
from .suite import run_group

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dixmier", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("verify", "run check groups and report"),
                        ("table", "dump the C_p table on basis pairs"),
                        ("kernel", "kernel of U(g) -> D per degree"),
                        ("lambda", "matrices of the Lambda^x operators")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--example", help="example name (default a1)")
        p.add_argument("--cutoff", type=int, help="filtration cutoff in half-units")
        p.add_argument("--out", help="write JSON here (default: stdout)")
        p.add_argument("--jobs", type=int, help="parallel check groups")
        p.add_argument("--seed", type=int, help="seed for randomized inputs")
        if name == "verify":
            p.add_argument("--check", help=f"comma-separated subset of {','.join(CHECK_GROUPS)},all")
    return parser


def resolve_config(args) -> RunConfig:
    values = load_config_file(args.config) if args.config else {}
    for key in ("example", "cutoff", "out", "jobs", "seed"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if getattr(args, "check", None):
        values["checks"] = tuple(c.strip() for c in args.check.split(",") if c.strip())
    return RunConfig(**values).validated()


def _emit(cfg: RunConfig, payload, summary: list[str]) -> None:
    text = dumps(payload)
    if cfg.out:
        Path(cfg.out).write_text(text)
        print("\n".join(summary))
    else:
        sys.stdout.write(text)
        print("\n".join(summary), file=sys.stderr)


def cmd_verify(cfg: RunConfig) -> int:
    tasks = [(cfg.example, g, cfg.cutoff, cfg.seed) for g in cfg.checks]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(tasks))) as pool:
            results = list(pool.map(run_group, *zip(*tasks)))
    else:
        results = [run_group(*t) for t in tasks]
    passed = all(r["passed"] for r in results)
    payload = {"example": cfg.example, "cutoff": cfg.cutoff, "checks": results, "passed": passed}
    summary = [f"example {cfg.example}, cutoff {cfg.cutoff} half-units"]
    for r in results:
        for rep in r["reports"]:
            line = f"  {'PASS' if rep['status'] == 'pass' else 'FAIL'} {r['group']}/{rep['check']} ({rep['checked']} checked)"
            if rep["failures"]:
                line += f": {rep['failures'][0].get('detail', '')}"
            summary.append(line)
    summary.append("all checks passed" if passed else "some checks FAILED")
    _emit(cfg, payload, summary)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_table(cfg: RunConfig) -> int:
    table = cp_table(quantize(load_example(cfg.example), cfg.cutoff), cfg.cutoff)
    _emit(cfg, table.to_json(), [f"{len(table.rows)} C_p rows for {cfg.example} up to {cfg.cutoff}/2"])
    return EXIT_OK


def cmd_kernel(cfg: RunConfig) -> int:
    rows = [k.to_json() for k in kernel_J(load_example(cfg.example), cfg.cutoff)]
    summary = [f"degree {r['degree']}/2: dim U = {r['dimU']}, image {r['dimImage']}, kernel {r['dimKernel']}"
               for r in rows]
    _emit(cfg, rows, summary)
    return EXIT_OK


def cmd_lambda(cfg: RunConfig) -> int:
    q = quantize(load_example(cfg.example), cfg.cutoff + 2)
    lam = build_lambda(q, cfg.cutoff)
    reports = lambda_suite(q, cfg.cutoff)
    matrices = {x: {str(d2): [[v.to_json() for v in row] for row in m] for d2, m in per.items()}
                for x, per in lam.matrices.items()}
    passed = all(r.passed for r in reports)
    payload = {"example": cfg.example, "cutoff": cfg.cutoff, "matrices": matrices,
               "properties": [r.to_json() for r in reports], "passed": passed}
    summary = [f"  {'PASS' if r.passed else 'FAIL'} {r.name}" for r in reports]
    _emit(cfg, payload, summary)
    return EXIT_OK if passed else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "table": cmd_table, "kernel": cmd_kernel, "lambda": cmd_lambda}


def run_cli(cfg: RunConfig, command: str = "verify") -> int:
    try:
        return COMMANDS[command](cfg.validated())
    except ConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DatumError, RangeError, MalformedInput) as exc:
        print(f"check failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
    except (ConfigError, TypeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run_cli(cfg, args.command)


if __name__ == "__main__":
    sys.exit(main())

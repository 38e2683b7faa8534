"""Command-line front end: gen, mine, solve, fbc and bench."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Any, Dict, Optional, Sequence

import pandas as pd

from . import settings
from .bench.generator import DEFAULT_COSTS, DEFAULT_DENSITY, cmd_gen
from .bench.plans import load_plan
from .bench.runner import cmd_bench, has_timeouts
from .core.attrset import AttrSet
from .core.dataset import Dataset, load_dataset
from .core.deadline import Deadline
from .core.errors import AdvisorError, ConfigError, SolveTimeoutError
from .core.money import to_cents
from .fbc.frequent import (
    FbcConfig,
    MaximalFrequentSet,
    mine_maximal_frequents,
    project_maximal_frequents,
)
from .fbc.oracles import fbc_apriori, fbc_bruteforce, fbc_inclusion_exclusion
from .fbc.patterns import fbc
from .gain.registry import GAIN_NAMES, GainRegistry
from .solver.base import SolveRequest
from .solver.binary import SOLVERS, get_solver

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PARTIAL = 3

ROW_PREFIX = "row:"
FBC_CLI_METHODS = ("patterns", "apriori", "bruteforce", "inclusion-exclusion")


# ----------------------------------------------------------------------
# Output
# ----------------------------------------------------------------------
def _flatten(record: Dict[str, Any]) -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in record.items():
        if isinstance(value, dict):
            flat.update(_flatten(value))
        elif isinstance(value, list):
            flat[key] = ";".join(map(str, value))
        else:
            flat[key] = value
    return flat


def _emit(args: argparse.Namespace, payload: Any) -> None:
    """Write a dict or a list of dicts as JSON (default) or CSV to stdout."""
    if args.format == "csv":
        records = payload if isinstance(payload, list) else [payload]
        flat = [_flatten(record) for record in records]
        sys.stdout.write(pd.DataFrame(flat).to_csv(index=False))
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")


# ----------------------------------------------------------------------
# Shared argument handling
# ----------------------------------------------------------------------
def _dataset(args: argparse.Namespace) -> Dataset:
    if not args.dataset or not args.costs:
        raise ConfigError("this command needs --dataset and --costs")
    return load_dataset(args.dataset, args.costs)


def _is_bit_string(spec: str, width: int) -> bool:
    return len(spec) == width and set(spec) <= {"0", "1"}


def _attrs_from_spec(spec: str, dataset: Dataset) -> AttrSet:
    """A bit string, a comma list of names, or ``-`` for the empty set."""
    spec = spec.strip()
    if spec in ("", "-"):
        return AttrSet.empty(dataset.m)
    if _is_bit_string(spec, dataset.m):
        return AttrSet.from_string(spec)
    names = [name.strip() for name in spec.split(",") if name.strip()]
    return dataset.catalog.attrs_from_names(names)


def _tuple_attrs(spec: str, dataset: Dataset) -> AttrSet:
    """``row:<i>`` selects row ``i``'s attributes; anything else is a set spec."""
    spec = spec.strip()
    if spec.startswith(ROW_PREFIX):
        index = spec[len(ROW_PREFIX) :].strip()
        if not index.isdigit():
            raise ConfigError(f"row index must be a non-negative integer: {index!r}")
        row = int(index)
        if row >= dataset.n:
            raise ConfigError(f"row {row} out of range for {dataset.n} rows")
        return dataset.row_attrs(row)
    if spec.isdigit() and not _is_bit_string(spec, dataset.m):
        raise ConfigError(
            f"{spec!r} is not a {dataset.m}-bit string; "
            f"use {ROW_PREFIX}{spec} to pick a row"
        )
    return _attrs_from_spec(spec, dataset)


def _maximal_set(
    args: argparse.Namespace, dataset: Dataset, deadline: Deadline
) -> Optional[MaximalFrequentSet]:
    if args.mined:
        return MaximalFrequentSet.load(args.mined)
    if args.tau is not None:
        return mine_maximal_frequents(dataset, FbcConfig(args.tau), deadline=deadline)
    return None


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------
def run_gen(args: argparse.Namespace) -> int:
    if not args.dataset or not args.costs:
        raise ConfigError("gen needs --dataset and --costs output paths")
    data_out, costs_out = cmd_gen(
        args.n,
        args.m,
        args.density,
        args.cost_spec,
        args.seed,
        args.dataset,
        args.costs,
    )
    _emit(
        args, {"dataset": str(data_out), "costs": str(costs_out), "seed": args.seed}
    )
    return EXIT_OK


def run_mine(args: argparse.Namespace) -> int:
    dataset = _dataset(args)
    started = time.perf_counter()
    mined = mine_maximal_frequents(
        dataset, FbcConfig(args.tau), deadline=Deadline(args.timeout_s)
    )
    mine_ms = (time.perf_counter() - started) * 1000
    if args.out:
        mined.save(args.out)
    _emit(
        args,
        {
            "tau": mined.tau,
            "n": mined.n,
            "m": mined.width,
            "maximal": mined.to_strings(),
            "mine_ms": round(mine_ms, 3),
        },
    )
    return EXIT_OK


def run_solve(args: argparse.Namespace) -> int:
    dataset = _dataset(args)
    deadline = Deadline(args.timeout_s)
    context: Dict[str, Any] = {
        "mined": MaximalFrequentSet.load(args.mined) if args.mined else None,
        "tau": args.tau,
        "verify": args.verify,
        "deadline": deadline,
    }
    spec = args.gain or "fbc"
    gain = GainRegistry(dataset).build(spec, **context)
    request = SolveRequest(
        tuple_attrs=_tuple_attrs(args.tuple, dataset),
        budget=to_cents(args.budget),
        gain=gain,
        flexible=_attrs_from_spec(args.flexible, dataset) if args.flexible else None,
        low_budget=args.low_budget,
    )
    result = get_solver(args.algorithm)(request, dataset, deadline=deadline)
    payload = result.to_dict(dataset.catalog)
    payload["algorithm"] = args.algorithm
    _emit(args, payload)
    return EXIT_OK


def run_fbc(args: argparse.Namespace) -> int:
    dataset = _dataset(args)
    node = _attrs_from_spec(args.node, dataset)
    deadline = Deadline(args.timeout_s)
    method = args.method

    if method == "patterns":
        mined = _maximal_set(args, dataset, deadline)
        if mined is None:
            raise ConfigError("fbc needs --mined or --tau")
        value = fbc(node, project_maximal_frequents(mined, node))
    elif method == "inclusion-exclusion":
        mined = _maximal_set(args, dataset, deadline)
        if mined is None:
            raise ConfigError("fbc needs --mined or --tau")
        value = fbc_inclusion_exclusion(project_maximal_frequents(mined, node))
    else:
        if args.tau is None:
            raise ConfigError(f"--method {method} needs --tau")
        cfg = FbcConfig(args.tau)
        if method == "apriori":
            value = fbc_apriori(node, dataset, cfg, deadline=deadline)
        else:
            value = fbc_bruteforce(node, dataset, cfg)

    _emit(
        args,
        {
            "node": node.to_string(),
            "attributes": dataset.catalog.names_of(node),
            "fbc": value,
            "method": method,
        },
    )
    return EXIT_OK


def run_bench(args: argparse.Namespace) -> int:
    plan = load_plan(
        args.plan,
        args.config,
        seed=args.seed,
        timeout_s=args.timeout_s,
        workers=args.workers,
    )
    frame, out = cmd_bench(plan, args.output)
    if out is None:
        if args.format == "json":
            sys.stdout.write(frame.to_json(orient="records", indent=2) + "\n")
        else:
            sys.stdout.write(frame.to_csv(index=False))
    if has_timeouts(frame):
        logger.warning("Plan %s finished with timed-out runs", plan.name)
        return EXIT_PARTIAL
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="attribute-advisor",
        description="Pick the listing attributes worth paying for under a budget.",
    )
    parser.add_argument("--dataset", help="Listings CSV (0/1 cells, header row).")
    parser.add_argument("--costs", help="Attribute costs CSV (name,cost).")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument(
        "--timeout-s",
        type=float,
        default=None,
        help=f"Wall-clock limit per run (default {settings.DEFAULT_TIMEOUT_S:g}).",
    )
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    parser.add_argument("--log-level", default=None)
    parser.set_defaults(format=None)

    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Write a seeded synthetic dataset and costs.")
    gen.add_argument("-n", type=int, default=int(settings.BENCH_DEFAULTS["n"]))
    gen.add_argument("-m", type=int, default=int(settings.BENCH_DEFAULTS["m"]))
    gen.add_argument("--density", default=DEFAULT_DENSITY)
    gen.add_argument("--cost-spec", default=DEFAULT_COSTS)
    gen.set_defaults(handler=run_gen)

    mine = sub.add_parser("mine", help="Mine and persist the maximal frequent set.")
    mine.add_argument("--tau", type=float, required=True)
    mine.add_argument("--out", help="Where to save the maximal frequent set.")
    mine.set_defaults(handler=run_mine)

    solve = sub.add_parser("solve", help="Choose attributes to add to one tuple.")
    solve.add_argument(
        "--tuple",
        default="-",
        help="row:<index>, comma-separated names, a bit string, or - for none.",
    )
    solve.add_argument("--budget", required=True, help="Budget in currency units.")
    solve.add_argument(
        "--gain",
        help=f"Gain spec name[:arg]. Available: {', '.join(GAIN_NAMES)}",
    )
    solve.add_argument("--mined", help="Saved maximal frequent set for the FBC gain.")
    solve.add_argument("--tau", type=float, default=None)
    solve.add_argument("--algorithm", choices=list(SOLVERS), default="general")
    solve.add_argument("--flexible", help="Names the provider may add (default all).")
    solve.add_argument("--low-budget", action="store_true")
    solve.add_argument("--verify", action="store_true")
    solve.set_defaults(handler=run_solve)

    count = sub.add_parser("fbc", help="Print the FBC of one attribute set.")
    count.add_argument("--node", required=True, help="Bit string or comma names.")
    count.add_argument("--mined")
    count.add_argument("--tau", type=float, default=None)
    count.add_argument("--method", choices=FBC_CLI_METHODS, default="patterns")
    count.set_defaults(handler=run_fbc)

    bench = sub.add_parser("bench", help="Run a named bench plan.")
    bench.add_argument("plan")
    bench.add_argument("--config", default=None)
    bench.add_argument("--output", default=None)
    bench.add_argument("--workers", type=int, default=None)
    bench.set_defaults(handler=run_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    settings.configure_logging(args.log_level)

    if args.command != "bench":
        args.seed = settings.DEFAULT_SEED if args.seed is None else args.seed
        if args.timeout_s is None:
            args.timeout_s = settings.DEFAULT_TIMEOUT_S

    try:
        return args.handler(args)
    except SolveTimeoutError as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_PARTIAL
    except KeyError as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return EXIT_INVALID
    except (AdvisorError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

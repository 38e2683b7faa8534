"""Run a bench plan and collect one CSV row per (value, algorithm, repetition)."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from .. import settings
from ..core.attrset import AttrSet
from ..core.dataset import Dataset
from ..core.deadline import Deadline
from ..core.errors import SolveTimeoutError
from ..core.money import to_cents
from ..fbc.frequent import FbcConfig, MaximalFrequentSet, mine_maximal_frequents
from ..gain.fbc_gain import FbcGain
from ..solver.base import SolveRequest
from ..solver.binary import get_solver
from .generator import generate_dataset
from .plans import BenchPlan, plan_from_dict

logger = logging.getLogger(__name__)

COLUMNS = [
    "swept",
    "value",
    "algorithm",
    "repetition",
    "elapsed_ms",
    "gain_ms",
    "gain_evals",
    "nodes",
    "result",
    "status",
    "mine_ms",
]

# Algorithm -> (solver, FBC counting method)
ALGORITHM_SETUP: Dict[str, Tuple[str, str]] = {
    "baseline": ("baseline", "patterns"),
    "improved": ("improved", "patterns"),
    "general": ("general", "patterns"),
    "fbc": ("general", "patterns"),
    "apriori": ("general", "apriori"),
}

STATUS_OK = "ok"
STATUS_TIMEOUT = "timeout"

_MINED: Dict[Tuple[Any, ...], Tuple[MaximalFrequentSet, float]] = {}


@lru_cache(maxsize=8)
def _dataset(n: int, m: int, density: str, costs: str, seed: int) -> Dataset:
    return generate_dataset(n, m, density, costs, seed)


def _mined(
    dataset: Dataset, tau: float, deadline: Deadline
) -> Tuple[MaximalFrequentSet, float]:
    key = (dataset.fingerprint, tau)
    if key not in _MINED:
        started = time.perf_counter()
        mined = mine_maximal_frequents(dataset, FbcConfig(tau), deadline=deadline)
        _MINED[key] = (mined, (time.perf_counter() - started) * 1000)
    return _MINED[key]


class BenchRunner:
    def __init__(self, plan: BenchPlan):
        self.plan = plan
        self.logger = logging.getLogger(f"{__name__}.{plan.name}")

    # ------------------------------------------------------------------
    # Single run
    # ------------------------------------------------------------------
    def run_one(self, value: float, algorithm: str, repetition: int) -> Dict[str, Any]:
        plan = self.plan
        setting = plan.setting(value)
        row: Dict[str, Any] = {
            "swept": plan.swept,
            "value": value,
            "algorithm": algorithm,
            "repetition": repetition,
            "elapsed_ms": None,
            "gain_ms": None,
            "gain_evals": None,
            "nodes": None,
            "result": None,
            "status": STATUS_OK,
            "mine_ms": 0.0,
        }
        dataset = _dataset(
            setting["n"], setting["m"], plan.density, plan.costs, plan.seed
        )
        deadline = Deadline(plan.timeout_s)
        solver_name, method = ALGORITHM_SETUP[algorithm]
        started = time.perf_counter()
        try:
            if method == "apriori":
                mined = MaximalFrequentSet((), dataset.m, setting["tau"], dataset.n)
            else:
                mined, row["mine_ms"] = _mined(dataset, setting["tau"], deadline)
            gain = FbcGain(mined, method=method, deadline=deadline)
            request = SolveRequest(
                tuple_attrs=AttrSet.empty(dataset.m),
                budget=to_cents(setting["budget"]),
                gain=gain,
            )
            result = get_solver(solver_name)(request, dataset, deadline=deadline)
        except SolveTimeoutError:
            row["status"] = STATUS_TIMEOUT
            row["elapsed_ms"] = round((time.perf_counter() - started) * 1000, 3)
            self.logger.warning(
                "%s=%s %s #%d timed out after %.0f s",
                plan.swept,
                value,
                algorithm,
                repetition,
                plan.timeout_s,
            )
            return row

        row.update(
            elapsed_ms=round(result.stats.elapsed_ms, 3),
            gain_ms=round(result.stats.gain_ms, 3),
            gain_evals=result.stats.gain_evals,
            nodes=result.stats.nodes_generated,
            result=result.gain_value,
            mine_ms=round(row["mine_ms"], 3),
        )
        self.logger.info(
            "%s=%s %s #%d: result=%s in %.1f ms",
            plan.swept,
            value,
            algorithm,
            repetition,
            result.gain_value,
            result.stats.elapsed_ms,
        )
        return row

    # ------------------------------------------------------------------
    # Whole plan
    # ------------------------------------------------------------------
    def run(self) -> pd.DataFrame:
        runs = self.plan.runs()
        self.logger.info(
            "Running plan %s: %d runs on %d worker(s)",
            self.plan.name,
            len(runs),
            self.plan.workers,
        )
        if self.plan.workers > 1:
            payload = self.plan.to_dict()
            with ProcessPoolExecutor(max_workers=self.plan.workers) as executor:
                rows = list(
                    executor.map(
                        _run_task,
                        [payload] * len(runs),
                        *zip(*runs),
                    )
                )
        else:
            rows = [self.run_one(*run) for run in runs]
        return pd.DataFrame(rows, columns=COLUMNS)


def _run_task(
    payload: Dict[str, Any], value: float, algorithm: str, repetition: int
) -> Dict[str, Any]:
    settings.configure_logging()
    raw = dict(payload)
    name = raw.pop("name")
    raw["workers"] = 1
    return BenchRunner(plan_from_dict(name, raw)).run_one(value, algorithm, repetition)


def has_timeouts(frame: pd.DataFrame) -> bool:
    return bool((frame["status"] == STATUS_TIMEOUT).any())


def cmd_bench(
    plan: BenchPlan, output: Optional[str] = None
) -> Tuple[pd.DataFrame, Optional[Path]]:
    frame = BenchRunner(plan).run()
    target = output or plan.output
    out: Optional[Path] = None
    if target:
        out = Path(target)
        frame.to_csv(out, index=False, encoding=settings.CSV_ENCODING)
        logger.info("Wrote %d rows to %s", len(frame), out)
    return frame, out


def summarize(frames: List[pd.DataFrame]) -> pd.DataFrame:
    """Median elapsed time per (value, algorithm) over completed runs."""
    frame = pd.concat(frames, ignore_index=True)
    done = frame[frame["status"] == STATUS_OK]
    return (
        done.groupby(["value", "algorithm"], sort=False)["elapsed_ms"]
        .median()
        .reset_index()
    )

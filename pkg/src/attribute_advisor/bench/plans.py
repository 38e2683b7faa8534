import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from .. import settings
from ..core.errors import PlanValidationError
from .generator import DEFAULT_COSTS, DEFAULT_DENSITY

logger = logging.getLogger(__name__)

SWEEPABLE = ("n", "m", "budget", "tau")
ALGORITHMS = ("baseline", "improved", "general", "fbc", "apriori")

PLAN_DIR = Path(__file__).resolve().parent / "configs"


@dataclass
class BenchPlan:
    name: str
    swept: str
    values: List[float]
    algorithms: List[str]
    fixed: Dict[str, float] = field(default_factory=dict)
    repetitions: int = 1
    output: Optional[str] = None
    seed: int = settings.DEFAULT_SEED
    timeout_s: float = settings.DEFAULT_TIMEOUT_S
    workers: int = settings.BENCH_WORKERS
    density: str = DEFAULT_DENSITY
    costs: str = DEFAULT_COSTS

    def __post_init__(self) -> None:
        # The budget may be written as B, as in the experiment tables.
        if self.swept == "B":
            self.swept = "budget"
        fixed = dict(self.fixed or {})
        if "B" in fixed:
            fixed["budget"] = fixed.pop("B")
        self.fixed = {**settings.BENCH_DEFAULTS, **fixed}
        self.validate()

    # ------------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------------
    def validate(self) -> None:
        if self.swept not in SWEEPABLE:
            raise PlanValidationError(
                f"Plan '{self.name}' sweeps '{self.swept}'. "
                f"Available: {', '.join(SWEEPABLE)}"
            )
        if not self.values:
            raise PlanValidationError(f"Plan '{self.name}' has an empty sweep")
        if any(v <= 0 for v in self.values):
            raise PlanValidationError(f"Plan '{self.name}' sweep values must be > 0")
        if list(self.values) != sorted(self.values):
            raise PlanValidationError(f"Plan '{self.name}' sweep values must be sorted")
        if self.swept == "tau" and any(v > 1 for v in self.values):
            raise PlanValidationError(f"Plan '{self.name}' has tau values above 1")
        if self.swept in ("n", "m") and any(int(v) != v for v in self.values):
            raise PlanValidationError(
                f"Plan '{self.name}' needs whole numbers for '{self.swept}'"
            )
        if not self.algorithms:
            raise PlanValidationError(f"Plan '{self.name}' lists no algorithms")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise PlanValidationError(
                f"Plan '{self.name}' uses unknown algorithms {unknown}. "
                f"Available: {', '.join(ALGORITHMS)}"
            )
        if self.repetitions < 1:
            raise PlanValidationError(f"Plan '{self.name}' needs >= 1 repetition")
        if self.timeout_s <= 0:
            raise PlanValidationError(f"Plan '{self.name}' needs a positive timeout")

    # ------------------------------------------------------------------
    # Run settings
    # ------------------------------------------------------------------
    def setting(self, value: float) -> Dict[str, Any]:
        """The full (n, m, budget, tau) setting for one sweep value."""
        chosen = {**self.fixed, self.swept: value}
        return {
            "n": int(chosen["n"]),
            "m": int(chosen["m"]),
            "budget": chosen["budget"],
            "tau": float(chosen["tau"]),
        }

    def runs(self) -> List[Tuple[float, str, int]]:
        """(value, algorithm, repetition) in plan order."""
        return [
            (value, algorithm, repetition)
            for value in self.values
            for algorithm in self.algorithms
            for repetition in range(self.repetitions)
        ]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def load_plans(config: Optional[Union[str, Path]] = None) -> Dict[str, Dict[str, Any]]:
    """Plan definitions keyed by plan name.

    ``config`` is a JSON file path or the name of a plan file shipped in
    ``bench/configs`` (``.json`` optional).
    """
    cfg_path = Path(config or settings.BENCH_CONFIG)
    if not cfg_path.is_file():
        packaged = PLAN_DIR / cfg_path.with_suffix(".json").name
        if not packaged.is_file():
            shipped = ", ".join(sorted(p.stem for p in PLAN_DIR.glob("*.json")))
            raise FileNotFoundError(
                f"Plan file '{cfg_path}' not found. Available: {shipped}"
            )
        cfg_path = packaged
    with open(cfg_path, "r", encoding="utf-8") as f:
        plans = json.load(f)
    logger.info("Using bench config: %s", cfg_path)
    if not isinstance(plans, dict):
        raise PlanValidationError(f"{cfg_path} must map plan names to plans")
    return plans


def load_plan(
    name: str, config: Optional[Union[str, Path]] = None, **overrides: Any
) -> BenchPlan:
    plans = load_plans(config)
    raw = plans.get(name)
    if not raw:
        raise PlanValidationError(
            f"Plan '{name}' not found. Available: {', '.join(plans.keys())}"
        )
    given = {k: v for k, v in overrides.items() if v is not None}
    return plan_from_dict(name, {**raw, **given})


def plan_from_dict(name: str, raw: Dict[str, Any]) -> BenchPlan:
    known = set(BenchPlan.__dataclass_fields__) - {"name"}
    unknown = set(raw) - known
    if unknown:
        raise PlanValidationError(
            f"Plan '{name}' has unknown keys {sorted(unknown)}. "
            f"Available: {', '.join(sorted(known))}"
        )
    try:
        return BenchPlan(name=name, **raw)
    except TypeError as exc:
        raise PlanValidationError(f"Plan '{name}' is malformed: {exc}") from exc

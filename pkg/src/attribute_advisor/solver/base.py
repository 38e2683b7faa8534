"""Shared request/result types and bookkeeping for the solvers."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Protocol, Tuple, runtime_checkable

from ..core.attrset import AttrSet, bit_of
from ..core.dataset import AttributeCatalog, Dataset
from ..core.deadline import Deadline, check_deadline
from ..core.errors import ConfigError, GainContractError, WidthMismatchError
from ..core.money import format_cents

GAIN_REL_TOL = 1e-9


@runtime_checkable
class GainFunction(Protocol):
    """Monotone, read-only score of an attribute set against a dataset."""

    name: str
    integral: bool

    def evaluate(self, attrs: AttrSet, dataset: Dataset) -> float: ...


@dataclass(frozen=True)
class SolveRequest:
    tuple_attrs: AttrSet
    budget: int
    gain: GainFunction
    flexible: Optional[AttrSet] = None
    low_budget: bool = False

    def __post_init__(self) -> None:
        if self.budget < 0:
            raise ConfigError(f"budget must be non-negative, got {self.budget}")
        if self.flexible is not None and self.flexible.width != self.tuple_attrs.width:
            raise WidthMismatchError(
                f"flexible width {self.flexible.width} != "
                f"tuple width {self.tuple_attrs.width}"
            )

    def candidates(self) -> AttrSet:
        """Attributes the tuple may still add (A' without A_t)."""
        flexible = self.flexible or AttrSet.full(self.tuple_attrs.width)
        return flexible - self.tuple_attrs


@dataclass
class SolveStats:
    nodes_generated: int = 0
    gain_evals: int = 0
    elapsed_ms: float = 0.0
    gain_ms: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "nodes_generated": self.nodes_generated,
            "gain_evals": self.gain_evals,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "gain_ms": round(self.gain_ms, 3),
        }


@dataclass(frozen=True)
class SolveResult:
    chosen: AttrSet
    gain_value: float
    stats: SolveStats = field(default_factory=SolveStats, compare=False)
    values: Optional[Tuple[int, ...]] = None

    def cost(self, catalog: AttributeCatalog) -> int:
        return catalog.cost_of(self.chosen)

    def to_dict(self, catalog: AttributeCatalog) -> Dict[str, Any]:
        gain: Any = self.gain_value
        if isinstance(gain, float) and gain.is_integer():
            gain = int(gain)
        payload: Dict[str, Any] = {
            "chosen": catalog.names_of(self.chosen),
            "gain": gain,
            "cost": format_cents(self.cost(catalog)),
            "stats": self.stats.to_dict(),
        }
        if self.values is not None:
            payload["values"] = list(self.values)
        return payload


def gains_equal(a: float, b: float, integral: bool) -> bool:
    if integral:
        return a == b
    return math.isclose(a, b, rel_tol=GAIN_REL_TOL, abs_tol=0.0)


class Subspace:
    """The candidate attributes re-indexed by descending cost.

    Local position ``p`` (0-based, leftmost first) holds ``attrs[p]``;
    local masks put position ``p`` at bit ``width - 1 - p`` so that the
    lattice tree helpers apply unchanged.
    """

    def __init__(self, catalog: AttributeCatalog, candidates: AttrSet):
        self.catalog = catalog
        self.attrs: List[int] = [k for k in catalog.order if k in candidates]
        self.costs: Tuple[int, ...] = tuple(catalog.costs[k] for k in self.attrs)
        self.width = len(self.attrs)
        self._external = [bit_of(k, catalog.m) for k in self.attrs]

    @property
    def full(self) -> int:
        return (1 << self.width) - 1

    def to_external(self, local: int) -> AttrSet:
        bits = 0
        for p, external in enumerate(self._external):
            if local >> (self.width - 1 - p) & 1:
                bits |= external
        return AttrSet(bits, self.catalog.m)

    def cost_of(self, local: int) -> int:
        return sum(
            c for p, c in enumerate(self.costs) if local >> (self.width - 1 - p) & 1
        )

    def is_maximal_affordable(self, local: int, budget: int) -> bool:
        """``local`` fits ``budget`` and no missing candidate still fits."""
        cost = self.cost_of(local)
        if cost > budget:
            return False
        missing = [
            c for p, c in enumerate(self.costs) if not local >> (self.width - 1 - p) & 1
        ]
        return not missing or cost + min(missing) > budget

    def low_budget_level(self, budget: int) -> int:
        """Largest level whose cheapest node still fits ``budget``."""
        spent = 0
        level = 0
        for cost in sorted(self.costs):
            if spent + cost > budget:
                break
            spent += cost
            level += 1
        return level


class GainMeter:
    """Evaluates the gain on ``A_t`` plus a chosen set and records the cost."""

    def __init__(
        self,
        request: SolveRequest,
        dataset: Dataset,
        stats: SolveStats,
        deadline: Optional[Deadline] = None,
    ):
        self.request = request
        self.dataset = dataset
        self.stats = stats
        self.deadline = deadline

    def __call__(self, chosen: AttrSet) -> float:
        check_deadline(self.deadline)
        started = time.perf_counter()
        value = self.request.gain.evaluate(
            chosen | self.request.tuple_attrs, self.dataset
        )
        self.stats.gain_ms += (time.perf_counter() - started) * 1000
        self.stats.gain_evals += 1
        if value < 0:
            raise GainContractError(
                f"gain {self.request.gain.name!r} returned negative value {value}"
            )
        return value


class BestSoFar:
    """Keeps the best gain; equal gains go to the smallest bit representative."""

    def __init__(self, integral: bool):
        self.integral = integral
        self.gain: Optional[float] = None
        self.chosen: Optional[AttrSet] = None

    def offer(self, gain: float, chosen: AttrSet) -> bool:
        if self.gain is None or self.chosen is None:
            better = True
        elif gains_equal(gain, self.gain, self.integral):
            better = chosen.bits < self.chosen.bits
        else:
            better = gain > self.gain
        if better:
            self.gain, self.chosen = gain, chosen
        return better


def check_dataset(request: SolveRequest, dataset: Dataset) -> None:
    if request.tuple_attrs.width != dataset.m:
        raise WidthMismatchError(
            f"tuple width {request.tuple_attrs.width} != dataset width {dataset.m}"
        )


def elapsed_ms(started: float) -> float:
    return (time.perf_counter() - started) * 1000

"""Tree search over ordinal upgrades.

A tuple holds a value per attribute. An upgrade raises attribute ``k``
from its current value ``a`` to ``b`` and costs ``(b - a) * cost[k]``.
Nodes are offset vectors over the cost-sorted candidate attributes,
rooted at the largest offsets each domain allows.
"""

from __future__ import annotations

import logging
import time
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Deque, List, Optional, Protocol, Sequence, Tuple, runtime_checkable

from ..core.attrset import AttrSet
from ..core.dataset import Dataset
from ..core.deadline import Deadline, check_deadline
from ..core.errors import (
    ConfigError,
    DomainError,
    GainContractError,
    WidthMismatchError,
)
from ..lattice.ordinal import OrdinalNode, dag_tree_children
from .base import GainFunction, SolveResult, SolveStats, elapsed_ms, gains_equal

logger = logging.getLogger(__name__)


@runtime_checkable
class OrdinalGainFunction(Protocol):
    name: str
    integral: bool

    def evaluate_values(self, values: Sequence[int], dataset: Dataset) -> float: ...


class BinaryLiftedGain:
    """Score value vectors with a binary gain: attribute present iff value > 0."""

    def __init__(self, gain: GainFunction):
        self.gain = gain
        self.name = f"lifted-{gain.name}"
        self.integral = gain.integral

    def evaluate_values(self, values: Sequence[int], dataset: Dataset) -> float:
        present = [k for k, v in enumerate(values) if v > 0]
        return self.gain.evaluate(AttrSet.from_indices(present, dataset.m), dataset)


@dataclass(frozen=True)
class OrdinalSolveRequest:
    tuple_values: Tuple[int, ...]
    budget: int
    gain: OrdinalGainFunction
    flexible: Optional[AttrSet] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "tuple_values", tuple(self.tuple_values))
        if self.budget < 0:
            raise ConfigError(f"budget must be non-negative, got {self.budget}")


class _Upgrades:
    """Candidate attributes sorted by descending cost, with their headroom."""

    def __init__(self, request: OrdinalSolveRequest, dataset: Dataset):
        catalog = dataset.catalog
        values = request.tuple_values
        if len(values) != catalog.m:
            raise WidthMismatchError(
                f"{len(values)} tuple values for width {catalog.m}"
            )
        for k, value in enumerate(values):
            if not 0 <= value < catalog.domains[k]:
                raise DomainError(
                    f"value {value} outside domain of {catalog.names[k]!r}"
                )
        flexible = request.flexible or AttrSet.full(catalog.m)
        self.base = values
        self.m = catalog.m
        self.attrs: List[int] = [
            k
            for k in catalog.order
            if k in flexible and values[k] < catalog.domains[k] - 1
        ]
        self.root = tuple(catalog.domains[k] - 1 - values[k] for k in self.attrs)
        self.unit_costs = tuple(catalog.costs[k] for k in self.attrs)

    def target(self, offsets: Sequence[int]) -> Tuple[int, ...]:
        values = list(self.base)
        for k, delta in zip(self.attrs, offsets):
            values[k] += delta
        return tuple(values)

    def changed(self, offsets: Sequence[int]) -> AttrSet:
        return AttrSet.from_indices(
            (k for k, delta in zip(self.attrs, offsets) if delta), self.m
        )


class _Best:
    def __init__(self, integral: bool):
        self.integral = integral
        self.gain: Optional[float] = None
        self.values: Optional[Tuple[int, ...]] = None
        self.offsets: Tuple[int, ...] = ()

    def offer(
        self, gain: float, values: Tuple[int, ...], offsets: Tuple[int, ...]
    ) -> None:
        if self.gain is None or self.values is None:
            better = True
        elif gains_equal(gain, self.gain, self.integral):
            better = values < self.values
        else:
            better = gain > self.gain
        if better:
            self.gain, self.values, self.offsets = gain, values, offsets


def _evaluate(
    request: OrdinalSolveRequest,
    dataset: Dataset,
    values: Tuple[int, ...],
    stats: SolveStats,
    deadline: Optional[Deadline],
) -> float:
    check_deadline(deadline)
    started = time.perf_counter()
    value = request.gain.evaluate_values(values, dataset)
    stats.gain_ms += elapsed_ms(started)
    stats.gain_evals += 1
    if value < 0:
        raise GainContractError(
            f"gain {request.gain.name!r} returned negative value {value}"
        )
    return value


def _result(
    upgrades: _Upgrades, best: _Best, stats: SolveStats, started: float
) -> SolveResult:
    assert best.gain is not None and best.values is not None
    stats.elapsed_ms = elapsed_ms(started)
    return SolveResult(upgrades.changed(best.offsets), best.gain, stats, best.values)


def solve_ggmfa_ordinal(
    request: OrdinalSolveRequest,
    dataset: Dataset,
    deadline: Optional[Deadline] = None,
) -> SolveResult:
    started = time.perf_counter()
    stats = SolveStats()
    upgrades = _Upgrades(request, dataset)
    best = _Best(request.gain.integral)

    queue: Deque[OrdinalNode] = deque(
        [OrdinalNode.top(upgrades.root, upgrades.unit_costs)]
    )
    stats.nodes_generated = 1
    while queue:
        node = queue.popleft()
        if node.cost <= request.budget:
            values = upgrades.target(node.vec)
            gain = _evaluate(request, dataset, values, stats, deadline)
            best.offer(gain, values, node.vec)
            continue
        check_deadline(deadline)
        children = dag_tree_children(node)
        stats.nodes_generated += len(children)
        queue.extend(children)

    result = _result(upgrades, best, stats, started)
    logger.info(
        "ordinal: gain=%s values=%s nodes=%d evals=%d",
        result.gain_value,
        result.values,
        stats.nodes_generated,
        stats.gain_evals,
    )
    return result


def solve_ordinal_bruteforce(
    request: OrdinalSolveRequest,
    dataset: Dataset,
    deadline: Optional[Deadline] = None,
) -> SolveResult:
    """Score every affordable offset vector; reference for the tree search."""
    started = time.perf_counter()
    stats = SolveStats()
    upgrades = _Upgrades(request, dataset)
    best = _Best(request.gain.integral)
    for offsets in product(*(range(top + 1) for top in upgrades.root)):
        stats.nodes_generated += 1
        cost = sum(d * c for d, c in zip(offsets, upgrades.unit_costs))
        if cost > request.budget:
            continue
        values = upgrades.target(offsets)
        best.offer(
            _evaluate(request, dataset, values, stats, deadline), values, offsets
        )
    return _result(upgrades, best, stats, started)

"""Exact solvers over the binary attribute lattice.

``solve_baseline`` scans every subset of the candidate attributes,
``solve_igmfa`` walks the lattice top-down breadth-first and
``solve_ggmfa`` walks the cost-ordered broadcast tree so that it only
evaluates the gain on maximal affordable nodes.
"""

from __future__ import annotations

import logging
import time
from collections import deque
from itertools import combinations
from typing import Callable, Deque, Dict, List, Optional, Set, Tuple

from ..core.attrset import AttrSet
from ..core.dataset import Dataset
from ..core.deadline import Deadline, check_deadline
from .base import (
    BestSoFar,
    GainMeter,
    SolveRequest,
    SolveResult,
    SolveStats,
    Subspace,
    check_dataset,
    elapsed_ms,
    gains_equal,
)

logger = logging.getLogger(__name__)

Solver = Callable[..., SolveResult]


def _empty_result(
    request: SolveRequest, meter: GainMeter, stats: SolveStats, started: float
) -> SolveResult:
    empty = AttrSet.empty(request.tuple_attrs.width)
    gain = meter(empty)
    stats.elapsed_ms = elapsed_ms(started)
    return SolveResult(empty, gain, stats)


def _finish(
    name: str, best: BestSoFar, stats: SolveStats, started: float
) -> SolveResult:
    assert best.chosen is not None and best.gain is not None
    stats.elapsed_ms = elapsed_ms(started)
    logger.info(
        "%s: gain=%s chosen=%s nodes=%d evals=%d in %.1f ms",
        name,
        best.gain,
        best.chosen,
        stats.nodes_generated,
        stats.gain_evals,
        stats.elapsed_ms,
    )
    return SolveResult(best.chosen, best.gain, stats)


def _low_budget_seeds(space: Subspace, budget: int) -> List[Tuple[int, int, int]]:
    """Every node at the low-budget start level as ``(local, i, cost)``.

    ``i`` is the local index of the rightmost removed attribute, which is
    where the tree continues from.
    """
    level = space.low_budget_level(budget)
    if level >= space.width:
        return [(space.full, -1, sum(space.costs))]
    seeds = []
    for removed in combinations(range(space.width), space.width - level):
        local = space.full
        for p in removed:
            local &= ~(1 << (space.width - 1 - p))
        seeds.append((local, removed[-1], space.cost_of(local)))
    return seeds


# ----------------------------------------------------------------------
# Baseline
# ----------------------------------------------------------------------
def solve_baseline(
    request: SolveRequest, dataset: Dataset, deadline: Optional[Deadline] = None
) -> SolveResult:
    """Evaluate every affordable subset of the candidates.

    Only maximal affordable subsets compete for the answer, so equal
    optima resolve the same way as in the tree searches.
    """
    check_dataset(request, dataset)
    started = time.perf_counter()
    stats = SolveStats()
    meter = GainMeter(request, dataset, stats, deadline)
    space = Subspace(dataset.catalog, request.candidates())
    best = BestSoFar(request.gain.integral)

    local = space.full
    while True:
        stats.nodes_generated += 1
        if space.cost_of(local) <= request.budget:
            chosen = space.to_external(local)
            gain = meter(chosen)
            if space.is_maximal_affordable(local, request.budget):
                best.offer(gain, chosen)
        else:
            check_deadline(deadline)
        if local == 0:
            break
        local = (local - 1) & space.full
    return _finish("baseline", best, stats, started)


# ----------------------------------------------------------------------
# Top-down breadth-first search
# ----------------------------------------------------------------------
def solve_igmfa(
    request: SolveRequest, dataset: Dataset, deadline: Optional[Deadline] = None
) -> SolveResult:
    """Breadth-first search from the full candidate set.

    Affordable nodes that are not maximal are dropped without a gain
    evaluation. A dequeued node whose gain is strictly below the best so
    far is skipped with its subtree. Maximal affordable nodes go to
    ``BestSoFar`` and are not expanded; unaffordable ones enqueue their
    children once.
    """
    check_dataset(request, dataset)
    started = time.perf_counter()
    stats = SolveStats()
    meter = GainMeter(request, dataset, stats, deadline)
    space = Subspace(dataset.catalog, request.candidates())
    if space.width == 0:
        return _empty_result(request, meter, stats, started)

    integral = request.gain.integral
    if request.low_budget:
        seeds = [local for local, _, _ in _low_budget_seeds(space, request.budget)]
    else:
        seeds = [space.full]
    queue: Deque[int] = deque(seeds)
    queued: Set[int] = set(seeds)
    stats.nodes_generated += len(seeds)
    best = BestSoFar(integral)

    while queue:
        local = queue.popleft()
        affordable = space.cost_of(local) <= request.budget
        if affordable and not space.is_maximal_affordable(local, request.budget):
            continue
        chosen = space.to_external(local)
        gain = meter(chosen)
        if (
            best.gain is not None
            and gain < best.gain
            and not gains_equal(gain, best.gain, integral)
        ):
            continue
        if affordable:
            if best.offer(gain, chosen):
                logger.debug("improved: %s gain=%s", chosen, gain)
            continue
        rest = local
        while rest:
            low = rest & -rest
            child = local ^ low
            stats.nodes_generated += 1
            if child not in queued:
                queued.add(child)
                queue.append(child)
            rest ^= low

    if best.chosen is None:
        return _empty_result(request, meter, stats, started)
    return _finish("improved", best, stats, started)


# ----------------------------------------------------------------------
# Broadcast-tree search
# ----------------------------------------------------------------------
def solve_ggmfa(
    request: SolveRequest, dataset: Dataset, deadline: Optional[Deadline] = None
) -> SolveResult:
    """Walk the broadcast tree of the cost-sorted candidates.

    Queue entries are ``(node, i, cost)`` where ``i`` is the local index of
    the last attribute removed. Affordable entries get one gain evaluation
    and are not expanded; the others enqueue one child per index after
    ``i``. Each node is generated at most once and every affordable node
    reached is maximal affordable.
    """
    check_dataset(request, dataset)
    started = time.perf_counter()
    stats = SolveStats()
    meter = GainMeter(request, dataset, stats, deadline)
    space = Subspace(dataset.catalog, request.candidates())
    if space.width == 0:
        return _empty_result(request, meter, stats, started)

    if request.low_budget:
        seeds = _low_budget_seeds(space, request.budget)
    else:
        seeds = [(space.full, -1, sum(space.costs))]
    queue: Deque[Tuple[int, int, int]] = deque(seeds)
    stats.nodes_generated += len(seeds)
    best = BestSoFar(request.gain.integral)
    width = space.width

    while queue:
        local, last, cost = queue.popleft()
        if cost <= request.budget:
            chosen = space.to_external(local)
            best.offer(meter(chosen), chosen)
            continue
        check_deadline(deadline)
        for j in range(last + 1, width):
            queue.append((local & ~(1 << (width - 1 - j)), j, cost - space.costs[j]))
            stats.nodes_generated += 1

    if best.chosen is None:
        return _empty_result(request, meter, stats, started)
    return _finish("general", best, stats, started)


SOLVERS: Dict[str, Solver] = {
    "baseline": solve_baseline,
    "improved": solve_igmfa,
    "general": solve_ggmfa,
}


def get_solver(name: str) -> Solver:
    try:
        return SOLVERS[name]
    except KeyError:
        raise ValueError(
            f"Unknown solver '{name}'. Available: {', '.join(SOLVERS)}"
        ) from None

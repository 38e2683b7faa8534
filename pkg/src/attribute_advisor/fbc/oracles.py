"""Reference counters for the number of frequent subsets of a node.

Each one is slow in its own way and exists to cross-check the pattern
based counter: exhaustive enumeration, levelwise candidate generation and
inclusion-exclusion over the maximal frequent set.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

from .. import settings
from ..core.attrset import AttrSet
from ..core.dataset import Dataset
from ..core.deadline import Deadline, check_deadline
from ..core.errors import OracleGuardError, WidthMismatchError
from .frequent import FbcConfig, MaximalFrequentSet, levelwise

logger = logging.getLogger(__name__)


def _check_node(node: AttrSet, d: Dataset) -> None:
    if node.width != d.m:
        raise WidthMismatchError(f"width {node.width} does not match dataset {d.m}")


def fbc_bruteforce(
    node: AttrSet,
    d: Dataset,
    cfg: FbcConfig,
    guard: Optional[int] = None,
) -> int:
    _check_node(node, d)
    guard = settings.ORACLE_GUARD if guard is None else guard
    if node.level > guard:
        raise OracleGuardError(
            f"exhaustive count refused for level {node.level} (guard {guard})"
        )
    threshold = cfg.threshold(d.n)
    count = 0
    sub = node.bits
    while True:
        if d.support_of_bits(sub) >= threshold:
            count += 1
        if sub == 0:
            break
        sub = (sub - 1) & node.bits
    return count


def fbc_apriori(
    node: AttrSet,
    d: Dataset,
    cfg: FbcConfig,
    deadline: Optional[Deadline] = None,
) -> int:
    _check_node(node, d)
    count = 0
    for size, level in enumerate(
        levelwise(d, cfg.threshold(d.n), within=node.bits, deadline=deadline)
    ):
        check_deadline(deadline)
        logger.debug("Levelwise count, level %d: %d frequent", size, len(level))
        count += len(level)
    return count


def inclusion_exclusion_count(items: Sequence[int], guard: Optional[int] = None) -> int:
    """Size of the union of the sublattices under ``items``."""
    guard = settings.ORACLE_GUARD if guard is None else guard
    if len(items) > guard:
        raise OracleGuardError(
            f"inclusion-exclusion refused for {len(items)} sets (guard {guard})"
        )
    total = 0
    # (start index, running intersection, subfamily size)
    stack = [(j + 1, bits, 1) for j, bits in enumerate(items)]
    while stack:
        start, meet, size = stack.pop()
        term = 1 << meet.bit_count()
        total += term if size % 2 else -term
        for j in range(start, len(items)):
            stack.append((j + 1, meet & items[j], size + 1))
    return total


def fbc_inclusion_exclusion(Fv: MaximalFrequentSet, guard: Optional[int] = None) -> int:
    return inclusion_exclusion_count(Fv.items, guard)

"""Workload gain: how often the workload asks for the set, per matching row."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple, Union

from .. import settings
from ..core.attrset import AttrSet
from ..core.dataset import AttributeCatalog, Dataset
from ..core.errors import GainContractError, GainUndefinedError, WidthMismatchError

logger = logging.getLogger(__name__)

# A workload line holding only this marker is the empty query.
EMPTY_QUERY = "-"


@dataclass(frozen=True)
class Workload:
    queries: Tuple[AttrSet, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "queries", tuple(self.queries))
        if not self.queries:
            raise GainContractError("workload needs at least one query")
        widths = {q.width for q in self.queries}
        if len(widths) != 1:
            raise WidthMismatchError(f"workload mixes query widths {sorted(widths)}")

    @property
    def width(self) -> int:
        return self.queries[0].width

    def __len__(self) -> int:
        return len(self.queries)


class WorkloadGain:
    integral = False

    def __init__(self, workload: Workload, smoothing: bool = True):
        self.workload = workload
        self.smoothing = smoothing
        self.name = "workload" if smoothing else "workload-raw"

    def evaluate(self, attrs: AttrSet, dataset: Dataset) -> float:
        if attrs.width != self.workload.width:
            raise WidthMismatchError(
                f"width {attrs.width} does not match workload {self.workload.width}"
            )
        asked = sum(1 for q in self.workload.queries if q.bits & ~attrs.bits == 0)
        support = dataset.support_of_bits(attrs.bits)
        if support == 0:
            if not self.smoothing:
                raise GainUndefinedError(
                    f"no row matches {attrs}; enable smoothing to score it"
                )
            support = 1
        return dataset.n * asked / (len(self.workload) * support)


def workload_gain(W: Workload, smoothing: bool = True) -> WorkloadGain:
    return WorkloadGain(W, smoothing)


def parse_workload(text: str, catalog: AttributeCatalog) -> Workload:
    queries = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line == EMPTY_QUERY:
            queries.append(AttrSet.empty(catalog.m))
            continue
        queries.append(catalog.attrs_from_names(line.split(",")))
    return Workload(tuple(queries))


def load_workload(path: Union[str, Path], catalog: AttributeCatalog) -> Workload:
    workload = parse_workload(
        Path(path).read_text(encoding=settings.CSV_ENCODING), catalog
    )
    logger.info("Loaded %d workload queries from %s", len(workload), path)
    return workload


def queries_from_names(
    queries: Sequence[Sequence[str]], catalog: AttributeCatalog
) -> Workload:
    return Workload(tuple(catalog.attrs_from_names(q) for q in queries))

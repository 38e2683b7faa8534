"""Dataset, attribute catalog and the query semantics built on them."""

from __future__ import annotations

import hashlib
import io
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .. import settings
from .attrset import AttrSet, bit_of
from .errors import (
    DatasetParseError,
    DomainError,
    DuplicateCostError,
    MissingCostError,
    NegativeCostError,
    NonBinaryCellError,
    RowWidthError,
    UnknownAttributeError,
    UnknownCostAttributeError,
    WidthMismatchError,
)
from .money import to_cents

logger = logging.getLogger(__name__)

BINARY_DOMAIN = 2


@dataclass(frozen=True)
class AttributeCatalog:
    names: Tuple[str, ...]
    costs: Tuple[int, ...]
    domains: Tuple[int, ...] = ()
    order: Tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "costs", tuple(int(c) for c in self.costs))
        if not self.domains:
            object.__setattr__(self, "domains", (BINARY_DOMAIN,) * len(self.names))
        object.__setattr__(self, "domains", tuple(int(d) for d in self.domains))

        if not self.names:
            raise DatasetParseError("catalog needs at least one attribute")
        if len(set(self.names)) != len(self.names):
            raise DatasetParseError("attribute names must be unique")
        if len(self.costs) != len(self.names):
            raise WidthMismatchError(
                f"{len(self.costs)} costs for {len(self.names)} attributes"
            )
        if len(self.domains) != len(self.names):
            raise WidthMismatchError(
                f"{len(self.domains)} domains for {len(self.names)} attributes"
            )
        for name, cost in zip(self.names, self.costs):
            if cost < 0:
                raise NegativeCostError("cost must be non-negative", column=name)
        for name, dom in zip(self.names, self.domains):
            if dom < 1:
                raise DomainError(f"domain of {name!r} must hold at least one value")

        # Most expensive first; equal costs keep column order.
        order = sorted(range(len(self.names)), key=lambda k: (-self.costs[k], k))
        object.__setattr__(self, "order", tuple(order))

    @property
    def m(self) -> int:
        return len(self.names)

    @property
    def is_binary(self) -> bool:
        return all(dom <= BINARY_DOMAIN for dom in self.domains)

    # ------------------------------------------------------------------
    # Name <-> index mapping
    # ------------------------------------------------------------------
    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name.strip())
        except ValueError:
            raise UnknownAttributeError(
                f"Unknown attribute '{name}'. Available: {', '.join(self.names)}"
            ) from None

    def attrs_from_names(self, names: Iterable[str]) -> AttrSet:
        return AttrSet.from_indices((self.index_of(n) for n in names), self.m)

    def names_of(self, attrs: AttrSet) -> List[str]:
        if attrs.width != self.m:
            raise WidthMismatchError(
                f"width {attrs.width} does not match catalog width {self.m}"
            )
        return [self.names[k] for k in attrs.indices()]

    def ordered_names(self) -> List[str]:
        return [self.names[k] for k in self.order]

    # ------------------------------------------------------------------
    # Costs
    # ------------------------------------------------------------------
    def cost_of(self, attrs: AttrSet) -> int:
        return sum(self.costs[k] for k in attrs.indices())

    def total_cost(self) -> int:
        return sum(self.costs)


@dataclass(frozen=True)
class Dataset:
    """Immutable n x m records plus per-column inverted bitmaps.

    ``rows[r]`` is the width-m bitset of row r's non-zero attributes.
    ``columns[k]`` is a width-n bitmap with bit r set iff row r holds
    attribute k. ``values`` keeps the raw ordinal matrix when the source
    had non-binary columns.
    """

    catalog: AttributeCatalog
    rows: Tuple[int, ...]
    columns: Tuple[int, ...] = field(init=False, repr=False)
    values: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    fingerprint: str = field(init=False)

    def __post_init__(self) -> None:
        m = self.catalog.m
        object.__setattr__(self, "rows", tuple(self.rows))
        limit = 1 << m
        for r, bits in enumerate(self.rows):
            if bits < 0 or bits >= limit:
                raise WidthMismatchError(f"row {r} does not fit width {m}")

        presence = _presence_matrix(self.rows, m)
        columns = [_bitmap_of(presence[:, k]) for k in range(m)]
        object.__setattr__(self, "columns", tuple(columns))
        object.__setattr__(
            self, "_column_by_bit", {bit_of(k, m): columns[k] for k in range(m)}
        )

        if self.values is not None:
            values = np.array(self.values, dtype=np.int64, copy=True)
            if values.shape != (len(self.rows), m):
                raise WidthMismatchError(
                    f"value matrix shape {values.shape} != {(len(self.rows), m)}"
                )
            values.setflags(write=False)
            object.__setattr__(self, "values", values)

        object.__setattr__(self, "fingerprint", self._compute_fingerprint())

    @classmethod
    def from_matrix(
        cls, catalog: AttributeCatalog, matrix: Union[np.ndarray, Sequence]
    ) -> "Dataset":
        """Build from an n x m array of non-negative ints (0/1 for binary)."""
        values = np.asarray(matrix, dtype=np.int64).reshape(-1, catalog.m)
        if (values < 0).any():
            raise DomainError("attribute values must be non-negative")
        over = values >= np.asarray(catalog.domains)
        if over.any():
            r, k = (int(x) for x in np.argwhere(over)[0])
            raise DomainError(
                f"value {values[r, k]} outside domain of "
                f"{catalog.names[k]!r} at row {r}"
            )
        rows = _pack_rows(values > 0)
        return cls(catalog, rows, None if catalog.is_binary else values)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return self.catalog.m

    @property
    def all_rows(self) -> int:
        return (1 << self.n) - 1

    def _compute_fingerprint(self) -> str:
        digest = hashlib.sha256()
        digest.update(",".join(self.catalog.names).encode(settings.CSV_ENCODING))
        digest.update(f"|{self.n}|{self.m}|".encode())
        width = max(1, (self.m + 7) // 8)
        for bits in self.rows:
            digest.update(bits.to_bytes(width, "big"))
        if self.values is not None:
            digest.update(self.values.tobytes())
        return digest.hexdigest()[:16]

    # ------------------------------------------------------------------
    # Support primitives
    # ------------------------------------------------------------------
    def match_bitmap(self, bits: int) -> int:
        """Width-n bitmap of the rows containing every attribute in ``bits``."""
        acc = self.all_rows
        column_by_bit: Dict[int, int] = getattr(self, "_column_by_bit")
        while bits and acc:
            low = bits & -bits
            acc &= column_by_bit[low]
            bits ^= low
        return acc

    def support_of_bits(self, bits: int) -> int:
        return self.match_bitmap(bits).bit_count()

    def row_attrs(self, row: int) -> AttrSet:
        if not 0 <= row < self.n:
            raise IndexError(f"row {row} outside 0..{self.n - 1}")
        return AttrSet(self.rows[row], self.m)

    def value_matrix(self) -> np.ndarray:
        if self.values is not None:
            return self.values
        return self.to_matrix()

    def to_matrix(self) -> np.ndarray:
        """Dense n x m 0/1 matrix of attribute presence."""
        return _presence_matrix(self.rows, self.m).astype(np.int64)


def _presence_matrix(rows: Sequence[int], m: int) -> np.ndarray:
    if m <= 62:
        packed = np.fromiter(rows, dtype=np.int64, count=len(rows))
        shifts = np.arange(m - 1, -1, -1, dtype=np.int64)
        return ((packed[:, None] >> shifts) & 1).astype(bool)
    return np.array(
        [[bits >> (m - 1 - k) & 1 for k in range(m)] for bits in rows], dtype=bool
    ).reshape(len(rows), m)


def _pack_rows(presence: np.ndarray) -> Tuple[int, ...]:
    m = presence.shape[1]
    if m <= 62:
        weights = np.left_shift(1, np.arange(m - 1, -1, -1, dtype=np.int64))
        return tuple(int(v) for v in presence.astype(np.int64) @ weights)
    return tuple(
        sum(1 << (m - 1 - k) for k in np.flatnonzero(row)) for row in presence
    )


def _bitmap_of(column: np.ndarray) -> int:
    """Pack a boolean column into an int with bit r set for row r."""
    packed = np.packbits(column.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


# ----------------------------------------------------------------------
# Queries
# ----------------------------------------------------------------------
def _require_width(dataset: Dataset, attrs: AttrSet) -> None:
    if attrs.width != dataset.m:
        raise WidthMismatchError(
            f"width {attrs.width} does not match dataset width {dataset.m}"
        )


def query_match(dataset: Dataset, attrs: AttrSet) -> FrozenSet[int]:
    _require_width(dataset, attrs)
    bitmap = dataset.match_bitmap(attrs.bits)
    matched = []
    while bitmap:
        low = bitmap & -bitmap
        matched.append(low.bit_length() - 1)
        bitmap ^= low
    return frozenset(matched)


def support_count(dataset: Dataset, attrs: AttrSet) -> int:
    _require_width(dataset, attrs)
    return dataset.support_of_bits(attrs.bits)


def query_match_ordinal(
    dataset: Dataset, attrs: AttrSet, values: Sequence[int]
) -> FrozenSet[int]:
    """Rows whose value on every attribute of ``attrs`` is at least its threshold.

    ``values`` holds one threshold per catalog attribute; entries for
    attributes outside ``attrs`` are ignored.
    """
    _require_width(dataset, attrs)
    if len(values) != dataset.m:
        raise WidthMismatchError(f"{len(values)} thresholds for width {dataset.m}")
    domains = dataset.catalog.domains
    for k in attrs.indices():
        if not 0 <= values[k] < domains[k]:
            raise DomainError(
                f"threshold {values[k]} outside domain 0..{domains[k] - 1} "
                f"of {dataset.catalog.names[k]!r}"
            )
    matrix = dataset.value_matrix()
    keep = np.ones(dataset.n, dtype=bool)
    for k in attrs.indices():
        keep &= matrix[:, k] >= values[k]
    return frozenset(int(r) for r in np.flatnonzero(keep))


# ----------------------------------------------------------------------
# CSV ingestion
# ----------------------------------------------------------------------
def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = text.lstrip("\ufeff").splitlines()
    return [(i, line) for i, line in enumerate(lines) if line.strip()]


def _parse_cells(
    text: str, names: List[str], ordinal: bool
) -> Tuple[np.ndarray, Tuple[int, ...]]:
    frame = pd.read_csv(
        io.StringIO(text.lstrip("\ufeff")),
        dtype=str,
        keep_default_na=False,
        skip_blank_lines=True,
    )
    cells = np.char.strip(frame.to_numpy(dtype=str).reshape(-1, len(names)))
    if ordinal:
        valid = np.char.isdigit(cells)
    else:
        valid = np.isin(cells, ["0", "1"])
    bad = np.argwhere(~valid)
    if bad.size:
        r, c = (int(x) for x in bad[0])
        expected = "a non-negative integer" if ordinal else "0 or 1"
        raise NonBinaryCellError(
            f"cell value {cells[r, c]!r} is not {expected}",
            row=r + 1,
            column=names[c],
        )
    matrix = cells.astype(np.int64) if cells.size else np.zeros((0, len(names)), int)
    if ordinal:
        top = matrix.max(axis=0) if len(matrix) else np.zeros(len(names), int)
        domains = tuple(max(BINARY_DOMAIN, int(v) + 1) for v in top)
    else:
        domains = (BINARY_DOMAIN,) * len(names)
    return matrix, domains


def _is_number(text: str) -> bool:
    try:
        to_cents(text)
    except ValueError:
        return False
    return True


def parse_costs(costs_text: str, names: Sequence[str]) -> Tuple[int, ...]:
    """Read a "name,cost" CSV into integer cents aligned with ``names``.

    A leading header row whose cost field is not numeric is skipped.
    """
    known = set(names)
    costs: Dict[str, int] = {}
    for row_no, (_, line) in enumerate(_content_lines(costs_text), start=1):
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 2:
            raise RowWidthError(
                f"expected 'name,cost', got {len(fields)} fields", row=row_no
            )
        name, raw_cost = fields
        if row_no == 1 and name not in known and not _is_number(raw_cost):
            continue
        if name not in known:
            raise UnknownCostAttributeError(
                "cost given for an attribute missing from the dataset",
                row=row_no,
                column=name,
            )
        if name in costs:
            raise DuplicateCostError("duplicate cost row", row=row_no, column=name)
        try:
            cents = to_cents(raw_cost)
        except ValueError:
            raise DatasetParseError(
                f"cost {raw_cost!r} is not a number", row=row_no, column=name
            ) from None
        if cents < 0:
            raise NegativeCostError(
                "cost must be non-negative", row=row_no, column=name
            )
        costs[name] = cents

    for name in names:
        if name not in costs:
            raise MissingCostError("no cost row for attribute", column=name)
    return tuple(costs[name] for name in names)


def parse_dataset(csv_text: str, costs_text: str, ordinal: bool = False) -> Dataset:
    lines = _content_lines(csv_text)
    if not lines:
        raise DatasetParseError("dataset has no header row")

    names = [name.strip() for name in lines[0][1].split(",")]
    if any(not name for name in names):
        raise DatasetParseError("empty attribute name in header", row=0)
    seen: Dict[str, int] = {}
    for name in names:
        if name in seen:
            raise DatasetParseError("duplicate attribute name", row=0, column=name)
        seen[name] = 1

    for row_no, (_, line) in enumerate(lines[1:], start=1):
        width = len(line.split(","))
        if width != len(names):
            raise RowWidthError(
                f"row has {width} cells, header has {len(names)}", row=row_no
            )

    matrix, domains = _parse_cells(csv_text, names, ordinal)
    catalog = AttributeCatalog(tuple(names), parse_costs(costs_text, names), domains)
    dataset = Dataset.from_matrix(catalog, matrix)
    logger.debug(
        "Parsed dataset n=%d m=%d (%s)", dataset.n, dataset.m, dataset.fingerprint
    )
    return dataset


def load_dataset(
    dataset_path: Union[str, Path], costs_path: Union[str, Path], ordinal: bool = False
) -> Dataset:
    csv_text = Path(dataset_path).read_text(encoding=settings.CSV_ENCODING)
    costs_text = Path(costs_path).read_text(encoding=settings.CSV_ENCODING)
    dataset = parse_dataset(csv_text, costs_text, ordinal=ordinal)
    logger.info("Loaded %s: n=%d m=%d", dataset_path, dataset.n, dataset.m)
    return dataset

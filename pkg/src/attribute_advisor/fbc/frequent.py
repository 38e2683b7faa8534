"""Frequent nodes, levelwise mining and the persisted maximal frequent set."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .. import settings
from ..core.attrset import AttrSet, format_bits
from ..core.dataset import Dataset
from ..core.deadline import Deadline, check_deadline
from ..core.errors import ConfigError, MaximalSetFormatError, WidthMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FbcConfig:
    tau: float

    def __post_init__(self) -> None:
        if isinstance(self.tau, bool) or not 0 < float(self.tau) <= 1:
            raise ConfigError(f"tau must lie in (0, 1], got {self.tau!r}")

    def threshold(self, n: int) -> int:
        """Smallest support that counts as frequent among ``n`` rows."""
        return math.ceil(Fraction(str(self.tau)) * n)


def canonical_order(items: Iterable[int]) -> Tuple[int, ...]:
    """Largest level first, ties by ascending bit-representative value."""
    return tuple(sorted(set(items), key=lambda bits: (-bits.bit_count(), bits)))


def is_frequent(node: AttrSet, d: Dataset, cfg: FbcConfig) -> bool:
    if node.width != d.m:
        raise WidthMismatchError(f"width {node.width} does not match dataset {d.m}")
    return d.support_of_bits(node.bits) >= cfg.threshold(d.n)


@dataclass(frozen=True)
class MaximalFrequentSet:
    items: Tuple[int, ...]
    width: int
    tau: float
    n: int
    fingerprint: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        for bits in self.items:
            if bits < 0 or bits >> self.width:
                raise WidthMismatchError(
                    f"item {bits:#x} does not fit width {self.width}"
                )

    def __iter__(self) -> Iterator[int]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    @property
    def is_canonical(self) -> bool:
        return self.items == canonical_order(self.items)

    def attrsets(self) -> List[AttrSet]:
        return [AttrSet(bits, self.width) for bits in self.items]

    def to_strings(self) -> List[str]:
        return [format_bits(bits, self.width) for bits in self.items]

    def reordered(self, items: Sequence[int]) -> "MaximalFrequentSet":
        """Same family in a caller-chosen processing order."""
        if sorted(items) != sorted(self.items):
            raise ValueError("reordering must keep the same members")
        return MaximalFrequentSet(
            tuple(items), self.width, self.tau, self.n, self.fingerprint
        )

    # ------------------------------------------------------------------
    # Persistence
    # ------------------------------------------------------------------
    def dumps(self) -> str:
        header = f"tau={self.tau} n={self.n} m={self.width}"
        if self.fingerprint:
            header += f" fingerprint={self.fingerprint}"
        return "\n".join([header, *self.to_strings()]) + "\n"

    def save(self, path: Union[str, Path]) -> Path:
        out = Path(path)
        out.write_text(self.dumps(), encoding=settings.CSV_ENCODING)
        logger.info("Saved %d maximal frequent nodes to %s", len(self), out)
        return out

    @classmethod
    def loads(cls, text: str) -> "MaximalFrequentSet":
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if not lines:
            raise MaximalSetFormatError("empty maximal frequent set file")

        header: Dict[str, str] = {}
        for token in lines[0].split():
            key, sep, value = token.partition("=")
            if not sep:
                raise MaximalSetFormatError(f"bad header token {token!r}")
            header[key] = value
        missing = [key for key in ("tau", "n", "m") if key not in header]
        if missing:
            raise MaximalSetFormatError(
                f"header lacks {', '.join(missing)}. Got: {lines[0]!r}"
            )
        try:
            tau = float(header["tau"])
            n = int(header["n"])
            width = int(header["m"])
        except ValueError as exc:
            raise MaximalSetFormatError(f"bad header value: {exc}") from exc

        items = []
        for line_no, line in enumerate(lines[1:], start=2):
            if len(line) != width or any(ch not in "01" for ch in line):
                raise MaximalSetFormatError(
                    f"line {line_no}: {line!r} is not a {width}-bit representative"
                )
            items.append(int(line, 2))
        return cls(tuple(items), width, tau, n, header.get("fingerprint"))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "MaximalFrequentSet":
        return cls.loads(Path(path).read_text(encoding=settings.CSV_ENCODING))


# ----------------------------------------------------------------------
# Levelwise search
# ----------------------------------------------------------------------
def _join(level: Dict[int, int]) -> Iterator[Tuple[int, int, int]]:
    """Pair frequent k-sets that agree on everything but their last attribute.

    Yields ``(candidate, left, right)`` where ``left | right == candidate``.
    """
    groups: Dict[int, List[int]] = {}
    for bits in level:
        lowest = bits & -bits
        groups.setdefault(bits ^ lowest, []).append(bits)
    for members in groups.values():
        members.sort()
        for i, left in enumerate(members):
            for right in members[i + 1 :]:
                yield left | right, left, right


def _has_infrequent_subset(candidate: int, level: Dict[int, int]) -> bool:
    rest = candidate
    while rest:
        low = rest & -rest
        if candidate ^ low not in level:
            return True
        rest ^= low
    return False


def levelwise(
    d: Dataset,
    threshold: int,
    within: Optional[int] = None,
    deadline: Optional[Deadline] = None,
) -> Iterator[Dict[int, int]]:
    """Yield the frequent sets of each level as ``{bits: row bitmap}``.

    Level 0 (the empty set) comes first; only attributes in ``within``
    (all attributes when omitted) are considered.
    """
    within = (1 << d.m) - 1 if within is None else within
    empty_rows = d.all_rows
    if empty_rows.bit_count() < threshold:
        return
    yield {0: empty_rows}

    current: Dict[int, int] = {}
    rest = within
    while rest:
        low = rest & -rest
        rows = d.match_bitmap(low)
        if rows.bit_count() >= threshold:
            current[low] = rows
        rest ^= low

    size = 1
    while current:
        logger.debug("Level %d: %d frequent sets", size, len(current))
        yield current
        following: Dict[int, int] = {}
        for candidate, left, right in _join(current):
            check_deadline(deadline)
            if candidate in following or _has_infrequent_subset(candidate, current):
                continue
            rows = current[left] & current[right]
            if rows.bit_count() >= threshold:
                following[candidate] = rows
        current = following
        size += 1


def mine_maximal_frequents(
    d: Dataset, cfg: FbcConfig, deadline: Optional[Deadline] = None
) -> MaximalFrequentSet:
    started = time.perf_counter()
    threshold = cfg.threshold(d.n)

    maximal: List[int] = []
    previous: Dict[int, int] = {}
    for level in levelwise(d, threshold, deadline=deadline):
        covered = set()
        for bits in level:
            rest = bits
            while rest:
                low = rest & -rest
                covered.add(bits ^ low)
                rest ^= low
        maximal.extend(bits for bits in previous if bits not in covered)
        previous = level
    maximal.extend(previous)

    result = MaximalFrequentSet(
        canonical_order(maximal), d.m, cfg.tau, d.n, d.fingerprint
    )
    logger.info(
        "Mined %d maximal frequent nodes (tau=%s, threshold=%d) in %.1f ms",
        len(result),
        cfg.tau,
        threshold,
        (time.perf_counter() - started) * 1000,
    )
    return result


def project_maximal_frequents(
    F: MaximalFrequentSet, node: AttrSet
) -> MaximalFrequentSet:
    if node.width != F.width:
        raise WidthMismatchError(f"width {node.width} does not match {F.width}")
    kept: List[int] = []
    for bits in canonical_order(f & node.bits for f in F.items):
        if not any(bits & ~other == 0 for other in kept):
            kept.append(bits)
    return MaximalFrequentSet(tuple(kept), F.width, F.tau, F.n, F.fingerprint)

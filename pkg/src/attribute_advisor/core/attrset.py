"""Width-m attribute sets stored as integer bitmasks.

Attribute index ``k`` (0-based, catalog column order) lives at bit
``width - 1 - k``, so position 1 is the leftmost character of the printed
bit representative and the integer value of the mask is the node index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

from .errors import WidthMismatchError


def bit_of(index: int, width: int) -> int:
    return 1 << (width - 1 - index)


def indices_of(bits: int, width: int) -> Tuple[int, ...]:
    return tuple(k for k in range(width) if bits >> (width - 1 - k) & 1)


def mask_from_indices(indices: Iterable[int], width: int) -> int:
    bits = 0
    for k in indices:
        if not 0 <= k < width:
            raise WidthMismatchError(f"attribute index {k} outside width {width}")
        bits |= bit_of(k, width)
    return bits


def format_bits(bits: int, width: int) -> str:
    return format(bits, f"0{width}b") if width else ""


@dataclass(frozen=True)
class AttrSet:
    bits: int
    width: int

    def __post_init__(self) -> None:
        if self.width < 0 or self.bits < 0 or self.bits >> self.width:
            raise WidthMismatchError(
                f"bitset {self.bits:#x} does not fit width {self.width}"
            )

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------
    @classmethod
    def empty(cls, width: int) -> "AttrSet":
        return cls(0, width)

    @classmethod
    def full(cls, width: int) -> "AttrSet":
        return cls((1 << width) - 1, width)

    @classmethod
    def from_indices(cls, indices: Iterable[int], width: int) -> "AttrSet":
        return cls(mask_from_indices(indices, width), width)

    @classmethod
    def from_string(cls, text: str) -> "AttrSet":
        text = text.strip()
        if any(ch not in "01" for ch in text):
            raise WidthMismatchError(
                f"bit representative {text!r} is not a 0/1 string"
            )
        return cls(int(text, 2) if text else 0, len(text))

    # ------------------------------------------------------------------
    # Set algebra
    # ------------------------------------------------------------------
    def _check(self, other: "AttrSet") -> None:
        if other.width != self.width:
            raise WidthMismatchError(
                f"width {other.width} does not match width {self.width}"
            )

    def union(self, other: "AttrSet") -> "AttrSet":
        self._check(other)
        return AttrSet(self.bits | other.bits, self.width)

    def intersection(self, other: "AttrSet") -> "AttrSet":
        self._check(other)
        return AttrSet(self.bits & other.bits, self.width)

    def difference(self, other: "AttrSet") -> "AttrSet":
        self._check(other)
        return AttrSet(self.bits & ~other.bits, self.width)

    def issubset(self, other: "AttrSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def complement(self) -> "AttrSet":
        return AttrSet(~self.bits & ((1 << self.width) - 1), self.width)

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __le__ = issubset  # type: ignore[assignment]

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------
    @property
    def level(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> Tuple[int, ...]:
        return indices_of(self.bits, self.width)

    def to_string(self) -> str:
        return format_bits(self.bits, self.width)

    def __contains__(self, index: object) -> bool:
        if not isinstance(index, int) or not 0 <= index < self.width:
            return False
        return bool(self.bits & bit_of(index, self.width))

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return self.level

    def __str__(self) -> str:
        return self.to_string()

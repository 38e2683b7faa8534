"""Binary lattice nodes and the broadcast spanning tree over them.

The lattice is never materialized: a node is its bit representative plus
the per-position costs needed to price it. Position 1 is the leftmost
bit; when positions follow descending cost, the tree parent of a node is
its cheapest lattice parent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence, Tuple

from ..core.attrset import AttrSet, format_bits
from ..core.errors import RootHasNoParentError, WidthMismatchError


@dataclass(frozen=True)
class LatticeNode:
    bits: int
    costs: Tuple[int, ...] = field(repr=False, compare=False)
    cost: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "costs", tuple(self.costs))
        if self.bits < 0 or self.bits >> self.width:
            raise WidthMismatchError(
                f"bitset {self.bits:#x} does not fit width {self.width}"
            )
        width = self.width
        cost = sum(
            c for pos, c in enumerate(self.costs) if self.bits >> (width - 1 - pos) & 1
        )
        object.__setattr__(self, "cost", cost)

    @classmethod
    def of(cls, attrs: AttrSet, costs: Sequence[int]) -> "LatticeNode":
        if attrs.width != len(costs):
            raise WidthMismatchError(
                f"width {attrs.width} does not match {len(costs)} costs"
            )
        return cls(attrs.bits, tuple(costs))

    @classmethod
    def from_string(cls, text: str, costs: Sequence[int]) -> "LatticeNode":
        return cls.of(AttrSet.from_string(text), costs)

    @property
    def width(self) -> int:
        return len(self.costs)

    @property
    def level(self) -> int:
        return self.bits.bit_count()

    @property
    def index(self) -> int:
        return self.bits

    @property
    def attrs(self) -> AttrSet:
        return AttrSet(self.bits, self.width)

    def with_bits(self, bits: int) -> "LatticeNode":
        return LatticeNode(bits, self.costs)

    def to_string(self) -> str:
        return format_bits(self.bits, self.width)

    def __str__(self) -> str:
        return self.to_string()


def _position_bit(position: int, width: int) -> int:
    return 1 << (width - position)


# ----------------------------------------------------------------------
# Lattice relations
# ----------------------------------------------------------------------
def lattice_parents(v: LatticeNode, root: AttrSet) -> List[LatticeNode]:
    if root.width != v.width:
        raise WidthMismatchError(f"root width {root.width} != node width {v.width}")
    missing = root.bits & ~v.bits
    parents = []
    for position in range(1, v.width + 1):
        bit = _position_bit(position, v.width)
        if missing & bit:
            parents.append(v.with_bits(v.bits | bit))
    return parents


def is_affordable(v: LatticeNode, budget: int) -> bool:
    return v.cost <= budget


def is_maximal_affordable(v: LatticeNode, root: AttrSet, budget: int) -> bool:
    if not is_affordable(v, budget):
        return False
    missing = AttrSet(root.bits & ~v.bits, v.width)
    if not missing.bits:
        return True
    cheapest = min(v.costs[k] for k in missing.indices())
    return v.cost + cheapest > budget


# ----------------------------------------------------------------------
# Broadcast tree
# ----------------------------------------------------------------------
def rho(v: LatticeNode) -> int:
    """1-based position of the rightmost 0 bit, or 0 for the all-ones node."""
    zeros = ~v.bits & ((1 << v.width) - 1)
    if not zeros:
        return 0
    lowest = (zeros & -zeros).bit_length() - 1
    return v.width - lowest


def tree_children(v: LatticeNode) -> List[LatticeNode]:
    start = rho(v) + 1
    return [
        v.with_bits(v.bits & ~_position_bit(position, v.width))
        for position in range(start, v.width + 1)
        if v.bits & _position_bit(position, v.width)
    ]


def tree_parent(v: LatticeNode) -> LatticeNode:
    position = rho(v)
    if position == 0:
        raise RootHasNoParentError(f"{v.to_string()} is the root of the tree")
    return v.with_bits(v.bits | _position_bit(position, v.width))


def enumerate_tree(costs: Sequence[int]) -> Iterator[LatticeNode]:
    """Breadth-first walk of the broadcast tree rooted at the all-ones node."""
    width = len(costs)
    queue = deque([LatticeNode((1 << width) - 1, tuple(costs))])
    while queue:
        node = queue.popleft()
        yield node
        queue.extend(tree_children(node))

"""Ordinal generalization of the lattice: value vectors under a root vector.

A node is a vector ``vec`` with ``0 <= vec[k] <= root[k]``. The tree rule
mirrors the binary one: the rightmost position that is not at its root
value plays the part of the rightmost zero, a node's tree parent raises
that position by one, and a node emits children by lowering any position
at or to the right of it. This makes every node's tree parent its
minimum-index lattice parent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence, Tuple

from ..core.errors import DomainError, RootHasNoParentError, WidthMismatchError


@dataclass(frozen=True)
class OrdinalNode:
    vec: Tuple[int, ...]
    root: Tuple[int, ...] = field(compare=False)
    unit_costs: Tuple[int, ...] = field(repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vec", tuple(int(v) for v in self.vec))
        object.__setattr__(self, "root", tuple(int(v) for v in self.root))
        object.__setattr__(self, "unit_costs", tuple(int(c) for c in self.unit_costs))
        if not len(self.vec) == len(self.root) == len(self.unit_costs):
            raise WidthMismatchError(
                f"vector, root and costs widths differ: "
                f"{len(self.vec)}, {len(self.root)}, {len(self.unit_costs)}"
            )
        for k, (value, top) in enumerate(zip(self.vec, self.root)):
            if not 0 <= value <= top:
                raise DomainError(f"component {k} = {value} outside 0..{top}")

    @classmethod
    def top(cls, root: Sequence[int], unit_costs: Sequence[int]) -> "OrdinalNode":
        return cls(tuple(root), tuple(root), tuple(unit_costs))

    @property
    def width(self) -> int:
        return len(self.vec)

    @property
    def level(self) -> int:
        return sum(self.vec)

    @property
    def cost(self) -> int:
        return sum(v * c for v, c in zip(self.vec, self.unit_costs))

    def index(self, max_domain: int) -> int:
        """Base-``max_domain`` value of the vector, position 1 most significant."""
        value = 0
        for component in self.vec:
            value = value * max_domain + component
        return value

    def with_vec(self, vec: Sequence[int]) -> "OrdinalNode":
        return OrdinalNode(tuple(vec), self.root, self.unit_costs)


def dag_rho(v: OrdinalNode) -> int:
    """1-based position of the rightmost component below its root value."""
    for k in range(v.width - 1, -1, -1):
        if v.vec[k] < v.root[k]:
            return k + 1
    return 0


def dag_tree_children(v: OrdinalNode) -> List[OrdinalNode]:
    start = max(dag_rho(v), 1) - 1
    children = []
    for k in range(start, v.width):
        if v.vec[k] >= 1:
            vec = list(v.vec)
            vec[k] -= 1
            children.append(v.with_vec(vec))
    return children


def dag_tree_parent(v: OrdinalNode) -> OrdinalNode:
    position = dag_rho(v)
    if position == 0:
        raise RootHasNoParentError(f"{v.vec} is the root of the tree")
    vec = list(v.vec)
    vec[position - 1] += 1
    return v.with_vec(vec)


def enumerate_dag_tree(
    root: Sequence[int], unit_costs: Sequence[int] = ()
) -> Iterator[OrdinalNode]:
    costs = tuple(unit_costs) or (0,) * len(root)
    queue = deque([OrdinalNode.top(root, costs)])
    while queue:
        node = queue.popleft()
        yield node
        queue.extend(dag_tree_children(node))

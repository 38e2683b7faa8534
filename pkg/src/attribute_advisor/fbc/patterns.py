"""Output-sensitive FBC: disjoint patterns and their pruning graphs.

Every frequent subset of a node lies under at least one maximal frequent
set. Processing the maximal sets in order, the subsets first reachable
from set ``j`` are the ones that escape every earlier set, i.e. that hold
at least one attribute which the earlier set lacks. The bipartite graph of
set ``j`` records, per attribute of set ``j``, which earlier sets lack it;
counting the subsets that hit every earlier set through the graph gives
the share of set ``j``. The shares are disjoint and sum to the FBC.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

from ..core.attrset import AttrSet, bit_of, format_bits
from ..core.errors import WidthMismatchError
from .frequent import MaximalFrequentSet, project_maximal_frequents

logger = logging.getLogger(__name__)

Family = Union[MaximalFrequentSet, Sequence[int]]


@dataclass(frozen=True)
class Pattern:
    """A {0,1,X} string over the attributes; X cells are free."""

    cells: str

    def __post_init__(self) -> None:
        if any(ch not in "01X" for ch in self.cells):
            raise ValueError(f"pattern {self.cells!r} may only hold 0, 1 and X")

    @classmethod
    def initial(cls, bits: int, width: int) -> "Pattern":
        return cls(format_bits(bits, width).replace("1", "X"))

    @property
    def width(self) -> int:
        return len(self.cells)

    @property
    def kx(self) -> int:
        return self.cells.count("X")

    @property
    def coverage_size(self) -> int:
        return 1 << self.kx

    def _mask(self, symbol: str) -> int:
        return sum(
            bit_of(k, self.width) for k, ch in enumerate(self.cells) if ch == symbol
        )

    @property
    def x_bits(self) -> int:
        return self._mask("X")

    @property
    def one_bits(self) -> int:
        return self._mask("1")

    def covers(self, subset: AttrSet) -> bool:
        if subset.width != self.width:
            raise WidthMismatchError(
                f"width {subset.width} does not match pattern width {self.width}"
            )
        ones = self.one_bits
        return subset.bits & ones == ones and subset.bits & ~(ones | self.x_bits) == 0

    def __str__(self) -> str:
        return self.cells


@dataclass(frozen=True)
class BipartiteGraph:
    """Pruning graph of pattern ``index`` against the patterns before it.

    ``xi[k]`` lists the earlier patterns (by index) that hold 0 at
    attribute ``k``; it has one entry per attribute of the pattern's set,
    empty lists included.
    """

    index: int
    xi: Mapping[int, FrozenSet[int]] = field(default_factory=dict)

    @property
    def bottom(self) -> range:
        return range(self.index)

    def edge_count(self) -> int:
        return sum(len(adj) for adj in self.xi.values())

    def attributes_adjacent_to(self, pattern: int) -> Tuple[int, ...]:
        return tuple(sorted(k for k, adj in self.xi.items() if pattern in adj))


@dataclass
class RecursionCounter:
    calls: int = 0

    def tick(self) -> None:
        self.calls += 1


def _items_of(Fv: Family) -> Tuple[Tuple[int, ...], Optional[int]]:
    if isinstance(Fv, MaximalFrequentSet):
        return Fv.items, Fv.width
    return tuple(Fv), None


def construct_bipartite_graphs(
    Fv: Family, width: Optional[int] = None
) -> Tuple[List[Pattern], List[BipartiteGraph]]:
    items, known_width = _items_of(Fv)
    width = known_width if width is None else width
    if width is None:
        raise WidthMismatchError("width is required for a bare list of bitsets")

    patterns = [Pattern.initial(bits, width) for bits in items]
    xi: List[Dict[int, FrozenSet[int]]] = [{} for _ in items]
    for k in range(width):
        bit = bit_of(k, width)
        # Inverse index: which members hold attribute k, in processing order.
        delta = [bool(bits & bit) for bits in items]
        lacking: List[int] = []
        for j, member in enumerate(delta):
            if member:
                xi[j][k] = frozenset(lacking)
            else:
                lacking.append(j)
    graphs = [BipartiteGraph(j, xi[j]) for j in range(len(items))]
    return patterns, graphs


def _count(
    free: int, edges: Dict[int, FrozenSet[int]], counter: RecursionCounter
) -> int:
    """``free`` counts the X attributes still undecided, with or without edges."""
    counter.tick()
    if not edges:
        return 1 << free

    q_max = min(edges, key=lambda q: (-len(edges[q]), q))
    target = edges[q_max]
    group = [q for q, adj in edges.items() if adj == target]
    rest = {q: adj for q, adj in edges.items() if adj != target}
    free_rest = free - len(group)

    total = 0
    still_covered: FrozenSet[int] = frozenset().union(*rest.values())
    if target <= still_covered:
        total += _count(free_rest, rest, counter)
    pruned = {q: adj - target for q, adj in rest.items() if adj - target}
    total += ((1 << len(group)) - 1) * _count(free_rest, pruned, counter)
    return total


def count_patterns(
    P: Pattern, G: BipartiteGraph, counter: Optional[RecursionCounter] = None
) -> int:
    """Subsets of ``P``'s coverage that hold an adjacent attribute of every
    earlier pattern in ``G``."""
    counter = counter if counter is not None else RecursionCounter()
    covered = frozenset().union(*G.xi.values()) if G.xi else frozenset()
    if any(pattern not in covered for pattern in G.bottom):
        counter.tick()
        return 0

    edges = {k: adj for k, adj in G.xi.items() if adj}
    before = counter.calls
    result = _count(P.kx, edges, counter)
    logger.debug(
        "Pattern %d (%s): %d subsets, %d calls",
        G.index,
        P,
        result,
        counter.calls - before,
    )
    return result


def fbc(
    node: AttrSet, Fv: Family, counter: Optional[RecursionCounter] = None
) -> int:
    """Number of frequent subsets of ``node``.

    ``Fv`` is processed in the order given. Members that are not subsets
    of ``node`` are projected onto it first.
    """
    items, width = _items_of(Fv)
    width = node.width if width is None else width
    if width != node.width:
        raise WidthMismatchError(f"width {node.width} does not match {width}")
    if any(bits & ~node.bits for bits in items):
        if not isinstance(Fv, MaximalFrequentSet):
            Fv = MaximalFrequentSet(items, width, 1.0, 0)
        items = project_maximal_frequents(Fv, node).items

    patterns, graphs = construct_bipartite_graphs(items, width)
    counter = counter if counter is not None else RecursionCounter()
    return sum(count_patterns(P, G, counter) for P, G in zip(patterns, graphs))


# ----------------------------------------------------------------------
# Rule 1 assignment
# ----------------------------------------------------------------------
def satisfies_rule1(subset: AttrSet, pattern: Pattern, graph: BipartiteGraph) -> bool:
    if not pattern.covers(subset):
        return False
    present = set(subset.indices())
    return all(
        present.intersection(graph.attributes_adjacent_to(earlier))
        for earlier in graph.bottom
    )


def assign_rule1(
    subset: AttrSet, patterns: Sequence[Pattern], graphs: Sequence[BipartiteGraph]
) -> Optional[int]:
    """Index of the pattern owning ``subset``, or None if it is infrequent."""
    for j, (pattern, graph) in enumerate(zip(patterns, graphs)):
        if satisfies_rule1(subset, pattern, graph):
            return j
    return None

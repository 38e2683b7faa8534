"""Random instances shared by the property suites."""

import random
from typing import List, Optional, Sequence

from attribute_advisor.core.attrset import AttrSet
from attribute_advisor.core.dataset import AttributeCatalog, Dataset


def random_catalog(
    rng: random.Random, m: int, domains: Optional[Sequence[int]] = None
) -> AttributeCatalog:
    names = tuple(f"a{k}" for k in range(m))
    costs = tuple(rng.randint(1, 50) * 100 for _ in range(m))
    return AttributeCatalog(names, costs, tuple(domains or ()))


def random_dataset(
    rng: random.Random, n: int, m: int, density: Optional[float] = None
) -> Dataset:
    p = rng.uniform(0.2, 0.8) if density is None else density
    matrix = [[int(rng.random() < p) for _ in range(m)] for _ in range(n)]
    return Dataset.from_matrix(random_catalog(rng, m), matrix)


def random_ordinal_dataset(
    rng: random.Random, n: int, domains: Sequence[int]
) -> Dataset:
    catalog = random_catalog(rng, len(domains), domains)
    matrix = [[rng.randrange(dom) for dom in domains] for _ in range(n)]
    return Dataset.from_matrix(catalog, matrix)


class CoverageGain:
    """Total weight of the items covered by the chosen attributes.

    Monotone but not additive, which is what the solvers may assume.
    """

    integral = True
    name = "coverage"

    def __init__(self, rng: random.Random, m: int, universe: int = 12):
        self.weights = [rng.randint(0, 9) for _ in range(universe)]
        self.covers: List[frozenset] = [
            frozenset(rng.sample(range(universe), rng.randint(0, 4)))
            for _ in range(m)
        ]

    def evaluate(self, attrs: AttrSet, dataset: Dataset) -> int:
        covered = set()
        for k in attrs.indices():
            covered |= self.covers[k]
        return sum(self.weights[i] for i in covered)


def subsets_of(bits: int) -> List[int]:
    out = []
    sub = bits
    while True:
        out.append(sub)
        if sub == 0:
            return out
        sub = (sub - 1) & bits


class RecordingGain:
    """Wraps a gain and records every attribute set it is asked about."""

    name = "recording"

    def __init__(self, inner):
        self.inner = inner
        self.integral = inner.integral
        self.seen: List[int] = []

    def evaluate(self, attrs: AttrSet, dataset: Dataset) -> float:
        self.seen.append(attrs.bits)
        return self.inner.evaluate(attrs, dataset)


def maximal_affordable(
    catalog: AttributeCatalog, candidates: AttrSet, budget: int
) -> List[int]:
    """Subsets of ``candidates`` within ``budget`` that no candidate extends."""
    out = []
    for bits in subsets_of(candidates.bits):
        chosen = AttrSet(bits, candidates.width)
        cost = catalog.cost_of(chosen)
        if cost > budget:
            continue
        missing = (candidates - chosen).indices()
        if all(cost + catalog.costs[k] > budget for k in missing):
            out.append(bits)
    return out

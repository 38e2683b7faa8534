"""Seeded synthetic listings with correlated attribute groups.

Columns are split into groups. For every row each group draws one shared
uniform value, and each column of the group reuses it with probability
``corr`` (otherwise it draws its own). A column is set when its value falls
below the column's inclusion probability, so marginals stay exact while
columns in the same group tend to appear together. That keeps the maximal
frequent sets non-trivial.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np
import pandas as pd

from .. import settings
from ..core.dataset import AttributeCatalog, Dataset
from ..core.errors import ConfigError
from ..core.money import to_cents

logger = logging.getLogger(__name__)

DEFAULT_DENSITY = "base=0.15:0.6,groups=3,corr=0.8"
DEFAULT_COSTS = "brackets"

# Share of attributes per price bracket, and the bracket bounds in whole
# currency units (upper bound exclusive except for the last one).
COST_BRACKETS: Tuple[Tuple[float, int, int], ...] = (
    (1 / 26, 1, 10),
    (9 / 26, 10, 100),
    (14 / 26, 100, 1000),
    (2 / 26, 1000, 5001),
)


@dataclass(frozen=True)
class DensitySpec:
    low: float
    high: float
    groups: int = 1
    corr: float = 0.0

    @classmethod
    def parse(cls, text: str) -> "DensitySpec":
        """Read ``0.4`` or ``base=lo:hi,groups=g,corr=c``."""
        text = text.strip()
        try:
            if "=" not in text:
                p = float(text)
                spec = cls(p, p)
            else:
                fields: Dict[str, str] = {}
                for part in text.split(","):
                    key, _, value = part.partition("=")
                    fields[key.strip()] = value.strip()
                unknown = set(fields) - {"base", "groups", "corr"}
                if unknown:
                    raise ConfigError(
                        f"Unknown density keys {sorted(unknown)}. "
                        "Available: base, groups, corr"
                    )
                lo, _, hi = fields.get("base", "0.5").partition(":")
                spec = cls(
                    float(lo),
                    float(hi or lo),
                    int(fields.get("groups", "1")),
                    float(fields.get("corr", "0")),
                )
        except ValueError as exc:
            raise ConfigError(f"bad density spec {text!r}: {exc}") from exc
        spec.validate()
        return spec

    def validate(self) -> None:
        if not 0 <= self.low <= self.high <= 1:
            raise ConfigError(f"density range {self.low}:{self.high} not in [0, 1]")
        if self.groups < 1:
            raise ConfigError(f"groups must be >= 1, got {self.groups}")
        if not 0 <= self.corr <= 1:
            raise ConfigError(f"corr must lie in [0, 1], got {self.corr}")


def draw_costs(spec: str, m: int, rng: np.random.Generator) -> List[int]:
    """Costs in whole currency units for ``brackets``, ``fixed:v`` or
    ``uniform:lo:hi``."""
    kind, _, rest = spec.strip().partition(":")
    try:
        if kind == "brackets":
            shares = np.array([share for share, _, _ in COST_BRACKETS])
            picks = rng.choice(len(COST_BRACKETS), size=m, p=shares / shares.sum())
            return [
                int(rng.integers(COST_BRACKETS[b][1], COST_BRACKETS[b][2]))
                for b in picks
            ]
        if kind == "fixed":
            return [int(rest)] * m
        if kind == "uniform":
            lo, _, hi = rest.partition(":")
            return [int(v) for v in rng.integers(int(lo), int(hi) + 1, size=m)]
    except ValueError as exc:
        raise ConfigError(f"bad cost spec {spec!r}: {exc}") from exc
    raise ConfigError(
        f"Unknown cost spec '{spec}'. "
        "Available: brackets, fixed:<v>, uniform:<lo>:<hi>"
    )


def attribute_names(m: int) -> List[str]:
    return [f"attr_{k + 1:02d}" for k in range(m)]


def generate(
    n: int,
    m: int,
    density: str = DEFAULT_DENSITY,
    costs: str = DEFAULT_COSTS,
    seed: int = settings.DEFAULT_SEED,
) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """Return the 0/1 listings frame and the ``name,cost`` frame."""
    if n < 0 or m < 1:
        raise ConfigError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    spec = DensitySpec.parse(density)
    rng = np.random.default_rng(seed)

    probs = rng.uniform(spec.low, spec.high, size=m)
    group_of = rng.permutation(m) % spec.groups
    shared = rng.random((n, spec.groups))
    own = rng.random((n, m))
    reuse = rng.random((n, m)) < spec.corr
    draws = np.where(reuse, shared[:, group_of], own)
    matrix = (draws < probs).astype(np.int64)

    names = attribute_names(m)
    listings = pd.DataFrame(matrix, columns=names)
    prices = pd.DataFrame({"name": names, "cost": draw_costs(costs, m, rng)})
    logger.info(
        "Generated n=%d m=%d (density %.3f, seed %d)",
        n,
        m,
        matrix.mean() if n else 0.0,
        seed,
    )
    return listings, prices


def to_dataset(listings: pd.DataFrame, prices: pd.DataFrame) -> Dataset:
    catalog = AttributeCatalog(
        tuple(listings.columns),
        tuple(to_cents(c) for c in prices["cost"]),
    )
    return Dataset.from_matrix(catalog, listings.to_numpy())


def generate_dataset(
    n: int,
    m: int,
    density: str = DEFAULT_DENSITY,
    costs: str = DEFAULT_COSTS,
    seed: int = settings.DEFAULT_SEED,
) -> Dataset:
    return to_dataset(*generate(n, m, density, costs, seed))


def cmd_gen(
    n: int,
    m: int,
    density: str,
    costs: str,
    seed: int,
    dataset_path: Union[str, Path],
    costs_path: Union[str, Path],
) -> Tuple[Path, Path]:
    listings, prices = generate(n, m, density, costs, seed)
    data_out, costs_out = Path(dataset_path), Path(costs_path)
    listings.to_csv(data_out, index=False, encoding=settings.CSV_ENCODING)
    prices.to_csv(costs_out, index=False, encoding=settings.CSV_ENCODING)
    logger.info("Wrote %s and %s", data_out, costs_out)
    return data_out, costs_out

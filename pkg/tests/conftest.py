from pathlib import Path

import pytest

from attribute_advisor.core.dataset import Dataset, load_dataset
from attribute_advisor.fbc.frequent import (
    FbcConfig,
    MaximalFrequentSet,
    mine_maximal_frequents,
)

FIXTURES = Path(__file__).resolve().parent / "fixtures"

# Three maximal sets over eleven attributes, in processing order.
EXAMPLE_ITEMS = (
    int("11111000000", 2),
    int("00011111000", 2),
    int("00111110011", 2),
)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def accommodations() -> Dataset:
    return load_dataset(
        FIXTURES / "accommodations.csv", FIXTURES / "accommodation-costs.csv"
    )


@pytest.fixture
def mined(accommodations: Dataset) -> MaximalFrequentSet:
    return mine_maximal_frequents(accommodations, FbcConfig(0.3))


@pytest.fixture
def example_family() -> MaximalFrequentSet:
    return MaximalFrequentSet(EXAMPLE_ITEMS, 11, 0.5, 0)

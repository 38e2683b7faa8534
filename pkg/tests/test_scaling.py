"""Scaling trends on synthetic data. Slow; run with ``pytest -m slow``."""

import random
import time

import pytest

from attribute_advisor.bench.generator import generate_dataset
from attribute_advisor.bench.plans import plan_from_dict
from attribute_advisor.bench.runner import STATUS_OK, STATUS_TIMEOUT, BenchRunner
from attribute_advisor.core.attrset import AttrSet
from attribute_advisor.fbc.frequent import (
    FbcConfig,
    mine_maximal_frequents,
    project_maximal_frequents,
)
from attribute_advisor.fbc.oracles import fbc_apriori
from attribute_advisor.fbc.patterns import RecursionCounter, fbc
from tests.helpers import random_dataset

pytestmark = pytest.mark.slow


def test_recursion_calls_stay_output_sensitive():
    rng = random.Random(2024)
    violations = 0
    for _ in range(300):
        m = rng.randint(2, 14)
        dataset = random_dataset(rng, rng.randint(10, 60), m)
        mined = mine_maximal_frequents(dataset, FbcConfig(rng.choice([0.05, 0.1, 0.2])))
        node = AttrSet(rng.randrange(1, 1 << m), m)
        projected = project_maximal_frequents(mined, node)
        counter = RecursionCounter()
        value = fbc(node, projected, counter)
        size = len(projected)
        if counter.calls > min(value, size * size) + size:
            violations += 1
    assert violations == 0


def test_general_solver_reaches_twenty_attributes():
    plan = plan_from_dict(
        "vary-m-slow",
        {
            "swept": "m",
            "values": [15, 20],
            "algorithms": ["baseline", "general"],
            "fixed": {"n": 20000},
            "timeout_s": 60,
        },
    )
    frame = BenchRunner(plan).run()
    general = frame[frame["algorithm"] == "general"]
    assert (general["status"] == STATUS_OK).all()

    at_15 = frame[frame["value"] == 15].set_index("algorithm")
    assert at_15.loc["baseline", "status"] == STATUS_TIMEOUT


def _per_query_ms(fn, nodes):
    best = float("inf")
    for _ in range(3):
        started = time.perf_counter()
        for node in nodes:
            fn(node)
        best = min(best, (time.perf_counter() - started) * 1000 / len(nodes))
    return best


def test_pattern_counting_beats_apriori():
    dataset = generate_dataset(20000, 15, seed=0)
    cfg = FbcConfig(0.1)
    mined = mine_maximal_frequents(dataset, cfg)
    rng = random.Random(0)
    nodes = [AttrSet.full(15)] + [
        AttrSet(rng.randrange(1 << 15), 15) | AttrSet(0b111111111100000, 15)
        for _ in range(9)
    ]
    patterns_ms = _per_query_ms(
        lambda v: fbc(v, project_maximal_frequents(mined, v)), nodes
    )
    apriori_ms = _per_query_ms(lambda v: fbc_apriori(v, dataset, cfg), nodes)
    assert apriori_ms >= 100 * patterns_ms


def test_pattern_counting_does_not_depend_on_rows():
    rng = random.Random(1)
    nodes = [AttrSet(rng.randrange(1 << 15), 15) for _ in range(200)]
    timings = []
    for n in (2000, 20000, 200000):
        mined = mine_maximal_frequents(generate_dataset(n, 15, seed=0), FbcConfig(0.1))
        timings.append(
            _per_query_ms(lambda v: fbc(v, project_maximal_frequents(mined, v)), nodes)
        )
    assert max(timings) <= 2 * min(timings)

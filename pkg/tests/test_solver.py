import random

import pytest

from attribute_advisor.core.attrset import AttrSet
from attribute_advisor.core.deadline import Deadline
from attribute_advisor.core.errors import (
    ConfigError,
    GainContractError,
    SolveTimeoutError,
)
from attribute_advisor.fbc.frequent import FbcConfig, mine_maximal_frequents
from attribute_advisor.gain.fbc_gain import FbcGain
from attribute_advisor.gain.feedback import feedback_gain
from attribute_advisor.gain.workload import Workload, WorkloadGain
from attribute_advisor.solver.base import SolveRequest, Subspace, gains_equal
from attribute_advisor.solver.binary import (
    SOLVERS,
    get_solver,
    solve_baseline,
    solve_ggmfa,
    solve_igmfa,
)
from tests.helpers import (
    CoverageGain,
    RecordingGain,
    maximal_affordable,
    random_dataset,
)

BUDGET = 130000  # 1300.00


def names(dataset, result):
    return dataset.catalog.names_of(result.chosen)


class ConstantGain:
    integral = True
    name = "constant"

    def __init__(self, value):
        self.value = value

    def evaluate(self, attrs, dataset):
        return self.value


# ----------------------------------------------------------------------
# Worked example
# ----------------------------------------------------------------------
@pytest.mark.parametrize("solver", list(SOLVERS))
def test_example_solve(accommodations, mined, solver):
    request = SolveRequest(AttrSet.empty(4), BUDGET, FbcGain(mined))
    result = get_solver(solver)(request, accommodations)
    assert result.gain_value == 8
    assert names(accommodations, result) == ["TV", "Internet", "Washer"]
    assert result.cost(accommodations.catalog) == 125000


def test_general_solver_only_scores_maximal_affordable_nodes(accommodations, mined):
    request = SolveRequest(AttrSet.empty(4), BUDGET, FbcGain(mined))
    result = solve_ggmfa(request, accommodations)
    assert result.stats.gain_evals == 3
    assert result.stats.nodes_generated == 8


def test_baseline_scores_every_affordable_subset(accommodations, mined):
    request = SolveRequest(AttrSet.empty(4), BUDGET, FbcGain(mined))
    result = solve_baseline(request, accommodations)
    assert result.stats.nodes_generated == 16
    # Affordable: the empty set, four singletons, and five pairs and one triple.
    assert result.stats.gain_evals == 11


def test_improved_solver_stops_at_an_affordable_root(accommodations, mined):
    request = SolveRequest(AttrSet.empty(4), 10**9, FbcGain(mined))
    result = solve_igmfa(request, accommodations)
    assert result.stats.gain_evals == 1
    assert result.chosen == AttrSet.full(4)


def test_result_payload(accommodations, mined):
    request = SolveRequest(AttrSet.empty(4), BUDGET, FbcGain(mined))
    payload = solve_ggmfa(request, accommodations).to_dict(accommodations.catalog)
    assert payload["chosen"] == ["TV", "Internet", "Washer"]
    assert payload["gain"] == 8
    assert payload["cost"] == "1250.00"
    assert payload["stats"]["gain_evals"] == 3


# ----------------------------------------------------------------------
# Edge cases
# ----------------------------------------------------------------------
@pytest.mark.parametrize("solver", list(SOLVERS))
def test_zero_budget_returns_the_tuple_gain(accommodations, mined, solver):
    request = SolveRequest(AttrSet.empty(4), 0, FbcGain(mined))
    result = get_solver(solver)(request, accommodations)
    assert result.chosen == AttrSet.empty(4)
    assert result.gain_value == 1


@pytest.mark.parametrize("solver", list(SOLVERS))
def test_tuple_with_every_attribute(accommodations, mined, solver):
    request = SolveRequest(AttrSet.full(4), BUDGET, FbcGain(mined))
    result = get_solver(solver)(request, accommodations)
    assert result.chosen == AttrSet.empty(4)
    assert result.gain_value == 13


@pytest.mark.parametrize("solver", list(SOLVERS))
def test_gain_includes_the_tuple_attributes(accommodations, mined, solver):
    request = SolveRequest(accommodations.row_attrs(2), 100000, FbcGain(mined))
    result = get_solver(solver)(request, accommodations)
    assert result.gain_value == 8
    assert result.chosen.level == 1
    assert not result.chosen & accommodations.row_attrs(2)


@pytest.mark.parametrize("solver", list(SOLVERS))
def test_flexible_attributes_limit_the_choice(accommodations, mined, solver):
    flexible = accommodations.catalog.attrs_from_names(["Breakfast", "TV"])
    request = SolveRequest(AttrSet.empty(4), BUDGET, FbcGain(mined), flexible)
    result = get_solver(solver)(request, accommodations)
    assert names(accommodations, result) == ["Breakfast", "TV"]
    assert result.gain_value == 4


@pytest.mark.parametrize("solver", list(SOLVERS))
def test_zero_gain_everywhere_picks_nothing(accommodations, solver):
    request = SolveRequest(AttrSet.empty(4), BUDGET, ConstantGain(0))
    result = get_solver(solver)(request, accommodations)
    assert result.gain_value == 0
    assert result.cost(accommodations.catalog) <= BUDGET


class HasAttributeGain:
    integral = True
    name = "has-attribute"

    def __init__(self, k):
        self.k = k

    def evaluate(self, attrs, dataset):
        return int(self.k in attrs.indices())


@pytest.mark.parametrize("solver", list(SOLVERS))
def test_equal_optima_pick_the_smallest_maximal_set(accommodations, solver):
    # Breakfast+TV and Breakfast+Internet both fit and tie; Breakfast alone
    # ties too but is not maximal.
    request = SolveRequest(AttrSet.empty(4), BUDGET, HasAttributeGain(0))
    result = get_solver(solver)(request, accommodations)
    assert result.gain_value == 1
    assert result.chosen.to_string() == "1010"
    assert names(accommodations, result) == ["Breakfast", "Internet"]


def test_subspace_maximal_affordable(accommodations):
    space = Subspace(accommodations.catalog, AttrSet.full(4))
    # local order: Breakfast, Washer, TV, Internet
    assert space.is_maximal_affordable(0b1001, BUDGET)
    assert space.is_maximal_affordable(0b0111, BUDGET)
    assert not space.is_maximal_affordable(0b1000, BUDGET)
    assert not space.is_maximal_affordable(0b1100, BUDGET)
    assert space.is_maximal_affordable(space.full, 10**9)


def test_negative_budget_is_rejected(mined):
    with pytest.raises(ConfigError):
        SolveRequest(AttrSet.empty(4), -1, FbcGain(mined))


def test_negative_gain_breaks_the_contract(accommodations):
    request = SolveRequest(AttrSet.empty(4), BUDGET, ConstantGain(-1))
    with pytest.raises(GainContractError):
        solve_ggmfa(request, accommodations)


def test_unknown_solver():
    with pytest.raises(ValueError, match="Available: baseline, improved, general"):
        get_solver("greedy")


@pytest.mark.parametrize("solver", list(SOLVERS))
def test_expired_deadline_stops_the_search(accommodations, mined, solver):
    request = SolveRequest(AttrSet.empty(4), BUDGET, FbcGain(mined))
    with pytest.raises(SolveTimeoutError):
        get_solver(solver)(request, accommodations, deadline=Deadline(0))


def test_subspace_sorts_candidates_by_cost(accommodations):
    space = Subspace(accommodations.catalog, AttrSet.from_string("1011"))
    assert space.attrs == [0, 3, 2]
    assert space.costs == (100000, 70000, 25000)
    assert space.to_external(0b011).to_string() == "0011"
    assert space.low_budget_level(96000) == 2


# ----------------------------------------------------------------------
# Equivalence on random instances
# ----------------------------------------------------------------------
def _random_gain(rng, dataset):
    kind = rng.choice(["fbc", "coverage", "feedback", "workload"])
    if kind == "fbc":
        cfg = FbcConfig(rng.choice([0.1, 0.2, 0.3, 0.5]))
        return FbcGain(mine_maximal_frequents(dataset, cfg))
    if kind == "coverage":
        return CoverageGain(rng, dataset.m)
    if kind == "feedback":
        return feedback_gain([rng.uniform(0, 5) for _ in range(dataset.n)])
    queries = [AttrSet(rng.randrange(1 << dataset.m), dataset.m) for _ in range(5)]
    return WorkloadGain(Workload(tuple(queries)))


@pytest.mark.parametrize("seed", range(10))
def test_solvers_agree(seed):
    rng = random.Random(seed)
    for _ in range(100):
        _check_solvers_agree(rng, rng.randint(1, 8))


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(5))
def test_solvers_agree_up_to_twelve_attributes(seed):
    rng = random.Random(100 + seed)
    for _ in range(10):
        _check_solvers_agree(rng, rng.randint(9, 12))


def _check_solvers_agree(rng, m):
    dataset = random_dataset(rng, rng.randint(5, 25), m)
    gain = _random_gain(rng, dataset)
    tuple_attrs = AttrSet(rng.randrange(1 << m), m) if rng.random() < 0.3 else (
        AttrSet.empty(m)
    )
    flexible = AttrSet(rng.randrange(1 << m), m) if rng.random() < 0.2 else None
    budget = rng.randint(0, dataset.catalog.total_cost())
    request = SolveRequest(tuple_attrs, budget, gain, flexible)

    results = [solver(request, dataset) for solver in SOLVERS.values()]
    for result in results:
        assert gains_equal(result.gain_value, results[0].gain_value, gain.integral)
        assert result.chosen == results[0].chosen
        assert result.cost(dataset.catalog) <= budget
        assert not result.chosen & tuple_attrs
        if flexible is not None:
            assert result.chosen <= flexible


@pytest.mark.parametrize("seed", range(5))
def test_equal_gains_resolve_to_the_same_set(seed):
    rng = random.Random(200 + seed)
    for _ in range(40):
        m = rng.randint(1, 8)
        dataset = random_dataset(rng, rng.randint(5, 20), m)
        gain = rng.choice([ConstantGain(3), CoverageGain(rng, m, universe=4)])
        budget = rng.randint(0, dataset.catalog.total_cost())
        request = SolveRequest(AttrSet.empty(m), budget, gain)
        chosen = {solver(request, dataset).chosen for solver in SOLVERS.values()}
        assert len(chosen) == 1


@pytest.mark.parametrize("seed", range(5))
def test_low_budget_start_finds_the_same_optimum(seed):
    rng = random.Random(50 + seed)
    for _ in range(40):
        m = rng.randint(1, 8)
        dataset = random_dataset(rng, rng.randint(5, 20), m)
        gain = CoverageGain(rng, m)
        budget = rng.randint(0, dataset.catalog.total_cost() // 2)
        plain = SolveRequest(AttrSet.empty(m), budget, gain)
        seeded = SolveRequest(AttrSet.empty(m), budget, gain, low_budget=True)
        for solver in (solve_igmfa, solve_ggmfa):
            expected = solver(plain, dataset)
            assert solver(seeded, dataset).chosen == expected.chosen


# ----------------------------------------------------------------------
# General solver bookkeeping on random instances
# ----------------------------------------------------------------------
def _check_general_solver_bookkeeping(rng, m):
    dataset = random_dataset(rng, rng.randint(5, 20), m)
    gain = RecordingGain(CoverageGain(rng, m))
    tuple_attrs = AttrSet(rng.randrange(1 << m), m) if rng.random() < 0.3 else (
        AttrSet.empty(m)
    )
    flexible = AttrSet(rng.randrange(1 << m), m) if rng.random() < 0.2 else None
    budget = rng.randint(0, dataset.catalog.total_cost())
    request = SolveRequest(
        tuple_attrs, budget, gain, flexible, low_budget=rng.random() < 0.3
    )
    result = solve_ggmfa(request, dataset)

    candidates = request.candidates()
    expected = {
        bits | tuple_attrs.bits
        for bits in maximal_affordable(dataset.catalog, candidates, budget)
    }
    assert len(gain.seen) == len(set(gain.seen))
    assert set(gain.seen) == expected
    assert result.stats.gain_evals == len(expected)
    assert result.stats.nodes_generated <= 2**candidates.level


@pytest.mark.parametrize("seed", range(5))
def test_general_solver_scores_each_maximal_node_once(seed):
    rng = random.Random(300 + seed)
    for _ in range(40):
        _check_general_solver_bookkeeping(rng, rng.randint(1, 12))


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(3))
def test_general_solver_bookkeeping_up_to_sixteen_attributes(seed):
    rng = random.Random(400 + seed)
    for _ in range(5):
        _check_general_solver_bookkeeping(rng, rng.randint(13, 16))

import importlib
import json
import os

import pytest

from attribute_advisor import settings
from attribute_advisor.cli import EXIT_INVALID, EXIT_OK, EXIT_PARTIAL, main
from attribute_advisor.fbc.frequent import MaximalFrequentSet


@pytest.fixture
def data_args(fixtures_dir):
    return [
        "--dataset",
        str(fixtures_dir / "accommodations.csv"),
        "--costs",
        str(fixtures_dir / "accommodation-costs.csv"),
    ]


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv)
    assert code == EXIT_OK, err
    return json.loads(out)


# ----------------------------------------------------------------------
# gen / mine
# ----------------------------------------------------------------------
def test_gen_writes_both_files(capsys, tmp_path):
    data_out, costs_out = tmp_path / "d.csv", tmp_path / "c.csv"
    payload = run_json(
        capsys,
        ["--dataset", str(data_out), "--costs", str(costs_out), "--seed", "3"]
        + ["gen", "-n", "40", "-m", "6"],
    )
    assert payload == {"dataset": str(data_out), "costs": str(costs_out), "seed": 3}
    assert data_out.read_text().splitlines()[0].count(",") == 5
    assert len(costs_out.read_text().splitlines()) == 7


@pytest.fixture
def dotenv_seed(tmp_path, monkeypatch):
    """A .env in the working directory that sets the default seed."""
    monkeypatch.delenv("ADVISOR_SEED", raising=False)
    monkeypatch.chdir(tmp_path)
    dotenv = tmp_path / ".env"
    dotenv.write_text("ADVISOR_SEED=41\n")
    importlib.reload(settings)
    yield tmp_path
    dotenv.unlink()
    os.environ.pop("ADVISOR_SEED", None)
    importlib.reload(settings)


def test_dotenv_sets_the_default_seed(capsys, dotenv_seed):
    argv = ["--dataset", "d.csv", "--costs", "c.csv", "gen", "-n", "10", "-m", "3"]
    payload = run_json(capsys, argv)
    assert payload["seed"] == 41
    assert (dotenv_seed / "d.csv").exists()


def test_mine_prints_and_saves(capsys, tmp_path, data_args):
    out = tmp_path / "mined.txt"
    payload = run_json(capsys, data_args + ["mine", "--tau", "0.3", "--out", str(out)])
    assert payload["maximal"] == ["0111", "1110", "1001"]
    assert (payload["tau"], payload["n"], payload["m"]) == (0.3, 10, 4)
    assert MaximalFrequentSet.load(out).to_strings() == payload["maximal"]


def test_mine_at_full_threshold(capsys, data_args):
    payload = run_json(capsys, data_args + ["mine", "--tau", "1.0"])
    assert payload["maximal"] == ["0000"]


# ----------------------------------------------------------------------
# solve
# ----------------------------------------------------------------------
def test_solve_example(capsys, data_args):
    argv = ["solve", "--tau", "0.3", "--budget", "1300"]
    payload = run_json(capsys, data_args + argv)
    assert payload["chosen"] == ["TV", "Internet", "Washer"]
    assert payload["gain"] == 8
    assert payload["cost"] == "1250.00"
    assert payload["algorithm"] == "general"


@pytest.mark.parametrize("algorithm", ["baseline", "improved"])
def test_solve_with_other_algorithms(capsys, data_args, algorithm):
    argv = ["solve", "--tau", "0.3", "--budget", "1300", "--algorithm", algorithm]
    payload = run_json(capsys, data_args + argv)
    assert payload["gain"] == 8


def test_solve_zero_budget(capsys, data_args):
    payload = run_json(capsys, data_args + ["solve", "--tau", "0.3", "--budget", "0"])
    assert payload["chosen"] == []
    assert payload["gain"] == 1


def test_solve_from_saved_maximal_set(capsys, tmp_path, data_args, mined):
    path = mined.save(tmp_path / "mined.txt")
    argv = ["solve", "--mined", str(path), "--budget", "1300", "--tuple", "row:2"]
    payload = run_json(capsys, data_args + argv)
    assert payload["gain"] == 8
    assert len(payload["chosen"]) == 1


def test_row_prefix_and_bit_string_agree(capsys, data_args):
    argv = ["solve", "--tau", "0.3", "--budget", "1000", "--tuple"]
    by_row = run_json(capsys, data_args + argv + ["row:2"])
    by_bits = run_json(capsys, data_args + argv + ["0110"])
    assert by_row["chosen"] == by_bits["chosen"]
    assert by_row["gain"] == by_bits["gain"] == 8


def test_bare_number_is_not_a_row(capsys, data_args):
    argv = ["solve", "--tau", "0.3", "--budget", "1000", "--tuple", "2"]
    code, _, err = run(capsys, data_args + argv)
    assert code == EXIT_INVALID
    assert "row:2" in err


def test_solve_with_workload_gain(capsys, data_args, fixtures_dir):
    workload = f"workload:{fixtures_dir / 'workload.txt'}"
    argv = ["solve", "--gain", workload, "--budget", "1300", "--tuple", "-"]
    payload = run_json(capsys, data_args + argv)
    assert payload["gain"] > 0


def test_solve_flexible_names(capsys, data_args):
    argv = ["solve", "--tau", "0.3", "--budget", "1300", "--flexible", "Breakfast,TV"]
    payload = run_json(capsys, data_args + argv)
    assert payload["chosen"] == ["Breakfast", "TV"]
    assert payload["gain"] == 4


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--tau", "0.3", "--budget", "1300", "--tuple", "TV,Sauna"],
        ["solve", "--tau", "0.3", "--budget", "-5"],
        ["solve", "--tau", "0.3", "--budget", "lots"],
        ["solve", "--tau", "1.5", "--budget", "10"],
        ["solve", "--budget", "10"],
        ["solve", "--tau", "0.3", "--budget", "10", "--tuple", "row:99"],
        ["solve", "--tau", "0.3", "--budget", "10", "--tuple", "row:two"],
        ["solve", "--tau", "0.3", "--budget", "10", "--tuple", "10"],
        ["solve", "--tau", "0.3", "--budget", "10", "--gain", "popularity"],
    ],
)
def test_solve_rejects_bad_input(capsys, data_args, argv):
    code, out, err = run(capsys, data_args + argv)
    assert code == EXIT_INVALID
    assert "error: " in err
    assert out == ""


def test_missing_dataset_file(capsys, tmp_path):
    argv = ["--dataset", str(tmp_path / "nope.csv"), "--costs", str(tmp_path / "c")]
    code, _, err = run(capsys, argv + ["mine", "--tau", "0.3"])
    assert code == EXIT_INVALID
    assert "error:" in err


def test_dataset_flags_are_required(capsys):
    code, _, err = run(capsys, ["mine", "--tau", "0.3"])
    assert code == EXIT_INVALID
    assert "--dataset" in err


# ----------------------------------------------------------------------
# fbc
# ----------------------------------------------------------------------
@pytest.mark.parametrize(
    "method", ["patterns", "apriori", "bruteforce", "inclusion-exclusion"]
)
def test_fbc_methods(capsys, data_args, method):
    argv = ["fbc", "--node", "1111", "--tau", "0.3", "--method", method]
    payload = run_json(capsys, data_args + argv)
    assert payload == {
        "node": "1111",
        "attributes": ["Breakfast", "TV", "Internet", "Washer"],
        "fbc": 13,
        "method": method,
    }


def test_fbc_by_names(capsys, data_args):
    argv = ["fbc", "--node", "TV,Internet", "--tau", "0.3"]
    payload = run_json(capsys, data_args + argv)
    assert payload["node"] == "0110"
    assert payload["fbc"] == 4


def test_fbc_needs_a_threshold(capsys, data_args):
    code, _, _ = run(capsys, data_args + ["fbc", "--node", "1111"])
    assert code == EXIT_INVALID


def test_csv_output(capsys, data_args):
    code, out, _ = run(
        capsys, ["--csv"] + data_args + ["fbc", "--node", "1111", "--tau", "0.3"]
    )
    assert code == EXIT_OK
    assert out.splitlines() == [
        "node,attributes,fbc,method",
        "1111,Breakfast;TV;Internet;Washer,13,patterns",
    ]


# ----------------------------------------------------------------------
# bench
# ----------------------------------------------------------------------
@pytest.fixture
def plan_config(tmp_path):
    config = tmp_path / "plans.json"
    plan = {
        "swept": "m",
        "values": [4, 6],
        "algorithms": ["baseline", "general"],
        "fixed": {"n": 200, "budget": 300, "tau": 0.1},
    }
    config.write_text(json.dumps({"tiny": plan}))
    return config


def test_bench_writes_csv(capsys, tmp_path, plan_config):
    out = tmp_path / "bench.csv"
    argv = ["bench", "tiny", "--config", str(plan_config), "--output", str(out)]
    code, stdout, _ = run(capsys, argv)
    assert code == EXIT_OK
    assert stdout == ""
    assert len(out.read_text().splitlines()) == 5


def test_bench_prints_json(capsys, plan_config):
    rows = run_json(capsys, ["--json", "bench", "tiny", "--config", str(plan_config)])
    assert [row["algorithm"] for row in rows] == ["baseline", "general"] * 2
    assert {row["status"] for row in rows} == {"ok"}


def test_bench_timeout_exits_partial(capsys, plan_config):
    argv = ["--timeout-s", "1e-9", "bench", "tiny", "--config", str(plan_config)]
    code, out, _ = run(capsys, argv)
    assert code == EXIT_PARTIAL
    assert "timeout" in out


def test_unknown_bench_plan(capsys, plan_config):
    code, _, err = run(capsys, ["bench", "huge", "--config", str(plan_config)])
    assert code == EXIT_INVALID
    assert "Available: tiny" in err

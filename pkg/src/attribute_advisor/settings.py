# Settings for the attribute_advisor project
#
# Every value here can be overridden through the environment or a .env file
# in the working directory. CLI flags take precedence over these values.
import logging
import os
from pathlib import Path

from dotenv import find_dotenv, load_dotenv

load_dotenv(find_dotenv(usecwd=True))

PROJECT_NAME = "attribute_advisor"

PACKAGE_DIR = Path(__file__).resolve().parent

# --- Logging ---
LOG_LEVEL = os.getenv("ADVISOR_LOG_LEVEL", "INFO").upper()
LOG_FORMAT = os.getenv(
    "ADVISOR_LOG_FORMAT", "%(asctime)s [%(name)s] %(levelname)s: %(message)s"
)

# --- Runs ---
# Wall-clock limit for a single bench run (and the CLI default for solve).
DEFAULT_TIMEOUT_S = float(os.getenv("ADVISOR_TIMEOUT_S", "60"))

# All randomness flows from this seed unless --seed is passed.
DEFAULT_SEED = int(os.getenv("ADVISOR_SEED", "0"))

# Largest node level / family size the exponential oracles accept.
ORACLE_GUARD = int(os.getenv("ADVISOR_ORACLE_GUARD", "24"))

# --- Bench ---
BENCH_CONFIG = os.getenv(
    "ADVISOR_BENCH_CONFIG", str(PACKAGE_DIR / "bench" / "configs" / "bench-plans.json")
)
BENCH_WORKERS = int(os.getenv("ADVISOR_BENCH_WORKERS", "1"))

# Defaults for a bench sweep when a plan leaves a variable unset.
BENCH_DEFAULTS = {
    "n": 200_000,
    "m": 15,
    "budget": 2000,
    "tau": 0.1,
}

# Dataset, costs and bench CSV files are read and written in this encoding.
CSV_ENCODING = "utf-8"


def configure_logging(level: str | None = None) -> None:
    logging.basicConfig(level=(level or LOG_LEVEL).upper(), format=LOG_FORMAT)

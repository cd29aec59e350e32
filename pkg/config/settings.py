"""Configuration settings for the long-cycle certifier"""
import os
from pathlib import Path

from dotenv import load_dotenv

# Project paths
PROJECT_ROOT = Path(__file__).parent.parent
REPORTS_DIR = PROJECT_ROOT / "reports"

load_dotenv(PROJECT_ROOT / ".env")


def _env_int(name: str, default: int) -> int:
    value = os.getenv(f"LONGCYCLE_{name}")
    return int(value) if value not in (None, "") else default


# Graph storage
MAX_ORDER = 2**24
BITSET_THRESHOLD = 512

# Oracle settings
ORACLE_CAP = _env_int("ORACLE_CAP", 20)

# Witness search
SEARCH_BUDGET = _env_int("SEARCH_BUDGET", 10**6)

# Decision settings
FAST_MIN_K = 5
FAST_SCALING_SECONDS = float(os.getenv("LONGCYCLE_FAST_SCALING_SECONDS") or 1.0)
FAST_SCALING_RATIO = (1.5, 3.0)
FAST_SCALING_MIN_ORDER = 10**5

# Harness settings
EXHAUSTIVE_MAX_N = 7
EXHAUSTIVE_HARD_LIMIT = 8
GENERATION_RETRIES = _env_int("GENERATION_RETRIES", 25)
DEFAULT_SEED = _env_int("SEED", 0)
DEFAULT_JOBS = _env_int("JOBS", 1)

# Turan verification
TURAN_SEARCH_BUDGET = _env_int("TURAN_SEARCH_BUDGET", 5 * 10**6)

# Certificates
CERTIFICATE_VERSION = 1

# Create directories if they don't exist
for dir_path in [REPORTS_DIR]:
    dir_path.mkdir(parents=True, exist_ok=True)

"""
Configuration Settings
======================
Centralized defaults for measures, planners and audits.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Base Paths
BASE_DIR = Path(__file__).parent
DATA_DIR = Path(os.getenv("ANALOGMP_DATA_DIR", BASE_DIR / "data"))
CONFIGS_DIR = BASE_DIR / "configs"

# Output Files
REPORT_PATH = DATA_DIR / "report.json"
TIMINGS_PATH = DATA_DIR / "timings.json"
SAMPLES_CSV_PATH = DATA_DIR / "samples.csv"

# Logging
LOG_LEVEL = os.getenv("ANALOGMP_LOG_LEVEL", "INFO").upper()

# Reproducibility
DEFAULT_SEED = int(os.getenv("ANALOGMP_SEED", 42))

# Tolerances
POINT_TOLERANCE = float(os.getenv("POINT_TOLERANCE", 1e-9))
ZERO_WEIGHT = float(os.getenv("ZERO_WEIGHT", 1e-12))
MASS_TOLERANCE = 1e-9
SECTION_TOLERANCE = float(os.getenv("SECTION_TOLERANCE", 1e-7))
ALGEBRA_TOLERANCE = float(os.getenv("ALGEBRA_TOLERANCE", 1e-9))

# Paths and transport
PATH_GRID_SIZE = int(os.getenv("PATH_GRID_SIZE", 64))
MAX_TRANSPORT_SUPPORT = int(os.getenv("MAX_TRANSPORT_SUPPORT", 64))
MAX_ORACLE_SUPPORT = 3

# Audit Settings
DEFAULT_SAMPLES = int(os.getenv("DEFAULT_SAMPLES", 10000))
DEFAULT_LADDER = (1e-1, 1e-2, 1e-3, 1e-4)
PAIRS_PER_RUNG = int(os.getenv("PAIRS_PER_RUNG", 1000))
GROWTH_LIMIT = float(os.getenv("GROWTH_LIMIT", 4.0))
MAX_EXEMPLARS = int(os.getenv("MAX_EXEMPLARS", 5))
EQUIVARIANCE_PROBES = int(os.getenv("EQUIVARIANCE_PROBES", 16))

# Ensure data directory exists
os.makedirs(DATA_DIR, exist_ok=True)

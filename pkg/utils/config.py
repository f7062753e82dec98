"""
pbwforge Configuration
Defaults shared by the engine, the CLI and the tests
"""
from pathlib import Path


PROJECT_ROOT = Path(__file__).parent.parent
CATALOG_DIR = PROJECT_ROOT / 'data' / 'catalog'
LOG_DIR = PROJECT_ROOT / 'logs'
LOG_FILE = LOG_DIR / 'pbwforge.log'

# Degree bounds
DEFAULT_DEGREE = 10
MAX_DEGREE = 12

# Word degree up to which both reduction strategies are compared
CONFLUENCE_SAMPLE_DEGREE = 4

# Degrees on which the free-module Hilbert formula is re-checked by word enumeration
HILBERT_CROSS_CHECK_DEGREE = 4

# Sampling for the property section of reports
SAMPLE_SEED = 42
SAMPLE_PAIRS = 200
SAMPLE_TRIPLES = 100

REPORT_SCHEMA = 1

# Candidate names for the homogenizing variable, first unused one wins
HOMOGENIZING_NAMES = ('z', 'w', 'u', 'v', 'z0')

FILTRATION_MODES = ('standard', 'trivial')

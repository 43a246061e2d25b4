import os
from dotenv import load_dotenv

load_dotenv()

class Config:
    # Default run directory for `fac.py train` when --out is omitted
    RUN_DIR = os.environ.get('FAC_RUN_DIR') or os.path.join('runs', 'latest')

    LOG_LEVEL = os.environ.get('FAC_LOG_LEVEL', 'INFO').upper()

    # Optional `key = value` file layered under command-line flags
    CONFIG_FILE = os.environ.get('FAC_CONFIG')

    # Worker processes used by `fac.py sweep` when --jobs is omitted
    SWEEP_JOBS = int(os.environ.get('FAC_SWEEP_JOBS', '1'))

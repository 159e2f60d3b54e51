import os

try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # dotenv is optional

class Config:
    # Budgets for exhaustive sweeps
    BUDGET_MS = int(os.getenv('FIXPOINT_BUDGET_MS', '60000'))
    MAX_ALPHABET = int(os.getenv('FIXPOINT_MAX_ALPHABET', '20000'))

    # Reproducibility
    SEED = int(os.getenv('FIXPOINT_SEED', '1729'))

    # Logging and outputs
    LOG_LEVEL = os.getenv('FIXPOINT_LOG_LEVEL', 'INFO')
    LOG_DIR = os.getenv('FIXPOINT_LOG_DIR', 'logs')
    LOG_FILE = 'fixpoint.log'
    OUTPUT_DIR = os.getenv('FIXPOINT_OUTPUT_DIR', 'output')

    # Word alphabet
    SYMBOLS = '01234'
    TAPE_BLANK = '3'
    PAD_SYMBOL = '4'
    SEPARATOR = '2'

    # Verification defaults
    DEFAULT_SAMPLES = 256
    EXHAUSTIVE_PERIOD = 4
    GAMMA_MACHINES = 100
    GAMMA_STEPS = 30
    GAMMA_MAX_STATES = 4
    GAMMA_MAX_INPUT = 10
    COVER_DEPTH = 8
    SEQUENCE_LEVELS = 64

    @classmethod
    def budget_seconds(cls) -> float:
        return cls.BUDGET_MS / 1000.0

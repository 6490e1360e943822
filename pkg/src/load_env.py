import os
from dotenv import load_dotenv

load_dotenv()

def _positive_int(key, default):
    raw = os.getenv(key, str(default))
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{key} must be an integer, got {raw!r}")
    if value <= 0:
        raise ValueError(f"{key} must be positive, got {value}")
    return value

def load_env_file():
    """
    Load solver configuration from environment variables (and `.env`) and validate it.

    Returns:
        dict: Settings keyed by name without the `MOMAPF_` prefix.

    Raises:
        ValueError: If a variable is malformed or the log file name is empty.
    """
    raw_time_limit = os.getenv('MOMAPF_TIME_LIMIT_S', '300')
    try:
        time_limit = float(raw_time_limit)
    except ValueError:
        raise ValueError(f"MOMAPF_TIME_LIMIT_S must be a number, got {raw_time_limit!r}")
    if time_limit <= 0:
        raise ValueError(f"MOMAPF_TIME_LIMIT_S must be positive, got {time_limit}")

    log_file = os.getenv('MOMAPF_LOG_FILE', 'momapf.log')
    if not log_file:
        raise ValueError("MOMAPF_LOG_FILE must not be empty")

    return {
        "LOG_FILE": log_file,
        "ORACLE_BUDGET": _positive_int('MOMAPF_ORACLE_BUDGET', 2_000_000),
        "MAX_HORIZON": _positive_int('MOMAPF_MAX_HORIZON', 4096),
        "TIME_LIMIT_S": time_limit,
        "WORKERS": _positive_int('MOMAPF_WORKERS', 1),
    }

import time

import numpy as np

from src.filters import pareto_mask

class Deadline:
    """
    Wall-clock budget measured on the monotonic performance counter.

    Attributes:
        start (float): perf_counter value at creation.
        limit (float or None): Seconds allowed; None means unlimited.
    """

    def __init__(self, limit=None, start=None):
        self.start = time.perf_counter() if start is None else start
        self.limit = limit

    def elapsed(self):
        return time.perf_counter() - self.start

    def expired(self):
        return self.limit is not None and self.elapsed() > self.limit

def expired(deadline):
    """True if the (possibly absent) deadline has passed."""
    return deadline is not None and deadline.expired()

def precompile_numba_functions():
    """
    Precompile Numba functions to improve performance.

    This method calls Numba-compiled functions with sample data so the first
    timed low-level call does not pay the compilation cost.
    """
    pareto_mask(np.array([[1, 2], [2, 1], [2, 2]], dtype=np.int64))

def parse_int_list(text):
    """
    Parse a list of integers such as "1,2,3", "0-9" or "0-4,10".

    Args:
        text (str): Comma-separated integers or inclusive ranges.

    Returns:
        list: The integers in the order given.

    Raises:
        ValueError: On an empty or malformed list.
    """
    values = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            low, high = part.split("-", 1)
            low, high = int(low), int(high)
            if high < low:
                raise ValueError(f"empty range {part!r}")
            values.extend(range(low, high + 1))
        else:
            values.append(int(part))
    if not values:
        raise ValueError(f"no integers in {text!r}")
    return values

from enum import Enum

class SearchStatus(Enum):
    """
    Enum representing the outcome of a low-level or high-level search.

    Attributes:
        COMPLETED (str): The search space was exhausted; the returned set is exact.
        INFEASIBLE (str): The search space was exhausted without any solution.
        TIMEOUT (str): The time limit or expansion cap stopped the search; results are partial.
        HORIZON_TOO_SMALL (str): The time-augmented graph was too short even at the horizon cap.
    """

    COMPLETED = "completed"
    INFEASIBLE = "infeasible"
    TIMEOUT = "timeout"
    HORIZON_TOO_SMALL = "horizon too small"

    @property
    def exhausted(self):
        return self in {SearchStatus.COMPLETED, SearchStatus.INFEASIBLE}

class Backend(Enum):
    """
    Enum representing the low-level planner used by the high-level search.

    Attributes:
        TX (str): Multi-objective A* over the time-augmented graph (MO-CBS-t).
        SIPP (str): Multi-objective safe-interval path planning (MO-CBS-ts).
    """

    TX = "tx"
    SIPP = "sipp"

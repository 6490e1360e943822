import numpy as np
from numba import njit

from src.costs import dominates, dominates_or_equal

@njit
def pareto_mask(costs):
    """
    Mark the rows of a cost matrix that survive Pareto filtering.

    A row is dropped if another row dominates it, or if an earlier row equals it
    (among cost-equal rows the first one is kept).

    Args:
        costs (np.ndarray): int64 array of shape (n, M).

    Returns:
        np.ndarray: Boolean mask of length n.
    """
    n, m = costs.shape
    keep = np.ones(n, dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            no_worse = True
            strict = False
            for k in range(m):
                if costs[j, k] > costs[i, k]:
                    no_worse = False
                    break
                if costs[j, k] < costs[i, k]:
                    strict = True
            if no_worse and (strict or j < i):
                keep[i] = False
                break
    return keep

def pareto_filter(items):
    """
    Keep the cost-unique non-dominated subset of (cost vector, payload) items.

    Args:
        items (sequence): (cost tuple, payload) pairs; all costs of the same length.

    Returns:
        list: Surviving items in input order; among cost-equal items the first wins.

    Raises:
        ValueError: If the cost vectors differ in length.
    """
    items = list(items)
    if not items:
        return []
    length = len(items[0][0])
    if any(len(cost) != length for cost, _ in items):
        raise ValueError("cost vectors differ in length")
    costs = np.array([cost for cost, _ in items], dtype=np.int64).reshape(len(items), length)
    keep = pareto_mask(costs)
    return [item for item, kept in zip(items, keep) if kept]

def pareto_insert(front, cost, payload):
    """
    Insert an item into a Pareto front held as a list of (cost, payload) pairs.

    The item is rejected if some member dominates or equals it; otherwise every
    member it dominates is removed and the item is appended.

    Args:
        front (list): The front, modified in place.
        cost (tuple): Cost vector of the new item.
        payload (object): Payload of the new item.

    Returns:
        bool: True if the item was inserted.
    """
    for member_cost, _ in front:
        if dominates_or_equal(member_cost, cost):
            return False
    front[:] = [(c, p) for c, p in front if not dominates(cost, c)]
    front.append((cost, payload))
    return True

def dominated_by_any(front_costs, cost):
    """True if some cost in front_costs dominates or equals cost."""
    for member in front_costs:
        if dominates_or_equal(member, cost):
            return True
    return False

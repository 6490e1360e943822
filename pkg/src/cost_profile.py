import numpy as np

from src.models import EdgeScale

def generate_cost_profile(seed, num_objectives, agents, graph, low=1, high=10):
    """
    Draw the per-agent cost vectors a^i and per-edge scaling vectors b(e).

    Uses numpy's PCG64 generator seeded with `seed`. All agent vectors are drawn
    first as one (N, M) block, then all edge vectors as one (E, M) block in the
    graph's sorted edge order, so a profile depends only on (seed, M, N, edge set).

    Args:
        seed (int): Unsigned 64-bit seed.
        num_objectives (int): M, at least 1.
        agents (int or sequence): Number of agents, or the agents themselves.
        graph (Graph): The workspace graph.
        low (int, optional): Smallest component value. Defaults to 1.
        high (int, optional): Largest component value (inclusive). Defaults to 10.

    Returns:
        tuple: (list of a^i tuples, EdgeScale).

    Raises:
        ValueError: If num_objectives < 1 or the range is empty or includes zero.
    """
    if num_objectives < 1:
        raise ValueError(f"number of objectives must be at least 1, got {num_objectives}")
    if low < 1 or high < low:
        raise ValueError(f"cost range [{low}, {high}] must be non-empty and start at 1 or above")
    count = agents if isinstance(agents, int) else len(agents)

    rng = np.random.Generator(np.random.PCG64(seed))
    agent_draws = rng.integers(low, high + 1, size=(count, num_objectives))
    edge_draws = rng.integers(low, high + 1, size=(len(graph.edges), num_objectives))

    cost_scales = [tuple(int(x) for x in row) for row in agent_draws]
    scales = EdgeScale({edge: tuple(int(x) for x in row) for edge, row in zip(graph.edges, edge_draws)})
    return cost_scales, scales

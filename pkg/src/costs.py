"""
Cost vector arithmetic shared by every planner.

Cost vectors are plain tuples of Python ints, so every comparison is exact.
"""

def _check_lengths(a, b):
    if len(a) != len(b):
        raise ValueError(f"cost vectors differ in length: {len(a)} != {len(b)}")

def dominates(a, b):
    """
    Check whether cost vector a dominates b.

    Args:
        a (tuple): Cost vector.
        b (tuple): Cost vector of the same length.

    Returns:
        bool: True iff a(m) <= b(m) for all m and a(m) < b(m) for some m.

    Raises:
        ValueError: If the lengths differ.
    """
    _check_lengths(a, b)
    strict = False
    for x, y in zip(a, b):
        if x > y:
            return False
        if x < y:
            strict = True
    return strict

def dominates_or_equal(a, b):
    """
    Check whether a dominates b or equals it.

    Args:
        a (tuple): Cost vector.
        b (tuple): Cost vector of the same length.

    Returns:
        bool: True iff a(m) <= b(m) for all m.

    Raises:
        ValueError: If the lengths differ.
    """
    _check_lengths(a, b)
    for x, y in zip(a, b):
        if x > y:
            return False
    return True

def add(a, b):
    return tuple(x + y for x, y in zip(a, b))

def subtract(a, b):
    return tuple(x - y for x, y in zip(a, b))

def scale(a, k):
    return tuple(x * k for x in a)

def zero(num_objectives):
    return (0,) * num_objectives

def lex_key(cost, order="lex"):
    """
    Sort key implementing the lexicographic order shared by every OPEN list.

    Args:
        cost (tuple): Cost vector.
        order (str): "lex" compares component 1 first; "reverse_lex" compares the last first.

    Returns:
        tuple: A key comparable with the keys of other vectors of the same length.

    Raises:
        ValueError: On an unknown order.
    """
    if order == "lex":
        return cost
    if order == "reverse_lex":
        return cost[::-1]
    raise ValueError(f"unknown order {order!r}; expected 'lex' or 'reverse_lex'")

def edge_cost(agent, edge, scales):
    """
    Cost of moving agent along an edge: the component-wise product a^i * b(e).

    Args:
        agent (AgentSpec): The moving agent.
        edge (tuple): (u, v) endpoints, in either orientation.
        scales (EdgeScale): Per-edge scaling vectors.

    Returns:
        tuple: The move cost vector.

    Raises:
        ValueError: If the edge has no scaling vector (it is not in the graph).
    """
    if edge not in scales:
        raise ValueError(f"unknown edge {edge}")
    return tuple(a * b for a, b in zip(agent.cost_scale, scales[edge]))

def wait_cost(agent):
    """Cost of waiting one time step; a^i, the same at every node."""
    return agent.cost_scale

def path_cost(vertices, agent, scales):
    """
    Recompute the cost of a trajectory from its vertex sequence.

    The trajectory ends at its final arrival, so no cost accrues afterwards.

    Args:
        vertices (sequence): Vertex per time step from t=0.
        agent (AgentSpec): Agent whose costs apply.
        scales (EdgeScale): Per-edge scaling vectors.

    Returns:
        tuple: The cost vector.

    Raises:
        ValueError: If two consecutive vertices are neither equal nor adjacent.
    """
    total = zero(agent.num_objectives)
    c_wait = wait_cost(agent)
    for u, v in zip(vertices, vertices[1:]):
        if u == v:
            total = add(total, c_wait)
        else:
            total = add(total, edge_cost(agent, (u, v), scales))
    return total

def joint_cost(joint_path):
    """
    Sum the agent path costs of a joint path.

    Args:
        joint_path (JointPath or sequence of Path): The joint path.

    Returns:
        tuple: Component-wise sum of the path costs.

    Raises:
        ValueError: If a path is missing or the costs differ in length.
    """
    paths = joint_path.paths if hasattr(joint_path, "paths") else joint_path
    if not paths or any(p is None for p in paths):
        raise ValueError("joint path is missing an agent path")
    total = zero(len(paths[0].cost))
    for path in paths:
        _check_lengths(total, path.cost)
        total = add(total, path.cost)
    return total

def heuristic(node, goal, agent, graph):
    """
    Manhattan-distance heuristic: distance(node, goal) * (1, ..., 1).

    Admissible because every step costs at least one in every component.
    Returns the zero vector when either node has no geometry.

    Args:
        node (int): Current node.
        goal (int): Goal node.
        agent (AgentSpec): Agent (sets the number of objectives).
        graph (Graph): Graph carrying the geometry.

    Returns:
        tuple: The heuristic vector.
    """
    m = agent.num_objectives
    a, b = graph.coord(node), graph.coord(goal)
    if a is None or b is None:
        return zero(m)
    distance = abs(a[0] - b[0]) + abs(a[1] - b[1])
    return (distance,) * m

def make_heuristic(graph, agent, kind="manhattan"):
    """
    Build a cached node -> heuristic vector function towards the agent's goal.

    Args:
        graph (Graph): Graph carrying the geometry.
        agent (AgentSpec): Agent whose goal and objective count apply.
        kind (str): "manhattan" or "zero".

    Returns:
        callable: Maps a node id to its heuristic vector.

    Raises:
        ValueError: On an unknown kind.
    """
    if kind == "zero":
        zeros = zero(agent.num_objectives)
        return lambda node: zeros
    if kind != "manhattan":
        raise ValueError(f"unknown heuristic {kind!r}; expected 'manhattan' or 'zero'")

    cache = {}

    def manhattan(node):
        value = cache.get(node)
        if value is None:
            value = cache[node] = heuristic(node, agent.goal, agent, graph)
        return value

    return manhattan

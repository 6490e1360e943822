"""Builders for the small instances used across the test suite."""
import numpy as np

from src.cost_profile import generate_cost_profile
from src.intervals import ConstraintSet
from src.load_map import parse_map
from src.models import AgentSpec, EdgeScale, Graph, Instance

OBSTACLE_ROWS = ["...", "..."]
A, B, C, D, E, F = range(6)
OBSTACLE_T_MAX = 20

def map_text(rows):
    return f"type octile\nheight {len(rows)}\nwidth {len(rows[0])}\nmap\n" + "\n".join(rows) + "\n"

def grid_from_rows(rows):
    return parse_map(map_text(rows))

def graph_from_rows(rows):
    return Graph.from_grid(grid_from_rows(rows))

def uniform_scales(graph, vector):
    return EdgeScale({edge: vector for edge in graph.edges})

def obstacle_setup():
    """
    The 2x3 grid a b c / d e f with an obstacle at b at t=2 and at e from t=3 on.

    Returns:
        tuple: (graph, agent from a to f with scalar unit costs, unit edge scales, constraints).
    """
    graph = graph_from_rows(OBSTACLE_ROWS)
    agent = AgentSpec(0, A, F, (1,))
    cs = ConstraintSet([(B, 2)] + [(E, t) for t in range(3, OBSTACLE_T_MAX + 1)])
    return graph, agent, uniform_scales(graph, (1,)), cs

def make_instance(rows, cells, num_objectives=2, seed=0, name="test"):
    """
    Build an instance on a grid given as map rows.

    Args:
        rows (list): Map rows of `.` and `@`.
        cells (list): ((start row, start col), (goal row, goal col)) per agent.
        num_objectives (int): M.
        seed (int): Cost-profile seed.
        name (str): Instance name.

    Returns:
        Instance: The instance.
    """
    grid = grid_from_rows(rows)
    graph = Graph.from_grid(grid)
    nodes = [(grid.node_id(*start), grid.node_id(*goal)) for start, goal in cells]
    cost_scales, scales = generate_cost_profile(seed, num_objectives, len(nodes), graph)
    agents = tuple(AgentSpec(i, start, goal, cost_scales[i]) for i, (start, goal) in enumerate(nodes))
    return Instance(graph, agents, scales, num_objectives, seed, 300.0, name)

def _component(graph, source):
    seen = {source}
    stack = [source]
    while stack:
        for u in graph.neighbors(stack.pop()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen

def random_instance(seed, height=3, width=3, num_agents=1, num_objectives=2, obstacle_ratio=0.15):
    """
    A seeded random grid instance whose agents share one connected component.

    Returns:
        Instance: The instance; name records the seed.
    """
    rng = np.random.default_rng(seed)
    while True:
        blocked = rng.random((height, width)) < obstacle_ratio
        rows = ["".join("@" if blocked[r, c] else "." for c in range(width)) for r in range(height)]
        grid = grid_from_rows(rows)
        graph = Graph.from_grid(grid)
        if len(graph) < 2 * num_agents:
            continue
        component = sorted(_component(graph, graph.vertices[0]))
        if len(component) < max(2 * num_agents, len(graph) - 1):
            continue
        chosen = rng.choice(component, size=2 * num_agents, replace=False)
        cells = [
            (divmod(int(chosen[2 * i]), width), divmod(int(chosen[2 * i + 1]), width))
            for i in range(num_agents)
        ]
        return make_instance(rows, cells, num_objectives, int(rng.integers(0, 2 ** 32)), f"random-{seed}")

def random_constraints(seed, graph, start, count=4, max_t=6):
    """
    Random node and directional edge constraints that leave (start, 0) free.

    Returns:
        ConstraintSet: About `count` node constraints and `count // 2` edge constraints.
    """
    rng = np.random.default_rng(seed)
    nodes = []
    for _ in range(count):
        v = int(rng.choice(graph.vertices))
        t = int(rng.integers(1, max_t + 1))
        nodes.append((v, t))
    edges = []
    for _ in range(count // 2):
        u, v = graph.edges[int(rng.integers(0, len(graph.edges)))]
        if rng.random() < 0.5:
            u, v = v, u
        edges.append((u, v, int(rng.integers(0, max_t))))
    return ConstraintSet([(v, t) for v, t in nodes if (v, t) != (start, 0)], edges)

def room_map_rows(size=32, room=8, seed=0):
    """
    A square map split into rooms by one-cell walls, with one random door per wall segment.

    Returns:
        list: Map rows.
    """
    rng = np.random.default_rng(seed)
    cells = [["." for _ in range(size)] for _ in range(size)]
    walls = list(range(room, size, room + 1))
    for w in walls:
        for i in range(size):
            cells[w][i] = "@"
            cells[i][w] = "@"
    bounds = [0] + [w + 1 for w in walls]
    ends = [w for w in walls] + [size]
    for w in walls:
        for low, high in zip(bounds, ends):
            door = int(rng.integers(low, high))
            cells[w][door] = "."
            cells[door][w] = "."
    return ["".join(row) for row in cells]

def scen_text(map_name, grid, pairs):
    """MovingAI scenario text for ((start row, start col), (goal row, goal col)) pairs."""
    lines = ["version 1"]
    for (sr, sc), (gr, gc) in pairs:
        lines.append(f"0\t{map_name}\t{grid.width}\t{grid.height}\t{sc}\t{sr}\t{gc}\t{gr}\t0")
    return "\n".join(lines) + "\n"

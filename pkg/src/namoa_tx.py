import logging
import time
from typing import NamedTuple

import src.custom_logger
from src.costs import add, dominates_or_equal, edge_cost, make_heuristic, wait_cost, zero
from src.filters import dominated_by_any, pareto_insert
from src.helpers import expired
from src.intervals import ConstraintSet, goal_clear
from src.models import Path, TrajectorySet
from src.open_list import OpenList
from src.search_status import SearchStatus

class TimedVertex(NamedTuple):
    """A vertex of the time-augmented graph: a node at a time step."""

    node: int
    t: int

class TimedLabel:
    """
    A cost-to-come vector at a timed vertex, with a parent link.

    Attributes:
        vertex (TimedVertex): Where and when the prefix ends.
        g (tuple): Cost-to-come vector.
        f (tuple): g plus the heuristic of the node.
        parent (TimedLabel or None): Previous label, one time step earlier.
        in_open (bool): Whether the label is queued in OPEN.
    """

    __slots__ = ("vertex", "g", "f", "parent", "in_open")

    def __init__(self, vertex, g, f, parent=None):
        self.vertex = vertex
        self.g = g
        self.f = f
        self.parent = parent
        self.in_open = False

    @property
    def node(self):
        return self.vertex.node

    @property
    def t_r(self):
        return self.vertex.t

    def __repr__(self):
        return f"TimedLabel({self.vertex.node}@{self.vertex.t}, g={self.g})"

def default_horizon(graph, cs):
    """Initial horizon of the time-augmented graph: |V| + latest constraint time + 1."""
    return len(graph) + max(cs.max_time(), 0) + 1

def _reachable(graph, start, goal):
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        if v == goal:
            return True
        for u in graph.neighbors(v):
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    return False

def _reconstruct(label):
    vertices = []
    while label is not None:
        vertices.append(label.node)
        label = label.parent
    return tuple(reversed(vertices))

def _search(graph, agent, scales, cs, h, order, horizon, deadline):
    """
    Run one NAMOA* pass over the time-augmented graph truncated at `horizon`.

    Returns:
        tuple: (solutions as (cost, label) pairs, cut labels, expansions, generated, timed out).
    """
    c_wait = wait_cost(agent)
    blocked_edges = cs.edge_constraints
    open_list = OpenList(order)
    g_sets = {}
    solutions = []
    cut = []
    expansions = 0
    generated = 0

    root_vertex = TimedVertex(agent.start, 0)
    g0 = zero(agent.num_objectives)
    root = TimedLabel(root_vertex, g0, add(g0, h(agent.start)))
    g_sets[root_vertex] = [root]
    open_list.push(root)

    while open_list:
        if expired(deadline):
            return solutions, cut, expansions, generated, True
        label = open_list.pop()
        if dominated_by_any((cost for cost, _ in solutions), label.g):
            continue
        expansions += 1

        v, t = label.vertex
        if v == agent.goal and goal_clear(agent.goal, t, cs):
            if pareto_insert(solutions, label.g, label):
                open_list.remove_if(lambda queued: dominates_or_equal(label.g, queued.g))
            continue
        if t >= horizon:
            cut.append(label)
            continue

        moves = [(v, c_wait)]
        moves.extend((u, edge_cost(agent, (v, u), scales)) for u in graph.neighbors(v) if (v, u, t) not in blocked_edges)
        for u, step in moves:
            if cs.node_blocked(u, t + 1):
                continue
            generated += 1
            vertex = TimedVertex(u, t + 1)
            g = add(label.g, step)
            existing = g_sets.get(vertex, [])
            if any(dominates_or_equal(other.g, g) for other in existing):
                continue
            kept = []
            for other in existing:
                if dominates_or_equal(g, other.g):
                    open_list.remove(other)
                else:
                    kept.append(other)
            child = TimedLabel(vertex, g, add(g, h(u)), label)
            kept.append(child)
            g_sets[vertex] = kept
            open_list.push(child)

    return solutions, cut, expansions, generated, False

def plan_tx(graph, agent, scales, cs=None, heuristic="manhattan", order="lex", horizon=None, max_horizon=4096, deadline=None):
    """
    Compute all cost-unique Pareto-optimal trajectories by multi-objective A* over the time-augmented graph.

    With an explicit horizon only trajectories arriving by it are considered. Without
    one, the horizon starts at `default_horizon` and doubles while some label cut at
    the horizon could still lead to a non-dominated solution.

    Args:
        graph (Graph): Workspace graph.
        agent (AgentSpec): The agent, with its start, goal and cost scale.
        scales (EdgeScale): Per-edge scaling vectors.
        cs (ConstraintSet, optional): Constraints on the agent. Defaults to none.
        heuristic (str or callable, optional): "manhattan", "zero", or node -> vector. Defaults to "manhattan".
        order (str, optional): OPEN order, "lex" or "reverse_lex". Defaults to "lex".
        horizon (int, optional): Fixed horizon; disables the adaptive doubling.
        max_horizon (int, optional): Cap of the adaptive doubling. Defaults to 4096.
        deadline (Deadline, optional): Stop with TIMEOUT once expired.

    Returns:
        TrajectorySet: The Pareto set, search statistics and the horizon used.

    Raises:
        ValueError: If start or goal is not a vertex.
    """
    started = time.perf_counter()
    if agent.start not in graph or agent.goal not in graph:
        raise ValueError(f"start {agent.start} or goal {agent.goal} is not a vertex")

    cs = cs if cs is not None else ConstraintSet()
    h = make_heuristic(graph, agent, heuristic) if isinstance(heuristic, str) else heuristic

    if cs.node_blocked(agent.start, 0) or not _reachable(graph, agent.start, agent.goal):
        return TrajectorySet(SearchStatus.INFEASIBLE, [], 0, 0, time.perf_counter() - started, horizon)

    adaptive = horizon is None
    current = default_horizon(graph, cs) if adaptive else horizon
    if adaptive:
        current = min(current, max_horizon)
    total_expansions = 0
    total_generated = 0

    while True:
        solutions, cut, expansions, generated, timed_out = _search(graph, agent, scales, cs, h, order, current, deadline)
        total_expansions += expansions
        total_generated += generated
        if timed_out or not adaptive:
            break
        solution_costs = [cost for cost, _ in solutions]
        open_cut = [label for label in cut if not dominated_by_any(solution_costs, label.f)]
        if not open_cut:
            break
        if current >= max_horizon:
            logging.getLogger().custom(f"Agent {agent.id}: horizon {current} too small with {len(open_cut)} open labels")
            return TrajectorySet(SearchStatus.HORIZON_TOO_SMALL, [], total_expansions, total_generated, time.perf_counter() - started, current)
        current = min(2 * current, max_horizon)
        logging.getLogger().custom(f"Agent {agent.id}: doubling time horizon to {current}")

    trajectories = sorted(
        (Path(agent.id, _reconstruct(label), cost) for cost, label in solutions),
        key=lambda path: path.cost,
    )
    if timed_out:
        status = SearchStatus.TIMEOUT
    elif trajectories:
        status = SearchStatus.COMPLETED
    else:
        status = SearchStatus.INFEASIBLE
    return TrajectorySet(status, trajectories, total_expansions, total_generated, time.perf_counter() - started, current)

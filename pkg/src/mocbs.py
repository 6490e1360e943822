"""
Multi-objective conflict-based search, tree-wise variant.

Individual Pareto sets are computed once per agent; constraint-tree roots are
generated on demand from their product, and each root's tree is searched until
its OPEN list is empty. The low-level planner is pluggable: the time-augmented
multi-objective A* or the multi-objective safe-interval planner.
"""
from collections import deque
from dataclasses import dataclass, field
import heapq
import itertools
import logging
import math
import time

import src.custom_logger
from src.costs import dominates_or_equal, joint_cost, lex_key
from src.filters import pareto_insert
from src.helpers import Deadline, expired
from src.intervals import ConstraintSet, EdgeConstraint, NodeConstraint
from src.models import JointPath
from src.mosipp import plan
from src.namoa_tx import plan_tx
from src.oracle import DEFAULT_BUDGET, enumerate_joint_pareto
from src.search_status import Backend, SearchStatus

FEASIBILITY_BUDGET = 100_000

@dataclass(frozen=True)
class Conflict:
    """
    A vertex or edge (swap) conflict between agents i and j.

    For a vertex conflict u == v is the shared vertex at time t. For an edge
    conflict agent i traverses u -> v while agent j traverses v -> u, both
    departing at time t.
    """

    kind: str
    i: int
    j: int
    u: int
    v: int
    t: int

    def __post_init__(self):
        if self.kind not in ("vertex", "edge"):
            raise ValueError(f"unknown conflict kind {self.kind!r}")
        if self.i == self.j or self.t < 0:
            raise ValueError(f"invalid conflict between {self.i} and {self.j} at t={self.t}")

class HighLevelNode:
    """
    Node of the constraint tree.

    Attributes:
        id (int): Creation index; breaks ties between equal joint costs.
        paths (tuple): One Path per agent.
        cost (tuple): Joint cost vector.
        constraint (NodeConstraint or EdgeConstraint or None): Constraint added by this node; None at a root.
        parent (HighLevelNode or None): Parent node.
    """

    __slots__ = ("id", "paths", "cost", "constraint", "parent")

    def __init__(self, id, paths, cost, constraint=None, parent=None):
        self.id = id
        self.paths = paths
        self.cost = cost
        self.constraint = constraint
        self.parent = parent

    def joint_path(self):
        return JointPath(self.paths, self.cost)

class SolutionSet:
    """Conflict-free joint paths with pairwise non-dominated, distinct joint costs."""

    def __init__(self):
        self._front = []

    def __len__(self):
        return len(self._front)

    def __iter__(self):
        return iter(self.joint_paths())

    def insert(self, joint_path):
        return pareto_insert(self._front, joint_path.cost, joint_path)

    def covers(self, cost):
        """True if some member's cost dominates or equals `cost`."""
        return any(dominates_or_equal(member, cost) for member, _ in self._front)

    def costs(self):
        return {cost for cost, _ in self._front}

    def joint_paths(self):
        return [joint for _, joint in sorted(self._front, key=lambda item: item[0])]

@dataclass
class RunStats:
    """
    Statistics of one high-level search.

    Low-level calls are split into the initial per-agent calls with no constraints
    and the replanning calls made when splitting conflicts.
    """

    backend: str
    status: SearchStatus = SearchStatus.COMPLETED
    expansions: int = 0
    roots_total: int = 0
    roots_generated: int = 0
    init_call_times: list = field(default_factory=list)
    replan_call_times: list = field(default_factory=list)
    low_level_expansions: int = 0
    first_solution_s: float = None
    first_solution_expansions: int = None
    elapsed_s: float = 0.0

    @property
    def init_calls(self):
        return len(self.init_call_times)

    @property
    def replan_calls(self):
        return len(self.replan_call_times)

    @property
    def calls(self):
        return self.init_calls + self.replan_calls

    @staticmethod
    def _mean(times):
        return sum(times) / len(times) if times else 0.0

    @property
    def mean_init_call_time_s(self):
        return self._mean(self.init_call_times)

    @property
    def mean_replan_call_time_s(self):
        return self._mean(self.replan_call_times)

    @property
    def mean_call_time_s(self):
        return self._mean(self.init_call_times + self.replan_call_times)

    def as_dict(self):
        return {
            "backend": self.backend,
            "status": self.status.value,
            "expansions": self.expansions,
            "roots_total": self.roots_total,
            "roots_generated": self.roots_generated,
            "calls": self.calls,
            "init_calls": self.init_calls,
            "replan_calls": self.replan_calls,
            "low_level_expansions": self.low_level_expansions,
            "mean_call_time_s": self.mean_call_time_s,
            "mean_init_call_time_s": self.mean_init_call_time_s,
            "mean_replan_call_time_s": self.mean_replan_call_time_s,
            "first_solution_s": self.first_solution_s,
            "first_solution_expansions": self.first_solution_expansions,
            "elapsed_s": self.elapsed_s,
        }

def detect_first_conflict(joint_path):
    """
    Find the earliest conflict of a joint path.

    Time steps are scanned in increasing order; at each step vertex conflicts come
    before edge conflicts of the step that starts there, and agent pairs are taken in
    index order. An agent whose path has ended stays parked at its last vertex.

    Args:
        joint_path (JointPath or sequence of Path): Paths indexed by agent, all starting at t=0.

    Returns:
        Conflict or None: The first conflict, or None if the joint path is conflict-free.
    """
    paths = joint_path.paths if isinstance(joint_path, JointPath) else tuple(joint_path)
    if len(paths) < 2:
        return None
    horizon = max(path.arrival for path in paths)
    pairs = list(itertools.combinations(range(len(paths)), 2))
    for t in range(horizon + 1):
        for i, j in pairs:
            v = paths[i].at(t)
            if v == paths[j].at(t):
                return Conflict("vertex", i, j, v, v, t)
        if t == horizon:
            break
        for i, j in pairs:
            u, v = paths[i].at(t), paths[i].at(t + 1)
            if u != v and paths[j].at(t) == v and paths[j].at(t + 1) == u:
                return Conflict("edge", i, j, u, v, t)
    return None

def split_conflict(conflict):
    """
    Turn a conflict into one constraint per involved agent.

    Args:
        conflict (Conflict): The conflict to resolve.

    Returns:
        tuple: (constraint on agent i, constraint on agent j).

    Raises:
        ValueError: If there is no conflict to split.
    """
    if conflict is None:
        raise ValueError("split_conflict needs a conflict, got None")
    if conflict.kind == "vertex":
        return (NodeConstraint(conflict.i, conflict.v, conflict.t), NodeConstraint(conflict.j, conflict.v, conflict.t))
    return (
        EdgeConstraint(conflict.i, conflict.u, conflict.v, conflict.t),
        EdgeConstraint(conflict.j, conflict.v, conflict.u, conflict.t),
    )

def backtrack_constraints(node, agent, extra=None):
    """
    Collect the constraints on one agent from a node and all its ancestors.

    Args:
        node (HighLevelNode or None): Where to start walking up the tree.
        agent (int): Agent index.
        extra (NodeConstraint or EdgeConstraint, optional): A constraint to add on top.

    Returns:
        ConstraintSet: The accumulated constraints of the agent.
    """
    constraints = [extra] if extra is not None and extra.agent == agent else []
    while node is not None:
        if node.constraint is not None and node.constraint.agent == agent:
            constraints.append(node.constraint)
        node = node.parent
    return ConstraintSet.from_constraints(constraints)

def joint_feasible(instance, budget=FEASIBILITY_BUDGET):
    """
    Whether the agents can all reach their goals, ignoring costs.

    Breadth-first search over joint positions, one synchronous step at a time,
    with waits allowed and vertex and swap conflicts forbidden. Reaching the goal
    configuration is enough: agents then stay parked at their goals.

    Args:
        instance (Instance): The instance.
        budget (int, optional): Largest joint state space (|V| ** N) searched.

    Returns:
        bool or None: None when the joint state space exceeds the budget.
    """
    graph = instance.graph
    if len(graph) ** len(instance.agents) > budget:
        return None
    moves = {v: (v,) + graph.neighbors(v) for v in graph.vertices}
    pairs = list(itertools.combinations(range(len(instance.agents)), 2))
    start = tuple(agent.start for agent in instance.agents)
    goal = tuple(agent.goal for agent in instance.agents)
    seen = {start}
    queue = deque([start])
    while queue:
        positions = queue.popleft()
        if positions == goal:
            return True
        for step in itertools.product(*(moves[v] for v in positions)):
            if step in seen or len(set(step)) < len(step):
                continue
            if any(step[i] == positions[j] and step[j] == positions[i] for i, j in pairs):
                continue
            seen.add(step)
            queue.append(step)
    return False

def _low_level(backend, graph, scales, order, horizon, max_horizon, heuristic, deadline):
    if backend is Backend.SIPP:
        return lambda agent, cs: plan(graph, agent, scales, cs, heuristic=heuristic, order=order, horizon=horizon, deadline=deadline)
    return lambda agent, cs: plan_tx(graph, agent, scales, cs, heuristic=heuristic, order=order, horizon=horizon, max_horizon=max_horizon, deadline=deadline)

class _Stop(Exception):
    def __init__(self, status):
        super().__init__(status.value)
        self.status = status

def solve(instance, backend, time_limit=None, horizon=None, order="lex", filter_open=True, max_expansions=None, max_horizon=4096, heuristic="manhattan"):
    """
    Find all cost-unique Pareto-optimal conflict-free joint paths of an instance.

    Args:
        instance (Instance): The instance; distinct starts and distinct goals.
        backend (Backend or str): Low-level planner, "tx" or "sipp".
        time_limit (float, optional): Seconds; defaults to instance.time_limit_s.
        horizon (int, optional): Bound every agent's final arrival; makes the tree finite.
        order (str, optional): "lex" or "reverse_lex" for every OPEN list. Defaults to "lex".
        filter_open (bool, optional): Prune OPEN nodes covered by found solutions. Defaults to True.
        max_expansions (int, optional): Stop with TIMEOUT after this many high-level expansions.
        max_horizon (int, optional): Horizon cap of the time-augmented planner. Defaults to 4096.
        heuristic (str, optional): Low-level heuristic, "manhattan" or "zero".

    Returns:
        tuple: (SolutionSet, RunStats). On TIMEOUT the solution set is partial.
    """
    backend = Backend(backend)
    limit = instance.time_limit_s if time_limit is None else time_limit
    deadline = Deadline(limit)
    stats = RunStats(backend.value)
    solutions = SolutionSet()
    low_level = _low_level(backend, instance.graph, instance.scales, order, horizon, max_horizon, heuristic, deadline)
    node_ids = itertools.count()
    logger = logging.getLogger()
    logger.custom(f"{instance.name}: solving {len(instance.agents)} agents, M={instance.num_objectives}, backend={backend.value}")

    def call(agent, cs, times):
        started = time.perf_counter()
        result = low_level(agent, cs)
        times.append(time.perf_counter() - started)
        stats.low_level_expansions += result.expansions
        if result.status in (SearchStatus.TIMEOUT, SearchStatus.HORIZON_TOO_SMALL):
            raise _Stop(result.status)
        return sorted(result.trajectories, key=lambda path: lex_key(path.cost, order))

    def expand_tree(root):
        open_list = [(lex_key(root.cost, order), root.id, root)]
        while open_list:
            if expired(deadline) or (max_expansions is not None and stats.expansions >= max_expansions):
                raise _Stop(SearchStatus.TIMEOUT)
            _, _, node = heapq.heappop(open_list)
            if filter_open and solutions.covers(node.cost):
                continue
            stats.expansions += 1

            conflict = detect_first_conflict(node.paths)
            if conflict is None:
                if solutions.insert(node.joint_path()):
                    if stats.first_solution_s is None:
                        stats.first_solution_s = deadline.elapsed()
                        stats.first_solution_expansions = stats.expansions
                    logger.custom(f"{instance.name}: solution {node.cost} after {stats.expansions} expansions")
                    if filter_open:
                        open_list = [entry for entry in open_list if not dominates_or_equal(node.cost, entry[2].cost)]
                        heapq.heapify(open_list)
                continue

            for constraint in split_conflict(conflict):
                agent = instance.agents[constraint.agent]
                cs = backtrack_constraints(node, agent.id, constraint)
                for path in call(agent, cs, stats.replan_call_times):
                    paths = node.paths[:agent.id] + (path,) + node.paths[agent.id + 1:]
                    cost = joint_cost(paths)
                    if filter_open and solutions.covers(cost):
                        continue
                    child = HighLevelNode(next(node_ids), paths, cost, constraint, node)
                    heapq.heappush(open_list, (lex_key(cost, order), child.id, child))

    try:
        pareto_sets = []
        for agent in instance.agents:
            trajectories = call(agent, ConstraintSet(), stats.init_call_times)
            if not trajectories:
                logger.custom(f"{instance.name}: agent {agent.id} has no trajectory to its goal")
                stats.status = SearchStatus.INFEASIBLE
                break
            pareto_sets.append(trajectories)
        else:
            if joint_feasible(instance) is False:
                logger.custom(f"{instance.name}: the agents cannot reach their goals together")
                stats.status = SearchStatus.INFEASIBLE
            else:
                stats.roots_total = math.prod(len(paths) for paths in pareto_sets)
                for combination in itertools.product(*pareto_sets):
                    if expired(deadline):
                        raise _Stop(SearchStatus.TIMEOUT)
                    stats.roots_generated += 1
                    cost = joint_cost(combination)
                    if filter_open and solutions.covers(cost):
                        continue
                    expand_tree(HighLevelNode(next(node_ids), tuple(combination), cost))
                stats.status = SearchStatus.COMPLETED if len(solutions) else SearchStatus.INFEASIBLE
    except _Stop as stop:
        stats.status = stop.status

    stats.elapsed_s = deadline.elapsed()
    logger.custom(
        f"{instance.name}: {stats.status.value} with {len(solutions)} solutions, "
        f"{stats.expansions} expansions, {stats.calls} low-level calls, {stats.elapsed_s:.3f}s"
    )
    return solutions, stats

def cross_validate(instance, horizon, order="lex", budget=DEFAULT_BUDGET):
    """
    Check that both backends and the joint oracle agree on an instance's Pareto set.

    Args:
        instance (Instance): A small instance.
        horizon (int): Bound on every agent's final arrival, shared by all three runs.
        order (str, optional): High-level and low-level OPEN order.
        budget (int, optional): Oracle budget.

    Returns:
        bool: True iff the three cost-vector sets are identical and both searches completed.
    """
    results = {}
    for backend in Backend:
        solutions, stats = solve(instance, backend, horizon=horizon, order=order)
        if not stats.status.exhausted:
            logging.error(f"{instance.name}: backend {backend.value} stopped with status {stats.status.value}")
            return False
        results[backend.value] = solutions.costs()
    results["oracle"] = {joint.cost for joint in enumerate_joint_pareto(instance, horizon, budget)}

    reference = results["oracle"]
    agree = True
    for name, costs in results.items():
        if costs != reference:
            agree = False
            logging.error(
                f"{instance.name}: {name} differs from the oracle; "
                f"missing {sorted(reference - costs)}, extra {sorted(costs - reference)}"
            )
    if agree:
        logging.getLogger().custom(f"{instance.name}: backends and oracle agree on {len(reference)} joint costs")
    return agree

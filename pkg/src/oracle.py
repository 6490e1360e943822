"""
Brute-force Pareto enumerators used as ground truth for the planners.

Nothing here shares search code with the planners: outcomes are enumerated
layer by layer over time steps, costs are recomputed from scratch and the
Pareto filter is applied only at the end (or per joint state, whose futures
are identical).
"""
import heapq
import itertools

from src.costs import add, dominates, dominates_or_equal, edge_cost, path_cost, wait_cost, zero
from src.filters import pareto_filter
from src.intervals import ConstraintSet, goal_clear
from src.models import JointPath, Path, TrajectorySet
from src.search_status import SearchStatus

DEFAULT_BUDGET = 2_000_000

class OracleBudgetExceeded(RuntimeError):
    """Raised when an enumeration would hold more partial outcomes than its budget allows."""

    def __init__(self, held, budget):
        super().__init__(f"oracle refused: {held} partial outcomes exceed the budget of {budget}")
        self.held = held
        self.budget = budget

def _check_budget(held, budget):
    if held > budget:
        raise OracleBudgetExceeded(held, budget)

def _unwind(chain):
    vertices = []
    while chain is not None:
        vertices.append(chain[0])
        chain = chain[1]
    return tuple(reversed(vertices))

def _single_moves(graph, agent, scales, cs, v, t):
    yield v, wait_cost(agent)
    for u in graph.neighbors(v):
        if (v, u, t) not in cs.edge_constraints:
            yield u, edge_cost(agent, (v, u), scales)

def enumerate_single_pareto(graph, agent, scales, cs=None, horizon=10, budget=DEFAULT_BUDGET):
    """
    Enumerate every constraint-satisfying trajectory of one agent arriving by `horizon` and Pareto-filter the costs.

    Outcomes are grouped per (node, time) by exact cost vector; only one
    representative trajectory is kept per distinct vector, which leaves the set of
    reachable costs unchanged.

    Args:
        graph (Graph): Workspace graph.
        agent (AgentSpec): The agent.
        scales (EdgeScale): Per-edge scaling vectors.
        cs (ConstraintSet, optional): Constraints on the agent.
        horizon (int): Latest admissible final arrival time.
        budget (int): Maximum number of distinct partial outcomes held in one time layer.

    Returns:
        TrajectorySet: Cost-unique Pareto-optimal trajectories, sorted lexicographically by cost.

    Raises:
        OracleBudgetExceeded: If a layer grows beyond the budget.
    """
    cs = cs if cs is not None else ConstraintSet()
    if cs.node_blocked(agent.start, 0):
        return TrajectorySet(SearchStatus.INFEASIBLE, horizon=horizon)

    layer = {agent.start: {zero(agent.num_objectives): (agent.start, None)}}
    outcomes = []
    held = 0
    for t in range(horizon + 1):
        if agent.goal in layer and goal_clear(agent.goal, t, cs):
            outcomes.extend(layer[agent.goal].items())
        if t == horizon:
            break

        following = {}
        held = 0
        for v, entries in layer.items():
            for u, step in _single_moves(graph, agent, scales, cs, v, t):
                if cs.node_blocked(u, t + 1):
                    continue
                bucket = following.setdefault(u, {})
                for cost, chain in entries.items():
                    new_cost = add(cost, step)
                    if new_cost not in bucket:
                        bucket[new_cost] = (u, chain)
                        held += 1
            _check_budget(held, budget)
        layer = following

    best = pareto_filter(outcomes)
    trajectories = sorted((Path(agent.id, _unwind(chain), cost) for cost, chain in best), key=lambda path: path.cost)
    status = SearchStatus.COMPLETED if trajectories else SearchStatus.INFEASIBLE
    return TrajectorySet(status, trajectories, horizon=horizon)

def _non_dominated(costs):
    front = []
    for cost in sorted(set(costs)):
        if not any(dominates(kept, cost) for kept in front):
            front.append(cost)
    return front

def pareto_value_iteration(graph, agent, scales, cs=None, horizon=10, budget=DEFAULT_BUDGET):
    """
    Compute the Pareto set of trajectory costs by a backward pass over (node, time).

    The cost-to-go set of (v, t) is the non-dominated union of the zero vector (if v
    is the goal and may be kept from t on) and every move or wait cost plus the set
    of the successor one step later.

    Args:
        graph (Graph): Workspace graph.
        agent (AgentSpec): The agent.
        scales (EdgeScale): Per-edge scaling vectors.
        cs (ConstraintSet, optional): Constraints on the agent.
        horizon (int): Latest admissible final arrival time.
        budget (int): Maximum number of cost vectors held in one time layer.

    Returns:
        list: The Pareto-optimal cost vectors, sorted lexicographically.

    Raises:
        OracleBudgetExceeded: If a layer grows beyond the budget.
    """
    cs = cs if cs is not None else ConstraintSet()
    if cs.node_blocked(agent.start, 0):
        return []

    origin = zero(agent.num_objectives)
    to_go = {}
    for v in graph.vertices:
        if v == agent.goal and not cs.node_blocked(v, horizon) and goal_clear(v, horizon, cs):
            to_go[v] = [origin]

    for t in range(horizon - 1, -1, -1):
        previous = to_go
        to_go = {}
        held = 0
        for v in graph.vertices:
            if cs.node_blocked(v, t):
                continue
            candidates = []
            if v == agent.goal and goal_clear(v, t, cs):
                candidates.append(origin)
            for u, step in _single_moves(graph, agent, scales, cs, v, t):
                candidates.extend(add(step, rest) for rest in previous.get(u, ()))
            if candidates:
                to_go[v] = _non_dominated(candidates)
                held += len(to_go[v])
        _check_budget(held, budget)

    return to_go.get(agent.start, [])

def _component(graph, source):
    seen = {source}
    stack = [source]
    while stack:
        for u in graph.neighbors(stack.pop()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen

def scalar_optimum(graph, agent, scales, cs=None, horizon=None):
    """
    Optimal scalar trajectory cost by Dijkstra over (node, time) pairs (M = 1).

    Args:
        graph (Graph): Workspace graph.
        agent (AgentSpec): Agent with a one-component cost scale.
        scales (EdgeScale): Per-edge scaling vectors of length one.
        cs (ConstraintSet, optional): Constraints on the agent.
        horizon (int, optional): Latest arrival; unbounded by default.

    Returns:
        int or None: The optimal cost, or None if no trajectory arrives by the horizon.

    Raises:
        ValueError: If the agent has more than one objective.
    """
    if agent.num_objectives != 1:
        raise ValueError(f"scalar optimum needs M = 1, got M = {agent.num_objectives}")
    cs = cs if cs is not None else ConstraintSet()
    if cs.node_blocked(agent.start, 0) or agent.goal not in _component(graph, agent.start):
        return None

    best = {(agent.start, 0): 0}
    queue = [(0, 0, agent.start)]
    while queue:
        cost, t, v = heapq.heappop(queue)
        if cost > best.get((v, t), cost):
            continue
        if v == agent.goal and goal_clear(v, t, cs):
            return cost
        if t == horizon:
            continue
        for u, step in _single_moves(graph, agent, scales, cs, v, t):
            if cs.node_blocked(u, t + 1):
                continue
            new_cost = cost + step[0]
            if new_cost < best.get((u, t + 1), new_cost + 1):
                best[(u, t + 1)] = new_cost
                heapq.heappush(queue, (new_cost, t + 1, u))
    return None

def _joint_steps(instance, positions, finished):
    """Conflict-free joint moves of the unfinished agents over one time step."""
    graph = instance.graph
    options = []
    for agent, v, done in zip(instance.agents, positions, finished):
        if done:
            options.append(((v, zero(instance.num_objectives)),))
            continue
        choices = [(v, wait_cost(agent))]
        choices.extend((u, edge_cost(agent, (v, u), instance.scales)) for u in graph.neighbors(v))
        options.append(tuple(choices))

    for combo in itertools.product(*options):
        targets = tuple(u for u, _ in combo)
        if len(set(targets)) < len(targets):
            continue
        swap = False
        for i, j in itertools.combinations(range(len(targets)), 2):
            if positions[i] != targets[i] and positions[i] == targets[j] and positions[j] == targets[i]:
                swap = True
                break
        if swap:
            continue
        step = zero(instance.num_objectives)
        for _, cost in combo:
            step = add(step, cost)
        yield targets, step

def _finish_options(instance, positions, finished):
    """Every way for unfinished agents standing on their goals to stop for good."""
    candidates = [i for i, (agent, v, done) in enumerate(zip(instance.agents, positions, finished)) if not done and v == agent.goal]
    for size in range(len(candidates) + 1):
        for chosen in itertools.combinations(candidates, size):
            yield tuple(done or i in chosen for i, done in enumerate(finished))

def _merge(bucket, cost, payload):
    for other in bucket:
        if dominates_or_equal(other, cost):
            return False
    for other in [c for c in bucket if dominates(cost, c)]:
        del bucket[other]
    bucket[cost] = payload
    return True

def enumerate_joint_pareto(instance, horizon=10, budget=DEFAULT_BUDGET):
    """
    Enumerate every conflict-free joint trajectory arriving by `horizon` and Pareto-filter the joint costs.

    Each agent may stop for good whenever it stands on its goal; afterwards it is
    parked there at no cost and still occupies the goal for conflict checking.
    Joint states (positions, stopped flags) at one time step share their future,
    so the costs reaching one state are reduced to their non-dominated subset.

    Args:
        instance (Instance): The instance.
        horizon (int): Latest admissible final arrival of any agent.
        budget (int): Maximum number of partial outcomes held in one time layer.

    Returns:
        list: JointPath objects with cost-unique Pareto-optimal joint costs, sorted lexicographically.

    Raises:
        OracleBudgetExceeded: If a layer grows beyond the budget.
    """
    starts = tuple(agent.start for agent in instance.agents)
    if len(set(starts)) < len(starts):
        return []

    layer = {}
    for finished in _finish_options(instance, starts, (False,) * len(starts)):
        layer[(starts, finished)] = {zero(instance.num_objectives): ((starts, finished), None)}

    outcomes = []
    for t in range(horizon + 1):
        for (positions, finished), bucket in layer.items():
            if all(finished):
                outcomes.extend(bucket.items())
        if t == horizon:
            break

        following = {}
        held = 0
        for (positions, finished), bucket in layer.items():
            if all(finished):
                continue
            for targets, step in _joint_steps(instance, positions, finished):
                for stopped in _finish_options(instance, targets, finished):
                    key = (targets, stopped)
                    slot = following.setdefault(key, {})
                    for cost, chain in bucket.items():
                        if _merge(slot, add(cost, step), ((targets, stopped), chain)):
                            held += 1
            _check_budget(held, budget)
        layer = following

    joint_paths = []
    for cost, chain in pareto_filter(outcomes):
        steps = []
        while chain is not None:
            steps.append(chain[0])
            chain = chain[1]
        steps.reverse()
        paths = []
        for i, agent in enumerate(instance.agents):
            arrival = next(t for t, (_, stopped) in enumerate(steps) if stopped[i])
            vertices = tuple(positions[i] for positions, _ in steps[:arrival + 1])
            paths.append(Path(agent.id, vertices, path_cost(vertices, agent, instance.scales)))
        joint_paths.append(JointPath(tuple(paths), cost))
    return sorted(joint_paths, key=lambda jp: jp.cost)

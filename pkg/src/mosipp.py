"""
Multi-objective safe-interval path planning.

Finds every cost-unique Pareto-optimal trajectory of one agent under node and
edge constraints. Search states are (node, safe interval) pairs; labels are
trajectory prefixes arriving at a state at a given time with a given cost.
"""
import time

from src.costs import add, dominates_or_equal, edge_cost, make_heuristic, scale, wait_cost, zero
from src.filters import dominated_by_any, pareto_insert
from src.helpers import expired
from src.intervals import ConstraintSet, IntervalTable, SafeState, goal_clear
from src.models import Path, TrajectorySet
from src.open_list import OpenList
from src.search_status import SearchStatus

class Label:
    """
    A trajectory prefix: safe state, cost-to-come, arrival time and parent label.

    Attributes:
        state (SafeState): Node and safe interval the prefix ends in.
        g (tuple): Cost-to-come vector.
        t_r (int): Arrival time, within state.interval.
        parent (Label or None): Label this one was generated from.
        f (tuple): g plus the heuristic of the state's node.
        in_open (bool): Whether the label is currently queued in OPEN.
    """

    __slots__ = ("state", "g", "t_r", "parent", "f", "in_open")

    def __init__(self, state, g, t_r, parent=None, f=None):
        self.state = state
        self.g = g
        self.t_r = t_r
        self.parent = parent
        self.f = g if f is None else f
        self.in_open = False

    @property
    def node(self):
        return self.state.node

    def __repr__(self):
        interval = self.state.interval
        return f"Label({self.node}, [{interval.t_a}, {interval.t_b}], g={self.g}, t={self.t_r})"

class FrontierSet:
    """
    Per-state sets of mutually non-label-dominating labels.

    Attributes:
        c_wait (tuple): Wait cost used by label-dominance.
    """

    def __init__(self, c_wait):
        self.c_wait = c_wait
        self._labels = {}

    def __getitem__(self, state):
        return self._labels.get(state, [])

    def __iter__(self):
        return iter(self._labels.items())

    def add(self, label):
        self._labels.setdefault(label.state, []).append(label)

    def replace(self, state, labels):
        self._labels[state] = labels

def label_dominates(l, l_prime, c_wait):
    """
    Check whether label l label-dominates label l_prime.

    Args:
        l (Label): Candidate dominating label.
        l_prime (Label): Candidate dominated label at the same safe state.
        c_wait (tuple): Wait cost per time step.

    Returns:
        bool: True iff t_r(l) <= t_r(l') and g(l) + (t_r(l') - t_r(l)) * c_wait <= g(l') component-wise.

    Raises:
        ValueError: If the labels are at different safe states.
    """
    if l.state != l_prime.state:
        raise ValueError(f"label-dominance compares labels at one state, got {l.state} and {l_prime.state}")
    if l.t_r > l_prime.t_r:
        return False
    return dominates_or_equal(add(l.g, scale(c_wait, l_prime.t_r - l.t_r)), l_prime.g)

def label_dominated(l_prime, frontier, open_list):
    """
    Compare a new label against the frontier set of its state.

    If some member label-dominates l_prime, l_prime is to be discarded. Otherwise
    members label-dominated by l_prime leave the frontier and OPEN, and l_prime
    joins the frontier.

    Args:
        l_prime (Label): The newly generated label.
        frontier (FrontierSet): Frontier sets, updated in place.
        open_list (OpenList): OPEN, updated in place.

    Returns:
        bool: True if l_prime should be discarded.
    """
    c_wait = frontier.c_wait
    members = frontier[l_prime.state]
    for member in members:
        if label_dominates(member, l_prime, c_wait):
            return True

    kept = []
    for member in members:
        if label_dominates(l_prime, member, c_wait):
            open_list.remove(member)
        else:
            kept.append(member)
    kept.append(l_prime)
    frontier.replace(l_prime.state, kept)
    return False

def filter_open(l_goal, open_list):
    """
    Remove from OPEN every label whose g is dominated by or equal to a solution's g.

    Args:
        l_goal (Label): The label just accepted as a solution.
        open_list (OpenList): OPEN, updated in place.

    Returns:
        int: Number of labels removed.
    """
    return open_list.remove_if(lambda label: dominates_or_equal(l_goal.g, label.g))

def get_successors(label, graph, agent, scales, table, heuristic=None, horizon=None):
    """
    Generate successor labels by "wait and move" with the earliest arrival per reachable safe state.

    Args:
        label (Label): The label being expanded.
        graph (Graph): Workspace graph.
        agent (AgentSpec): Agent whose costs apply.
        scales (EdgeScale): Per-edge scaling vectors.
        table (IntervalTable): Safe intervals and edge constraints of the query.
        heuristic (callable, optional): node -> heuristic vector used for f. Defaults to zero.
        horizon (int, optional): Drop successors arriving after this time step.

    Returns:
        list: Successor labels, by neighbor then by interval.
    """
    v = label.node
    interval = label.state.interval
    t_r = label.t_r
    c_wait = wait_cost(agent)
    blocked_edges = table.cs.edge_constraints
    successors = []

    for u in graph.neighbors(v):
        move = edge_cost(agent, (v, u), scales)
        for target in table.intervals(u):
            if target.t_b < t_r + 1:
                continue
            if target.t_a - 1 > interval.t_b:
                break
            depart = max(t_r, target.t_a - 1)
            latest = min(interval.t_b, target.t_b - 1)
            while depart <= latest and (v, u, depart) in blocked_edges:
                depart += 1
            if depart > latest:
                continue
            arrival = depart + 1
            if horizon is not None and arrival > horizon:
                break
            g = add(add(label.g, scale(c_wait, depart - t_r)), move)
            f = add(g, heuristic(u)) if heuristic is not None else g
            successors.append(Label(SafeState(u, target), g, arrival, label, f))
    return successors

def reconstruct(label):
    """
    Materialize the trajectory of a label, with waits as repeated vertices.

    Args:
        label (Label): The final label.

    Returns:
        tuple: Vertex per time step from t=0 to t_r(label).
    """
    chain = []
    while label is not None:
        chain.append(label)
        label = label.parent
    chain.reverse()

    vertices = [chain[0].node]
    for previous, current in zip(chain, chain[1:]):
        vertices.extend([previous.node] * (current.t_r - previous.t_r - 1))
        vertices.append(current.node)
    return tuple(vertices)

def plan(graph, agent, scales, cs=None, heuristic="manhattan", order="lex", prune=True, horizon=None, deadline=None, frontier=None):
    """
    Compute all cost-unique Pareto-optimal constraint-satisfying trajectories of one agent.

    A goal label is a solution only if no node constraint at the goal postdates
    its arrival; otherwise it is expanded like any other label.

    Args:
        graph (Graph): Workspace graph.
        agent (AgentSpec): The agent, with its start, goal and cost scale.
        scales (EdgeScale): Per-edge scaling vectors.
        cs (ConstraintSet, optional): Constraints on the agent. Defaults to none.
        heuristic (str or callable, optional): "manhattan", "zero", or node -> vector. Defaults to "manhattan".
        order (str, optional): OPEN order, "lex" or "reverse_lex". Defaults to "lex".
        prune (bool, optional): Apply label-dominance and OPEN filtering. Defaults to True.
        horizon (int, optional): Only consider trajectories whose final arrival is <= horizon.
        deadline (Deadline, optional): Stop with TIMEOUT once expired.
        frontier (FrontierSet, optional): Frontier sets to fill; a fresh one per call by default.

    Returns:
        TrajectorySet: The Pareto set and search statistics.

    Raises:
        ValueError: If start or goal is not a vertex, or prune is off without a horizon.
    """
    started = time.perf_counter()
    if agent.start not in graph or agent.goal not in graph:
        raise ValueError(f"start {agent.start} or goal {agent.goal} is not a vertex")
    if not prune and horizon is None:
        raise ValueError("a search without pruning needs a horizon")

    cs = cs if cs is not None else ConstraintSet()
    table = IntervalTable(cs)
    h = make_heuristic(graph, agent, heuristic) if isinstance(heuristic, str) else heuristic
    frontier = frontier if frontier is not None else FrontierSet(wait_cost(agent))
    open_list = OpenList(order)
    solutions = []
    expansions = 0
    generated = 0
    timed_out = False

    start_state = table.state_at(agent.start, 0)
    if start_state is None:
        return TrajectorySet(SearchStatus.INFEASIBLE, [], 0, 0, time.perf_counter() - started, horizon)

    g0 = zero(agent.num_objectives)
    root = Label(start_state, g0, 0, None, add(g0, h(agent.start)))
    open_list.push(root)
    if prune:
        frontier.add(root)

    while open_list:
        if expired(deadline):
            timed_out = True
            break
        label = open_list.pop()
        if prune and dominated_by_any((cost for cost, _ in solutions), label.g):
            continue
        expansions += 1

        if label.node == agent.goal and goal_clear(agent.goal, label.t_r, cs):
            if pareto_insert(solutions, label.g, label) and prune:
                filter_open(label, open_list)
            continue

        for child in get_successors(label, graph, agent, scales, table, h, horizon):
            generated += 1
            if prune and label_dominated(child, frontier, open_list):
                continue
            open_list.push(child)

    trajectories = sorted(
        (Path(agent.id, reconstruct(label), cost) for cost, label in solutions),
        key=lambda path: path.cost,
    )
    if timed_out:
        status = SearchStatus.TIMEOUT
    elif trajectories:
        status = SearchStatus.COMPLETED
    else:
        status = SearchStatus.INFEASIBLE
    return TrajectorySet(status, trajectories, expansions, generated, time.perf_counter() - started, horizon)

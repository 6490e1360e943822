from bisect import bisect_right
from dataclasses import dataclass
import math
from typing import NamedTuple

INF = math.inf

class SafeInterval(NamedTuple):
    """
    Maximal contiguous range [t_a, t_b] of unconstrained time steps at a node.

    t_b may be INF, which orders above every finite time step.
    """

    t_a: int
    t_b: float

    def contains(self, t):
        return self.t_a <= t <= self.t_b

class SafeState(NamedTuple):
    """A search state of the safe-interval planner: a node and one of its safe intervals."""

    node: int
    interval: SafeInterval

@dataclass(frozen=True)
class NodeConstraint:
    """Agent may not occupy node v at time t."""

    agent: int
    v: int
    t: int

@dataclass(frozen=True)
class EdgeConstraint:
    """Agent may not traverse u -> v departing at time t (arriving at t + 1)."""

    agent: int
    u: int
    v: int
    t: int

class ConstraintSet:
    """
    Node constraints {(v, t)} and directional edge constraints {(u, v, t)} on one agent.

    Attributes:
        node_constraints (frozenset): (v, t) pairs.
        edge_constraints (frozenset): (u, v, t) triples; u -> v departing at t is forbidden.
    """

    def __init__(self, node_constraints=(), edge_constraints=()):
        """
        Initializes a ConstraintSet and its per-node lookup tables.

        Args:
            node_constraints (iterable): (v, t) pairs.
            edge_constraints (iterable): (u, v, t) triples.

        Raises:
            ValueError: If any time is negative.
        """
        self.node_constraints = frozenset((v, int(t)) for v, t in node_constraints)
        self.edge_constraints = frozenset((u, v, int(t)) for u, v, t in edge_constraints)
        for _, t in self.node_constraints:
            if t < 0:
                raise ValueError(f"negative constraint time {t}")
        for _, _, t in self.edge_constraints:
            if t < 0:
                raise ValueError(f"negative constraint time {t}")

        times = {}
        for v, t in self.node_constraints:
            times.setdefault(v, []).append(t)
        self._node_times = {v: tuple(sorted(ts)) for v, ts in times.items()}

    @classmethod
    def from_constraints(cls, constraints):
        """
        Builds a ConstraintSet from NodeConstraint / EdgeConstraint objects.

        Args:
            constraints (iterable): Constraint objects; their agent field is not checked.

        Returns:
            ConstraintSet: The combined set.
        """
        nodes = []
        edges = []
        for constraint in constraints:
            if isinstance(constraint, NodeConstraint):
                nodes.append((constraint.v, constraint.t))
            elif isinstance(constraint, EdgeConstraint):
                edges.append((constraint.u, constraint.v, constraint.t))
            else:
                raise ValueError(f"not a constraint: {constraint!r}")
        return cls(nodes, edges)

    def __len__(self):
        return len(self.node_constraints) + len(self.edge_constraints)

    def __eq__(self, other):
        if not isinstance(other, ConstraintSet):
            return NotImplemented
        return self.node_constraints == other.node_constraints and self.edge_constraints == other.edge_constraints

    def __hash__(self):
        return hash((self.node_constraints, self.edge_constraints))

    def node_times(self, v):
        return self._node_times.get(v, ())

    def node_blocked(self, v, t):
        return (v, t) in self.node_constraints

    def max_time(self):
        """Largest time mentioned by any constraint, or -1 when empty."""
        latest = -1
        for _, t in self.node_constraints:
            latest = max(latest, t)
        for _, _, t in self.edge_constraints:
            latest = max(latest, t + 1)
        return latest

def build_intervals(node, cs):
    """
    Compute the safe intervals of a node under a constraint set.

    Args:
        node (int): The node.
        cs (ConstraintSet): Constraints; node constraints at `node` are occupied steps.

    Returns:
        list: Sorted, disjoint, maximal SafeIntervals; the last one is always unbounded.
    """
    intervals = []
    start = 0
    for t in cs.node_times(node):
        if t > start:
            intervals.append(SafeInterval(start, t - 1))
        start = max(start, t + 1)
    intervals.append(SafeInterval(start, INF))
    return intervals

class IntervalTable:
    """
    Lazily built safe-interval tables for every node under one ConstraintSet.

    Tables are immutable once built, so one instance can serve a whole low-level query.
    """

    def __init__(self, cs):
        self.cs = cs
        self._tables = {}
        self._starts = {}

    def intervals(self, node):
        table = self._tables.get(node)
        if table is None:
            table = tuple(build_intervals(node, self.cs))
            self._tables[node] = table
            self._starts[node] = [interval.t_a for interval in table]
        return table

    def state_at(self, node, t):
        table = self.intervals(node)
        index = bisect_right(self._starts[node], t) - 1
        if index < 0:
            return None
        interval = table[index]
        if interval.contains(t):
            return SafeState(node, interval)
        return None

def state_at(node, t, cs):
    """
    Find the safe state of a node that contains time t.

    Args:
        node (int): The node.
        t (int): Time step, t >= 0.
        cs (ConstraintSet): Constraints.

    Returns:
        SafeState or None: None when the node is constrained at t.
    """
    return IntervalTable(cs).state_at(node, t)

def edge_blocked(u, v, t, cs, graph=None):
    """
    Check whether traversing u -> v departing at t is forbidden.

    Args:
        u (int): Departure node.
        v (int): Arrival node.
        t (int): Departure time.
        cs (ConstraintSet): Constraints.
        graph (Graph, optional): When given, (u, v) must be one of its edges.

    Returns:
        bool: True iff (u, v, t) is an edge constraint. Directional.

    Raises:
        ValueError: If a graph is given and (u, v) is not an edge.
    """
    if graph is not None and not graph.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge of the graph")
    return (u, v, t) in cs.edge_constraints

def max_goal_constraint_time(v, cs):
    """
    Latest node-constraint time at v.

    Args:
        v (int): The node (typically the goal).
        cs (ConstraintSet): Constraints.

    Returns:
        int or None: The largest t with (v, t) constrained, or None.
    """
    times = cs.node_times(v)
    return times[-1] if times else None

def goal_clear(goal, t, cs):
    """True if an agent arriving at goal at time t may stay there forever."""
    latest = max_goal_constraint_time(goal, cs)
    return latest is None or latest <= t

def violates(vertices, cs, goal=None):
    """
    Replay a trajectory against a constraint set.

    Args:
        vertices (sequence): Vertex per time step from t=0.
        cs (ConstraintSet): Constraints.
        goal (int, optional): When given, the trajectory must end at goal with no later goal constraint.

    Returns:
        tuple or None: The first violated constraint as ("node", v, t), ("edge", u, v, t)
            or ("goal", v, t); None if the trajectory satisfies every constraint.
    """
    for t, v in enumerate(vertices):
        if cs.node_blocked(v, t):
            return ("node", v, t)
        if t > 0 and vertices[t - 1] != v and (vertices[t - 1], v, t - 1) in cs.edge_constraints:
            return ("edge", vertices[t - 1], v, t - 1)
    if goal is not None:
        arrival = len(vertices) - 1
        if vertices[-1] != goal or not goal_clear(goal, arrival, cs):
            return ("goal", vertices[-1], arrival)
    return None

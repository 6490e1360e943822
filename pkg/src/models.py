from dataclasses import dataclass, field

import numpy as np

from src.search_status import SearchStatus

class Graph:
    """
    Undirected graph over integer node ids, optionally carrying grid geometry.

    Attributes:
        vertices (tuple): Sorted node ids.
        edges (tuple): Sorted undirected edges as (min endpoint, max endpoint) pairs.
        geometry (dict or None): Node id -> (row, col) for grid-derived graphs.
    """

    def __init__(self, vertices, edges, geometry=None):
        """
        Initializes a Graph and its adjacency lists.

        Args:
            vertices (iterable): Node ids.
            edges (iterable): Pairs (u, v) of node ids; orientation is ignored.
            geometry (dict, optional): Node id -> (row, col). Defaults to None.

        Raises:
            ValueError: On self-loops or edges whose endpoints are not vertices.
        """
        self.vertices = tuple(sorted(set(vertices)))
        vertex_set = set(self.vertices)
        normalized = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if u not in vertex_set or v not in vertex_set:
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            normalized.add((min(u, v), max(u, v)))
        self.edges = tuple(sorted(normalized))
        self.geometry = dict(geometry) if geometry is not None else None

        adjacency = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        self._adjacency = {v: tuple(sorted(ns)) for v, ns in adjacency.items()}

    @classmethod
    def from_grid(cls, grid_map):
        """
        Builds the 4-connected graph over the passable cells of a grid map.

        Node ids are row-major cell indices (row * width + col).

        Args:
            grid_map (GridMap): The parsed grid.

        Returns:
            Graph: The derived graph with (row, col) geometry.
        """
        vertices = []
        edges = []
        geometry = {}
        for row in range(grid_map.height):
            for col in range(grid_map.width):
                if not grid_map.is_passable(row, col):
                    continue
                node = grid_map.node_id(row, col)
                vertices.append(node)
                geometry[node] = (row, col)
                if col + 1 < grid_map.width and grid_map.is_passable(row, col + 1):
                    edges.append((node, grid_map.node_id(row, col + 1)))
                if row + 1 < grid_map.height and grid_map.is_passable(row + 1, col):
                    edges.append((node, grid_map.node_id(row + 1, col)))
        return cls(vertices, edges, geometry)

    def __contains__(self, node):
        return node in self._adjacency

    def __len__(self):
        return len(self.vertices)

    def neighbors(self, node):
        return self._adjacency[node]

    def has_edge(self, u, v):
        return u in self._adjacency and v in self._adjacency[u]

    def coord(self, node):
        if self.geometry is None:
            return None
        return self.geometry.get(node)

class GridMap:
    """
    Row-major passability grid parsed from a MovingAI `.map` file.

    Attributes:
        height (int): Number of rows.
        width (int): Number of columns.
        cells (np.ndarray): Boolean array of shape (height, width); True means passable.
        rows (tuple): The raw map rows, kept so the file can be written back unchanged.
    """

    def __init__(self, height, width, cells, rows=None):
        cells = np.asarray(cells, dtype=bool)
        if cells.shape != (height, width):
            raise ValueError(f"cells shape {cells.shape} does not match {height}x{width}")
        self.height = height
        self.width = width
        self.cells = cells
        if rows is None:
            rows = tuple("".join("." if cells[r, c] else "@" for c in range(width)) for r in range(height))
        self.rows = tuple(rows)

    def __eq__(self, other):
        if not isinstance(other, GridMap):
            return NotImplemented
        return self.height == other.height and self.width == other.width and self.rows == other.rows

    def __repr__(self):
        return f"GridMap({self.height}x{self.width})"

    def is_passable(self, row, col):
        return bool(self.cells[row, col])

    def in_bounds(self, row, col):
        return 0 <= row < self.height and 0 <= col < self.width

    def node_id(self, row, col):
        return row * self.width + col

@dataclass(frozen=True)
class AgentSpec:
    """
    One agent of an instance.

    Attributes:
        id (int): Agent index, 0-based.
        start (int): Start node.
        goal (int): Goal node.
        cost_scale (tuple): Per-agent cost vector a^i; also the per-step wait cost.
    """

    id: int
    start: int
    goal: int
    cost_scale: tuple

    @property
    def num_objectives(self):
        return len(self.cost_scale)

class EdgeScale:
    """
    Per-edge scaling vectors b(e), shared by both traversal directions.
    """

    def __init__(self, scales):
        self._scales = {}
        for (u, v), vector in scales.items():
            vector = tuple(int(x) for x in vector)
            if any(x < 1 for x in vector):
                raise ValueError(f"edge scale for ({u}, {v}) has a component below 1: {vector}")
            self._scales[(min(u, v), max(u, v))] = vector

    def __getitem__(self, edge):
        u, v = edge
        return self._scales[(min(u, v), max(u, v))]

    def __contains__(self, edge):
        u, v = edge
        return (min(u, v), max(u, v)) in self._scales

    def __len__(self):
        return len(self._scales)

    def __eq__(self, other):
        if not isinstance(other, EdgeScale):
            return NotImplemented
        return self._scales == other._scales

    def items(self):
        return sorted(self._scales.items())

@dataclass(frozen=True)
class Path:
    """
    A single-agent trajectory: one vertex per unit time step starting at t=0.

    Attributes:
        agent (int): Agent index.
        vertices (tuple): Vertex occupied at t = 0, 1, ..., len - 1.
        cost (tuple): Cost vector up to final arrival.
    """

    agent: int
    vertices: tuple
    cost: tuple

    @property
    def arrival(self):
        return len(self.vertices) - 1

    def at(self, t):
        """Vertex at time t; the agent stays parked at its last vertex after arrival."""
        if t >= len(self.vertices):
            return self.vertices[-1]
        return self.vertices[t]

@dataclass(frozen=True)
class JointPath:
    """
    One path per agent and their summed cost vector.

    Attributes:
        paths (tuple): Path objects ordered by agent index.
        cost (tuple): Component-wise sum of the path costs.
    """

    paths: tuple
    cost: tuple

@dataclass(frozen=True)
class InstanceConfig:
    """
    The on-disk description of an instance.

    Attributes:
        map_path (str): Map file path as written in the config (relative to base_dir).
        agents (tuple): ((start_row, start_col), (goal_row, goal_col)) per agent.
        objectives (int): Number of objectives M.
        seed (int): Seed of the cost profile (unsigned 64-bit).
        time_limit_s (float): High-level time limit in seconds.
        scen_path (str or None): Scenario file the agents were drawn from, if any.
        base_dir (str): Directory relative paths are resolved against; not compared.
    """

    map_path: str
    agents: tuple
    objectives: int
    seed: int
    time_limit_s: float
    scen_path: str = None
    base_dir: str = field(default=".", compare=False)

@dataclass(frozen=True)
class Instance:
    """
    A ready-to-solve instance: graph, agents with cost scales, and edge scales.

    Attributes:
        graph (Graph): The 4-connected workspace graph.
        agents (tuple): AgentSpec per agent.
        scales (EdgeScale): Per-edge scaling vectors.
        num_objectives (int): M.
        seed (int): Seed the cost profile was generated from.
        time_limit_s (float): High-level time limit in seconds.
        name (str): Label used in logs and result rows.
    """

    graph: Graph
    agents: tuple
    scales: EdgeScale
    num_objectives: int
    seed: int = 0
    time_limit_s: float = 300.0
    name: str = "instance"

@dataclass
class TrajectorySet:
    """
    Result of a single-agent multi-objective query.

    Attributes:
        status (SearchStatus): Outcome of the search.
        trajectories (list): Path objects with pairwise non-dominated, distinct costs, sorted lexicographically.
        expansions (int): Labels (or time-expanded states) expanded.
        generated (int): Successor labels generated.
        elapsed_s (float): Wall time of the query.
        horizon (int or None): Time horizon the search ran with, if any.
    """

    status: SearchStatus
    trajectories: list = field(default_factory=list)
    expansions: int = 0
    generated: int = 0
    elapsed_s: float = 0.0
    horizon: int = None

    def costs(self):
        return {path.cost for path in self.trajectories}

    def __len__(self):
        return len(self.trajectories)

import csv
import json
import os

from src.cost_profile import generate_cost_profile
from src.load_map import read_map, read_scen
from src.models import AgentSpec, Graph, Instance, InstanceConfig

REQUIRED_FIELDS = ("map", "agents", "objectives", "seed", "time_limit_s")

class SchemaError(ValueError):
    """
    Raised when an instance configuration is missing a field or holds an invalid value.

    Attributes:
        field (str): Name of the offending field.
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field

def _cell(value, field):
    if not isinstance(value, (list, tuple)) or len(value) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise SchemaError(field, f"expected [row, col], got {value!r}")
    return (value[0], value[1])

def _parse_agents(raw):
    if not isinstance(raw, list) or not raw:
        raise SchemaError("agents", "expected a non-empty list of {start, goal} objects")
    agents = []
    for index, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise SchemaError(f"agents[{index}]", "expected an object with 'start' and 'goal'")
        for key in ("start", "goal"):
            if key not in entry:
                raise SchemaError(f"agents[{index}].{key}", "missing field")
        agents.append((_cell(entry["start"], f"agents[{index}].start"), _cell(entry["goal"], f"agents[{index}].goal")))
    return tuple(agents)

def resolve(config, path):
    """Resolve a path written in a config against the config's directory."""
    if path is None or os.path.isabs(path):
        return path
    return os.path.join(config.base_dir, path)

def load_instance(filename):
    """
    Loads an instance configuration from a JSON file.

    Relative `map` and `scen` paths are resolved against the directory of the file.

    Args:
        filename (str): Path to the JSON file.

    Returns:
        InstanceConfig: The validated configuration.

    Raises:
        SchemaError: If a field is missing or invalid.
        FileNotFoundError: If the referenced map file does not exist.
    """
    with open(filename, 'r') as file:
        data = json.load(file)
    if not isinstance(data, dict):
        raise SchemaError("<root>", "expected a JSON object")

    for field in REQUIRED_FIELDS:
        if field not in data:
            raise SchemaError(field, "missing field")

    if not isinstance(data["map"], str) or not data["map"]:
        raise SchemaError("map", "expected a file path")
    objectives = data["objectives"]
    if not isinstance(objectives, int) or isinstance(objectives, bool) or objectives < 1:
        raise SchemaError("objectives", f"expected an integer >= 1, got {objectives!r}")
    seed = data["seed"]
    if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2 ** 64:
        raise SchemaError("seed", f"expected an unsigned 64-bit integer, got {seed!r}")
    time_limit = data["time_limit_s"]
    if not isinstance(time_limit, (int, float)) or isinstance(time_limit, bool) or time_limit <= 0:
        raise SchemaError("time_limit_s", f"expected a positive number, got {time_limit!r}")
    scen = data.get("scen")
    if scen is not None and not isinstance(scen, str):
        raise SchemaError("scen", "expected a file path")

    config = InstanceConfig(
        map_path=data["map"],
        agents=_parse_agents(data["agents"]),
        objectives=objectives,
        seed=seed,
        time_limit_s=float(time_limit),
        scen_path=scen,
        base_dir=os.path.dirname(os.path.abspath(filename)),
    )
    map_file = resolve(config, config.map_path)
    if not os.path.isfile(map_file):
        raise FileNotFoundError(f"map file not found: {map_file}")
    return config

def save_instance(filename, config):
    """
    Writes an instance configuration as JSON (sorted keys, two-space indent).

    Args:
        filename (str): Destination path.
        config (InstanceConfig): The configuration; paths are written as stored.
    """
    data = {
        "map": config.map_path,
        "agents": [{"start": list(start), "goal": list(goal)} for start, goal in config.agents],
        "objectives": config.objectives,
        "seed": config.seed,
        "time_limit_s": config.time_limit_s,
    }
    if config.scen_path is not None:
        data["scen"] = config.scen_path
    with open(filename, 'w', newline='\n') as file:
        json.dump(data, file, indent=2, sort_keys=True)
        file.write("\n")

def config_from_scen(map_path, scen_path, num_agents, objectives, seed, time_limit_s, base_dir="."):
    """
    Builds an InstanceConfig from the first `num_agents` entries of a scenario file.

    Args:
        map_path (str): Map file path (relative to base_dir unless absolute).
        scen_path (str): Scenario file path (relative to base_dir unless absolute).
        num_agents (int): Number of scenario entries to take, in file order.
        objectives (int): M.
        seed (int): Cost-profile seed.
        time_limit_s (float): High-level time limit.
        base_dir (str, optional): Directory relative paths are resolved against.

    Returns:
        InstanceConfig: The configuration.

    Raises:
        ValueError: If the scenario has fewer than `num_agents` entries.
    """
    config = InstanceConfig(map_path, (), objectives, seed, float(time_limit_s), scen_path, base_dir)
    grid_map = read_map(resolve(config, map_path))
    pairs = read_scen(resolve(config, scen_path), grid_map)
    if len(pairs) < num_agents:
        raise ValueError(f"scenario {scen_path} has {len(pairs)} entries, {num_agents} requested")

    def cell(node):
        return divmod(node, grid_map.width)

    agents = tuple((cell(start), cell(goal)) for start, goal in pairs[:num_agents])
    return InstanceConfig(map_path, agents, objectives, seed, float(time_limit_s), scen_path, base_dir)

def build_instance(config, grid_map=None):
    """
    Builds a solvable Instance: graph, agents and the seeded cost profile.

    Args:
        config (InstanceConfig): The configuration.
        grid_map (GridMap, optional): Already parsed map; read from config.map_path otherwise.

    Returns:
        Instance: The instance.

    Raises:
        SchemaError: If a start or goal is out of bounds or blocked, or starts or goals repeat.
    """
    if grid_map is None:
        grid_map = read_map(resolve(config, config.map_path))
    graph = Graph.from_grid(grid_map)

    nodes = []
    for index, (start, goal) in enumerate(config.agents):
        pair = []
        for key, (row, col) in (("start", start), ("goal", goal)):
            if not grid_map.in_bounds(row, col) or not grid_map.is_passable(row, col):
                raise SchemaError(f"agents[{index}].{key}", f"cell ({row}, {col}) is not a passable cell of the map")
            pair.append(grid_map.node_id(row, col))
        nodes.append(tuple(pair))
    if len({start for start, _ in nodes}) < len(nodes):
        raise SchemaError("agents", "starts must be distinct")
    if len({goal for _, goal in nodes}) < len(nodes):
        raise SchemaError("agents", "goals must be distinct")

    cost_scales, scales = generate_cost_profile(config.seed, config.objectives, len(nodes), graph)
    agents = tuple(AgentSpec(i, start, goal, cost_scales[i]) for i, (start, goal) in enumerate(nodes))
    name = os.path.splitext(os.path.basename(config.map_path))[0]
    return Instance(graph, agents, scales, config.objectives, config.seed, config.time_limit_s, name)

def _timed_vertices(path, graph):
    steps = []
    for t, v in enumerate(path.vertices):
        coord = graph.coord(v) if graph is not None else None
        steps.append([coord[0], coord[1], t] if coord is not None else [v, t])
    return steps

def save_solutions(filename, solutions, stats=None, metadata=None, graph=None):
    """
    Writes a solution set as JSON (sorted keys, two-space indent, LF endings).

    Args:
        filename (str): Destination path.
        solutions (sequence): JointPath objects.
        stats (RunStats, optional): Run statistics of the search.
        metadata (dict, optional): Extra fields, e.g. seed and backend.
        graph (Graph, optional): Used to write [row, col, t] steps; [node, t] otherwise.
    """
    data = {
        "metadata": dict(metadata or {}),
        "solutions": [
            {
                "cost": list(joint.cost),
                "paths": [
                    {"agent": path.agent, "cost": list(path.cost), "steps": _timed_vertices(path, graph)}
                    for path in joint.paths
                ],
            }
            for joint in solutions
        ],
    }
    if stats is not None:
        data["status"] = stats.status.value
        data["stats"] = stats.as_dict()
    with open(filename, 'w', newline='\n') as file:
        json.dump(data, file, indent=2, sort_keys=True)
        file.write("\n")

def save_results(filename, records, fieldnames):
    """
    Writes result rows as CSV (UTF-8, header row, LF line endings).

    Args:
        filename (str): Destination path.
        records (sequence): Dicts keyed by fieldnames, written in the given order.
        fieldnames (sequence): Column names.
    """
    with open(filename, 'w', newline='', encoding='utf-8') as file:
        writer = csv.DictWriter(file, fieldnames=list(fieldnames), lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(record)

def load_results(filename):
    """Reads CSV rows written by save_results as a list of dicts of strings."""
    with open(filename, 'r', newline='', encoding='utf-8') as file:
        return list(csv.DictReader(file))

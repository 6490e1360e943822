import numpy as np

from src.models import GridMap

PASSABLE = frozenset(".G")
BLOCKED = frozenset("@OTW")

class MapParseError(ValueError):
    """
    Raised on malformed MovingAI map or scenario text.

    Attributes:
        line (int): 1-based line number of the offending input line.
    """

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line

def _header_value(lines, index, key):
    if index >= len(lines):
        raise MapParseError(index + 1, f"missing '{key}' header")
    parts = lines[index].split()
    if len(parts) != 2 or parts[0] != key:
        raise MapParseError(index + 1, f"expected '{key} <n>', got {lines[index]!r}")
    try:
        value = int(parts[1])
    except ValueError:
        raise MapParseError(index + 1, f"'{key}' must be an integer, got {parts[1]!r}")
    if value <= 0:
        raise MapParseError(index + 1, f"'{key}' must be positive, got {value}")
    return value

def parse_map(text):
    """
    Parse a MovingAI grid map.

    Args:
        text (str): File contents: `type octile`, `height H`, `width W`, `map`, then H rows of W cells.

    Returns:
        GridMap: The parsed grid; `.` and `G` are passable, `@`, `O`, `T` and `W` are blocked.

    Raises:
        MapParseError: On a malformed header, ragged or missing rows, or an unknown cell character.
    """
    lines = text.splitlines()
    if not lines or lines[0].split() != ["type", "octile"]:
        raise MapParseError(1, "expected 'type octile'")
    height = _header_value(lines, 1, "height")
    width = _header_value(lines, 2, "width")
    if len(lines) < 4 or lines[3].strip() != "map":
        raise MapParseError(4, "expected 'map'")

    rows = []
    for offset in range(height):
        number = 5 + offset
        if 4 + offset >= len(lines):
            raise MapParseError(number, f"expected {height} map rows, got {offset}")
        row = lines[4 + offset].rstrip("\r")
        if len(row) != width:
            raise MapParseError(number, f"row has {len(row)} cells, expected {width}")
        for cell in row:
            if cell not in PASSABLE and cell not in BLOCKED:
                raise MapParseError(number, f"unknown cell character {cell!r}")
        rows.append(row)
    for extra in range(4 + height, len(lines)):
        if lines[extra].strip():
            raise MapParseError(extra + 1, "unexpected content after the last map row")

    cells = np.array([[cell in PASSABLE for cell in row] for row in rows], dtype=bool).reshape(height, width)
    return GridMap(height, width, cells, rows)

def serialize_map(grid_map):
    """Write a GridMap back in MovingAI format."""
    header = ["type octile", f"height {grid_map.height}", f"width {grid_map.width}", "map"]
    return "\n".join(header + list(grid_map.rows)) + "\n"

def _grid_node(grid_map, col, row, number, what):
    if not grid_map.in_bounds(row, col):
        raise MapParseError(number, f"{what} ({row}, {col}) is outside the {grid_map.height}x{grid_map.width} map")
    if not grid_map.is_passable(row, col):
        raise MapParseError(number, f"{what} ({row}, {col}) is a blocked cell")
    return grid_map.node_id(row, col)

def parse_scen(text, grid_map):
    """
    Parse a MovingAI scenario and map its entries onto a grid.

    Args:
        text (str): `version 1` header then tab-separated rows: bucket, map, width, height,
            start col, start row, goal col, goal row, optimal length.
        grid_map (GridMap): The map the scenario refers to.

    Returns:
        list: (start node, goal node) pairs in file order.

    Raises:
        MapParseError: On a version mismatch, malformed row, or an out-of-bounds or blocked cell.
    """
    lines = text.splitlines()
    if not lines:
        raise MapParseError(1, "missing 'version' header")
    version = lines[0].split()
    if len(version) != 2 or version[0] != "version" or version[1] not in ("1", "1.0"):
        raise MapParseError(1, f"unsupported scenario header {lines[0]!r}")

    pairs = []
    for index, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t") if "\t" in line else line.split()
        if len(fields) != 9:
            raise MapParseError(index, f"expected 9 fields, got {len(fields)}")
        try:
            start_col, start_row, goal_col, goal_row = (int(x) for x in fields[4:8])
        except ValueError:
            raise MapParseError(index, "coordinates must be integers")
        start = _grid_node(grid_map, start_col, start_row, index, "start")
        goal = _grid_node(grid_map, goal_col, goal_row, index, "goal")
        pairs.append((start, goal))
    return pairs

def read_map(path):
    with open(path, 'r') as file:
        return parse_map(file.read())

def read_scen(path, grid_map):
    with open(path, 'r') as file:
        return parse_scen(file.read(), grid_map)

import logging

import pytest

from tests.instances import grid_from_rows, map_text, obstacle_setup, scen_text

SMALL_ROWS = ["...", ".@.", "..."]

@pytest.fixture
def obstacle():
    return obstacle_setup()

@pytest.fixture
def small_files(tmp_path):
    """A 3x3 map with a blocked centre and a three-entry scenario, written to tmp_path."""
    grid = grid_from_rows(SMALL_ROWS)
    map_path = tmp_path / "small.map"
    scen_path = tmp_path / "small.scen"
    map_path.write_text(map_text(SMALL_ROWS))
    scen_path.write_text(scen_text("small.map", grid, [((0, 0), (2, 2)), ((2, 2), (0, 0)), ((0, 2), (2, 0))]))
    return map_path, scen_path

@pytest.fixture
def restore_logging():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
    root.handlers[:] = handlers
    root.setLevel(level)

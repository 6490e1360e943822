import json

import pytest

from src.load_json import (
    SchemaError, build_instance, config_from_scen, load_instance, load_results, save_instance, save_results,
    save_solutions,
)
from src.mocbs import solve
from src.models import InstanceConfig

def write_config(path, **overrides):
    data = {
        "map": "small.map",
        "agents": [{"start": [0, 0], "goal": [2, 2]}, {"start": [2, 2], "goal": [0, 0]}],
        "objectives": 2,
        "seed": 5,
        "time_limit_s": 30,
    }
    data.update(overrides)
    data = {key: value for key, value in data.items() if value is not None}
    path.write_text(json.dumps(data))
    return path

def test_load_and_build_instance(small_files):
    map_path, _ = small_files
    config = load_instance(write_config(map_path.parent / "instance.json"))
    assert config.agents == (((0, 0), (2, 2)), ((2, 2), (0, 0)))
    assert config.time_limit_s == 30.0
    instance = build_instance(config)
    assert instance.name == "small"
    assert [(a.start, a.goal) for a in instance.agents] == [(0, 8), (8, 0)]
    assert all(1 <= x <= 10 for a in instance.agents for x in a.cost_scale)
    assert build_instance(config).scales == instance.scales

def test_save_instance_round_trip(small_files, tmp_path):
    map_path, scen_path = small_files
    config = InstanceConfig("small.map", (((0, 0), (2, 2)),), 3, 9, 12.5, "small.scen", str(tmp_path))
    save_instance(tmp_path / "saved.json", config)
    assert load_instance(tmp_path / "saved.json") == config

@pytest.mark.parametrize("overrides, field", [
    ({"map": None}, "map"),
    ({"objectives": 0}, "objectives"),
    ({"objectives": True}, "objectives"),
    ({"seed": -1}, "seed"),
    ({"time_limit_s": 0}, "time_limit_s"),
    ({"agents": []}, "agents"),
    ({"agents": [{"start": [0, 0]}]}, "agents[0].goal"),
    ({"agents": [{"start": [0], "goal": [2, 2]}]}, "agents[0].start"),
    ({"scen": 3}, "scen"),
])
def test_schema_errors_name_the_field(small_files, overrides, field):
    map_path, _ = small_files
    with pytest.raises(SchemaError) as excinfo:
        load_instance(write_config(map_path.parent / "bad.json", **overrides))
    assert excinfo.value.field == field

def test_missing_map_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_instance(write_config(tmp_path / "instance.json", map="absent.map"))

@pytest.mark.parametrize("agents", [
    (((1, 1), (0, 0)),),
    (((0, 0), (5, 5)),),
    (((0, 0), (2, 2)), ((0, 0), (2, 0))),
    (((0, 0), (2, 2)), ((0, 2), (2, 2))),
])
def test_build_instance_rejects_bad_agents(small_files, agents):
    map_path, _ = small_files
    config = InstanceConfig("small.map", agents, 2, 0, 10.0, None, str(map_path.parent))
    with pytest.raises(SchemaError):
        build_instance(config)

def test_config_from_scen_takes_the_first_entries(small_files):
    map_path, scen_path = small_files
    config = config_from_scen(str(map_path), str(scen_path), 2, 2, 1, 10.0)
    assert config.agents == (((0, 0), (2, 2)), ((2, 2), (0, 0)))
    with pytest.raises(ValueError):
        config_from_scen(str(map_path), str(scen_path), 4, 2, 1, 10.0)

def test_save_solutions(small_files, tmp_path):
    map_path, scen_path = small_files
    instance = build_instance(config_from_scen(str(map_path), str(scen_path), 2, 2, 3, 10.0))
    solutions, stats = solve(instance, "sipp")
    out = tmp_path / "solutions.json"
    save_solutions(out, solutions.joint_paths(), stats, {"seed": 3}, instance.graph)
    data = json.loads(out.read_text())
    assert data["status"] == "completed"
    assert data["metadata"] == {"seed": 3}
    assert data["stats"]["init_calls"] == 2
    assert len(data["solutions"]) == len(solutions)
    first = data["solutions"][0]["paths"][0]
    assert first["steps"][0] == [0, 0, 0]
    assert first["steps"][-1][:2] == [2, 2]
    assert out.read_bytes().endswith(b"}\n")

def test_results_csv(tmp_path):
    out = tmp_path / "rows.csv"
    save_results(out, [{"a": 1, "b": "x"}, {"a": 2}], ("a", "b"))
    assert out.read_bytes() == b"a,b\n1,x\n2,\n"
    assert load_results(out) == [{"a": "1", "b": "x"}, {"a": "2", "b": ""}]

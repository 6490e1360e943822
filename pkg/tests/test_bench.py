from src.bench import (
    LOWLEVEL_FIELDS, SCHEMA_VERSION, SUCCESS_FIELDS, TIMING_FIELDS, aggregate_lowlevel, bench_lowlevel, bench_success,
    oracle_check, run_lowlevel_cell,
)
from src.load_json import load_results, save_results

def without_timings(rows):
    return [{key: value for key, value in row.items() if key not in TIMING_FIELDS} for row in rows]

def test_lowlevel_sweep(small_files, tmp_path):
    map_path, scen_path = small_files
    rows = bench_lowlevel(str(map_path), str(scen_path), [1, 2], [0, 1], num_agents=2, time_limit_s=60.0)
    instances = [row for row in rows if row["row"] == "instance"]
    aggregates = [row for row in rows if row["row"] == "aggregate"]
    assert len(instances) == 8
    assert len(aggregates) == 4
    assert all(row["schema_version"] == SCHEMA_VERSION for row in rows)
    assert all(row["status"] == "completed" and row["init_calls"] == 2 for row in instances)
    for m in (1, 2):
        for seed in (0, 1):
            counts = {row["backend"]: row["solutions"] for row in instances if row["M"] == m and row["seed"] == seed}
            assert counts["tx"] == counts["sipp"]
    assert {(row["M"], row["backend"]) for row in aggregates} == {(1, "tx"), (1, "sipp"), (2, "tx"), (2, "sipp")}
    assert all(row["instances"] == 2 and row["t_map_s"] > 0 for row in aggregates)

    out = tmp_path / "lowlevel.csv"
    save_results(out, rows, LOWLEVEL_FIELDS)
    loaded = load_results(out)
    assert list(loaded[0]) == list(LOWLEVEL_FIELDS)
    assert len(loaded) == len(rows)

def test_parallel_sweep_matches_sequential(small_files):
    map_path, scen_path = small_files
    sequential = bench_lowlevel(str(map_path), str(scen_path), [2], [0, 1, 2], time_limit_s=60.0, workers=1)
    parallel = bench_lowlevel(str(map_path), str(scen_path), [2], [0, 1, 2], time_limit_s=60.0, workers=2)
    assert without_timings(parallel) == without_timings(sequential)

def test_empty_scenario_gives_a_header_only_csv(small_files, tmp_path):
    map_path, _ = small_files
    empty = tmp_path / "empty.scen"
    empty.write_text("version 1\n")
    rows = bench_lowlevel(str(map_path), str(empty), [1, 2, 3], [0])
    assert rows == []
    out = tmp_path / "empty.csv"
    save_results(out, rows, LOWLEVEL_FIELDS)
    assert out.read_text() == ",".join(LOWLEVEL_FIELDS) + "\n"

def test_failed_cell_becomes_error_rows(small_files):
    map_path, scen_path = small_files
    cell = {"map": str(map_path), "scen": str(scen_path), "agents": 2, "objectives": 0, "seed": 0, "time_limit_s": 5.0}
    rows = run_lowlevel_cell(cell)
    assert [row["backend"] for row in rows] == ["tx", "sipp"]
    assert all(row["status"] == "error" and "ValueError" in row["error"] for row in rows)
    assert aggregate_lowlevel(rows) == []

def test_success_sweep(small_files, tmp_path):
    map_path, scen_path = small_files
    rows = bench_success(str(map_path), str(scen_path), [1, 2, 5], [0], objectives=2, time_limit_s=60.0)
    instances = [row for row in rows if row["row"] == "instance"]
    aggregates = [row for row in rows if row["row"] == "aggregate"]
    assert sorted({row["N"] for row in instances}) == [1, 2]
    assert len(instances) == 4
    assert len(aggregates) == 8
    assert {row["metric"] for row in aggregates} == {"completed", "found_solution"}
    assert all(row["success_rate"] == 1.0 for row in aggregates)
    assert all(row["time_to_first_solution_s"] != "" for row in instances)

    out = tmp_path / "success.csv"
    save_results(out, rows, SUCCESS_FIELDS)
    assert list(load_results(out)[0]) == list(SUCCESS_FIELDS)

def test_oracle_check_agrees(small_files):
    map_path, scen_path = small_files
    rows = oracle_check(str(map_path), str(scen_path), 2, 2, [0], horizon=6)
    assert len(rows) == 7
    assert all(row["agree"] == 1 for row in rows)
    assert {row["check"] for row in rows} == {"value_iteration", "sipp", "tx", "mocbs"}

def test_oracle_check_refuses_over_budget(small_files):
    map_path, scen_path = small_files
    [row] = oracle_check(str(map_path), str(scen_path), 1, 2, [0], horizon=6, budget=3)
    assert row["check"] == "refused"
    assert row["agree"] == ""

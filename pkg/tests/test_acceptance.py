"""
Large seeded sweeps: oracle equivalence of both planners and of the high-level search,
the scalar degenerate case, and the low-level speedup and success rates on room maps. Run with `pytest -m slow`.
"""
import numpy as np
import pytest

from src.bench import bench_lowlevel, bench_success
from src.cost_profile import generate_cost_profile
from src.intervals import ConstraintSet
from src.mocbs import solve
from src.models import AgentSpec, Graph
from src.mosipp import plan
from src.namoa_tx import plan_tx
from src.oracle import OracleBudgetExceeded, enumerate_joint_pareto, enumerate_single_pareto, scalar_optimum
from src.search_status import Backend
from tests.instances import grid_from_rows, map_text, random_constraints, random_instance, room_map_rows, scen_text

pytestmark = pytest.mark.slow

SHAPES = ((3, 3), (3, 4), (4, 4))
SINGLE_BUDGET = 300_000

def single_agent_cases(count):
    """Yield (instance, constraints, horizon, oracle costs) for seeds the oracle accepts."""
    accepted = 0
    seed = 0
    while accepted < count:
        height, width = SHAPES[seed % len(SHAPES)]
        instance = random_instance(10_000 + seed, height, width, num_objectives=2 + seed % 2)
        agent = instance.agents[0]
        cs = random_constraints(seed, instance.graph, agent.start, count=height * width // 2, max_t=8)
        horizon = 6 + seed % 4
        seed += 1
        try:
            expected = enumerate_single_pareto(instance.graph, agent, instance.scales, cs, horizon, SINGLE_BUDGET).costs()
        except OracleBudgetExceeded:
            continue
        accepted += 1
        yield instance, cs, horizon, expected
    assert seed < 4 * count

def test_safe_interval_planner_matches_oracle_and_baseline():
    for instance, cs, horizon, expected in single_agent_cases(200):
        agent = instance.agents[0]
        sipp = plan(instance.graph, agent, instance.scales, cs, horizon=horizon)
        reverse = plan(instance.graph, agent, instance.scales, cs, order="reverse_lex", horizon=horizon)
        tx = plan_tx(instance.graph, agent, instance.scales, cs, horizon=horizon)
        tx_reverse = plan_tx(instance.graph, agent, instance.scales, cs, order="reverse_lex", horizon=horizon)
        assert sipp.costs() == expected, instance.name
        assert reverse.costs() == expected, instance.name
        assert tx.costs() == expected, instance.name
        assert tx_reverse.costs() == expected, instance.name

def test_pruning_never_loses_solutions():
    for instance, cs, horizon, expected in single_agent_cases(60):
        agent = instance.agents[0]
        unpruned = plan(instance.graph, agent, instance.scales, cs, prune=False, horizon=horizon)
        assert unpruned.costs() == plan(instance.graph, agent, instance.scales, cs, horizon=horizon).costs()
        assert unpruned.costs() == expected

def test_high_level_search_matches_joint_oracle():
    checked = 0
    seed = 0
    while checked < 100:
        num_agents = 3 if seed % 5 == 4 else 2
        height, width = ((3, 3), (3, 4))[seed % 2]
        instance = random_instance(20_000 + seed, height, width, num_agents=num_agents, obstacle_ratio=0.1)
        horizon = 6 + seed % 3
        seed += 1
        try:
            expected = {jp.cost for jp in enumerate_joint_pareto(instance, horizon)}
        except OracleBudgetExceeded:
            continue
        tx, tx_stats = solve(instance, Backend.TX, horizon=horizon)
        sipp, sipp_stats = solve(instance, Backend.SIPP, horizon=horizon)
        assert tx_stats.status.exhausted and sipp_stats.status.exhausted, instance.name
        assert tx.costs() == expected, instance.name
        assert sipp.costs() == expected, instance.name
        checked += 1
    assert seed < 400

def test_backends_agree_without_a_horizon():
    for seed in range(50):
        instance = random_instance(30_000 + seed, 4, 4, num_agents=2, obstacle_ratio=0.1)
        tx, tx_stats = solve(instance, Backend.TX, time_limit=120.0)
        sipp, sipp_stats = solve(instance, Backend.SIPP, time_limit=120.0)
        assert tx_stats.status.exhausted and sipp_stats.status.exhausted, instance.name
        assert tx.costs() == sipp.costs(), instance.name

def _room_files(tmp_path, seed, pairs_needed):
    rows = room_map_rows(32, 8, seed)
    grid = grid_from_rows(rows)
    rng = np.random.default_rng(seed)
    free = [(r, c) for r in range(grid.height) for c in range(grid.width) if grid.is_passable(r, c)]
    chosen = rng.choice(len(free), size=2 * pairs_needed, replace=False)
    pairs = [(free[chosen[2 * i]], free[chosen[2 * i + 1]]) for i in range(pairs_needed)]
    map_path = tmp_path / f"room-{seed}.map"
    scen_path = tmp_path / f"room-{seed}.scen"
    map_path.write_text(map_text(rows))
    scen_path.write_text(scen_text(map_path.name, grid, pairs))
    return str(map_path), str(scen_path)

def test_room_map_low_level_speedup(tmp_path):
    map_path, scen_path = _room_files(tmp_path, 0, 2)
    rows = bench_lowlevel(map_path, scen_path, [1, 2, 3], list(range(10)), num_agents=2, time_limit_s=300.0)
    aggregates = {(row["M"], row["backend"]): row["t_map_s"] for row in rows if row["row"] == "aggregate"}
    for m in (1, 2, 3):
        ratio = aggregates[(m, "tx")] / aggregates[(m, "sipp")]
        print(f"M={m}: time-augmented / safe-interval mean call time = {ratio:.1f}")
        assert aggregates[(m, "sipp")] <= 0.5 * aggregates[(m, "tx")]

def test_room_map_baseline_expands_more():
    grid = grid_from_rows(room_map_rows(32, 8, 1))
    graph = Graph.from_grid(grid)
    start, goal = grid.node_id(0, 0), grid.node_id(7, 7)
    cost_scales, scales = generate_cost_profile(5, 2, 1, graph)
    agent = AgentSpec(0, start, goal, cost_scales[0])
    cs = ConstraintSet([(grid.node_id(0, 3), 3), (grid.node_id(1, 2), 3), (goal, 20)])
    sipp = plan(graph, agent, scales, cs)
    tx = plan_tx(graph, agent, scales, cs)
    assert sipp.costs() == tx.costs()
    assert tx.expansions >= sipp.expansions

def test_success_rate_of_safe_interval_backend_is_never_lower(tmp_path):
    map_path, scen_path = _room_files(tmp_path, 2, 6)
    rows = bench_success(map_path, scen_path, [2, 4, 6], list(range(5)), objectives=2, time_limit_s=20.0)
    rates = {(row["N"], row["backend"], row["metric"]): row["success_rate"] for row in rows if row["row"] == "aggregate"}
    for n in (2, 4, 6):
        for metric in ("completed", "found_solution"):
            assert rates[(n, "sipp", metric)] >= rates[(n, "tx", metric)], (n, metric)

def test_scalar_costs_give_the_dijkstra_optimum():
    checked = 0
    for seed in range(200):
        instance = random_instance(40_000 + seed, *SHAPES[seed % len(SHAPES)], num_objectives=1)
        agent = instance.agents[0]
        cs = random_constraints(seed, instance.graph, agent.start, count=6, max_t=10)
        optimum = scalar_optimum(instance.graph, agent, instance.scales, cs)
        if optimum is None:
            continue
        result = plan(instance.graph, agent, instance.scales, cs)
        assert [path.cost for path in result.trajectories] == [(optimum,)], instance.name
        checked += 1
    assert checked >= 100

"""
Benchmark sweeps: low-level timing comparison, success rates and oracle checks.

Every sweep is split into cells (one instance each). Both backends of a cell run
sequentially in one process; cells run in a process pool when workers > 1.
Rows are sorted by key before they are returned, so output order never depends
on scheduling.
"""
from concurrent.futures import ProcessPoolExecutor
import logging
import os

import src.custom_logger
from src.helpers import precompile_numba_functions
from src.intervals import ConstraintSet
from src.load_json import build_instance, config_from_scen
from src.load_map import read_map, read_scen
from src.mocbs import cross_validate, solve
from src.mosipp import plan
from src.namoa_tx import plan_tx
from src.oracle import DEFAULT_BUDGET, OracleBudgetExceeded, enumerate_single_pareto, pareto_value_iteration
from src.search_status import Backend

SCHEMA_VERSION = 1

LOWLEVEL_FIELDS = (
    "schema_version", "row", "map", "scen", "M", "N", "seed", "backend", "status", "solutions",
    "calls", "init_calls", "replan_calls", "mean_init_call_time_s", "mean_replan_call_time_s",
    "t_instance_s", "instances", "t_map_s", "error",
)

SUCCESS_FIELDS = (
    "schema_version", "row", "map", "scen", "M", "N", "seed", "backend", "status", "completed",
    "found_solution", "time_to_first_solution_s", "expansions", "solutions", "elapsed_s",
    "metric", "instances", "successes", "success_rate", "error",
)

ORACLE_FIELDS = (
    "schema_version", "map", "scen", "M", "N", "seed", "horizon", "subject", "check", "agree", "detail",
)

TIMING_FIELDS = frozenset((
    "mean_init_call_time_s", "mean_replan_call_time_s", "t_instance_s", "t_map_s",
    "time_to_first_solution_s", "elapsed_s",
))

BACKENDS = (Backend.TX, Backend.SIPP)

def _map_name(map_path):
    return os.path.splitext(os.path.basename(map_path))[0]

def _scen_entries(map_path, scen_path):
    return len(read_scen(scen_path, read_map(map_path)))

def _instance(map_path, scen_path, num_agents, objectives, seed, time_limit_s):
    config = config_from_scen(
        os.path.abspath(map_path), os.path.abspath(scen_path), num_agents, objectives, seed, time_limit_s
    )
    return build_instance(config)

def _warm_up(instance):
    agent = instance.agents[0]
    plan(instance.graph, agent, instance.scales, ConstraintSet())
    plan_tx(instance.graph, agent, instance.scales, ConstraintSet())

def init_worker():
    """Warm up compiled kernels in a fresh worker process."""
    precompile_numba_functions()

def _run_cells(function, cells, workers):
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=init_worker) as executor:
            results = list(executor.map(function, cells))
    else:
        results = [function(cell) for cell in cells]
    return [row for rows in results for row in rows]

def _base_row(cell, backend):
    return {
        "schema_version": SCHEMA_VERSION,
        "row": "instance",
        "map": _map_name(cell["map"]),
        "scen": os.path.basename(cell["scen"]),
        "M": cell["objectives"],
        "N": cell["agents"],
        "seed": cell["seed"],
        "backend": backend.value,
    }

def _error_rows(cell, error):
    logging.error(f"{_map_name(cell['map'])} seed {cell['seed']}: {error}")
    rows = []
    for backend in BACKENDS:
        row = _base_row(cell, backend)
        row.update({"status": "error", "error": f"{type(error).__name__}: {error}"})
        rows.append(row)
    return rows

def _solve_both(cell):
    """Run the cell's instance with both backends; returns [(backend, solutions, stats)]."""
    instance = _instance(cell["map"], cell["scen"], cell["agents"], cell["objectives"], cell["seed"], cell["time_limit_s"])
    _warm_up(instance)
    runs = []
    for backend in BACKENDS:
        solutions, stats = solve(instance, backend, time_limit=cell["time_limit_s"], horizon=cell.get("horizon"), max_horizon=cell.get("max_horizon", 4096))
        runs.append((backend, solutions, stats))

    (_, tx_solutions, tx_stats), (_, sipp_solutions, sipp_stats) = runs
    if tx_stats.status.exhausted and sipp_stats.status.exhausted:
        if tx_solutions.costs() == sipp_solutions.costs():
            logging.getLogger().custom(f"{instance.name} seed {cell['seed']}: backends agree on {len(tx_solutions)} joint costs")
        else:
            logging.error(
                f"{instance.name} seed {cell['seed']}: backends disagree; "
                f"tx only {sorted(tx_solutions.costs() - sipp_solutions.costs())}, "
                f"sipp only {sorted(sipp_solutions.costs() - tx_solutions.costs())}"
            )
    return runs

def run_lowlevel_cell(cell):
    """Solve one instance with both backends and report the low-level call timings."""
    try:
        runs = _solve_both(cell)
    except Exception as error:
        return _error_rows(cell, error)

    rows = []
    for backend, solutions, stats in runs:
        row = _base_row(cell, backend)
        row.update({
            "status": stats.status.value,
            "solutions": len(solutions),
            "calls": stats.calls,
            "init_calls": stats.init_calls,
            "replan_calls": stats.replan_calls,
            "mean_init_call_time_s": stats.mean_init_call_time_s,
            "mean_replan_call_time_s": stats.mean_replan_call_time_s,
            "t_instance_s": stats.mean_call_time_s,
        })
        rows.append(row)
    return rows

def run_success_cell(cell):
    """Solve one instance with both backends and report the two success metrics."""
    try:
        runs = _solve_both(cell)
    except Exception as error:
        return _error_rows(cell, error)

    rows = []
    for backend, solutions, stats in runs:
        row = _base_row(cell, backend)
        row.update({
            "status": stats.status.value,
            "completed": int(stats.status.exhausted),
            "found_solution": int(len(solutions) > 0),
            "time_to_first_solution_s": stats.first_solution_s if stats.first_solution_s is not None else "",
            "expansions": stats.expansions,
            "solutions": len(solutions),
            "elapsed_s": stats.elapsed_s,
        })
        rows.append(row)
    return rows

def _instance_key(row):
    return (row["map"], row["M"], row["N"], row["seed"], row["backend"])

def aggregate_lowlevel(rows):
    """
    Average t_instance over the instances of each (map, M, backend).

    Args:
        rows (list): Instance rows of a low-level sweep.

    Returns:
        list: One aggregate row per group with at least one timed instance.
    """
    groups = {}
    for row in sorted(rows, key=_instance_key):
        if row.get("error") or not row.get("calls"):
            continue
        groups.setdefault((row["map"], row["scen"], row["M"], row["N"], row["backend"]), []).append(row["t_instance_s"])

    aggregates = []
    for (map_name, scen, m, n, backend), values in sorted(groups.items()):
        aggregates.append({
            "schema_version": SCHEMA_VERSION,
            "row": "aggregate",
            "map": map_name,
            "scen": scen,
            "M": m,
            "N": n,
            "backend": backend,
            "instances": len(values),
            "t_map_s": sum(values) / len(values),
        })
    return aggregates

def aggregate_success(rows):
    """
    Success rates of both metrics for each (N, backend).

    Args:
        rows (list): Instance rows of a success sweep.

    Returns:
        list: Aggregate rows, one per (N, backend, metric).
    """
    groups = {}
    for row in sorted(rows, key=_instance_key):
        groups.setdefault((row["map"], row["scen"], row["M"], row["N"], row["backend"]), []).append(row)

    aggregates = []
    for (map_name, scen, m, n, backend), members in sorted(groups.items()):
        for metric in ("completed", "found_solution"):
            successes = sum(int(row.get(metric) or 0) for row in members)
            aggregates.append({
                "schema_version": SCHEMA_VERSION,
                "row": "aggregate",
                "map": map_name,
                "scen": scen,
                "M": m,
                "N": n,
                "backend": backend,
                "metric": metric,
                "instances": len(members),
                "successes": successes,
                "success_rate": successes / len(members),
            })
    return aggregates

def _cells(map_path, scen_path, agent_counts, objectives_list, seeds, time_limit_s, horizon, max_horizon):
    available = _scen_entries(map_path, scen_path)
    cells = []
    for n in agent_counts:
        if n > available:
            logging.getLogger().custom(f"{_map_name(map_path)}: skipping N={n}, the scenario has {available} entries")
            continue
        for m in objectives_list:
            for seed in seeds:
                cells.append({
                    "map": map_path, "scen": scen_path, "agents": n, "objectives": m, "seed": seed,
                    "time_limit_s": time_limit_s, "horizon": horizon, "max_horizon": max_horizon,
                })
    return cells

def bench_lowlevel(map_path, scen_path, objectives_list, seeds, num_agents=2, time_limit_s=300.0, workers=1, horizon=None, max_horizon=4096):
    """
    Compare the average low-level call time of both backends.

    Args:
        map_path (str): MovingAI map file.
        scen_path (str): MovingAI scenario file; the first `num_agents` entries are used.
        objectives_list (sequence): Values of M to sweep.
        seeds (sequence): Cost-profile seeds, one instance each.
        num_agents (int, optional): N. Defaults to 2.
        time_limit_s (float, optional): High-level time limit per run. Defaults to 300.
        workers (int, optional): Process-pool size. Defaults to 1.
        horizon (int, optional): Bound on final arrivals.
        max_horizon (int, optional): Horizon cap of the time-augmented planner.

    Returns:
        list: Instance rows sorted by key, then aggregate rows.
    """
    cells = _cells(map_path, scen_path, [num_agents], objectives_list, seeds, time_limit_s, horizon, max_horizon)
    logging.getLogger().custom(f"bench-lowlevel: {len(cells)} instances on {_map_name(map_path)}")
    rows = sorted(_run_cells(run_lowlevel_cell, cells, workers), key=_instance_key)
    return rows + aggregate_lowlevel(rows)

def bench_success(map_path, scen_path, agent_counts, seeds, objectives=2, time_limit_s=300.0, workers=1, horizon=None, max_horizon=4096):
    """
    Measure the success rates of both backends as the number of agents grows.

    Args:
        map_path (str): MovingAI map file.
        scen_path (str): MovingAI scenario file; the first N entries are used.
        agent_counts (sequence): Values of N to sweep.
        seeds (sequence): Cost-profile seeds, one instance each.
        objectives (int, optional): M. Defaults to 2.
        time_limit_s (float, optional): High-level time limit per run. Defaults to 300.
        workers (int, optional): Process-pool size. Defaults to 1.
        horizon (int, optional): Bound on final arrivals.
        max_horizon (int, optional): Horizon cap of the time-augmented planner.

    Returns:
        list: Instance rows sorted by key, then aggregate rows.
    """
    cells = _cells(map_path, scen_path, agent_counts, [objectives], seeds, time_limit_s, horizon, max_horizon)
    logging.getLogger().custom(f"bench-success: {len(cells)} instances on {_map_name(map_path)}")
    rows = sorted(_run_cells(run_success_cell, cells, workers), key=_instance_key)
    return rows + aggregate_success(rows)

def _cost_check(subject, check, expected, actual):
    agree = expected == actual
    detail = "" if agree else f"missing {sorted(expected - actual)} extra {sorted(actual - expected)}"
    return {"subject": subject, "check": check, "agree": int(agree), "detail": detail}

def run_oracle_cell(cell):
    """Compare both planners and both high-level backends against the oracles on one instance."""
    base = {
        "schema_version": SCHEMA_VERSION,
        "map": _map_name(cell["map"]),
        "scen": os.path.basename(cell["scen"]),
        "M": cell["objectives"],
        "N": cell["agents"],
        "seed": cell["seed"],
        "horizon": cell["horizon"],
    }
    horizon = cell["horizon"]
    budget = cell["budget"]
    checks = []
    try:
        instance = _instance(cell["map"], cell["scen"], cell["agents"], cell["objectives"], cell["seed"], cell["time_limit_s"])
        for agent in instance.agents:
            subject = f"agent {agent.id}"
            reference = enumerate_single_pareto(instance.graph, agent, instance.scales, horizon=horizon, budget=budget).costs()
            second = set(pareto_value_iteration(instance.graph, agent, instance.scales, horizon=horizon, budget=budget))
            sipp = plan(instance.graph, agent, instance.scales, horizon=horizon).costs()
            tx = plan_tx(instance.graph, agent, instance.scales, horizon=horizon).costs()
            checks.append(_cost_check(subject, "value_iteration", reference, second))
            checks.append(_cost_check(subject, "sipp", reference, sipp))
            checks.append(_cost_check(subject, "tx", reference, tx))
        agree = cross_validate(instance, horizon, budget=budget)
        checks.append({"subject": "joint", "check": "mocbs", "agree": int(agree), "detail": "" if agree else "see log"})
    except OracleBudgetExceeded as error:
        checks.append({"subject": "instance", "check": "refused", "agree": "", "detail": str(error)})
    except Exception as error:
        logging.error(f"oracle-check {base['map']} seed {cell['seed']}: {error}")
        checks.append({"subject": "instance", "check": "error", "agree": 0, "detail": f"{type(error).__name__}: {error}"})

    for check in checks:
        if check["agree"] == 0:
            logging.error(f"oracle-check {base['map']} seed {cell['seed']} {check['subject']} {check['check']}: {check['detail']}")
    return [{**base, **check} for check in checks]

def oracle_check(map_path, scen_path, num_agents, objectives, seeds, horizon, budget=DEFAULT_BUDGET, time_limit_s=300.0, workers=1):
    """
    Certify both planners and both high-level backends against the brute-force oracles.

    Args:
        map_path (str): A small MovingAI map.
        scen_path (str): Scenario file; the first `num_agents` entries are used.
        num_agents (int): N.
        objectives (int): M.
        seeds (sequence): Cost-profile seeds, one instance each.
        horizon (int): Bound on final arrivals shared by every run.
        budget (int, optional): Oracle budget.
        time_limit_s (float, optional): High-level time limit per run.
        workers (int, optional): Process-pool size.

    Returns:
        list: One row per check, sorted by (seed, subject, check).
    """
    cells = [
        {
            "map": map_path, "scen": scen_path, "agents": num_agents, "objectives": objectives, "seed": seed,
            "horizon": horizon, "budget": budget, "time_limit_s": time_limit_s,
        }
        for seed in seeds
    ]
    rows = _run_cells(run_oracle_cell, cells, workers)
    return sorted(rows, key=lambda row: (row["seed"], row["subject"], row["check"]))

import argparse
import logging
import os
import sys

from src.bench import LOWLEVEL_FIELDS, ORACLE_FIELDS, SUCCESS_FIELDS, bench_lowlevel, bench_success, oracle_check
from src.custom_logger import init_custom_logger
from src.helpers import parse_int_list, precompile_numba_functions
from src.load_env import load_env_file
from src.load_json import build_instance, config_from_scen, load_instance, save_results, save_solutions
from src.mocbs import solve
from src.search_status import Backend, SearchStatus

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_TIMEOUT = 2

def build_parser():
    """
    Builds the command-line parser with the solve, bench-lowlevel, bench-success and oracle-check subcommands.

    Returns:
        argparse.ArgumentParser: The parser.
    """
    parser = argparse.ArgumentParser(prog="app.py", description="Multi-objective multi-agent path finding solver and benchmarks.")
    commands = parser.add_subparsers(dest="command", required=True)

    solve_parser = commands.add_parser("solve", help="solve one instance and write its Pareto set as JSON")
    solve_parser.add_argument("--config", help="instance JSON file")
    solve_parser.add_argument("--map", help="MovingAI map file (instead of --config)")
    solve_parser.add_argument("--scen", help="MovingAI scenario file (instead of --config)")
    solve_parser.add_argument("--agents", type=int, default=2, help="number of scenario entries to use")
    solve_parser.add_argument("--objectives", type=int, default=2)
    solve_parser.add_argument("--seed", type=int, default=0)
    solve_parser.add_argument("--backend", choices=[b.value for b in Backend], default=Backend.SIPP.value)
    solve_parser.add_argument("--time-limit-s", type=float)
    solve_parser.add_argument("--horizon", type=int, help="bound every agent's final arrival")
    solve_parser.add_argument("--order", choices=["lex", "reverse_lex"], default="lex")
    solve_parser.add_argument("--out", required=True)

    lowlevel = commands.add_parser("bench-lowlevel", help="compare average low-level call time of both backends")
    lowlevel.add_argument("--map", required=True)
    lowlevel.add_argument("--scen", required=True)
    lowlevel.add_argument("--agents", type=int, default=2)
    lowlevel.add_argument("--objectives", default="1,2,3", help="list of M, e.g. 1,2,3 or 1-3")
    lowlevel.add_argument("--seeds", default="0-9")
    lowlevel.add_argument("--time-limit-s", type=float)
    lowlevel.add_argument("--horizon", type=int)
    lowlevel.add_argument("--workers", type=int)
    lowlevel.add_argument("--out", required=True)

    success = commands.add_parser("bench-success", help="success rates of both backends as N grows")
    success.add_argument("--map", required=True)
    success.add_argument("--scen", required=True)
    success.add_argument("--agents", default="2-10", help="list of N, e.g. 2,4,8 or 2-10")
    success.add_argument("--objectives", type=int, default=2)
    success.add_argument("--seeds", default="0-9")
    success.add_argument("--time-limit-s", type=float)
    success.add_argument("--horizon", type=int)
    success.add_argument("--workers", type=int)
    success.add_argument("--out", required=True)

    check = commands.add_parser("oracle-check", help="certify planners and backends against brute-force oracles")
    check.add_argument("--map", required=True)
    check.add_argument("--scen", required=True)
    check.add_argument("--agents", type=int, default=2)
    check.add_argument("--objectives", type=int, default=2)
    check.add_argument("--seeds", default="0-9")
    check.add_argument("--horizon", type=int, default=10)
    check.add_argument("--time-limit-s", type=float)
    check.add_argument("--workers", type=int)
    check.add_argument("--out", required=True)
    return parser

def _given(value, default):
    return default if value is None else value

def cmd_solve(args, config):
    """
    Solves one instance and writes the solution JSON.

    Returns:
        int: 0 when the search completed (feasible or not), 2 on time-limit partial results.
    """
    if args.config:
        instance_config = load_instance(args.config)
    elif args.map and args.scen:
        instance_config = config_from_scen(
            os.path.abspath(args.map), os.path.abspath(args.scen), args.agents, args.objectives, args.seed,
            _given(args.time_limit_s, config["TIME_LIMIT_S"]),
        )
    else:
        raise ValueError("solve needs --config, or --map together with --scen")

    time_limit = _given(args.time_limit_s, instance_config.time_limit_s)
    instance = build_instance(instance_config)
    solutions, stats = solve(
        instance, args.backend, time_limit=time_limit, horizon=args.horizon, order=args.order,
        max_horizon=config["MAX_HORIZON"],
    )
    metadata = {
        "map": instance_config.map_path,
        "scen": instance_config.scen_path,
        "scenario_selection": "first N entries" if instance_config.scen_path else None,
        "agents": len(instance.agents),
        "objectives": instance.num_objectives,
        "seed": instance.seed,
        "backend": stats.backend,
        "order": args.order,
        "horizon": args.horizon,
        "time_limit_s": time_limit,
    }
    save_solutions(args.out, solutions.joint_paths(), stats, metadata, instance.graph)

    if stats.status is SearchStatus.TIMEOUT:
        print(f"time limit reached: {len(solutions)} solutions written to {args.out}", file=sys.stderr)
        return EXIT_TIMEOUT
    if stats.status is SearchStatus.HORIZON_TOO_SMALL:
        raise RuntimeError(f"time horizon cap {config['MAX_HORIZON']} too small; raise MOMAPF_MAX_HORIZON")
    return EXIT_OK

def cmd_bench_lowlevel(args, config):
    rows = bench_lowlevel(
        args.map, args.scen, parse_int_list(args.objectives), parse_int_list(args.seeds), args.agents,
        _given(args.time_limit_s, config["TIME_LIMIT_S"]), _given(args.workers, config["WORKERS"]), args.horizon, config["MAX_HORIZON"],
    )
    save_results(args.out, rows, LOWLEVEL_FIELDS)
    return EXIT_OK

def cmd_bench_success(args, config):
    rows = bench_success(
        args.map, args.scen, parse_int_list(args.agents), parse_int_list(args.seeds), args.objectives,
        _given(args.time_limit_s, config["TIME_LIMIT_S"]), _given(args.workers, config["WORKERS"]), args.horizon, config["MAX_HORIZON"],
    )
    save_results(args.out, rows, SUCCESS_FIELDS)
    return EXIT_OK

def cmd_oracle_check(args, config):
    """Runs the oracle checks; returns 1 if any check disagrees."""
    rows = oracle_check(
        args.map, args.scen, args.agents, args.objectives, parse_int_list(args.seeds), args.horizon,
        config["ORACLE_BUDGET"], _given(args.time_limit_s, config["TIME_LIMIT_S"]), _given(args.workers, config["WORKERS"]),
    )
    save_results(args.out, rows, ORACLE_FIELDS)
    failed = [row for row in rows if row["agree"] == 0]
    if failed:
        print(f"{len(failed)} oracle checks disagree; see {args.out}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK

COMMANDS = {
    "solve": cmd_solve,
    "bench-lowlevel": cmd_bench_lowlevel,
    "bench-success": cmd_bench_success,
    "oracle-check": cmd_oracle_check,
}

def main(argv=None):
    """
    Entry point: parses arguments, initializes logging and runs one subcommand.

    Returns:
        int: Process exit code.
    """
    args = build_parser().parse_args(argv)
    try:
        config = load_env_file()
        init_custom_logger(config["LOG_FILE"])
        precompile_numba_functions()
        logging.getLogger().custom(f"Running {args.command}")
        return COMMANDS[args.command](args, config)
    except Exception as error:
        logging.error(f"{args.command} failed: {type(error).__name__}: {error}")
        print(f"error: {error}", file=sys.stderr)
        return EXIT_ERROR

if __name__ == "__main__":
    sys.exit(main())

import numpy as np
import pytest

from src.costs import (
    dominates, dominates_or_equal, edge_cost, heuristic, joint_cost, lex_key, make_heuristic, path_cost, wait_cost,
)
from src.models import AgentSpec, Path
from src.oracle import enumerate_single_pareto
from tests.instances import graph_from_rows, random_instance, uniform_scales

def test_dominance_is_strict_and_weak():
    assert dominates((1, 2), (1, 3))
    assert not dominates((1, 2), (1, 2))
    assert dominates_or_equal((1, 2), (1, 2))
    assert not dominates((1, 3), (2, 2))
    assert not dominates((2, 2), (1, 3))

def test_dominance_rejects_mixed_lengths():
    with pytest.raises(ValueError):
        dominates((1, 2), (1, 2, 3))
    with pytest.raises(ValueError):
        dominates_or_equal((1,), (1, 2))

def test_lex_key_orders():
    costs = [(2, 1), (1, 3), (1, 2)]
    assert sorted(costs, key=lambda c: lex_key(c, "lex")) == [(1, 2), (1, 3), (2, 1)]
    assert sorted(costs, key=lambda c: lex_key(c, "reverse_lex")) == [(2, 1), (1, 2), (1, 3)]
    with pytest.raises(ValueError):
        lex_key((1,), "random")

def test_edge_and_wait_costs_scale_per_agent():
    graph = graph_from_rows([".."])
    scales = uniform_scales(graph, (3, 5))
    agent = AgentSpec(0, 0, 1, (2, 7))
    assert edge_cost(agent, (1, 0), scales) == (6, 35)
    assert wait_cost(agent) == (2, 7)
    with pytest.raises(ValueError):
        edge_cost(agent, (0, 5), scales)

def test_path_cost_counts_moves_and_waits():
    graph = graph_from_rows(["..."])
    scales = uniform_scales(graph, (2, 1))
    agent = AgentSpec(0, 0, 2, (1, 3))
    assert path_cost((0, 0, 1, 1, 2), agent, scales) == (6, 12)
    assert path_cost((0,), agent, scales) == (0, 0)
    with pytest.raises(ValueError):
        path_cost((0, 2), agent, scales)

def test_joint_cost_sums_paths():
    paths = (Path(0, (0, 1), (1, 4)), Path(1, (2,), (0, 0)), Path(2, (3, 3), (5, 2)))
    assert joint_cost(paths) == (6, 6)
    with pytest.raises(ValueError):
        joint_cost((Path(0, (0,), (0,)), None))

def test_manhattan_heuristic_is_uniform_across_objectives():
    graph = graph_from_rows(["...", "..."])
    agent = AgentSpec(0, 0, 5, (4, 4, 4))
    assert heuristic(0, 5, agent, graph) == (3, 3, 3)
    h = make_heuristic(graph, agent)
    assert h(0) == (3, 3, 3)
    assert h(5) == (0, 0, 0)
    assert make_heuristic(graph, agent, "zero")(0) == (0, 0, 0)
    with pytest.raises(ValueError):
        make_heuristic(graph, agent, "euclid")

@pytest.mark.parametrize("seed", range(5))
def test_dominance_is_a_strict_partial_order(seed):
    rng = np.random.default_rng(seed)
    vectors = [tuple(int(x) for x in row) for row in rng.integers(0, 4, size=(25, 3))]
    for a in vectors:
        assert not dominates(a, a)
        assert dominates_or_equal(a, a)
        for b in vectors:
            if dominates(a, b):
                assert not dominates(b, a)
                assert dominates_or_equal(a, b)
                for c in vectors:
                    if dominates(b, c):
                        assert dominates(a, c)

@pytest.mark.parametrize("seed", range(4))
def test_manhattan_heuristic_never_overestimates(seed):
    instance = random_instance(900 + seed, num_objectives=2)
    goal = instance.agents[0].goal
    for u in instance.graph.vertices:
        agent = AgentSpec(0, u, goal, instance.agents[0].cost_scale)
        h = heuristic(u, goal, agent, instance.graph)
        assert make_heuristic(instance.graph, agent)(u) == h
        for cost in enumerate_single_pareto(instance.graph, agent, instance.scales, horizon=8).costs():
            assert dominates_or_equal(h, cost)

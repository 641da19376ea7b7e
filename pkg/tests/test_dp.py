#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
import numpy as np
import pytest

from conftest import atlas, complete, cycle, path, petersen
from cwdel.cwexpr import Intro, Join, Union, evaluate_expr, expr_for_graph, parse_expr, random_expr
from cwdel.dp import (
    INF,
    cover_product_minplus,
    decode_state,
    encode_state,
    intro_table,
    reconstruct_witness,
    solve_expression,
)
from cwdel.errors import CwdelError, StateSpaceError
from cwdel.graph import Graph
from cwdel.oracle import min_deletions_r_colorable


def solve_graph(graph: Graph, r: int, cfg, budget=None):
    expr, k = expr_for_graph(graph)
    return solve_expression(expr, r, budget, cfg, k)


@pytest.mark.parametrize(
    "graph, r, cost",
    [
        (cycle(5), 2, 1),
        (complete(4), 3, 1),
        (complete(5), 2, 3),
        (cycle(4), 1, 2),
        (path(6), 1, 3),
        (Graph(4), 1, 0),
    ],
)
def test_known_costs(graph, r, cost, solver_cfg):
    result = solve_graph(graph, r, solver_cfg)
    assert result.cost == cost
    assert result.solution.cost == cost
    assert result.solution.is_valid(graph, r)


@pytest.mark.parametrize("r", [1, 2])
@pytest.mark.parametrize("graph", atlas(1, 53))
def test_agrees_with_oracle(graph, r, solver_cfg):
    result = solve_graph(graph, r, solver_cfg)
    assert result.cost == min_deletions_r_colorable(graph, r).cost
    assert result.solution.is_valid(graph, r)
    assert result.solution.cost == result.cost


@pytest.mark.slow
@pytest.mark.parametrize("graph", atlas(53, 209))
def test_agrees_with_oracle_on_six_vertices(graph, solver_cfg):
    for r in (1, 2, 3):
        result = solve_graph(graph, r, solver_cfg)
        assert result.cost == min_deletions_r_colorable(graph, r).cost
        assert result.solution.is_valid(graph, r)


@pytest.mark.parametrize("seed", range(12))
def test_random_expressions(seed, solver_cfg):
    expr = random_expr(7, 3, seed)
    graph = evaluate_expr(expr).graph
    result = solve_expression(expr, 2, None, solver_cfg)
    assert result.cost == min_deletions_r_colorable(graph, 2).cost
    assert result.solution.is_valid(graph, 2)


def test_petersen(solver_cfg):
    result = solve_graph(petersen(), 2, solver_cfg)
    assert result.cost == min_deletions_r_colorable(petersen(), 2).cost
    assert result.solution.is_valid(petersen(), 2)


def test_decision(solver_cfg):
    assert solve_graph(cycle(5), 2, solver_cfg, budget=1).decision is True
    assert solve_graph(cycle(5), 2, solver_cfg, budget=0).decision is False
    assert solve_graph(cycle(5), 2, solver_cfg).decision is None


def test_zeta_cover_product_gives_same_costs(solver_cfg):
    solver_cfg.cover_product = "zeta"
    for seed in range(6):
        expr = random_expr(6, 3, seed)
        graph = evaluate_expr(expr).graph
        result = solve_expression(expr, 2, None, solver_cfg)
        assert result.cost == min_deletions_r_colorable(graph, 2).cost
        assert result.solution.is_valid(graph, 2)


def test_invariant_checks_pass(solver_cfg):
    solver_cfg.check_invariants = True
    for seed in range(4):
        solve_expression(random_expr(6, 3, seed), 2, None, solver_cfg)


def test_state_space_guard(solver_cfg):
    with pytest.raises(StateSpaceError):
        solve_expression(Intro(13, "a"), 2, None, solver_cfg)
    with pytest.raises(CwdelError):
        solve_expression(Intro(3, "a"), 2, None, solver_cfg, k=2)
    with pytest.raises(CwdelError):
        solve_expression(Intro(1, "a"), 0, None, solver_cfg)


def test_unused_labels_are_allowed(solver_cfg):
    result = solve_expression(parse_expr("join(1,2,union(intro(1,a),intro(2,b)))"), 1, None, solver_cfg, k=4)
    assert result.cost == 1
    assert result.k == 4
    assert len(result.table) == 1 << 4


def test_intro_table():
    table = intro_table(2, 2, 2)
    assert table[0] == 1
    assert table[encode_state({2: {1}}, 2)] == 0
    assert table[encode_state({2: {2}}, 2)] == 0
    assert table[encode_state({1: {1}}, 2)] == INF
    assert np.count_nonzero(table < INF) == 3


def test_state_encoding():
    state = encode_state({1: {2}, 2: {1, 3}}, 3)
    assert state == 0b101010
    assert decode_state(state, 2, 3) == {1: {2}, 2: {1, 3}}


def test_cover_product_small():
    t1 = np.array([INF, 1, INF, INF], dtype=np.int32)
    t2 = np.array([INF, INF, 2, INF], dtype=np.int32)
    assert cover_product_minplus(t1, t2).tolist() == [INF, INF, INF, 3]
    unit = np.array([0, INF, INF, INF], dtype=np.int32)
    assert cover_product_minplus(unit, t2).tolist() == t2.tolist()


@pytest.mark.parametrize("seed", range(5))
def test_cover_product_methods_agree(seed):
    rng = np.random.default_rng(seed)
    t1 = rng.integers(0, 6, size=64).astype(np.int32)
    t2 = rng.integers(0, 6, size=64).astype(np.int32)
    t1[rng.random(64) < 0.4] = INF
    t2[rng.random(64) < 0.4] = INF
    enumerated = cover_product_minplus(t1, t2, "enumerate")
    assert np.array_equal(enumerated, cover_product_minplus(t1, t2, "zeta"))
    states = np.arange(64)
    for f in (0, 7, 21, 63):
        expected = min(
            (int(t1[a]) + int(t2[b]) for a in states for b in states if a | b == f and t1[a] < INF and t2[b] < INF),
            default=INF,
        )
        assert enumerated[f] == expected


def test_cover_product_rejects_bad_shapes():
    with pytest.raises(StateSpaceError):
        cover_product_minplus(np.zeros(4, dtype=np.int32), np.zeros(8, dtype=np.int32))
    with pytest.raises(StateSpaceError):
        cover_product_minplus(np.zeros(6, dtype=np.int32), np.zeros(6, dtype=np.int32))
    with pytest.raises(ValueError):
        cover_product_minplus(np.zeros(4, dtype=np.int32), np.zeros(4, dtype=np.int32), "fft")


def test_reconstruct_witness_for_other_states(solver_cfg):
    expr = Join(1, 2, Union(Intro(1, "a"), Intro(2, "b")))
    result = solve_expression(expr, 2, None, solver_cfg)
    # label 1 colored 2, label 2 deleted
    target = encode_state({1: {2}}, 2)
    assert result.table[target] == 1
    solution = reconstruct_witness(expr, result.tables, target, 2, result.k)
    assert solution.colors == (2, 0)

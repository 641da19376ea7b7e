#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from itertools import combinations

import pytest

from conftest import atlas, complete, cycle, path, petersen
from cwdel.errors import CwdelError, TooLargeError, WitnessError
from cwdel.graph import Graph
from cwdel.instances import CnfFormula, HittingSetInstance, ProblemKind
from cwdel.oracle import (
    DELETED,
    Solution,
    chromatic_number,
    extend_coloring,
    list_color,
    min_deletions_r_colorable,
    r_cliques,
    solve_exact,
    solve_sat,
)


def brute_vertex_cover(graph: Graph) -> int:
    for size in range(graph.n + 1):
        for chosen in combinations(graph.vertices(), size):
            if all(u in chosen or v in chosen for u, v in graph.edges()):
                return size


@pytest.mark.parametrize(
    "graph, r, cost",
    [
        (cycle(5), 2, 1),
        (cycle(6), 2, 0),
        (complete(4), 3, 1),
        (complete(5), 2, 3),
        (cycle(4), 1, 2),
        (Graph(3), 1, 0),
        (petersen(), 3, 0),
    ],
)
def test_min_deletions(graph, r, cost):
    result = min_deletions_r_colorable(graph, r)
    assert result.cost == cost
    assert result.solution.cost == cost
    assert result.solution.is_valid(graph, r)


def test_min_deletions_cap():
    assert min_deletions_r_colorable(complete(5), 2, cap=2) is None
    assert min_deletions_r_colorable(complete(5), 2, cap=3).cost == 3


def test_min_deletions_with_fixed_colors():
    result = min_deletions_r_colorable(path(3), 2, fixed={0: 1, 2: 1})
    assert result.cost == 0
    assert result.solution.colors == (1, 2, 1)

    result = min_deletions_r_colorable(path(3), 2, fixed={0: 1, 2: 2})
    assert result.cost == 1
    assert result.solution.colors == (1, DELETED, 2)

    assert min_deletions_r_colorable(path(3), 2, fixed={0: 1, 1: 1}) is None


def test_min_deletions_with_lists():
    result = min_deletions_r_colorable(path(2), 2, lists={0: [1], 1: [1]})
    assert result.cost == 1


def test_min_deletions_rejects_zero_colors():
    with pytest.raises(CwdelError):
        min_deletions_r_colorable(path(2), 0)


def test_list_color():
    coloring = list_color(cycle(4), range(4), 2)
    assert all(coloring[u] != coloring[v] for u, v in cycle(4).edges())
    assert list_color(cycle(5), range(5), 2) is None
    assert list_color(path(3), [0, 2], 1) == {0: 1, 2: 1}


@pytest.mark.parametrize(
    "graph, chi",
    [
        (Graph(0), 0),
        (Graph(3), 1),
        (cycle(4), 2),
        (cycle(5), 3),
        (complete(4), 4),
        (petersen(), 3),
    ],
)
def test_chromatic_number(graph, chi):
    assert chromatic_number(graph) == chi


@pytest.mark.parametrize("graph", atlas(1, 53))
def test_chromatic_number_agrees_with_deletions(graph):
    chi = chromatic_number(graph)
    assert min_deletions_r_colorable(graph, chi).cost == 0
    if chi > 1:
        assert min_deletions_r_colorable(graph, chi - 1).cost > 0


def test_extend_coloring():
    solution = extend_coloring(path(4), 2, deleted=[], precolored={0: 1})
    assert solution.colors == (1, 2, 1, 2)
    solution = extend_coloring(cycle(5), 2, deleted=[2], precolored={0: 2})
    assert solution.cost == 1
    assert solution.is_valid(cycle(5), 2)


def test_extend_coloring_raises_when_stuck():
    with pytest.raises(WitnessError):
        extend_coloring(complete(3), 2, deleted=[], precolored={0: 1, 1: 2})
    with pytest.raises(WitnessError):
        extend_coloring(path(2), 2, deleted=[], precolored={0: 1, 1: 1})


def test_solution_properties():
    solution = Solution((1, DELETED, 2, DELETED))
    assert solution.deleted == [1, 3]
    assert solution.cost == 2
    assert len(solution) == 4
    assert solution.is_valid(cycle(4), 2)
    assert not solution.is_valid(cycle(4), 1)
    assert not Solution((1, 1, 2, 2)).is_valid(cycle(4), 2)


@pytest.mark.parametrize("graph", atlas(1, 53) + [petersen()])
def test_vertex_cover_against_brute_force(graph):
    value, cover = solve_exact(ProblemKind.VERTEX_COVER, graph)
    assert value == brute_vertex_cover(graph)
    assert len(cover) == value
    assert all(u in cover or v in cover for u, v in graph.edges())


@pytest.mark.parametrize(
    "kind, graph, r, value",
    [
        (ProblemKind.VERTEX_COVER, petersen(), None, 6),
        (ProblemKind.DOMINATING_SET, cycle(6), None, 2),
        (ProblemKind.DOMINATING_SET, petersen(), None, 3),
        (ProblemKind.TOTAL_DOMINATING_SET, path(4), None, 2),
        (ProblemKind.TOTAL_DOMINATING_SET, cycle(6), None, 4),
        (ProblemKind.MAX_CUT, complete(3), None, 2),
        (ProblemKind.MAX_CUT, complete(4), None, 4),
        (ProblemKind.MAX_CUT, cycle(5), None, 4),
        (ProblemKind.MAX_CUT, cycle(6), None, 6),
        (ProblemKind.KR_FREE_DELETION, complete(4), 3, 2),
        (ProblemKind.KR_FREE_DELETION, cycle(5), 3, 0),
    ],
)
def test_solve_exact(kind, graph, r, value):
    assert solve_exact(kind, graph, r)[0] == value


def test_solve_exact_witnesses():
    graph = cycle(6)
    size, chosen = solve_exact(ProblemKind.DOMINATING_SET, graph)
    assert all(graph.closed_neighbors(v) & chosen for v in graph.vertices())
    size, chosen = solve_exact(ProblemKind.TOTAL_DOMINATING_SET, graph)
    assert all(graph.neighbors(v) & chosen for v in graph.vertices())
    cut, side = solve_exact(ProblemKind.MAX_CUT, cycle(5))
    assert cycle(5).cut_size(side) == cut
    size, chosen = solve_exact(ProblemKind.KR_FREE_DELETION, complete(4), 3)
    assert not any(set(c).isdisjoint(chosen) for c in r_cliques(complete(4), 3))


def test_solve_exact_rejects_bad_instances():
    with pytest.raises(CwdelError):
        solve_exact(ProblemKind.TOTAL_DOMINATING_SET, Graph(3, [(0, 1)]))
    with pytest.raises(CwdelError):
        solve_exact(ProblemKind.KR_FREE_DELETION, complete(3), 2)


def test_solve_exact_size_caps(solver_cfg):
    solver_cfg.exact_max_vertices = 4
    with pytest.raises(TooLargeError):
        solve_exact(ProblemKind.DOMINATING_SET, cycle(5), cfg=solver_cfg)
    assert solve_exact(ProblemKind.DOMINATING_SET, cycle(4), cfg=solver_cfg)[0] == 2


def test_hitting_set():
    instance = HittingSetInstance.of(3, [[0, 1], [1, 2], [0, 2]], 2)
    value, chosen = solve_exact(ProblemKind.HITTING_SET, instance)
    assert value == 2
    assert instance.is_hitting_set(chosen)


def test_r_cliques():
    assert r_cliques(complete(4), 3) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert r_cliques(cycle(4), 3) == []


def test_sat():
    formula = CnfFormula.of(3, [[1, 2], [-1, 3], [-3]])
    assignment = solve_sat(formula)
    assert formula.satisfied_by(assignment)
    assert assignment == (False, True, False)
    assert solve_exact(ProblemKind.SAT, formula) == (1, assignment)

    unsat = CnfFormula.of(2, [[1, 2], [-1], [-2, 1]])
    assert solve_sat(unsat) is None
    assert solve_exact(ProblemKind.SAT, unsat) == (0, None)

#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
import pytest
from omegaconf import OmegaConf

from conftest import atlas, complete, cycle, path
from cwdel.errors import CwdelError, SizeGuardError, UnsatisfiedAssignmentError, WitnessError
from cwdel.graph import Graph, TreeDecomposition, verify_decomposition
from cwdel.instances import CnfFormula, HittingSetInstance, ProblemKind
from cwdel.oracle import solve_exact
from cwdel.reductions import get_reduction
from cwdel.reductions.cover import (
    build_krfree_reduction,
    build_maxcut_reduction,
    build_vc_reduction,
    extract_hitting_set,
    forward_cut,
    forward_krfree_deletion,
    forward_vc_solution,
)
from cwdel.reductions.domination import (
    build_ds_doubling,
    build_tds_reduction,
    doubling_quotient_embeds,
    forward_tds_solution,
    is_total_dominating,
    tds_block_forced_sets,
    tds_state_order_check,
)
from cwdel.reductions.lowerbound import build_dense_reduction, build_sparse_reduction, forward_solution, predict_size
from cwdel.reductions.params import (
    DENSE,
    SPARSE,
    assignment_index,
    choose_p_dense,
    choose_p_sparse,
    index_assignment,
    iter_members,
    make_params,
    member_count,
    satisfying_indices,
)
from cwdel.utils import load_config
from cwdel.verify import verify_dtc_solution, verify_problem_solution, verify_reduction_instance

SINGLE = CnfFormula.of(1, [[1]])


def vertex_cover_size(graph: Graph) -> int:
    return solve_exact(ProblemKind.VERTEX_COVER, graph)[0]


@pytest.fixture(scope="module")
def sparse_instance():
    cfg = load_config()
    cfg.progress = False
    return build_sparse_reduction(SINGLE, 2, 1, cfg)


# parameters


def test_choose_p():
    assert choose_p_sparse(1, 2) == 3
    assert choose_p_dense(1, 2) == 8
    with pytest.raises(CwdelError):
        choose_p_sparse(0, 2)
    with pytest.raises(CwdelError):
        choose_p_dense(1, 1)


def test_make_params():
    params = make_params(SPARSE, 2, 1, 1)
    assert (params.t, params.p, params.size_counts) == (1, 3, (1, 2))
    assert params.group_deletions == 1
    assert params.copies == 2
    assert params.modulator_blocks == 5

    params = make_params(DENSE, 2, 1, 3)
    assert (params.t, params.p, params.size_counts) == (3, 8, (2, 4, 2))
    assert params.group_deletions == 2 * 2 + 4 * 1
    assert params.copies == 1 + 3 * 8
    with pytest.raises(ValueError):
        make_params("medium", 2, 1, 1)
    with pytest.raises(CwdelError):
        make_params(SPARSE, 2, 1, 0)


@pytest.mark.parametrize("setting", [SPARSE, DENSE])
def test_member_count_matches_enumeration(setting):
    params = make_params(setting, 2, 1, 1)
    members = list(iter_members(params))
    assert len(members) == member_count(params)
    assert len(set(members)) == len(members)
    assert all(len(member) == params.p for member in members)
    assert members == sorted(members, key=lambda m: [(len(c), sorted(c)) for c in m])


def test_member_counts():
    assert member_count(make_params(SPARSE, 2, 1, 1)) == 12
    assert member_count(make_params(DENSE, 2, 1, 1)) == 6720


def test_assignment_index():
    assert assignment_index([True, False]) == 2
    assert assignment_index([]) == 0
    assert index_assignment(2, 2) == (True, False)
    assert index_assignment(5, 3) == (True, False, True)


def test_satisfying_indices():
    formula = CnfFormula.of(2, [[1, -2], [2]])
    assert satisfying_indices(formula, [1, 2], 0) == [0, 2, 3]
    assert satisfying_indices(formula, [1, 2], 1) == [1, 3]
    # no literal of the clause in this group
    assert satisfying_indices(formula, [1], 1) == []


# lower-bound instances


def test_sparse_instance_size(sparse_instance):
    params = sparse_instance.params
    assert sparse_instance.graph.n == predict_size(params, SINGLE)
    assert len(sparse_instance.members) == 12
    assert len(sparse_instance.modulator) == params.modulator_blocks
    assert sparse_instance.budget == sparse_instance.packing_cost + params.t * params.group_deletions
    manifest = sparse_instance.manifest()
    assert manifest["n"] == sparse_instance.graph.n
    assert manifest["p"] == 3


def test_sparse_instance_verifies(sparse_instance, solver_cfg):
    report = verify_reduction_instance(sparse_instance, solver_cfg)
    assert report.passed, report.failures()


def test_sparse_forward_solution(sparse_instance, solver_cfg):
    solution = forward_solution(sparse_instance, [True], solver_cfg)
    assert solution.is_valid(sparse_instance.graph, 2)
    assert solution.cost == sparse_instance.budget
    assert verify_dtc_solution(sparse_instance.graph, solution, 2, sparse_instance.budget).passed


def test_forward_solution_rejects_unsatisfying_assignment(sparse_instance, solver_cfg):
    with pytest.raises(UnsatisfiedAssignmentError):
        forward_solution(sparse_instance, [False], solver_cfg)
    with pytest.raises(UnsatisfiedAssignmentError):
        forward_solution(sparse_instance, [True, True], solver_cfg)


def test_size_guard(solver_cfg):
    solver_cfg.max_vertices = 100
    with pytest.raises(SizeGuardError) as excinfo:
        build_sparse_reduction(SINGLE, 2, 1, solver_cfg)
    assert excinfo.value.predicted == predict_size(make_params(SPARSE, 2, 1, 1), SINGLE)
    solver_cfg.max_vertices = 1000
    with pytest.raises(SizeGuardError):
        build_dense_reduction(SINGLE, 2, 1, solver_cfg)


def test_lower_bound_needs_clauses(solver_cfg):
    with pytest.raises(CwdelError):
        build_sparse_reduction(CnfFormula.of(1, []), 2, 1, solver_cfg)


# hitting set to vertex cover


def hitting_set_instance():
    return HittingSetInstance.of(3, [[0, 1], [1, 2]], 1)


def test_vc_reduction():
    reduction = build_vc_reduction(hitting_set_instance())
    instance = reduction.instance
    assert instance.graph.n == 19
    assert instance.budget == 9
    assert vertex_cover_size(instance.graph) == 9
    cover = forward_vc_solution(reduction, {1})
    assert len(cover) == 9
    assert verify_problem_solution(ProblemKind.VERTEX_COVER, instance.graph, cover, 9).passed
    assert extract_hitting_set(reduction, cover) == {1}


def test_vc_reduction_instance_verifies(solver_cfg):
    report = verify_reduction_instance(build_vc_reduction(hitting_set_instance()).instance, solver_cfg)
    assert report.passed, report.failures()


def test_extract_hitting_set_repairs_expensive_paths():
    reduction = build_vc_reduction(hitting_set_instance())
    _, cover = solve_exact(ProblemKind.VERTEX_COVER, reduction.instance.graph)
    hitting = extract_hitting_set(reduction, cover)
    assert len(hitting) <= 1
    assert reduction.source.is_hitting_set(hitting)


def test_vc_reduction_rejects_bad_witnesses():
    reduction = build_vc_reduction(hitting_set_instance())
    with pytest.raises(WitnessError):
        forward_vc_solution(reduction, {0})
    with pytest.raises(WitnessError):
        extract_hitting_set(reduction, set())


# vertex cover to max cut


@pytest.mark.parametrize("graph, cut", [(complete(2), 5), (complete(3), 13)])
def test_maxcut_values(graph, cut):
    reduction = build_maxcut_reduction(graph)
    assert solve_exact(ProblemKind.MAX_CUT, reduction.graph)[0] == cut


@pytest.mark.parametrize("graph", atlas(1, 19))
def test_maxcut_matches_vertex_cover(graph):
    reduction = build_maxcut_reduction(graph)
    cover = vertex_cover_size(graph)
    assert reduction.graph.n == graph.n + 1 + 2 * graph.m
    assert solve_exact(ProblemKind.MAX_CUT, reduction.graph)[0] == reduction.cut_target(graph.n - cover)
    _, chosen = solve_exact(ProblemKind.VERTEX_COVER, graph)
    side = forward_cut(reduction, chosen)
    assert reduction.graph.cut_size(side) == reduction.cut_target(graph.n - cover)
    assert reduction.cover_bound(graph.n - cover) == cover


def test_forward_cut_needs_cover():
    with pytest.raises(WitnessError):
        forward_cut(build_maxcut_reduction(path(3)), {0})


# vertex cover to K_r-free deletion


@pytest.mark.parametrize("graph", atlas(1, 19) + [cycle(5)])
def test_krfree_matches_vertex_cover(graph):
    reduction = build_krfree_reduction(graph, 3)
    assert solve_exact(ProblemKind.KR_FREE_DELETION, reduction.graph, 3)[0] == vertex_cover_size(graph)


def test_krfree_forward_and_lift():
    graph = cycle(4)
    reduction = build_krfree_reduction(graph, 4)
    assert reduction.graph.n == 4 + 2 * 4
    assert reduction.budget(2) == 2
    deletion = forward_krfree_deletion(reduction, {0, 2})
    assert verify_problem_solution(ProblemKind.KR_FREE_DELETION, reduction.graph, deletion, 2, 4).passed
    with pytest.raises(WitnessError):
        forward_krfree_deletion(reduction, {0})

    lifted = reduction.lift_decomposition(TreeDecomposition([[0, 1, 2], [0, 2, 3]], [(0, 1)]))
    assert verify_decomposition(reduction.graph, lifted) == 3


def test_krfree_lift_with_modulator():
    reduction = build_krfree_reduction(path(3), 3)
    lifted = reduction.lift_decomposition(TreeDecomposition([[0], [2]], [(0, 1)]), modulator=[1])
    assert verify_decomposition(reduction.graph, lifted, [0, 2, 3, 4]) == 1


def test_krfree_needs_three_colors():
    with pytest.raises(CwdelError):
        build_krfree_reduction(path(3), 2)


# domination


@pytest.mark.parametrize("graph", [g for g in atlas(2, 53) if g.is_connected()])
def test_doubling_preserves_domination(graph):
    doubled = build_ds_doubling(graph)
    assert doubled.n == 2 * graph.n
    assert (
        solve_exact(ProblemKind.DOMINATING_SET, doubled)[0]
        == solve_exact(ProblemKind.TOTAL_DOMINATING_SET, graph)[0]
    )
    assert doubling_quotient_embeds(graph, doubled)


@pytest.mark.parametrize("graph", [Graph(1), Graph(3, [(0, 1)])])
def test_doubling_rejects_bad_graphs(graph):
    with pytest.raises(CwdelError):
        build_ds_doubling(graph)


def test_tds_reduction():
    formula = CnfFormula.of(2, [[1, 2]])
    reduction = build_tds_reduction(formula)
    assert reduction.pairs == 1
    assert reduction.segments == 4
    assert reduction.budget == 18
    assert reduction.graph.n == 80
    assert verify_decomposition(reduction.graph, reduction.decomposition) == 22
    assert reduction.manifest()["width"] == 22

    chosen = forward_tds_solution(reduction, [True, False])
    assert len(chosen) == 18
    assert is_total_dominating(reduction.graph, chosen)
    assert verify_problem_solution(ProblemKind.TOTAL_DOMINATING_SET, reduction.graph, chosen, 18).passed
    with pytest.raises(UnsatisfiedAssignmentError):
        forward_tds_solution(reduction, [False, False])


def test_tds_pads_odd_variable_counts():
    reduction = build_tds_reduction(CnfFormula.of(1, [[1]]))
    assert reduction.formula.n_vars == 2
    chosen = forward_tds_solution(reduction, [True])
    assert len(chosen) == reduction.budget
    assert is_total_dominating(reduction.graph, chosen)


def test_tds_needs_clauses():
    with pytest.raises(CwdelError):
        build_tds_reduction(CnfFormula.of(2, []))


def test_tds_block_forced_sets():
    block, found = tds_block_forced_sets()
    expected = {frozenset(block.state_vertices(s) + (block.z[s], block.y[0])) for s in range(4)}
    assert len(found) == 4
    assert set(found) == expected


def test_tds_state_order():
    assert tds_state_order_check() == {(1, 1), (2, 1), (2, 2), (3, 1), (3, 3), (4, 1), (4, 2), (4, 3), (4, 4)}


# factory


@pytest.mark.parametrize(
    "kind, name",
    [
        ("dense", "DenseLowerBound"),
        ("sparse", "SparseLowerBound"),
        ("vc", "HittingSetToVertexCover"),
        ("maxcut", "VertexCoverToMaxCut"),
        ("krfree", "VertexCoverToKrFree"),
        ("ds", "TotalToDominatingSet"),
        ("tds", "SatToTotalDominatingSet"),
    ],
)
def test_get_reduction(kind, name):
    assert type(get_reduction(OmegaConf.create({"kind": kind}))).__name__ == name


def test_get_reduction_errors():
    with pytest.raises(ValueError):
        get_reduction(OmegaConf.create({"kind": "clique"}))
    with pytest.raises(ValueError):
        get_reduction(OmegaConf.create({"r": 2}))


def test_maxcut_reduction_end_to_end(solver_cfg):
    reduction = get_reduction(OmegaConf.create({"kind": "maxcut", "solver": solver_cfg}))
    reduced = reduction.build(complete(3))
    assert reduced.budget == 13
    assert reduction.describe(reduced)["cover"] == 2
    side = reduction.forward(reduced, reduction.source_witness(complete(3)))
    assert reduced.graph.cut_size(side) == 13


def test_ds_reduction_end_to_end(solver_cfg):
    reduction = get_reduction(OmegaConf.create({"kind": "ds", "solver": solver_cfg}))
    reduced = reduction.build(path(4))
    assert reduced.budget == 2
    assert reduced.manifest["quotient_embeds"]
    witness = reduction.forward(reduced, reduction.source_witness(path(4)))
    assert verify_problem_solution(ProblemKind.DOMINATING_SET, reduced.graph, witness, 2).passed


def test_sat_source_without_solution(solver_cfg):
    reduction = get_reduction(OmegaConf.create({"kind": "tds", "solver": solver_cfg}))
    assert reduction.source_witness(CnfFormula.of(1, [[1], [-1]])) is None

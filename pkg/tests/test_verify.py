#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from dataclasses import replace

import pytest

from conftest import complete, cycle, path
from cwdel.instances import CnfFormula, HittingSetInstance, ProblemKind
from cwdel.oracle import Solution
from cwdel.reductions.cover import build_vc_reduction
from cwdel.verify import VerifyReport, verify_dtc_solution, verify_problem_solution, verify_reduction_instance


@pytest.fixture
def vc_instance():
    return build_vc_reduction(HittingSetInstance.of(3, [[0, 1], [1, 2]], 1)).instance


def test_report_lines():
    report = VerifyReport()
    report.add("first", True)
    report.add("second", False, "why")
    assert not report.passed
    assert report.failures() == ["second"]
    assert report.lines() == ["first=ok", "second=fail", "pass=0"]
    assert "FAIL" in report.render()


def test_dtc_solution_passes():
    report = verify_dtc_solution(cycle(4), Solution((1, 2, 1, 2)), 2, budget=0)
    assert report.passed
    assert report.lines()[-1] == "pass=1"


def test_dtc_solution_failures():
    assert verify_dtc_solution(cycle(4), Solution((1, 1, 2, 2)), 2).failures() == ["edges"]
    assert verify_dtc_solution(cycle(4), Solution((1, 0, 1, 0)), 2, budget=1).failures() == ["budget"]
    assert verify_dtc_solution(cycle(4), Solution((3, 0, 1, 0)), 2).failures() == ["colors"]
    assert verify_dtc_solution(cycle(4), Solution((1, 2, 1)), 2).failures() == ["total"]


def test_reduction_instance_passes(vc_instance, solver_cfg):
    report = verify_reduction_instance(vc_instance, solver_cfg)
    assert report.passed
    assert [name for name, _, _ in report.items] == [
        "packing_disjoint",
        "modulator_disjoint",
        "modulator_twins",
        "decompositions",
        "packing_claims",
        "packing_verified",
        "packing_budget",
    ]


def test_detects_budget_below_packing(vc_instance, solver_cfg):
    report = verify_reduction_instance(replace(vc_instance, budget=0), solver_cfg)
    assert report.failures() == ["packing_budget"]


def test_detects_non_twin_block(vc_instance, solver_cfg):
    central = vc_instance.central
    # the first two elements lie in different sets
    modulator = ((central[0], central[1]), (central[2],))
    report = verify_reduction_instance(replace(vc_instance, modulator=modulator), solver_cfg)
    assert report.failures() == ["modulator_twins"]


def test_detects_overlapping_packing(vc_instance, solver_cfg):
    packing = vc_instance.packing + vc_instance.packing[:1]
    report = verify_reduction_instance(replace(vc_instance, packing=packing), solver_cfg)
    assert "packing_disjoint" in report.failures()


def test_detects_wrong_claims(vc_instance, solver_cfg):
    piece, _ = vc_instance.packing[0]
    packing = ((piece, 3),) + vc_instance.packing[1:]
    report = verify_reduction_instance(replace(vc_instance, packing=packing), solver_cfg)
    assert report.failures() == ["packing_claims"]


def test_detects_missing_decomposition(vc_instance, solver_cfg):
    report = verify_reduction_instance(replace(vc_instance, decompositions=vc_instance.decompositions[1:]), solver_cfg)
    assert report.failures() == ["decompositions"]


def test_detects_wide_decomposition(vc_instance, solver_cfg):
    report = verify_reduction_instance(replace(vc_instance, width=1), solver_cfg)
    assert report.failures() == ["decompositions"]


def test_large_pieces_are_reported_unverified(vc_instance, solver_cfg):
    solver_cfg.packing_piece_cap = 2
    report = verify_reduction_instance(vc_instance, solver_cfg)
    assert report.failures() == ["packing_verified"]


@pytest.mark.parametrize(
    "kind, instance, witness, target, r, passed",
    [
        (ProblemKind.VERTEX_COVER, path(3), [1], 1, None, True),
        (ProblemKind.VERTEX_COVER, path(3), [0], None, None, False),
        (ProblemKind.VERTEX_COVER, path(3), [0, 1, 2], 2, None, False),
        (ProblemKind.DOMINATING_SET, cycle(6), [0, 3], 2, None, True),
        (ProblemKind.DOMINATING_SET, cycle(6), [0, 1], None, None, False),
        (ProblemKind.TOTAL_DOMINATING_SET, path(4), [1, 2], 2, None, True),
        (ProblemKind.TOTAL_DOMINATING_SET, path(4), [0, 3], None, None, False),
        (ProblemKind.KR_FREE_DELETION, complete(4), [0, 1], 2, 3, True),
        (ProblemKind.KR_FREE_DELETION, complete(4), [0], None, 3, False),
        (ProblemKind.MAX_CUT, cycle(4), [0, 2], 4, None, True),
        (ProblemKind.MAX_CUT, cycle(4), [0, 1], 3, None, False),
        (ProblemKind.HITTING_SET, HittingSetInstance.of(3, [[0, 1], [1, 2]], 1), [1], 1, None, True),
        (ProblemKind.HITTING_SET, HittingSetInstance.of(3, [[0, 1], [1, 2]], 1), [0], None, None, False),
        (ProblemKind.SAT, CnfFormula.of(2, [[1, 2], [-1]]), (False, True), None, None, True),
        (ProblemKind.SAT, CnfFormula.of(2, [[1, 2], [-1]]), (True, True), None, None, False),
    ],
)
def test_problem_solutions(kind, instance, witness, target, r, passed):
    assert verify_problem_solution(kind, instance, witness, target, r).passed == passed


def test_problem_kind_by_name():
    assert verify_problem_solution("vc", path(2), [0]).passed
    with pytest.raises(ValueError):
        verify_problem_solution("clique", path(2), [0])


def test_claims_checked_in_worker_processes(vc_instance, solver_cfg):
    piece, _ = vc_instance.packing[0]
    wrong = replace(vc_instance, packing=((piece, 3),) + vc_instance.packing[1:])
    for instance in (vc_instance, wrong):
        solver_cfg.threads = 1
        serial = verify_reduction_instance(instance, solver_cfg)
        solver_cfg.threads = 2
        assert verify_reduction_instance(instance, solver_cfg).items == serial.items

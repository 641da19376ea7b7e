#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
import pytest

from conftest import complete, cycle
from cwdel.critical import build_critical, hajos_merge, pick_critical
from cwdel.errors import CwdelError
from cwdel.graph import verify_decomposition
from cwdel.oracle import chromatic_number


def test_hajos_of_two_triangles_is_five_cycle():
    merged = hajos_merge(complete(3), complete(3), (1, 2), (0, 2))
    assert merged.n == 5
    assert merged.m == 5
    assert all(merged.degree(v) == 2 for v in merged.vertices())
    assert merged.is_connected()


def test_hajos_needs_edges():
    with pytest.raises(CwdelError):
        hajos_merge(cycle(4), complete(3), (0, 2), (0, 1))


@pytest.mark.parametrize("t, gamma", [(3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (5, 2)])
def test_critical_graph(t, gamma):
    critical = build_critical(t, gamma)
    graph = critical.graph
    assert graph.n == gamma * (t - 1) + 1
    assert chromatic_number(graph) == t
    for v in graph.vertices():
        assert chromatic_number(graph.remove_vertices([v])[0]) == t - 1


@pytest.mark.parametrize("t, gamma", [(3, 4), (4, 3), (6, 2)])
def test_critical_roles_and_decomposition(t, gamma):
    critical = build_critical(t, gamma)
    assert len(critical.a) == gamma + 1
    assert len(critical.b) == gamma
    assert all(len(block) == t - 3 for block in critical.c)
    assert sorted(critical.role_order()) == list(critical.graph.vertices())
    assert verify_decomposition(critical.graph, critical.decomposition) == t - 1
    assert critical.graph.tag(critical.a[0]) == "a1"


def test_pick_critical():
    critical = pick_critical(2, 3)
    assert critical.graph.n == 3
    critical = pick_critical(3, 5)
    assert critical.t == 4
    assert 5 <= critical.graph.n <= 5 + 3
    for r, size in [(2, 1), (2, 9), (3, 11), (4, 6)]:
        n = pick_critical(r, size).graph.n
        assert size <= n <= size + r


@pytest.mark.parametrize("t, gamma", [(2, 1), (3, 0)])
def test_critical_rejects_bad_parameters(t, gamma):
    with pytest.raises(CwdelError):
        build_critical(t, gamma)

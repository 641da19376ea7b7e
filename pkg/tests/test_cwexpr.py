#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
import pytest

from conftest import atlas, cycle, path, petersen
from cwdel.cwexpr import (
    Intro,
    Join,
    Relabel,
    Union,
    check_expr,
    evaluate_expr,
    expr_for_graph,
    expr_vertex_count,
    max_label,
    parse_expr,
    postorder,
    random_expr,
    render_expr,
    validate_expr,
)
from cwdel.errors import ExprSyntaxError, ExprValidationError

P3 = "join(1,2,relab(2,1,join(1,2,union(intro(1,a),intro(2,b)))))"


def test_parse_and_evaluate_edge():
    labeled = evaluate_expr(parse_expr("join(1,2,union(intro(1,a),intro(2,b)))"))
    assert labeled.graph.edges() == [(0, 1)]
    assert labeled.labels == (1, 2)
    assert labeled.names == ("a", "b")


def test_parse_tolerates_whitespace():
    expr = parse_expr(" join( 1 , 2 ,\n union( intro(1, a) , intro(2,b) ) ) ")
    assert render_expr(expr) == "join(1,2,union(intro(1,a),intro(2,b)))"


def test_relabel_merges_classes():
    labeled = evaluate_expr(parse_expr(P3))
    # the second join adds nothing, both vertices sit on label 1
    assert labeled.graph.edges() == [(0, 1)]
    assert labeled.labels == (1, 1)
    assert labeled.label_class(1) == [0, 1]
    assert labeled.label_class(2) == []


def test_join_with_empty_label_is_noop():
    expr = Join(3, 1, Union(Intro(1, "a"), Intro(2, "b")))
    assert evaluate_expr(expr).graph.m == 0


def test_render_matches_input():
    text = "union(relab(1,3,intro(1,x)),join(2,4,union(intro(2,y),intro(4,z))))"
    assert render_expr(parse_expr(text)) == text


@pytest.mark.parametrize(
    "text",
    [
        "intro(0,a)",
        "join(1,1,intro(1,a))",
        "union(intro(1,a),intro(1,a))",
        "intro(1,a) intro(1,b)",
        "foo(1,a)",
        "union(intro(1,a)",
        "intro(1,a)$",
        "relab(1,x,intro(1,a))",
        "",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ExprSyntaxError):
        parse_expr(text)


def test_syntax_error_reports_position():
    with pytest.raises(ExprSyntaxError) as excinfo:
        parse_expr("union(intro(1,a),intro(1,a))")
    assert excinfo.value.position == 25


def test_check_expr_on_constructed_trees():
    with pytest.raises(ExprValidationError):
        check_expr(Union(Intro(1, "a"), Intro(2, "a")))
    with pytest.raises(ExprValidationError):
        check_expr(Relabel(2, 2, Intro(2, "a")))
    with pytest.raises(ExprValidationError):
        check_expr(Intro(0, "a"))
    check_expr(parse_expr(P3))


def test_validate_expr():
    linear = parse_expr("union(union(intro(1,a),intro(2,b)),intro(3,c))")
    nested = parse_expr("union(intro(1,a),union(intro(2,b),intro(3,c)))")
    assert validate_expr(linear, 3) == (True, True)
    assert validate_expr(linear, 2) == (False, True)
    assert validate_expr(nested, 3) == (True, False)
    assert max_label(parse_expr(P3)) == 2


def test_postorder_puts_children_first():
    expr = parse_expr(P3)
    nodes = list(postorder(expr))
    assert nodes[-1] == expr
    assert [node.name for node in nodes if isinstance(node, Intro)] == ["a", "b"]
    assert isinstance(nodes[2], Union)
    assert expr_vertex_count(expr) == 2


@pytest.mark.parametrize("graph", atlas(1, 53) + [petersen(), cycle(7)])
def test_expr_for_graph_rebuilds_graph(graph):
    expr, k = expr_for_graph(graph)
    labeled = evaluate_expr(expr)
    assert labeled.graph == graph
    assert validate_expr(expr, k) == (True, True)


def test_expr_for_path_needs_three_labels():
    expr, k = expr_for_graph(path(8))
    assert k == 3
    assert max_label(expr) == 3


def test_expr_for_graph_respects_order():
    graph = cycle(5)
    order = [4, 2, 0, 3, 1]
    labeled = evaluate_expr(expr_for_graph(graph, order)[0])
    assert labeled.names == tuple("v{}".format(v) for v in order)
    for u, v in graph.edges():
        assert labeled.graph.has_edge(order.index(u), order.index(v))
    assert labeled.graph.m == graph.m


@pytest.mark.parametrize("seed", range(20))
def test_random_expr(seed):
    expr = random_expr(7, 3, seed)
    check_expr(expr)
    assert expr_vertex_count(expr) == 7
    assert max_label(expr) <= 3
    assert evaluate_expr(expr).graph.n == 7


def test_random_expr_is_reproducible():
    assert render_expr(random_expr(6, 4, 11)) == render_expr(random_expr(6, 4, 11))


def test_random_expr_rejects_bad_sizes():
    with pytest.raises(ExprValidationError):
        random_expr(0, 3, 1)
    with pytest.raises(ExprValidationError):
        random_expr(4, 1, 1)

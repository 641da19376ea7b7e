#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
import re
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union as TypingUnion

import numpy as np

from cwdel.errors import ExprSyntaxError, ExprValidationError
from cwdel.graph import Graph, GraphBuilder


@dataclass(frozen=True)
class Intro:
    label: int
    name: str


@dataclass(frozen=True)
class Union:
    left: "CliqueExpr"
    right: "CliqueExpr"


@dataclass(frozen=True)
class Relabel:
    i: int
    j: int
    child: "CliqueExpr"


@dataclass(frozen=True)
class Join:
    i: int
    j: int
    child: "CliqueExpr"


CliqueExpr = TypingUnion[Intro, Union, Relabel, Join]


@dataclass(frozen=True)
class LabeledGraph:
    """
    Graph built by a clique-expression. Vertex ids follow the left-to-right order of the introduce leaves.
    """

    graph: Graph
    labels: Tuple[int, ...]
    names: Tuple[str, ...]

    def label_class(self, label: int) -> List[int]:
        return [v for v, lab in enumerate(self.labels) if lab == label]


class ExprValidity(NamedTuple):
    k_valid: bool
    linear: bool


def children(node: CliqueExpr) -> Tuple[CliqueExpr, ...]:
    if isinstance(node, Union):
        return (node.left, node.right)
    if isinstance(node, (Relabel, Join)):
        return (node.child,)
    return ()


def postorder(expr: CliqueExpr) -> Iterator[CliqueExpr]:
    """
    Yields the nodes children first, left before right, without recursion.
    """
    stack = [(expr, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded or isinstance(node, Intro):
            yield node
            continue
        stack.append((node, True))
        for child in reversed(children(node)):
            stack.append((child, False))


def expr_vertex_count(expr: CliqueExpr) -> int:
    return sum(1 for node in postorder(expr) if isinstance(node, Intro))


def check_expr(expr: CliqueExpr):
    """
    Raises ExprValidationError on non-positive labels, i = j in relab/join or duplicate vertex names.
    """
    names = set()
    for node in postorder(expr):
        if isinstance(node, Intro):
            if node.label < 1:
                raise ExprValidationError("Label {} of vertex {} is not positive".format(node.label, node.name))
            if node.name in names:
                raise ExprValidationError("Duplicate vertex name {}".format(node.name))
            names.add(node.name)
        elif isinstance(node, (Relabel, Join)):
            if node.i < 1 or node.j < 1:
                raise ExprValidationError("Labels must be positive, got {} and {}".format(node.i, node.j))
            if node.i == node.j:
                raise ExprValidationError("{} with equal labels {}".format(type(node).__name__.lower(), node.i))


def max_label(expr: CliqueExpr) -> int:
    best = 0
    for node in postorder(expr):
        if isinstance(node, Intro):
            best = max(best, node.label)
        elif isinstance(node, (Relabel, Join)):
            best = max(best, node.i, node.j)
    return best


def validate_expr(expr: CliqueExpr, k: int) -> ExprValidity:
    """
    k-valid: every label used anywhere is in [k]. Linear: the right operand of every union is a single vertex.
    """
    sizes = []
    linear = True
    for node in postorder(expr):
        if isinstance(node, Intro):
            sizes.append(1)
        elif isinstance(node, Union):
            right = sizes.pop()
            left = sizes.pop()
            linear = linear and right == 1
            sizes.append(left + right)
    return ExprValidity(k_valid=max_label(expr) <= k, linear=linear)


def evaluate_expr(expr: CliqueExpr) -> LabeledGraph:
    builder = GraphBuilder()
    names = []
    labels = []
    # every stack entry maps label -> vertices of one subexpression
    stack: List[dict] = []
    for node in postorder(expr):
        if isinstance(node, Intro):
            v = builder.add_vertex(node.name)
            names.append(node.name)
            labels.append(node.label)
            stack.append({node.label: [v]})
        elif isinstance(node, Union):
            right = stack.pop()
            left = stack.pop()
            for label, vertices in right.items():
                left.setdefault(label, []).extend(vertices)
            stack.append(left)
        elif isinstance(node, Relabel):
            classes = stack[-1]
            moved = classes.pop(node.i, [])
            if len(moved) > 0:
                classes.setdefault(node.j, []).extend(moved)
                for v in moved:
                    labels[v] = node.j
        else:
            classes = stack[-1]
            builder.join(classes.get(node.i, []), classes.get(node.j, []))
    return LabeledGraph(builder.build(), tuple(labels), tuple(names))


_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_]+)|([(),]))")
_KEYWORDS = ("intro", "union", "relab", "join")


def _tokenize(text: str) -> List[Tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            stripped = len(text) - len(text[pos:].lstrip())
            raise ExprSyntaxError("Unexpected character {!r}".format(text[stripped]), stripped)
        token = match.group(1) or match.group(2)
        tokens.append((token, match.start(1) if match.group(1) else match.start(2)))
        pos = match.end()
    tokens.append(("", len(text)))
    return tokens


def parse_expr(text: str) -> CliqueExpr:
    """
    Parses `intro(L,NAME) | union(E,E) | relab(I,J,E) | join(I,J,E)`.
    """
    tokens = _tokenize(text)
    pos = 0

    def take(expected: Optional[str] = None) -> Tuple[str, int]:
        nonlocal pos
        token, where = tokens[pos]
        if expected is not None and token != expected:
            raise ExprSyntaxError("Expected {!r} but found {!r}".format(expected, token or "end of input"), where)
        if token == "":
            raise ExprSyntaxError("Unexpected end of input", where)
        pos += 1
        return token, where

    def take_label() -> int:
        token, where = take()
        if not token.isdigit():
            raise ExprSyntaxError("Expected a label but found {!r}".format(token), where)
        if int(token) < 1:
            raise ExprSyntaxError("Labels must be positive", where)
        return int(token)

    # frames of open union / relab / join operations waiting for operands
    frames: List[list] = []
    names = set()
    while True:
        keyword, where = take()
        if keyword not in _KEYWORDS:
            raise ExprSyntaxError("Unknown operation {!r}".format(keyword), where)
        take("(")
        if keyword == "intro":
            label = take_label()
            take(",")
            name, name_pos = take()
            if name in "(),":
                raise ExprSyntaxError("Expected a vertex name", name_pos)
            if name in names:
                raise ExprSyntaxError("Duplicate vertex name {!r}".format(name), name_pos)
            names.add(name)
            take(")")
            node = Intro(label, name)
        elif keyword == "union":
            frames.append(["union", where])
            continue
        else:
            i = take_label()
            take(",")
            j = take_label()
            if i == j:
                raise ExprSyntaxError("{} with equal labels {}".format(keyword, i), where)
            take(",")
            frames.append([keyword, where, i, j])
            continue

        # reduce completed operands into their parents
        while len(frames) > 0:
            frame = frames[-1]
            if frame[0] == "union" and len(frame) == 2:
                frame.append(node)
                take(",")
                break
            take(")")
            frames.pop()
            if frame[0] == "union":
                node = Union(frame[2], node)
            elif frame[0] == "relab":
                node = Relabel(frame[2], frame[3], node)
            else:
                node = Join(frame[2], frame[3], node)
        else:
            token, where = tokens[pos]
            if token != "":
                raise ExprSyntaxError("Trailing input {!r}".format(token), where)
            return node


def render_expr(expr: CliqueExpr) -> str:
    parts: List[str] = []
    for node in postorder(expr):
        if isinstance(node, Intro):
            parts.append("intro({},{})".format(node.label, node.name))
        elif isinstance(node, Union):
            right = parts.pop()
            left = parts.pop()
            parts.append("union({},{})".format(left, right))
        else:
            keyword = "relab" if isinstance(node, Relabel) else "join"
            parts.append("{}({},{},{})".format(keyword, node.i, node.j, parts.pop()))
    return parts[0]


def random_expr(n: int, k: int, seed: int) -> CliqueExpr:
    """
    Random k-expression introducing exactly n vertices named v0..v{n-1}.

    A per-seed density drawn from {0, 1/4, 1/2, 3/4, 1} controls how often joins and relabels follow a union,
    so graphs range from edgeless to complete. Half of the seeds build linear expressions, the other half random
    union trees.
    """
    if n < 1 or k < 2:
        raise ExprValidationError("random_expr needs n >= 1 and k >= 2, got n={} k={}".format(n, k))
    rng = np.random.default_rng(seed)
    density = float(rng.choice([0.0, 0.25, 0.5, 0.75, 1.0]))
    linear = bool(rng.random() < 0.5)

    def random_pair():
        i, j = rng.choice(k, size=2, replace=False) + 1
        return int(i), int(j)

    if linear:
        expr = Intro(1 if rng.random() < density else int(rng.integers(1, k + 1)), "v0")
        for idx in range(1, n):
            label = 2 if rng.random() < density else int(rng.integers(1, k + 1))
            expr = Union(expr, Intro(label, "v{}".format(idx)))
            if rng.random() < density:
                for other in range(1, k + 1):
                    if other != label and rng.random() < max(density, 0.5):
                        expr = Join(other, label, expr)
            if label != 1 and rng.random() < density:
                expr = Relabel(label, 1, expr)
            elif rng.random() < density / 2:
                expr = Relabel(*random_pair(), expr)
        return expr

    pool: List[CliqueExpr] = [Intro(int(rng.integers(1, k + 1)), "v{}".format(idx)) for idx in range(n)]
    while len(pool) > 1:
        a, b = sorted(rng.choice(len(pool), size=2, replace=False))
        right = pool.pop(int(b))
        left = pool.pop(int(a))
        expr = Union(left, right)
        if rng.random() < density:
            expr = Join(*random_pair(), expr)
        if rng.random() < density:
            expr = Join(*random_pair(), expr)
        if rng.random() < density / 2:
            expr = Relabel(*random_pair(), expr)
        pool.append(expr)
    return pool[0]


def expr_for_graph(graph: Graph, order: Optional[Sequence[int]] = None) -> Tuple[CliqueExpr, int]:
    """
    Linear clique-expression for an arbitrary graph. Vertices are introduced in order with a fresh label, joined to
    their earlier neighbors, and moved to the shared label 1 once all their neighbors are present.
    Returns the expression and the number of labels it uses.
    """
    if graph.n == 0:
        raise ExprValidationError("Cannot build an expression for the empty graph")
    order = list(range(graph.n)) if order is None else list(order)
    position = {v: idx for idx, v in enumerate(order)}
    label_of = {}
    free: List[int] = []
    next_label = 2
    used = 1
    expr: Optional[CliqueExpr] = None
    open_vertices: List[int] = []
    for idx, v in enumerate(order):
        if len(free) > 0:
            label = free.pop()
        else:
            label = next_label
            next_label += 1
        used = max(used, label)
        leaf = Intro(label, "v{}".format(v))
        expr = leaf if expr is None else Union(expr, leaf)
        for w in sorted(graph.neighbors(v), key=lambda x: position[x]):
            if position[w] < idx:
                expr = Join(label_of[w], label, expr)
        label_of[v] = label
        open_vertices.append(v)
        still_open = []
        for x in open_vertices:
            if all(position[w] <= idx for w in graph.neighbors(x)):
                expr = Relabel(label_of[x], 1, expr)
                free.append(label_of[x])
                label_of[x] = 1
            else:
                still_open.append(x)
        open_vertices = still_open
    return expr, used

#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Tuple

from cwdel.errors import CwdelError
from cwdel.graph import Graph, PathDecomposition


def _hajos(g: Graph, h: Graph, edge_g: Tuple[int, int], edge_h: Tuple[int, int]) -> Tuple[Graph, Dict[int, int]]:
    v, w = edge_g
    x, y = edge_h
    if not g.has_edge(v, w):
        raise CwdelError("{{{}, {}}} is not an edge of the first graph".format(v, w))
    if not h.has_edge(x, y):
        raise CwdelError("{{{}, {}}} is not an edge of the second graph".format(x, y))
    # vertices of g keep their ids, v becomes s; the remaining vertices of h follow in order
    h_map = {x: v}
    for u in h.vertices():
        if u != x:
            h_map[u] = g.n + len(h_map) - 1
    edges = [e for e in g.edges() if set(e) != {v, w}]
    edges += [(h_map[a], h_map[b]) for a, b in h.edges() if {a, b} != {x, y}]
    edges.append((w, h_map[y]))
    tags = list(g.tags) + [h.tag(u) for u in h.vertices() if u != x]
    return Graph(g.n + h.n - 1, edges, tags), h_map


def hajos_merge(g: Graph, h: Graph, edge_g: Tuple[int, int], edge_h: Tuple[int, int]) -> Graph:
    """
    Hajos' construction: remove {v,w} from g and {x,y} from h, identify v and x into one vertex s and add {w,y}.
    Vertices of g keep their ids, vertices of h other than x are appended in order.
    """
    return _hajos(g, h, edge_g, edge_h)[0]


@dataclass(frozen=True)
class CriticalGraph:
    """
    The t-critical graph H^t_gamma: gamma cliques K_t chained by Hajos' construction.

    Roles: a[0..gamma] (a[l] and a[l+1] belong to clique l), b[0..gamma-1] and c[l][0..t-4].
    """

    graph: Graph
    t: int
    gamma: int
    a: Tuple[int, ...]
    b: Tuple[int, ...]
    c: Tuple[Tuple[int, ...], ...]
    decomposition: PathDecomposition

    def role_order(self) -> List[int]:
        """
        Vertices in a, b, c label order.
        """
        return list(self.a) + list(self.b) + [v for block in self.c for v in block]


def _clique(t: int, step: int) -> Graph:
    tags = ["a{}".format(step), "a'{}".format(step), "b{}".format(step)]
    tags += ["c{}_{}".format(step, k) for k in range(1, t - 2)]
    return Graph(t, combinations(range(t), 2), tags)


def build_critical(t: int, gamma: int) -> CriticalGraph:
    if t < 3 or gamma < 1:
        raise CwdelError("Critical graphs need t >= 3 and gamma >= 1, got t={} gamma={}".format(t, gamma))
    graph = _clique(t, 1)
    a = [0, 1]
    b = [2]
    c = [tuple(range(3, t))]
    for step in range(2, gamma + 1):
        # K_t labeled a, a', b, c...; merge along {b_{step-1}, a'_{step-1}} and {a_step, b_step}
        graph, h_map = _hajos(graph, _clique(t, step), (a[-1], b[-1]), (0, 2))
        a.append(h_map[1])
        b.append(h_map[2])
        c.append(tuple(h_map[u] for u in range(3, t)))
    tags = list(graph.tags)
    for idx, v in enumerate(a):
        tags[v] = "a{}".format(idx + 1)
    graph = Graph(graph.n, graph.edges(), tags)

    bags = []
    for ell in range(gamma):
        bags.append([a[ell], a[ell + 1], b[ell]] + list(c[ell]))
        if ell + 1 < gamma:
            bags.append([b[ell], b[ell + 1], a[ell + 1]])
    return CriticalGraph(graph, t, gamma, tuple(a), tuple(b), tuple(c), PathDecomposition(bags))


def pick_critical(r: int, min_size: int) -> CriticalGraph:
    """
    The smallest (r+1)-critical graph of the family with at least min_size vertices; it has at most min_size + r.
    """
    if r < 2 or min_size < 1:
        raise CwdelError("pick_critical needs r >= 2 and min_size >= 1, got r={} min_size={}".format(r, min_size))
    gamma = max(1, -(-(min_size - 1) // r))
    return build_critical(r + 1, gamma)

#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Sequence, Set, Tuple

from cwdel.errors import CwdelError, WitnessError
from cwdel.graph import Graph, GraphBuilder, PathDecomposition, TreeDecomposition
from cwdel.instances import HittingSetInstance
from cwdel.reductions.lowerbound import ReductionInstance


@dataclass(frozen=True)
class TrianglePath:
    """
    Vertices a_1..a_p and b_1..b_{2p+2}: a_s, b_{2s}, b_{2s+1} form a triangle and the b's form a path.
    a_s is adjacent to the central vertex of the s-th element of the set.
    """

    members: Tuple[int, ...]
    a: Tuple[int, ...]
    b: Tuple[int, ...]

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(self.a + self.b)

    def decomposition(self) -> PathDecomposition:
        # bags {b_{2s-1}, b_{2s}} alternating with {a_s, b_{2s}, b_{2s+1}}
        bags = []
        for s in range(len(self.a)):
            bags.append([self.b[2 * s], self.b[2 * s + 1]])
            bags.append([self.a[s], self.b[2 * s + 1], self.b[2 * s + 2]])
        bags.append([self.b[-2], self.b[-1]])
        return PathDecomposition(bags)


@dataclass
class VertexCoverReduction:
    """
    Vertex cover instance from a hitting set instance; instance.r is 1 so that the packing of triangles is checked
    as Deletion to 1-Colorable.
    """

    instance: ReductionInstance
    source: HittingSetInstance
    central: Tuple[int, ...]
    paths: Tuple[TrianglePath, ...]

    def manifest(self) -> Dict[str, object]:
        entries = self.instance.manifest()
        entries.update(universe=self.source.universe, sets=len(self.source.sets), t=self.source.budget)
        return entries


def build_vc_reduction(source: HittingSetInstance) -> VertexCoverReduction:
    builder = GraphBuilder()
    central = [builder.add_vertex("w{}".format(u + 1)) for u in range(source.universe)]
    paths = []
    packing = []
    for j, members in enumerate(source.sets):
        p = len(members)
        a = [builder.add_vertex("P{}:a{}".format(j + 1, s + 1)) for s in range(p)]
        b = [builder.add_vertex("P{}:b{}".format(j + 1, s + 1)) for s in range(2 * p + 2)]
        for s in range(2 * p + 1):
            builder.add_edge(b[s], b[s + 1])
        for s in range(p):
            # a_s with b_{2s} and b_{2s+1}, 1-indexed
            builder.add_clique([a[s], b[2 * s + 1], b[2 * s + 2]])
            builder.add_edge(a[s], central[members[s]])
            packing.append((frozenset([a[s], b[2 * s + 1], b[2 * s + 2]]), 2))
        paths.append(TrianglePath(tuple(members), tuple(a), tuple(b)))
    graph = builder.build()
    budget = source.budget + 2 * sum(len(members) for members in source.sets)
    instance = ReductionInstance(
        kind="vc",
        r=1,
        graph=graph,
        budget=budget,
        modulator=tuple((w,) for w in central),
        packing=tuple(packing),
        decompositions=tuple(path.decomposition() for path in paths),
        width=2,
        central=tuple(central),
    )
    return VertexCoverReduction(instance, source, tuple(central), tuple(paths))


def _repair_path(path: TrianglePath, central: Sequence[int], cover: Set[int]) -> Set[int]:
    """
    Cover of the triangle path with 2p vertices, given that some central neighbor is in the cover.
    """
    p = len(path.a)
    star = next(s for s in range(p) if central[path.members[s]] in cover)
    # 0-indexed star, the a-vertex at star is left to its central neighbor
    chosen = {path.a[s] for s in range(p) if s != star}
    chosen.update(path.b[2 * s + 1] for s in range(star + 1))
    chosen.update(path.b[2 * s + 2] for s in range(star, p))
    return chosen


def forward_vc_solution(reduction: VertexCoverReduction, hitting: Iterable[int]) -> FrozenSet[int]:
    """
    Vertex cover of size at most b from a hitting set of size at most t.
    """
    hitting = set(hitting)
    if not reduction.source.is_hitting_set(hitting):
        raise WitnessError("{} is not a hitting set".format(sorted(u + 1 for u in hitting)))
    cover = {reduction.central[u] for u in hitting}
    for path in reduction.paths:
        cover |= _repair_path(path, reduction.central, cover)
    return frozenset(cover)


def _is_vertex_cover(graph: Graph, cover: Set[int]) -> bool:
    return all(u in cover or v in cover for u, v in graph.edges())


def extract_hitting_set(reduction: VertexCoverReduction, cover: Iterable[int]) -> FrozenSet[int]:
    """
    Hitting set of size at most t from a vertex cover of size at most b.

    Every path paying more than 2p gets one of its central neighbors added and is re-covered with 2p vertices, which
    does not increase the size; afterwards every path has a central neighbor in the cover.
    """
    cover = set(cover)
    graph = reduction.instance.graph
    if not _is_vertex_cover(graph, cover):
        raise WitnessError("Vertex set is not a vertex cover")
    if len(cover) > reduction.instance.budget:
        raise WitnessError(
            "Vertex cover of size {} exceeds the budget {}".format(len(cover), reduction.instance.budget)
        )
    while True:
        over = [path for path in reduction.paths if len(cover & path.vertices) > 2 * len(path.a)]
        if len(over) == 0:
            break
        path = over[0]
        cover.add(reduction.central[path.members[0]])
        cover = (cover - path.vertices) | _repair_path(path, reduction.central, cover)
    for path in reduction.paths:
        if not any(reduction.central[u] in cover for u in path.members):
            raise WitnessError("Triangle path of set {} has no central neighbor in the cover".format(path.members))
    index = {w: u for u, w in enumerate(reduction.central)}
    return frozenset(index[w] for w in cover if w in index)


@dataclass(frozen=True)
class MaxCutReduction:
    """
    G' has the vertices of G, a vertex x adjacent to all of them and, per edge uv of G, vertices e_u, e_v with edges
    x e_u, x e_v, e_u e_v, e_u u and e_v v; the edges of G are not kept. G has a vertex cover of size |V| - b iff G'
    has a cut of size 4|E| + b.
    """

    graph: Graph
    source: Graph
    x: int
    edge_vertices: Tuple[Tuple[int, int], ...]
    modulator: Tuple[int, ...]

    def cut_target(self, b: int) -> int:
        return 4 * self.source.m + b

    def cover_bound(self, b: int) -> int:
        return self.source.n - b


def build_maxcut_reduction(source: Graph, modulator: Iterable[int] = ()) -> MaxCutReduction:
    builder = GraphBuilder()
    for v in source.vertices():
        builder.add_vertex(source.tag(v))
    x = builder.add_vertex("x")
    builder.join([x], source.vertices())
    edge_vertices = []
    for u, v in source.edges():
        e_u = builder.add_vertex("e{}_{}:{}".format(u + 1, v + 1, u + 1))
        e_v = builder.add_vertex("e{}_{}:{}".format(u + 1, v + 1, v + 1))
        builder.add_clique([x, e_u, e_v])
        builder.add_edge(e_u, u)
        builder.add_edge(e_v, v)
        edge_vertices.append((e_u, e_v))
    modulator = tuple(sorted(set(modulator) | {x}))
    return MaxCutReduction(builder.build(), source, x, tuple(edge_vertices), modulator)


def forward_cut(reduction: MaxCutReduction, cover: Iterable[int]) -> FrozenSet[int]:
    """
    Side of a cut of size 4|E| + |V| - |cover| opposite to x: the vertices outside the cover plus one or two edge
    vertices per edge.
    """
    cover = set(cover)
    if not _is_vertex_cover(reduction.source, cover):
        raise WitnessError("Vertex set is not a vertex cover")
    side = {v for v in reduction.source.vertices() if v not in cover}
    for (u, v), (e_u, e_v) in zip(reduction.source.edges(), reduction.edge_vertices):
        if u in cover and v in cover:
            side.update([e_u, e_v])
        elif u in cover:
            side.add(e_u)
        else:
            side.add(e_v)
    return frozenset(side)


@dataclass(frozen=True)
class KrFreeReduction:
    """
    Every edge of G becomes an r-clique with r-2 new vertices. G has a vertex cover of size b iff b deletions make
    G' K_r-free, so the budget is carried over unchanged.
    """

    graph: Graph
    source: Graph
    r: int
    edge_cliques: Tuple[Tuple[int, ...], ...]

    def budget(self, b: int) -> int:
        return b

    def lift_decomposition(self, decomposition: TreeDecomposition, modulator: Iterable[int] = ()) -> TreeDecomposition:
        """
        Decomposition of G' - X from one of G - X: below a bag holding both endpoints of an edge goes a leaf with its
        clique. Edges with an endpoint in X hang below a bag of the other endpoint, or below node 0.
        """
        modulator = set(modulator)
        lifted = TreeDecomposition(decomposition.bags, decomposition.edges)
        first: Dict[int, int] = {}
        for node, bag in enumerate(decomposition.bags):
            for v in bag:
                first.setdefault(v, node)
        for (u, v), clique in zip(self.source.edges(), self.edge_cliques):
            inside = [w for w in (u, v) if w not in modulator]
            if len(inside) == 2:
                parent = next(node for node, bag in enumerate(decomposition.bags) if u in bag and v in bag)
            elif len(inside) == 1:
                parent = first[inside[0]]
            else:
                parent = 0 if len(lifted) > 0 else None
            lifted.add_bag(inside + list(clique), parent)
        return lifted


def build_krfree_reduction(source: Graph, r: int) -> KrFreeReduction:
    if r < 3:
        raise CwdelError("K_r-free deletion needs r >= 3, got {}".format(r))
    builder = GraphBuilder()
    for v in source.vertices():
        builder.add_vertex(source.tag(v))
    cliques = []
    for u, v in source.edges():
        extra = builder.add_vertices(r - 2, "k{}_{}".format(u + 1, v + 1))
        builder.add_clique([u, v] + extra)
        cliques.append(tuple(extra))
    return KrFreeReduction(builder.build(), source, r, tuple(cliques))


def forward_krfree_deletion(reduction: KrFreeReduction, cover: Iterable[int]) -> FrozenSet[int]:
    cover = frozenset(cover)
    if not _is_vertex_cover(reduction.source, set(cover)):
        raise WitnessError("Vertex set is not a vertex cover")
    return cover


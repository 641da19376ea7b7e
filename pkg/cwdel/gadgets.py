#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from cwdel.errors import GadgetError
from cwdel.graph import GraphBuilder, TreeDecomposition

PackingEntry = Tuple[FrozenSet[int], int]


@dataclass(frozen=True)
class GadgetHandle:
    """
    Result of adding a gadget to a builder.

    attachments maps role names (u, v, U, F) to caller-owned vertex ids, internal lists the vertices created by the
    gadget. packing holds (vertex set, claimed minimum deletions) entries. active and passive are the deletion sets
    inside the gadget of its two canonical partial solutions, both matching the packing claim. decomposition covers
    the internal vertices and the head v; its node 0 contains v whenever the gadget has a head.
    """

    kind: str
    attachments: Dict[str, Tuple[int, ...]]
    internal: Tuple[int, ...]
    packing: Tuple[PackingEntry, ...]
    active: FrozenSet[int]
    passive: FrozenSet[int]
    decomposition: TreeDecomposition = field(compare=False)
    roles: Dict[str, Tuple[int, ...]] = field(default_factory=dict, compare=False)

    @property
    def claim(self) -> int:
        return sum(c for _, c in self.packing)

    def piece_vertices(self) -> FrozenSet[int]:
        return frozenset().union(*(piece for piece, _ in self.packing)) if len(self.packing) > 0 else frozenset()


def _check_distinct(builder: GraphBuilder, u: int, v: int):
    if u == v:
        raise GadgetError("Gadget endpoints must differ, got {} twice".format(u))
    for x in (u, v):
        if not 0 <= x < builder.n:
            raise GadgetError("Vertex {} does not exist".format(x))


def _is_true_twin_clique(builder: GraphBuilder, U: Sequence[int]) -> bool:
    if len(U) <= 1:
        return True
    closed = [builder.neighbors(u) | {u} for u in U]
    return all(c == closed[0] for c in closed[1:])


def _deletion_edge(builder: GraphBuilder, u: int, v: int, r: int, tag: str) -> List[int]:
    internal = builder.add_vertices(r - 1, tag)
    builder.add_clique([u, v] + internal)
    return internal


def add_deletion_edge(builder: GraphBuilder, u: int, v: int, r: int, tag: str = "de") -> GadgetHandle:
    """
    Adds r-1 vertices forming a K_{r+1} with u and v. Any solution deletes one vertex of it, w.l.o.g. u or v.
    """
    _check_distinct(builder, u, v)
    internal = _deletion_edge(builder, u, v, r, tag)
    piece = frozenset([u, v] + internal)
    return GadgetHandle(
        kind="deletion-edge",
        attachments={"u": (u,), "v": (v,)},
        internal=tuple(internal),
        packing=((piece, 1),),
        active=frozenset([v]),
        passive=frozenset([u]),
        decomposition=TreeDecomposition([piece]),
    )


def add_thin_arrow(
    builder: GraphBuilder, u: int, v: int, r: int, tag: str = "arrow", tail_in_scope: bool = False
) -> GadgetHandle:
    """
    Thin arrow from u to v: a new vertex w with deletion edges u-w and w-v.

    Passive deletes w, active (u deleted) deletes v. The packing entry is the K_{r+1} of the deletion edge w-v.
    The decomposition has the head bag at node 0 and the tail bag at node 1; u is part of the tail bag only with
    tail_in_scope, i.e. when u is not a modulator vertex.
    """
    _check_distinct(builder, u, v)
    w = builder.add_vertex(tag + ":w")
    tail_edge = _deletion_edge(builder, u, w, r, tag + ":t")
    head_edge = _deletion_edge(builder, w, v, r, tag + ":h")
    decomposition = TreeDecomposition([[v, w] + head_edge])
    decomposition.add_bag([w] + tail_edge + ([u] if tail_in_scope else []), 0)
    return GadgetHandle(
        kind="thin-arrow",
        attachments={"u": (u,), "v": (v,)},
        internal=tuple([w] + tail_edge + head_edge),
        packing=((frozenset([v, w] + head_edge), 1),),
        active=frozenset([v]),
        passive=frozenset([w]),
        decomposition=decomposition,
        roles={"w": (w,), "tail_edge": tuple(tail_edge), "head_edge": tuple(head_edge)},
    )


def add_thick_arrow(
    builder: GraphBuilder, U: Sequence[int], v: int, ell: int, r: int, tag: str = "thick"
) -> GadgetHandle:
    """
    Thick ell-arrow from a true twinclass U of size r to v.

    A clique K_ell joined to U, to v and to a clique K_{r-ell} that is itself joined to v, so that K_ell, K_{r-ell}
    and v form a K_{r+1}, and an independent set I of size ell-1 with a deletion edge between every vertex of K_ell
    and every vertex of I. The piece A - U needs ell deletions; v can be among them only if at least ell vertices
    of U are deleted.
    """
    U = list(U)
    if not 1 <= ell <= r:
        raise GadgetError("Thick arrow level must be in 1..{}, got {}".format(r, ell))
    if len(U) != r or len(set(U)) != r:
        raise GadgetError("Thick arrow needs a twinclass of {} vertices, got {}".format(r, len(set(U))))
    if v in U or any(builder.has_edge(u, v) for u in U):
        raise GadgetError("Head {} must not be adjacent to the twinclass".format(v))
    if not _is_true_twin_clique(builder, U):
        raise GadgetError("Vertices {} are not a clique of true twins".format(U))

    k_ell = builder.add_vertices(ell, tag + ":k")
    k_rest = builder.add_vertices(r - ell, tag + ":q")
    indep = builder.add_vertices(ell - 1, tag + ":i")
    builder.add_clique(k_ell + k_rest + [v])
    builder.join(U, k_ell)
    edges: Dict[Tuple[int, int], List[int]] = {}
    for k in k_ell:
        for x in indep:
            edges[(k, x)] = _deletion_edge(builder, k, x, r, tag + ":e")

    decomposition = TreeDecomposition([k_ell + k_rest + [v]])
    for x in indep:
        node = decomposition.add_bag(k_ell + [x], 0)
        for k in k_ell:
            decomposition.add_bag([k, x] + edges[(k, x)], node)

    internal = k_ell + k_rest + indep + [w for ws in edges.values() for w in ws]
    return GadgetHandle(
        kind="thick-arrow",
        attachments={"U": tuple(U), "v": (v,)},
        internal=tuple(internal),
        packing=((frozenset(internal + [v]), ell),),
        active=frozenset(indep + [v]),
        passive=frozenset(k_ell),
        decomposition=decomposition,
        roles={"k_ell": tuple(k_ell), "k_rest": tuple(k_rest), "indep": tuple(indep)},
    )


def add_color_set_gadget(
    builder: GraphBuilder,
    U: Sequence[int],
    v: int,
    C: Iterable[int],
    F: Sequence[int],
    r: int,
    tag: str = "cset",
    separate_pieces: bool = False,
) -> GadgetHandle:
    """
    Color-set gadget B_C(U, v) for C a proper subset of the colors 1..r, with F the central clique (f_s colored s).

    With ell = r - |C| and the missing colors c_1 < ... < c_ell, it has vertices w_1..w_{2 ell + 1}: w_{2i-1} is
    joined to U and to F minus f_{c_i}, w_{2i} and w_{2 ell + 1} are joined to F minus f_1, w_{2i} is adjacent to
    w_{2 ell + 1}, and deletion edges connect w_{2i-1} with w_{2i} and w_{2 ell + 1} with v. B - U needs ell + 1
    deletions and v can be among them only if the colors used on U lie in C.

    With separate_pieces the packing lists the ell + 1 deletion-edge cliques individually.
    """
    U = list(U)
    F = list(F)
    C = sorted(set(C))
    if any(not 1 <= c <= r for c in C):
        raise GadgetError("Colors {} outside 1..{}".format(C, r))
    if len(C) == r:
        raise GadgetError("Color set must be a proper subset of 1..{}".format(r))
    if len(C) > len(U):
        raise GadgetError("Color set {} larger than the twinclass {}".format(C, U))
    if len(F) != r:
        raise GadgetError("Central clique needs {} vertices, got {}".format(r, len(F)))
    if v in U or any(builder.has_edge(u, v) for u in U):
        raise GadgetError("Head {} must not be adjacent to the twinclass".format(v))
    if not _is_true_twin_clique(builder, U):
        raise GadgetError("Vertices {} are not a clique of true twins".format(U))

    missing = [c for c in range(1, r + 1) if c not in C]
    ell = len(missing)
    odd = []
    even = []
    for i in range(ell):
        odd.append(builder.add_vertex("{}:w{}".format(tag, 2 * i + 1)))
        even.append(builder.add_vertex("{}:w{}".format(tag, 2 * i + 2)))
    last = builder.add_vertex("{}:w{}".format(tag, 2 * ell + 1))

    builder.join(odd, U)
    for w, c in zip(odd, missing):
        builder.join([w], [f for s, f in enumerate(F, start=1) if s != c])
    builder.join(even + [last], F[1:])
    builder.join(even, [last])
    pair_edges = [_deletion_edge(builder, a, b, r, tag + ":e") for a, b in zip(odd, even)]
    head_edge = _deletion_edge(builder, last, v, r, tag + ":h")

    decomposition = TreeDecomposition([[v, last] + head_edge])
    for a, b, ws in zip(odd, even, pair_edges):
        node = decomposition.add_bag([last, b], 0)
        decomposition.add_bag([a, b] + ws, node)

    internal = odd + even + [last] + [w for ws in pair_edges for w in ws] + head_edge
    if separate_pieces:
        packing = [(frozenset([a, b] + ws), 1) for a, b, ws in zip(odd, even, pair_edges)]
        packing.append((frozenset([last, v] + head_edge), 1))
    else:
        packing = [(frozenset(internal + [v]), ell + 1)]
    return GadgetHandle(
        kind="color-set",
        attachments={"U": tuple(U), "v": (v,), "F": tuple(F)},
        internal=tuple(internal),
        packing=tuple(packing),
        active=frozenset(even + [v]),
        passive=frozenset(odd + [last]),
        decomposition=decomposition,
        roles={"odd": tuple(odd), "even": tuple(even), "last": (last,), "missing": tuple(missing)},
    )


def add_decoding_gadget(builder: GraphBuilder, indep_size: int, r: int, tag: str = "dec") -> GadgetHandle:
    """
    K_r joined to an independent set of indep_size vertices, the first of which is the distinguished vertex.

    Active deletes the distinguished vertex (the rest of the independent set has to go through other gadgets),
    passive deletes the first K_r vertex.
    """
    if indep_size < 1:
        raise GadgetError("Decoding gadget needs a nonempty independent set, got {}".format(indep_size))
    clique = builder.add_vertices(r, tag + ":k")
    indep = builder.add_vertices(indep_size, tag + ":y")
    builder.add_clique(clique)
    builder.join(clique, indep)
    builder.set_tag(indep[0], tag + ":yhat")
    decomposition = TreeDecomposition([clique + [indep[0]]])
    for y in indep[1:]:
        decomposition.add_bag(clique + [y], 0)
    return GadgetHandle(
        kind="decoding",
        attachments={},
        internal=tuple(clique + indep),
        packing=((frozenset(clique + [indep[0]]), 1),),
        active=frozenset([indep[0]]),
        passive=frozenset([clique[0]]),
        decomposition=decomposition,
        roles={"clique": tuple(clique), "indep": tuple(indep), "yhat": (indep[0],), "private": tuple(indep[1:])},
    )


def thick_arrow_size(ell: int, r: int) -> int:
    return ell + (r - ell) + (ell - 1) + ell * (ell - 1) * (r - 1)


def color_set_size(color_count: int, r: int) -> int:
    ell = r - color_count
    return 2 * ell + 1 + (ell + 1) * (r - 1)


def thin_arrow_size(r: int) -> int:
    return 1 + 2 * (r - 1)


def pairwise_disjoint(pieces: Iterable[FrozenSet[int]]) -> bool:
    seen = set()
    for piece in pieces:
        if not seen.isdisjoint(piece):
            return False
        seen.update(piece)
    return True


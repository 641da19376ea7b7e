#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from omegaconf import DictConfig
from tqdm import tqdm

from cwdel.critical import CriticalGraph, pick_critical
from cwdel.errors import CwdelError, GadgetError, SizeGuardError, UnsatisfiedAssignmentError
from cwdel.gadgets import (
    GadgetHandle,
    PackingEntry,
    add_color_set_gadget,
    add_decoding_gadget,
    add_thick_arrow,
    add_thin_arrow,
    color_set_size,
    thick_arrow_size,
    thin_arrow_size,
)
from cwdel.graph import Graph, GraphBuilder, TreeDecomposition
from cwdel.instances import CnfFormula
from cwdel.oracle import Solution, extend_coloring
from cwdel.reductions.params import (
    DENSE,
    SPARSE,
    Member,
    ReductionParams,
    assignment_index,
    build_phi_kappa,
    group_variables,
    make_params,
    member_count,
    satisfying_indices,
)
from cwdel.utils import load_config


@dataclass(frozen=True)
class GadgetRecord:
    """
    A gadget placed by a reduction. role is one of structure, decoding, selector or clause; member indexes the
    group member a decoding, selector or clause gadget belongs to.
    """

    handle: GadgetHandle
    role: str
    group: int
    member: int = -1
    clause: int = -1


@dataclass
class ReductionInstance:
    """
    A generated Deletion to r-Colorable instance (graph, budget) with its modulator blocks, packing and one tree
    decomposition per connected component of the graph minus the modulator, ordered by smallest vertex.
    """

    kind: str
    r: int
    graph: Graph
    budget: int
    modulator: Tuple[Tuple[int, ...], ...]
    packing: Tuple[PackingEntry, ...]
    decompositions: Tuple[TreeDecomposition, ...]
    width: int
    central: Tuple[int, ...] = ()
    groups: Tuple[Tuple[Tuple[int, ...], ...], ...] = ()
    members: Tuple[Member, ...] = ()
    kappa: Tuple[Tuple[Member, ...], ...] = ()
    params: Optional[ReductionParams] = None
    formula: Optional[CnfFormula] = None
    records: Tuple[GadgetRecord, ...] = field(default=(), repr=False)

    @property
    def modulator_vertices(self) -> List[int]:
        return sorted(v for block in self.modulator for v in block)

    @property
    def packing_cost(self) -> int:
        return sum(claim for _, claim in self.packing)

    def manifest(self) -> Dict[str, object]:
        entries: Dict[str, object] = {
            "kind": self.kind,
            "r": self.r,
            "n": self.graph.n,
            "m": self.graph.m,
            "b": self.budget,
            "modulator_blocks": len(self.modulator),
            "modulator_vertices": len(self.modulator_vertices),
            "packing_pieces": len(self.packing),
            "cost_packing": self.packing_cost,
            "components": len(self.decompositions),
            "width": self.width,
        }
        if self.params is not None:
            entries.update(p0=self.params.p0, p=self.params.p, t=self.params.t, copies=self.params.copies)
        return entries


class _Host:
    """
    Decomposition of a host graph (critical graph or decoding gadget) that gadget decompositions get hung below.
    """

    def __init__(self, decomposition: TreeDecomposition):
        self.decomposition = decomposition
        self.node_of: Dict[int, int] = {}
        for node, bag in enumerate(decomposition.bags):
            for v in bag:
                self.node_of.setdefault(v, node)

    def hang(self, handle: GadgetHandle) -> int:
        return self.decomposition.attach(handle.decomposition, self.node_of[handle.attachments["v"][0]])


def _embed_critical(builder: GraphBuilder, critical: CriticalGraph, tag: str) -> Tuple[List[int], _Host]:
    graph = critical.graph
    ids = [builder.add_vertex("{}:{}".format(tag, graph.tag(v))) for v in graph.vertices()]
    for a, b in graph.edges():
        builder.add_edge(ids[a], ids[b])
    bags = [[ids[v] for v in bag] for bag in critical.decomposition.bags]
    return [ids[v] for v in critical.role_order()], _Host(TreeDecomposition(bags, critical.decomposition.edges))


def _critical_size(r: int, min_size: int) -> int:
    gamma = max(1, -(-(min_size - 1) // r))
    return gamma * r + 1


def structure_levels(params: ReductionParams) -> List[Tuple[int, int]]:
    """
    (deletion threshold, subset size) of the structure gadgets of one group.
    """
    if params.setting == SPARSE:
        return [(1, params.r * params.p // (params.r + 1) + 1)]
    return [(ell, sum(params.size_counts[params.r - ell + 1 :]) + 1) for ell in range(1, params.r + 1)]


def decoding_size(params: ReductionParams) -> int:
    """
    Size of the large independent set of a decoding gadget, the distinguished vertex included.
    """
    if params.setting == SPARSE:
        return params.p + 1
    return params.p - params.size_counts[params.r] + 1


def predict_size(params: ReductionParams, formula: CnfFormula) -> int:
    r = params.r
    dense = params.setting == DENSE
    total = r + params.t * params.p * (r if dense else 1)
    for ell, size in structure_levels(params):
        arrow = thick_arrow_size(ell, r) if dense else thin_arrow_size(r)
        total += params.t * comb(params.p, size) * params.copies * (_critical_size(r, size) + size * arrow)
    selectors = sum(c * color_set_size(k, r) for k, c in enumerate(params.size_counts) if k < r)
    total += formula.m * params.t * member_count(params) * (r + decoding_size(params) + selectors)
    for j in range(formula.m):
        arrows = sum(
            len(satisfying_indices(formula, group_variables(params, formula.n_vars, i), j)) for i in range(params.t)
        )
        total += _critical_size(r, max(1, formula.q) << params.p0) + arrows * thin_arrow_size(r)
    return total


def _build_lower_bound(
    setting: str, formula: CnfFormula, r: int, p0: int, cfg: Optional[DictConfig]
) -> ReductionInstance:
    cfg = load_config(cfg)
    if formula.m == 0:
        raise CwdelError("Formula has no clauses")
    params = make_params(setting, r, p0, formula.n_vars)
    predicted = predict_size(params, formula)
    if predicted > cfg.max_vertices:
        raise SizeGuardError(predicted, cfg.max_vertices)
    dense = setting == DENSE

    builder = GraphBuilder()
    central = [builder.add_vertex("f{}".format(s)) for s in range(1, r + 1)]
    builder.add_clique(central)
    groups: List[List[List[int]]] = []
    for i in range(params.t):
        classes = []
        for k in range(params.p):
            block = builder.add_vertices(r if dense else 1, "u{}_{}".format(i + 1, k + 1))
            builder.add_clique(block)
            classes.append(block)
        groups.append(classes)

    members: List[Member] = []
    kappa: List[List[Member]] = []
    for i in range(params.t):
        group_members, table = build_phi_kappa(params, len(group_variables(params, formula.n_vars, i)))
        members = group_members
        kappa.append(table)

    packing: List[PackingEntry] = []
    records: List[GadgetRecord] = []
    forest: List[TreeDecomposition] = []

    # structure gadgets
    jobs = [(i, ell, size) for i in range(params.t) for ell, size in structure_levels(params)]
    for i, ell, size in tqdm(jobs, disable=not cfg.progress, desc="structure"):
        critical = pick_critical(r, size)
        for sidx, subset in enumerate(combinations(range(params.p), size)):
            for copy in range(params.copies):
                tag = "L{}.{}.{}.{}".format(i + 1, ell, sidx + 1, copy + 1)
                private, host = _embed_critical(builder, critical, tag)
                for k, v in zip(subset, private):
                    if dense:
                        handle = add_thick_arrow(builder, groups[i][k], v, ell, r, tag=tag + ":A")
                    else:
                        handle = add_thin_arrow(builder, groups[i][k][0], v, r, tag=tag + ":a")
                    host.hang(handle)
                    packing.extend(handle.packing)
                    records.append(GadgetRecord(handle, "structure", i))
                forest.append(host.decomposition)

    # decoding gadgets with their selectors
    decoders: Dict[Tuple[int, int, int], Tuple[GadgetHandle, _Host]] = {}
    jobs = [(j, i) for j in range(formula.m) for i in range(params.t)]
    for j, i in tqdm(jobs, disable=not cfg.progress, desc="decoding"):
        for idx, member in enumerate(members):
            tag = "Y{}.{}.{}".format(j + 1, i + 1, idx + 1)
            decoder = add_decoding_gadget(builder, decoding_size(params), r, tag=tag)
            host = _Host(decoder.decomposition)
            packing.extend(decoder.packing)
            records.append(GadgetRecord(decoder, "decoding", i, idx, j))
            private = iter(decoder.roles["private"])
            for k, colors in enumerate(member):
                if len(colors) == r:
                    continue
                v = next(private, None)
                if v is None:
                    raise GadgetError("Decoding gadget {} has too few private vertices".format(tag))
                handle = add_color_set_gadget(
                    builder,
                    groups[i][k],
                    v,
                    colors,
                    central,
                    r,
                    tag="{}:W{}".format(tag, k + 1),
                    separate_pieces=not dense,
                )
                host.hang(handle)
                packing.extend(handle.packing)
                records.append(GadgetRecord(handle, "selector", i, idx, j))
            if next(private, None) is not None:
                raise GadgetError("Decoding gadget {} has unused private vertices".format(tag))
            decoders[(j, i, idx)] = (decoder, host)

    # clause gadgets
    critical = pick_critical(r, max(1, formula.q) << p0)
    for j in range(formula.m):
        tag = "Z{}".format(j + 1)
        private, host = _embed_critical(builder, critical, tag)
        private = iter(private)
        for i in range(params.t):
            for index in satisfying_indices(formula, group_variables(params, formula.n_vars, i), j):
                v = next(private, None)
                if v is None:
                    raise GadgetError("Clause gadget {} has too few private vertices".format(tag))
                decoder, decoder_host = decoders.pop((j, i, index))
                handle = add_thin_arrow(builder, decoder.roles["yhat"][0], v, r, tag=tag + ":a", tail_in_scope=True)
                root = host.hang(handle)
                host.decomposition.attach(decoder_host.decomposition, root + 1)
                packing.extend(handle.packing)
                records.append(GadgetRecord(handle, "clause", i, index, j))
        forest.append(host.decomposition)
    forest.extend(host.decomposition for _, host in decoders.values())

    graph = builder.build()
    cost = sum(claim for _, claim in packing)
    modulator = [tuple(central[s : s + 1]) for s in range(r)]
    modulator += [tuple(block) for classes in groups for block in classes]
    forest.sort(key=lambda dec: min(dec.vertices()))
    return ReductionInstance(
        kind=setting,
        r=r,
        graph=graph,
        budget=cost + params.t * params.group_deletions,
        modulator=tuple(modulator),
        packing=tuple(packing),
        decompositions=tuple(forest),
        width=r,
        central=tuple(central),
        groups=tuple(tuple(tuple(block) for block in classes) for classes in groups),
        members=tuple(members),
        kappa=tuple(tuple(table) for table in kappa),
        params=params,
        formula=formula,
        records=tuple(records),
    )


def build_dense_reduction(formula: CnfFormula, r: int, p0: int, cfg: Optional[DictConfig] = None) -> ReductionInstance:
    """
    Instance with a twinclass modulator of t p + r blocks: p true twinclasses of size r per variable group and the
    central clique.
    """
    return _build_lower_bound(DENSE, formula, r, p0, cfg)


def build_sparse_reduction(formula: CnfFormula, r: int, p0: int, cfg: Optional[DictConfig] = None) -> ReductionInstance:
    """
    Instance with a modulator of t p + r vertices: an independent set of p vertices per variable group and the central
    clique.
    """
    return _build_lower_bound(SPARSE, formula, r, p0, cfg)


def representative(block: Sequence[int], colors) -> Tuple[Dict[int, int], List[int]]:
    """
    The colors go to the lowest-id vertices of the twinclass in increasing order, the remaining vertices are deleted.
    """
    block = sorted(block)
    colors = sorted(colors)
    return dict(zip(block, colors)), block[len(colors) :]


def chosen_members(instance: ReductionInstance, assignment: Sequence[bool]) -> List[int]:
    formula = instance.formula
    return [
        assignment_index([assignment[x - 1] for x in group_variables(instance.params, formula.n_vars, i)])
        for i in range(instance.params.t)
    ]


def forward_solution(
    instance: ReductionInstance, assignment: Sequence[bool], cfg: Optional[DictConfig] = None
) -> Solution:
    """
    Solution of cost exactly b from a satisfying assignment: the central clique is colored f_s = s, every group takes
    the member its partial assignment is mapped to, gadgets use their active solution exactly when their trigger holds
    and the rest of the graph is list-colored component by component.
    """
    cfg = load_config(cfg)
    formula = instance.formula
    if formula is None or instance.params is None:
        raise CwdelError("Instance of kind {} has no formula".format(instance.kind))
    if len(assignment) != formula.n_vars or not formula.satisfied_by(assignment):
        raise UnsatisfiedAssignmentError("Assignment does not satisfy the formula")
    chosen = chosen_members(instance, assignment)

    precolored = {f: s for s, f in enumerate(instance.central, start=1)}
    deleted = set()
    for i, classes in enumerate(instance.groups):
        member = instance.kappa[i][chosen[i]]
        for block, colors in zip(classes, member):
            coloring, removed = representative(block, colors)
            precolored.update(coloring)
            deleted.update(removed)

    for record in instance.records:
        handle = record.handle
        if record.role == "structure":
            tail = handle.attachments.get("U", handle.attachments.get("u"))
            threshold = len(handle.roles["k_ell"]) if handle.kind == "thick-arrow" else 1
            active = sum(1 for u in tail if u in deleted) >= threshold
        else:
            active = record.member == chosen[record.group]
        deleted.update(handle.active if active else handle.passive)
    return extend_coloring(instance.graph, instance.r, deleted, precolored, cfg.coloring_node_cap)

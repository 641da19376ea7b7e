#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from omegaconf import DictConfig

from cwdel.graph import Graph, TreeDecomposition, twinclass_partition
from cwdel.instances import ProblemKind
from cwdel.oracle import solve_exact
from cwdel.reductions.cover import (
    build_krfree_reduction,
    build_maxcut_reduction,
    build_vc_reduction,
    forward_cut,
    forward_krfree_deletion,
    forward_vc_solution,
)
from cwdel.reductions.domination import (
    build_ds_doubling,
    build_tds_reduction,
    doubling_quotient_embeds,
    forward_tds_solution,
)
from cwdel.reductions.lowerbound import build_dense_reduction, build_sparse_reduction, forward_solution
from cwdel.utils import load_config, read_decomposition


def get_reduction(cfg):
    """
    Returns the reduction selected by cfg.kind.
    """
    if not hasattr(cfg, "kind"):
        raise ValueError("Could not find 'kind' option in the config file. Please check it")

    if cfg.kind == "dense":
        return DenseLowerBound(cfg)
    elif cfg.kind == "sparse":
        return SparseLowerBound(cfg)
    elif cfg.kind == "vc":
        return HittingSetToVertexCover(cfg)
    elif cfg.kind == "maxcut":
        return VertexCoverToMaxCut(cfg)
    elif cfg.kind == "krfree":
        return VertexCoverToKrFree(cfg)
    elif cfg.kind == "ds":
        return TotalToDominatingSet(cfg)
    elif cfg.kind == "tds":
        return SatToTotalDominatingSet(cfg)
    else:
        raise ValueError("Reduction {} unavailable".format(cfg.kind))


@dataclass
class Reduced:
    """
    Output of a reduction: the target graph with its budget, decomposition witnesses, the manifest entries and the
    builder's own instance object, which forward() needs.
    """

    graph: Graph
    budget: int
    decompositions: List[TreeDecomposition]
    manifest: Dict[str, object]
    target: object = field(repr=False, default=None)


class Reduction(ABC):
    """
    Base class of the instance generators. A reduction reads a source instance in its input_format, builds the target
    instance and maps source witnesses to target witnesses.
    """

    input_format = "edge_list"
    source_kind = ProblemKind.VERTEX_COVER
    # problem the target instance belongs to, None for Deletion to r-Colorable
    target_kind: Optional[ProblemKind] = None

    # Initialize the reduction
    @abstractmethod
    def __init__(self, cfg: DictConfig):
        self.cfg = cfg
        self.solver = load_config(cfg)

    # Build the target instance
    @abstractmethod
    def build(self, source) -> Reduced:
        pass

    # Target witness from a source witness
    @abstractmethod
    def forward(self, reduced: Reduced, witness):
        pass

    def describe(self, reduced: Reduced) -> Dict[str, object]:
        entries = dict(reduced.manifest)
        entries.setdefault("kind", self.cfg.kind)
        entries.setdefault("b", reduced.budget)
        return entries

    def source_optimum(self, source):
        """
        Optimum and witness of the source instance by the exact oracles.
        """
        r = self.cfg.get("r", None)
        return solve_exact(self.source_kind, source, r, self.solver)

    def source_witness(self, source):
        value, witness = self.source_optimum(source)
        if self.source_kind == ProblemKind.SAT and value == 0:
            return None
        return witness

    def _budget_or_optimum(self, source) -> int:
        b = self.cfg.get("b", None)
        if b is not None:
            return int(b)
        return self.source_optimum(source)[0]


class _LowerBoundReduction(Reduction):
    input_format = "cnf"
    source_kind = ProblemKind.SAT
    builder = None

    def __init__(self, cfg: DictConfig):
        super().__init__(cfg)

    def build(self, source) -> Reduced:
        instance = type(self).builder(source, self.cfg.r, self.cfg.p0, self.solver)
        return Reduced(instance.graph, instance.budget, list(instance.decompositions), instance.manifest(), instance)

    def forward(self, reduced: Reduced, witness):
        return forward_solution(reduced.target, witness, self.solver)


class DenseLowerBound(_LowerBoundReduction):
    builder = staticmethod(build_dense_reduction)


class SparseLowerBound(_LowerBoundReduction):
    builder = staticmethod(build_sparse_reduction)


class HittingSetToVertexCover(Reduction):
    input_format = "hitting_set"
    source_kind = ProblemKind.HITTING_SET
    target_kind = ProblemKind.VERTEX_COVER

    def __init__(self, cfg: DictConfig):
        super().__init__(cfg)

    def build(self, source) -> Reduced:
        reduction = build_vc_reduction(source)
        instance = reduction.instance
        return Reduced(instance.graph, instance.budget, list(instance.decompositions), reduction.manifest(), reduction)

    def forward(self, reduced: Reduced, witness):
        return forward_vc_solution(reduced.target, witness)


class VertexCoverToMaxCut(Reduction):
    """
    cfg.b is a vertex cover size c of the source; the budget is the cut size 4|E| + |V| - c. Without b in the config,
    the vertex cover optimum of the source is used.
    """

    target_kind = ProblemKind.MAX_CUT

    def __init__(self, cfg: DictConfig):
        super().__init__(cfg)

    def build(self, source) -> Reduced:
        reduction = build_maxcut_reduction(source)
        cover_size = self._budget_or_optimum(source)
        target = reduction.cut_target(source.n - cover_size)
        manifest = {"kind": "maxcut", "n": reduction.graph.n, "m": reduction.graph.m, "b": target, "cover": cover_size}
        return Reduced(reduction.graph, target, [], manifest, reduction)

    def forward(self, reduced: Reduced, witness):
        return forward_cut(reduced.target, witness)


class VertexCoverToKrFree(Reduction):
    """
    With cfg.decomposition naming a tree decomposition file of the source graph, its lifted version is emitted.
    """

    target_kind = ProblemKind.KR_FREE_DELETION

    def __init__(self, cfg: DictConfig):
        super().__init__(cfg)

    def build(self, source) -> Reduced:
        reduction = build_krfree_reduction(source, self.cfg.r)
        budget = reduction.budget(self._budget_or_optimum(source))
        decompositions = []
        if self.cfg.get("decomposition", None):
            decompositions.append(reduction.lift_decomposition(read_decomposition(self.cfg.decomposition)))
        manifest = {"kind": "krfree", "r": self.cfg.r, "n": reduction.graph.n, "m": reduction.graph.m, "b": budget}
        return Reduced(reduction.graph, budget, decompositions, manifest, reduction)

    def forward(self, reduced: Reduced, witness):
        return forward_krfree_deletion(reduced.target, witness)


class TotalToDominatingSet(Reduction):
    source_kind = ProblemKind.TOTAL_DOMINATING_SET
    target_kind = ProblemKind.DOMINATING_SET

    def __init__(self, cfg: DictConfig):
        super().__init__(cfg)

    def build(self, source) -> Reduced:
        doubled = build_ds_doubling(source)
        budget = self._budget_or_optimum(source)
        manifest = {
            "kind": "ds",
            "n": doubled.n,
            "m": doubled.m,
            "b": budget,
            "twinclasses": len(twinclass_partition(doubled)),
            "quotient_embeds": doubling_quotient_embeds(source, doubled),
        }
        return Reduced(doubled, budget, [], manifest, source)

    def forward(self, reduced: Reduced, witness):
        return frozenset(witness)


class SatToTotalDominatingSet(Reduction):
    input_format = "cnf"
    source_kind = ProblemKind.SAT
    target_kind = ProblemKind.TOTAL_DOMINATING_SET

    def __init__(self, cfg: DictConfig):
        super().__init__(cfg)

    def build(self, source) -> Reduced:
        reduction = build_tds_reduction(source)
        return Reduced(reduction.graph, reduction.budget, [reduction.decomposition], reduction.manifest(), reduction)

    def forward(self, reduced: Reduced, witness):
        return forward_tds_solution(reduced.target, witness)


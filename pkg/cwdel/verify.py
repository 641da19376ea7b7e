#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from dataclasses import dataclass, field
from itertools import combinations
from multiprocessing import Pool
from typing import Dict, Iterable, List, Optional, Tuple

from omegaconf import DictConfig

from cwdel.errors import DecompositionError
from cwdel.graph import Graph, is_twin_set, verify_decomposition
from cwdel.instances import ProblemKind
from cwdel.oracle import DELETED, Solution, min_deletions_r_colorable, r_cliques
from cwdel.reductions.lowerbound import ReductionInstance
from cwdel.utils import load_config, render_table


@dataclass
class VerifyReport:
    """
    Itemized check results; the report passes iff every item does.
    """

    items: List[Tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = ""):
        self.items.append((name, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    def failures(self) -> List[str]:
        return [name for name, ok, _ in self.items if not ok]

    def render(self) -> str:
        return render_table(["check", "status", "detail"], [(n, "ok" if ok else "FAIL", d) for n, ok, d in self.items])

    def lines(self) -> List[str]:
        lines = ["{}={}".format(name, "ok" if ok else "fail") for name, ok, _ in self.items]
        lines.append("pass={}".format(int(self.passed)))
        return lines


def verify_dtc_solution(graph: Graph, solution: Solution, r: int, budget: Optional[int] = None) -> VerifyReport:
    report = VerifyReport()
    if len(solution) != graph.n:
        report.add("total", False, "{} colors for {} vertices".format(len(solution), graph.n))
        return report
    out_of_range = [v for v in graph.vertices() if not 0 <= solution[v] <= r]
    report.add("colors", len(out_of_range) == 0, "vertex {}".format(out_of_range[0]) if out_of_range else "")
    clash = next(
        ((u, v) for u, v in graph.edges() if solution[u] != DELETED and solution[u] == solution[v]),
        None,
    )
    detail = "" if clash is None else "edge {} {} color {}".format(*clash, solution[clash[0]])
    report.add("edges", clash is None, detail)
    if budget is not None:
        report.add("budget", solution.cost <= budget, "{} deleted, budget {}".format(solution.cost, budget))
    return report


def _canonical(graph: Graph, piece: Iterable[int]) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    piece = sorted(piece)
    rank = {v: k for k, v in enumerate(piece)}
    edges = sorted((rank[u], rank[v]) for u, v in combinations(piece, 2) if graph.has_edge(u, v))
    return len(piece), tuple(edges)


def _claim_holds(key: Tuple[int, Tuple[Tuple[int, int], ...]], r: int, claim: int) -> bool:
    n, edges = key
    if claim == 0:
        return True
    return min_deletions_r_colorable(Graph(n, edges), r, cap=claim - 1) is None


def _claim_task(task: Tuple[Tuple, int, int]) -> bool:
    return _claim_holds(*task)


def _prove_claims(tasks: List[Tuple[Tuple, int, int]], threads: int) -> List[bool]:
    if threads > 1 and len(tasks) > 1:
        with Pool(min(threads, len(tasks))) as pool:
            return pool.map(_claim_task, tasks)
    return [_claim_task(task) for task in tasks]


def verify_reduction_instance(instance: ReductionInstance, cfg: Optional[DictConfig] = None) -> VerifyReport:
    """
    Recomputes from the raw graph: packing and modulator disjointness, the twin property of the modulator blocks,
    the decomposition of every component of the graph minus the modulator and the packing claims.
    """
    cfg = load_config(cfg)
    graph = instance.graph
    report = VerifyReport()

    owner: Dict[int, int] = {}
    overlap = None
    for k, (piece, _) in enumerate(instance.packing):
        for v in piece:
            if v in owner and overlap is None:
                overlap = (v, owner[v], k)
            owner.setdefault(v, k)
    report.add(
        "packing_disjoint", overlap is None, "" if overlap is None else "vertex {} in pieces {} and {}".format(*overlap)
    )

    modulator = set(instance.modulator_vertices)
    hit = sorted(modulator & set(owner))
    report.add("modulator_disjoint", len(hit) == 0, "vertex {}".format(hit[0]) if hit else "")

    non_twin = next((block for block in instance.modulator if not is_twin_set(graph, block)), None)
    report.add("modulator_twins", non_twin is None, "" if non_twin is None else "block {}".format(list(non_twin)))

    components = graph.connected_components(removed=modulator)
    by_first = {min(component): component for component in components}
    detail = ""
    ok = len(instance.decompositions) == len(components)
    if not ok:
        detail = "{} decompositions for {} components".format(len(instance.decompositions), len(components))
    for decomposition in instance.decompositions if ok else ():
        covered = decomposition.vertices()
        component = by_first.get(min(covered)) if len(covered) > 0 else None
        if component is None or set(component) != covered:
            ok, detail = False, "decomposition does not match a component"
            break
        try:
            width = verify_decomposition(graph, decomposition, component)
        except DecompositionError as e:
            ok, detail = False, str(e)
            break
        if width > instance.width:
            ok, detail = False, "width {} above {}".format(width, instance.width)
            break
    report.add("decompositions", ok, detail)

    checked = [(piece, claim) for piece, claim in instance.packing if len(piece) <= cfg.packing_piece_cap]
    unverified = len(instance.packing) - len(checked)
    keys = [(_canonical(graph, piece), claim) for piece, claim in checked]
    # identical gadgets share a canonical key and are proven once
    tasks = list(dict.fromkeys(keys))
    proven = dict(zip(tasks, _prove_claims([(key, instance.r, claim) for key, claim in tasks], cfg.threads)))
    failed = next(
        ((sorted(piece), claim) for (piece, claim), key in zip(checked, keys) if not proven[key]),
        None,
    )
    report.add("packing_claims", failed is None, "" if failed is None else "piece {} claim {}".format(*failed))
    report.add(
        "packing_verified", unverified == 0, "{} pieces above {} vertices".format(unverified, cfg.packing_piece_cap)
    )
    report.add(
        "packing_budget",
        instance.packing_cost <= instance.budget,
        "cost {} budget {}".format(instance.packing_cost, instance.budget),
    )
    return report


def verify_problem_solution(
    kind: ProblemKind, instance, witness, target: Optional[int] = None, r: Optional[int] = None
) -> VerifyReport:
    """
    Definitional check of a witness. target bounds the witness size from above, or the cut size from below for
    MAX_CUT.
    """
    kind = ProblemKind(kind)
    report = VerifyReport()
    if kind == ProblemKind.SAT:
        report.add("satisfied", instance.satisfied_by(witness))
        return report
    chosen = set(witness)
    if kind == ProblemKind.HITTING_SET:
        missed = next((s for s in instance.sets if len(chosen & set(s)) == 0), None)
        report.add("hit", missed is None, "" if missed is None else "set {}".format([u + 1 for u in missed]))
    elif kind == ProblemKind.VERTEX_COVER:
        missed = next(((u, v) for u, v in instance.edges() if u not in chosen and v not in chosen), None)
        report.add("covered", missed is None, "" if missed is None else "edge {} {}".format(*missed))
    elif kind == ProblemKind.DOMINATING_SET:
        missed = next((v for v in instance.vertices() if len(instance.closed_neighbors(v) & chosen) == 0), None)
        report.add("dominated", missed is None, "" if missed is None else "vertex {}".format(missed))
    elif kind == ProblemKind.TOTAL_DOMINATING_SET:
        missed = next((v for v in instance.vertices() if len(instance.neighbors(v) & chosen) == 0), None)
        report.add("dominated", missed is None, "" if missed is None else "vertex {}".format(missed))
    elif kind == ProblemKind.KR_FREE_DELETION:
        missed = next((c for c in r_cliques(instance, r) if len(chosen & set(c)) == 0), None)
        report.add("clique_free", missed is None, "" if missed is None else "clique {}".format(list(missed)))
    elif kind == ProblemKind.MAX_CUT:
        cut = instance.cut_size(chosen)
        if target is not None:
            report.add("cut", cut >= target, "cut {} target {}".format(cut, target))
        else:
            report.add("cut", True, "cut {}".format(cut))
        return report
    else:
        raise ValueError("Problem {} unavailable".format(kind))
    if target is not None:
        report.add("size", len(chosen) <= target, "size {} bound {}".format(len(chosen), target))
    return report

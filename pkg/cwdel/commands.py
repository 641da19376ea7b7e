#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
import os
from typing import Callable

from omegaconf import DictConfig, OmegaConf
from pytictoc import TicToc

from cwdel.critical import build_critical
from cwdel.cwexpr import expr_for_graph, parse_expr
from cwdel.dp import solve_expression
from cwdel.errors import CwdelError, FormatError
from cwdel.graph import classify_twinclass, exact_treewidth, quotient, twinclass_partition
from cwdel.instances import ProblemKind
from cwdel.oracle import Solution, chromatic_number, min_deletions_r_colorable, solve_exact
from cwdel.reductions import get_reduction
from cwdel.reductions.lowerbound import ReductionInstance
from cwdel.utils import (
    error,
    info,
    load_config,
    read_blocks,
    read_cnf,
    read_decomposition,
    read_edge_list,
    read_hitting_set,
    read_manifest,
    read_packing,
    read_solution,
    read_vertex_set,
    warn,
    write_blocks,
    write_decomposition,
    write_edge_list,
    write_manifest,
    write_packing,
    write_solution,
    write_tags,
    write_vertex_set,
)
from cwdel.verify import VerifyReport, verify_dtc_solution, verify_problem_solution, verify_reduction_instance

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2

READERS = {"edge_list": read_edge_list, "cnf": read_cnf, "hitting_set": read_hitting_set}


def run_command(command: Callable[[DictConfig], int], cfg: DictConfig) -> int:
    """
    Runs a command with the exit-code contract: errors in the input or the solvers are reported on stderr and map to
    exit code 2.
    """
    timer = TicToc()
    timer.tic()
    try:
        code = command(cfg)
    except (CwdelError, OSError) as e:
        error(str(e))
        return EXIT_ERROR
    info("seconds={:.3f}".format(timer.tocvalue()))
    return code


def _tags_path(path: str) -> str:
    return os.path.splitext(path)[0] + ".tags"


def _problem_kind(name: str) -> ProblemKind:
    try:
        return ProblemKind(name)
    except ValueError:
        raise CwdelError("Problem {} unavailable".format(name))


def _reduction(cfg: DictConfig):
    try:
        return get_reduction(cfg)
    except CwdelError:
        raise
    except ValueError as e:
        raise CwdelError(str(e))


def _entry(manifest: dict, key: str, cast=str):
    if key not in manifest:
        raise CwdelError("Manifest has no {} entry".format(key))
    try:
        return cast(manifest[key])
    except ValueError:
        raise CwdelError("Manifest entry {}={} is malformed".format(key, manifest[key]))


def cmd_solve(cfg: DictConfig) -> int:
    """
    Minimum deletions by the clique-width dynamic program, on a clique-expression file or, with cfg.graph, on a linear
    expression built for an edge list.
    """
    solver = load_config(cfg)
    if cfg.get("graph", None):
        expr, k = expr_for_graph(read_edge_list(cfg.graph))
    else:
        with open(cfg.get("expr_file", None) or cfg.input, "r") as file:
            expr = parse_expr(file.read())
        k = cfg.get("k", None)
    result = solve_expression(expr, cfg.r, cfg.get("budget", None), solver, k)
    print("min-deletions {}".format(result.cost))
    print("labels {}".format(result.k))
    if cfg.get("output", None):
        write_solution(cfg.output, result.solution.colors)
    if result.decision is None:
        return EXIT_YES
    print("decision {}".format("yes" if result.decision else "no"))
    return EXIT_YES if result.decision else EXIT_NO


def cmd_oracle(cfg: DictConfig) -> int:
    solver = load_config(cfg)
    problem = cfg.problem
    if problem == "dtc":
        graph = read_edge_list(cfg.input, _tags_path(cfg.input))
        if graph.n > solver.exact_max_vertices:
            raise CwdelError("Graph has {} vertices, the oracle handles {}".format(graph.n, solver.exact_max_vertices))
        result = min_deletions_r_colorable(graph, cfg.r, cfg.get("cap", None))
        if result is None:
            print("cost >{}".format(cfg.cap))
            return EXIT_NO
        print("cost {}".format(result.cost))
        if cfg.get("output", None):
            write_solution(cfg.output, result.solution.colors)
        return EXIT_YES
    if problem == "chromatic":
        print("chromatic {}".format(chromatic_number(read_edge_list(cfg.input), solver)))
        return EXIT_YES
    if problem == "treewidth":
        width = exact_treewidth(read_edge_list(cfg.input), solver.treewidth_max_vertices)
        print("treewidth {}".format(width))
        return EXIT_YES

    kind = _problem_kind(problem)
    if kind == ProblemKind.SAT:
        source = read_cnf(cfg.input)
    elif kind == ProblemKind.HITTING_SET:
        source = read_hitting_set(cfg.input)
    else:
        source = read_edge_list(cfg.input)
    value, witness = solve_exact(kind, source, cfg.get("r", None), solver)
    if kind == ProblemKind.SAT:
        print("satisfiable {}".format(value))
        if witness is not None:
            print("assignment " + " ".join(str(x if v else -x) for x, v in enumerate(witness, start=1)))
        return EXIT_YES if value == 1 else EXIT_NO
    print("optimum {}".format(value))
    if cfg.get("output", None):
        write_vertex_set(cfg.output, witness)
    return EXIT_YES


def cmd_gen_critical(cfg: DictConfig) -> int:
    critical = build_critical(cfg.t, cfg.gamma)
    os.makedirs(cfg.output, exist_ok=True)
    write_edge_list(os.path.join(cfg.output, "critical.gr"), critical.graph)
    write_tags(os.path.join(cfg.output, "critical.tags"), critical.graph)
    write_decomposition(os.path.join(cfg.output, "critical.td"), critical.decomposition, critical.graph.n)
    print("n {}".format(critical.graph.n))
    print("m {}".format(critical.graph.m))
    print("width {}".format(critical.decomposition.width))
    return EXIT_YES


def cmd_twinclass(cfg: DictConfig) -> int:
    graph = read_edge_list(cfg.input, _tags_path(cfg.input))
    partition = twinclass_partition(graph)
    for block in partition:
        print("{} {}".format(classify_twinclass(graph, block), " ".join(str(v + 1) for v in block)))
    reduced = quotient(graph, partition)
    print("twinclasses {}".format(len(partition)))
    print("quotient_n {}".format(reduced.n))
    print("quotient_m {}".format(reduced.m))
    return EXIT_YES


def cmd_reduce(cfg: DictConfig) -> int:
    """
    Writes the target graph with tags, the manifest, the decomposition witnesses, modulator and packing files of
    lower-bound instances and, with cfg.witness, a forward witness obtained from an exact solution of the source.
    """
    reduction = _reduction(cfg)
    source = READERS[reduction.input_format](cfg.input)
    reduced = reduction.build(source)
    out = cfg.output
    os.makedirs(out, exist_ok=True)

    manifest = reduction.describe(reduced)
    write_edge_list(os.path.join(out, "graph.gr"), reduced.graph)
    write_tags(os.path.join(out, "graph.tags"), reduced.graph)
    manifest["graph"] = "graph.gr"
    for idx, decomposition in enumerate(reduced.decompositions):
        write_decomposition(os.path.join(out, "dec{}.td".format(idx + 1)), decomposition, reduced.graph.n)
    manifest["decompositions"] = len(reduced.decompositions)
    instance = getattr(reduced.target, "instance", reduced.target)
    if isinstance(instance, ReductionInstance):
        write_blocks(os.path.join(out, "modulator.txt"), instance.modulator)
        write_packing(os.path.join(out, "packing.txt"), instance.packing)
        manifest.update(modulator="modulator.txt", packing="packing.txt")

    if cfg.get("witness", False):
        witness = reduction.source_witness(source)
        if witness is None:
            warn("Source instance has no solution, no witness written")
        else:
            target = reduction.forward(reduced, witness)
            if isinstance(target, Solution):
                write_solution(os.path.join(out, "witness.sol"), target.colors)
                manifest["witness"] = "witness.sol"
            else:
                write_vertex_set(os.path.join(out, "witness.set"), target)
                manifest["witness"] = "witness.set"
    write_manifest(os.path.join(out, "manifest.txt"), manifest)
    for key, value in manifest.items():
        print("{}={}".format(key, value))
    return EXIT_YES


def _verify_reduced(cfg: DictConfig, solver: DictConfig) -> VerifyReport:
    root = os.path.dirname(os.path.abspath(cfg.instance))
    manifest = read_manifest(cfg.instance)
    graph = read_edge_list(os.path.join(root, _entry(manifest, "graph")), os.path.join(root, "graph.tags"))
    budget = _entry(manifest, "b", int)
    decompositions = [
        read_decomposition(os.path.join(root, "dec{}.td".format(idx + 1)))
        for idx in range(_entry(manifest, "decompositions", int))
    ]
    report = VerifyReport()
    if "modulator" in manifest:
        instance = ReductionInstance(
            kind=_entry(manifest, "kind"),
            r=_entry(manifest, "r", int),
            graph=graph,
            budget=budget,
            modulator=tuple(read_blocks(os.path.join(root, _entry(manifest, "modulator")))),
            packing=tuple(read_packing(os.path.join(root, _entry(manifest, "packing")))),
            decompositions=tuple(decompositions),
            width=_entry(manifest, "width", int),
        )
        report = verify_reduction_instance(instance, solver)
    if "witness" in manifest:
        path = os.path.join(root, manifest["witness"])
        kind = _entry(manifest, "kind")
        if kind in ("dense", "sparse"):
            solution = Solution(tuple(read_solution(path, graph.n)))
            report.items.extend(verify_dtc_solution(graph, solution, _entry(manifest, "r", int), budget).items)
        else:
            target_kind = _reduction(OmegaConf.create({"kind": kind})).target_kind
            r = _entry(manifest, "r", int) if "r" in manifest else None
            witness = read_vertex_set(path)
            report.items.extend(verify_problem_solution(target_kind, graph, witness, budget, r).items)
    return report


def cmd_verify(cfg: DictConfig) -> int:
    """
    Verifies either a reduced instance directory through its manifest (cfg.instance), a Deletion to r-Colorable
    solution (cfg.input, cfg.solution, cfg.r, cfg.budget) or a witness of another problem (cfg.problem).
    """
    solver = load_config(cfg)
    if cfg.get("instance", None):
        report = _verify_reduced(cfg, solver)
    elif cfg.get("problem", None) in (None, "dtc"):
        graph = read_edge_list(cfg.input)
        solution = Solution(tuple(read_solution(cfg.solution, graph.n)))
        report = verify_dtc_solution(graph, solution, cfg.r, cfg.get("budget", None))
    else:
        kind = _problem_kind(cfg.problem)
        if kind == ProblemKind.SAT:
            source = read_cnf(cfg.input)
            with open(cfg.solution, "r") as file:
                fields = file.read().split()
            if not all(field.lstrip("-").isdigit() for field in fields):
                raise FormatError("Assignment file {} holds a non-integer literal".format(cfg.solution))
            literals = [int(field) for field in fields]
            values = {abs(x): x > 0 for x in literals if x != 0}
            witness = tuple(values.get(x, False) for x in range(1, source.n_vars + 1))
        else:
            source = read_hitting_set(cfg.input) if kind == ProblemKind.HITTING_SET else read_edge_list(cfg.input)
            witness = read_vertex_set(cfg.solution)
        report = verify_problem_solution(kind, source, witness, cfg.get("budget", None), cfg.get("r", None))
    info(report.render())
    for line in report.lines():
        print(line)
    return EXIT_YES if report.passed else EXIT_NO


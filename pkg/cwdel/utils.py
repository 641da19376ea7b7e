#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
import os
import sys
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import omegaconf
from omegaconf import DictConfig
from prettytable import PrettyTable
from termcolor import cprint

from cwdel.errors import FormatError
from cwdel.graph import Graph, TreeDecomposition
from cwdel.instances import CnfFormula, HittingSetInstance


def _defaults() -> DictConfig:
    with open(os.path.join(os.path.dirname(__file__), "cfg/solver_config.yaml"), "r") as file:
        return omegaconf.OmegaConf.load(file)


def load_config(cfg: Optional[DictConfig] = None) -> DictConfig:
    """
    Returns the solver configuration: the package defaults in cfg/solver_config.yaml, overridden by the given config or,
    when it holds one, by its `solver` block.
    """
    if cfg is None:
        return _defaults()
    return omegaconf.OmegaConf.merge(_defaults(), cfg.solver if "solver" in cfg else cfg)


def prep_args():
    """
    Rewrites `--key value` arguments into hydra overrides. Dashes in keys become underscores and a bare positional
    argument becomes `input=<path>`.
    """
    old_args = sys.argv
    new_args = [old_args.pop(0)]
    while len(old_args) > 0:
        arg = old_args.pop(0)
        if arg.startswith("--"):
            key = arg[2:].replace("-", "_")
            if "=" in key:
                key, value = key.split("=", 1)
            elif len(old_args) == 0:
                raise ValueError("Missing value for argument {}".format(arg))
            else:
                value = old_args.pop(0)
            new_args.append(key + "=" + value)
        elif len(arg.split("=")) == 2:
            new_args.append(arg)
        elif not arg.startswith("-"):
            new_args.append("input=" + arg)
        else:
            raise ValueError("Unexpected arg style {}".format(arg))
    sys.argv = new_args


def warn(message: str):
    cprint(message, "yellow", file=sys.stderr)


def error(message: str):
    cprint(message, "red", file=sys.stderr)


def info(message: str):
    print(message, file=sys.stderr)


def render_table(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    table = PrettyTable()
    table.field_names = list(header)
    table.align = "l"
    for row in rows:
        table.add_row(list(row))
    return table.get_string()


def _content_lines(path: str) -> Iterable[Tuple[int, List[str]]]:
    with open(path, "r") as file:
        for number, line in enumerate(file, start=1):
            fields = line.split()
            if len(fields) == 0 or fields[0] in ("c", "%"):
                continue
            yield number, fields


def read_edge_list(path: str, tags_path: Optional[str] = None) -> Graph:
    """
    Reads `p edge <n> <m>` followed by `e <u> <v>` lines with 1-indexed vertices.
    """
    n = None
    expected = None
    edges = []
    for number, fields in _content_lines(path):
        try:
            if fields[0] == "p":
                if n is not None or len(fields) != 4 or fields[1] != "edge":
                    raise FormatError("Bad header {}".format(" ".join(fields)), number)
                n, expected = int(fields[2]), int(fields[3])
            elif fields[0] == "e":
                if n is None:
                    raise FormatError("Edge before header", number)
                if len(fields) != 3:
                    raise FormatError("Bad edge line {}".format(" ".join(fields)), number)
                u, v = int(fields[1]) - 1, int(fields[2]) - 1
                if not (0 <= u < n and 0 <= v < n) or u == v:
                    raise FormatError("Bad edge {} {}".format(fields[1], fields[2]), number)
                edges.append((u, v))
            else:
                raise FormatError("Unknown line type {}".format(fields[0]), number)
        except ValueError as e:
            if isinstance(e, FormatError):
                raise
            raise FormatError(str(e), number)
    if n is None:
        raise FormatError("Missing `p edge` header in {}".format(path))
    if expected != len(edges):
        raise FormatError("Header announces {} edges but {} were found".format(expected, len(edges)))
    tags = read_tags(tags_path, n) if tags_path is not None and os.path.exists(tags_path) else None
    return Graph(n, edges, tags)


def write_edge_list(path: str, graph: Graph):
    with open(path, "w") as file:
        file.write("p edge {} {}\n".format(graph.n, graph.m))
        for u, v in graph.edges():
            file.write("e {} {}\n".format(u + 1, v + 1))


def read_tags(path: str, n: int) -> List[Optional[str]]:
    tags: List[Optional[str]] = [None] * n
    for number, fields in _content_lines(path):
        if len(fields) != 2 or not fields[0].isdigit() or not 1 <= int(fields[0]) <= n:
            raise FormatError("Bad tag line {}".format(" ".join(fields)), number)
        tags[int(fields[0]) - 1] = fields[1]
    return tags


def write_tags(path: str, graph: Graph):
    with open(path, "w") as file:
        for v in graph.vertices():
            if graph.tag(v) is not None:
                file.write("{} {}\n".format(v + 1, graph.tag(v).replace(" ", "")))


def read_cnf(path: str) -> CnfFormula:
    """
    Reads DIMACS `p cnf <vars> <clauses>` with 0-terminated clauses; clauses may span lines.
    """
    n_vars = None
    n_clauses = None
    clauses = []
    current: List[int] = []
    for number, fields in _content_lines(path):
        if fields[0] == "p":
            if n_vars is not None or len(fields) != 4 or fields[1] != "cnf":
                raise FormatError("Bad header {}".format(" ".join(fields)), number)
            n_vars, n_clauses = int(fields[2]), int(fields[3])
            continue
        if n_vars is None:
            raise FormatError("Clause before header", number)
        for field in fields:
            try:
                literal = int(field)
            except ValueError:
                raise FormatError("Bad literal {}".format(field), number)
            if literal == 0:
                if len(current) == 0:
                    raise FormatError("Empty clause", number)
                clauses.append(tuple(current))
                current = []
            elif abs(literal) > n_vars:
                raise FormatError("Literal {} exceeds {} variables".format(literal, n_vars), number)
            else:
                current.append(literal)
    if n_vars is None:
        raise FormatError("Missing `p cnf` header in {}".format(path))
    if len(current) > 0:
        clauses.append(tuple(current))
    if len(clauses) != n_clauses:
        raise FormatError("Header announces {} clauses but {} were found".format(n_clauses, len(clauses)))
    return CnfFormula(n_vars, tuple(clauses))


def write_cnf(path: str, formula: CnfFormula):
    with open(path, "w") as file:
        file.write("p cnf {} {}\n".format(formula.n_vars, formula.m))
        for clause in formula.clauses:
            file.write(" ".join(str(lit) for lit in clause) + " 0\n")


def read_hitting_set(path: str) -> HittingSetInstance:
    """
    Reads `u <n> <m> <t>` followed by one set per line as 1-indexed elements.
    """
    header = None
    sets = []
    for number, fields in _content_lines(path):
        try:
            if header is None:
                if fields[0] != "u" or len(fields) != 4:
                    raise FormatError("Bad header {}".format(" ".join(fields)), number)
                header = tuple(int(x) for x in fields[1:])
                continue
            members = [int(x) - 1 for x in fields]
        except ValueError as e:
            if isinstance(e, FormatError):
                raise
            raise FormatError(str(e), number)
        if any(not 0 <= u < header[0] for u in members):
            raise FormatError("Element outside the universe", number)
        sets.append(members)
    if header is None:
        raise FormatError("Missing `u` header in {}".format(path))
    if len(sets) != header[1]:
        raise FormatError("Header announces {} sets but {} were found".format(header[1], len(sets)))
    return HittingSetInstance.of(header[0], sets, header[2])


def write_hitting_set(path: str, instance: HittingSetInstance):
    with open(path, "w") as file:
        file.write("u {} {} {}\n".format(instance.universe, len(instance.sets), instance.budget))
        for members in instance.sets:
            file.write(" ".join(str(u + 1) for u in members) + "\n")


def write_decomposition(path: str, decomposition: TreeDecomposition, n: int):
    """
    Writes a decomposition in the PACE `.td` format with 1-indexed bags and vertices.
    """
    with open(path, "w") as file:
        file.write("s td {} {} {}\n".format(len(decomposition), decomposition.width + 1, n))
        for node, bag in enumerate(decomposition.bags):
            file.write(" ".join(["b", str(node + 1)] + [str(v + 1) for v in sorted(bag)]) + "\n")
        for a, b in decomposition.edges:
            file.write("{} {}\n".format(a + 1, b + 1))


def read_decomposition(path: str) -> TreeDecomposition:
    bags: Dict[int, List[int]] = {}
    edges = []
    count = None
    for number, fields in _content_lines(path):
        try:
            if fields[0] == "s":
                count = int(fields[2])
            elif fields[0] == "b":
                bags[int(fields[1]) - 1] = [int(x) - 1 for x in fields[2:]]
            elif len(fields) == 2:
                edges.append((int(fields[0]) - 1, int(fields[1]) - 1))
            else:
                raise FormatError("Unknown line {}".format(" ".join(fields)), number)
        except (ValueError, IndexError) as e:
            if isinstance(e, FormatError):
                raise
            raise FormatError(str(e), number)
    if count is None or sorted(bags) != list(range(count)):
        raise FormatError("Decomposition {} does not list bags 1..{}".format(path, count))
    return TreeDecomposition([bags[i] for i in range(count)], edges)


def write_manifest(path: str, entries: Dict[str, object]):
    with open(path, "w") as file:
        for key, value in entries.items():
            file.write("{}={}\n".format(key, value))


def read_manifest(path: str) -> Dict[str, str]:
    entries = {}
    with open(path, "r") as file:
        for number, line in enumerate(file, start=1):
            line = line.strip()
            if len(line) == 0 or line.startswith("#"):
                continue
            if "=" not in line:
                raise FormatError("Expected key=value", number)
            key, value = line.split("=", 1)
            entries[key.strip()] = value.strip()
    return entries


def write_solution(path: str, colors: Sequence[int]):
    """
    One `<vertex> <color>` line per vertex, 1-indexed vertices, color 0 for deleted vertices.
    """
    with open(path, "w") as file:
        for v, color in enumerate(colors):
            file.write("{} {}\n".format(v + 1, color))


def read_solution(path: str, n: int) -> List[int]:
    colors = [None] * n
    for number, fields in _content_lines(path):
        if len(fields) != 2:
            raise FormatError("Bad solution line {}".format(" ".join(fields)), number)
        try:
            v, color = int(fields[0]) - 1, int(fields[1])
        except ValueError as e:
            raise FormatError(str(e), number)
        if not 0 <= v < n:
            raise FormatError("Vertex {} out of range".format(v + 1), number)
        colors[v] = color
    missing = [v for v, c in enumerate(colors) if c is None]
    if len(missing) > 0:
        raise FormatError("No color for vertex {}".format(missing[0] + 1))
    return colors


def write_vertex_set(path: str, vertices: Iterable[int]):
    with open(path, "w") as file:
        file.write(" ".join(str(v + 1) for v in sorted(vertices)) + "\n")


def read_vertex_set(path: str) -> List[int]:
    vertices = []
    for number, fields in _content_lines(path):
        try:
            vertices.extend(int(x) - 1 for x in fields)
        except ValueError as e:
            raise FormatError(str(e), number)
    return vertices


def write_blocks(path: str, blocks: Iterable[Iterable[int]]):
    """
    One block per line as 1-indexed vertices.
    """
    with open(path, "w") as file:
        for block in blocks:
            file.write(" ".join(str(v + 1) for v in sorted(block)) + "\n")


def read_blocks(path: str) -> List[Tuple[int, ...]]:
    blocks = []
    for number, fields in _content_lines(path):
        try:
            blocks.append(tuple(int(x) - 1 for x in fields))
        except ValueError as e:
            raise FormatError(str(e), number)
    return blocks


def write_packing(path: str, packing: Iterable[Tuple[Iterable[int], int]]):
    """
    One `<claim> <vertices...>` line per packing piece, 1-indexed vertices.
    """
    with open(path, "w") as file:
        for piece, claim in packing:
            file.write(" ".join([str(claim)] + [str(v + 1) for v in sorted(piece)]) + "\n")


def read_packing(path: str) -> List[Tuple[frozenset, int]]:
    packing = []
    for number, fields in _content_lines(path):
        try:
            packing.append((frozenset(int(x) - 1 for x in fields[1:]), int(fields[0])))
        except ValueError as e:
            raise FormatError(str(e), number)
    return packing

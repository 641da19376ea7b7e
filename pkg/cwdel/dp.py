#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from omegaconf import DictConfig
from tqdm import tqdm

from cwdel.cwexpr import CliqueExpr, Intro, Join, Relabel, Union, check_expr, max_label, postorder
from cwdel.errors import CwdelError, StateSpaceError, WitnessError
from cwdel.oracle import DELETED, Solution
from cwdel.utils import load_config

INF = np.iinfo(np.int32).max


class DpResult(NamedTuple):
    cost: int
    table: np.ndarray
    solution: Solution
    decision: Optional[bool]
    tables: List[np.ndarray]
    k: int


class _ExprIndex:
    """
    Postorder view of an expression: nodes, child positions and the vertex id of every introduce leaf.
    """

    def __init__(self, expr: CliqueExpr):
        self.nodes = list(postorder(expr))
        self.children: List[Tuple[int, ...]] = []
        self.vertex: List[int] = []
        stack: List[int] = []
        vertices = 0
        for idx, node in enumerate(self.nodes):
            if isinstance(node, Intro):
                self.children.append(())
                self.vertex.append(vertices)
                vertices += 1
            elif isinstance(node, Union):
                right = stack.pop()
                left = stack.pop()
                self.children.append((left, right))
                self.vertex.append(-1)
            else:
                self.children.append((stack.pop(),))
                self.vertex.append(-1)
            stack.append(idx)
        self.n = vertices


def state_bit(label: int, color: int, r: int) -> int:
    return (label - 1) * r + (color - 1)


def encode_state(assignment, r: int) -> int:
    """
    State of a map label -> color set, e.g. {1: {1}, 2: {2}}.
    """
    return sum(1 << state_bit(label, c, r) for label, colors in assignment.items() for c in colors)


def decode_state(state: int, k: int, r: int):
    return {i: {c for c in range(1, r + 1) if state >> state_bit(i, c, r) & 1} for i in range(1, k + 1)}


def _block(states: np.ndarray, label: int, r: int) -> np.ndarray:
    return (states >> ((label - 1) * r)) & ((1 << r) - 1)


def _relabel_targets(states: np.ndarray, i: int, j: int, r: int) -> np.ndarray:
    mask = (1 << r) - 1
    block_i = _block(states, i, r)
    cleared = states & ~np.int64(mask << ((i - 1) * r))
    return cleared | (block_i << ((j - 1) * r))


def intro_table(label: int, k: int, r: int) -> np.ndarray:
    table = np.full(1 << (k * r), INF, dtype=np.int32)
    table[0] = 1
    for c in range(1, r + 1):
        table[1 << state_bit(label, c, r)] = 0
    return table


def relabel_table(table: np.ndarray, i: int, j: int, k: int, r: int) -> np.ndarray:
    states = np.arange(len(table), dtype=np.int64)
    out = np.full(len(table), INF, dtype=np.int32)
    finite = table < INF
    np.minimum.at(out, _relabel_targets(states[finite], i, j, r), table[finite])
    return out


def join_table(table: np.ndarray, i: int, j: int, k: int, r: int) -> np.ndarray:
    states = np.arange(len(table), dtype=np.int64)
    out = table.copy()
    out[(_block(states, i, r) & _block(states, j, r)) != 0] = INF
    return out


def _cover_enumerate(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    states = np.arange(len(t1), dtype=np.int64)
    out = np.full(len(t1), np.iinfo(np.int64).max, dtype=np.int64)
    finite2 = np.flatnonzero(t2 < INF)
    costs2 = t2[finite2].astype(np.int64)
    for f1 in np.flatnonzero(t1 < INF):
        np.minimum.at(out, states[finite2] | f1, costs2 + int(t1[f1]))
    return np.minimum(out, INF).astype(np.int32)


def _subset_zeta(values: np.ndarray, bits: int) -> np.ndarray:
    # sum over subsets, one axis per bit
    cube = values.reshape((2,) * bits) if bits > 0 else values
    for axis in range(bits):
        cube = np.cumsum(cube, axis=axis)
    return cube.reshape(-1)


def _subset_moebius(values: np.ndarray, bits: int) -> np.ndarray:
    cube = values.reshape((2,) * bits) if bits > 0 else values
    for axis in range(bits):
        cube = np.diff(cube, axis=axis, prepend=0)
    return cube.reshape(-1)


def _cover_zeta(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    """
    Min-sum cover product through counting: for every pair of cost levels (a, b) the number of pairs f1 u f2 = f
    with t1[f1] = a and t2[f2] = b is the Moebius inverse of the product of the level indicators' zeta transforms.
    """
    bits = len(t1).bit_length() - 1
    levels1 = [int(a) for a in np.unique(t1[t1 < INF])]
    levels2 = [int(b) for b in np.unique(t2[t2 < INF])]
    zeta1 = {a: _subset_zeta((t1 == a).astype(np.int64), bits) for a in levels1}
    zeta2 = {b: _subset_zeta((t2 == b).astype(np.int64), bits) for b in levels2}
    out = np.full(len(t1), INF, dtype=np.int64)
    for a in levels1:
        for b in levels2:
            counts = _subset_moebius(zeta1[a] * zeta2[b], bits)
            hit = counts > 0
            out[hit] = np.minimum(out[hit], a + b)
    return np.minimum(out, INF).astype(np.int32)


def cover_product_minplus(t1: np.ndarray, t2: np.ndarray, method: str = "enumerate") -> np.ndarray:
    """
    out[f] = min over f1 | f2 == f of t1[f1] + t2[f2], with INF absorbing.
    """
    if t1.shape != t2.shape or len(t1) & (len(t1) - 1) != 0:
        raise StateSpaceError("Cover product of tables with {} and {} entries".format(len(t1), len(t2)))
    if method == "enumerate":
        return _cover_enumerate(t1, t2)
    elif method == "zeta":
        return _cover_zeta(t1, t2)
    else:
        raise ValueError("Cover product method {} unavailable".format(method))


def _check_node(table: np.ndarray, counts: dict, k: int, r: int, node):
    states = np.arange(len(table), dtype=np.int64)
    popcount = np.array([bin(x).count("1") for x in range(1 << r)], dtype=np.int64)
    finite = table < INF
    for label in range(1, k + 1):
        sizes = popcount[_block(states, label, r)]
        if np.any(finite & (sizes > counts.get(label, 0))):
            raise CwdelError("Finite entry with more colors than vertices on label {} at {}".format(label, node))
    if isinstance(node, Join) and np.any(finite & ((_block(states, node.i, r) & _block(states, node.j, r)) != 0)):
        raise CwdelError("Finite entry with overlapping colors after {}".format(node))


def solve_expression(
    expr: CliqueExpr, r: int, budget: Optional[int] = None, cfg: Optional[DictConfig] = None, k: Optional[int] = None
) -> DpResult:
    """
    Minimum number of deletions making the graph of expr r-colorable, by the dynamic program over label states.

    With a budget the decision (cost <= budget) is reported as well. The witness is reconstructed from the root
    state of minimum cost, ties broken by the smallest state.
    """
    cfg = load_config(cfg)
    if r < 1:
        raise CwdelError("r must be at least 1, got {}".format(r))
    check_expr(expr)
    used = max_label(expr)
    k = used if k is None else k
    if used > k:
        raise CwdelError("Expression uses label {} but k = {}".format(used, k))
    if k * r > cfg.kr_cap:
        raise StateSpaceError("State space k*r = {}*{} exceeds the cap of {}".format(k, r, cfg.kr_cap))
    method = cfg.cover_product
    if method == "zeta" and k * r > cfg.zeta_max_kr:
        method = "enumerate"

    index = _ExprIndex(expr)
    tables: List[np.ndarray] = []
    label_counts: List[dict] = []
    for idx, node in enumerate(tqdm(index.nodes, disable=not cfg.progress or len(index.nodes) < 5000)):
        kids = index.children[idx]
        if isinstance(node, Intro):
            table = intro_table(node.label, k, r)
            counts = {node.label: 1}
        elif isinstance(node, Union):
            table = cover_product_minplus(tables[kids[0]], tables[kids[1]], method)
            counts = dict(label_counts[kids[0]])
            for label, count in label_counts[kids[1]].items():
                counts[label] = counts.get(label, 0) + count
        elif isinstance(node, Relabel):
            table = relabel_table(tables[kids[0]], node.i, node.j, k, r)
            counts = dict(label_counts[kids[0]])
            moved = counts.pop(node.i, 0)
            if moved > 0:
                counts[node.j] = counts.get(node.j, 0) + moved
        else:
            table = join_table(tables[kids[0]], node.i, node.j, k, r)
            counts = label_counts[kids[0]]
        if cfg.check_invariants:
            _check_node(table, counts, k, r, node)
        tables.append(table)
        label_counts.append(counts)

    root = tables[-1]
    target = int(np.argmin(root))
    cost = int(root[target])
    solution = _reconstruct(index, tables, target, k, r)
    decision = None if budget is None else cost <= budget
    return DpResult(cost, root, solution, decision, tables, k)


def reconstruct_witness(expr: CliqueExpr, tables: List[np.ndarray], target: int, r: int, k: int) -> Solution:
    """
    Solution realizing tables[-1][target]: cost equal to that entry and colors on label i exactly target(i).
    """
    return _reconstruct(_ExprIndex(expr), tables, target, k, r)


def _submasks(mask: int) -> np.ndarray:
    subs = []
    sub = mask
    while True:
        subs.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return np.array(sorted(subs), dtype=np.int64)


def _reconstruct(index: _ExprIndex, tables: List[np.ndarray], target: int, k: int, r: int) -> Solution:
    if tables[-1][target] >= INF:
        raise WitnessError("State {} has infinite cost".format(target))
    colors = [DELETED] * index.n
    work = [(len(index.nodes) - 1, target)]
    while work:
        idx, state = work.pop()
        node = index.nodes[idx]
        value = int(tables[idx][state])
        kids = index.children[idx]
        if isinstance(node, Intro):
            block = int(_block(np.int64(state), node.label, r))
            colors[index.vertex[idx]] = DELETED if block == 0 else block.bit_length()
        elif isinstance(node, Join):
            work.append((kids[0], state))
        elif isinstance(node, Relabel):
            child = tables[kids[0]]
            states = np.arange(len(child), dtype=np.int64)
            hits = np.flatnonzero((_relabel_targets(states, node.i, node.j, r) == state) & (child == value))
            work.append((kids[0], int(hits[0])))
        else:
            left, right = tables[kids[0]], tables[kids[1]]
            subs = _submasks(state)
            for f1 in subs:
                if left[f1] >= INF:
                    continue
                f2s = subs[(subs | f1) == state]
                f2s = f2s[right[f2s].astype(np.int64) + int(left[f1]) == value]
                if len(f2s) > 0:
                    work.append((kids[1], int(f2s[0])))
                    work.append((kids[0], int(f1)))
                    break
            else:
                raise WitnessError("No predecessor for union state {}".format(state))
    return Solution(tuple(colors))

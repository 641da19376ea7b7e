#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from cwdel.errors import CwdelError, UnsatisfiedAssignmentError
from cwdel.graph import Graph, GraphBuilder, PathDecomposition, is_induced_subgraph_of, quotient, twinclass_partition
from cwdel.instances import CnfFormula
from cwdel.reductions.params import assignment_index, satisfying_indices

# states of a path segment as positions in p1..p4, in their order 1 < 2 < 3 < 4
STATES: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 3), (1, 2), (2, 3))


def build_ds_doubling(graph: Graph) -> Graph:
    """
    Adds a false twin v' = v + n of every vertex: v' is adjacent to N(v) and to the copies of N(v). G has a total
    dominating set of size b iff the doubled graph has a dominating set of size b.
    """
    if graph.n < 2 or not graph.is_connected():
        raise CwdelError("Doubling needs a connected graph with at least two vertices")
    n = graph.n
    builder = GraphBuilder()
    for v in graph.vertices():
        builder.add_vertex(graph.tag(v) or str(v + 1))
    for v in graph.vertices():
        builder.add_vertex("{}'".format(graph.tag(v) or str(v + 1)))
    for u, v in graph.edges():
        builder.add_edge(u, v)
        builder.add_edge(u, v + n)
        builder.add_edge(u + n, v)
        builder.add_edge(u + n, v + n)
    return builder.build()


def doubling_quotient_embeds(graph: Graph, doubled: Graph) -> bool:
    """
    True iff the twinclass quotient of the doubled graph is an induced subgraph of the original graph, each twinclass
    standing for its smallest (original) vertex.
    """
    partition = twinclass_partition(doubled)
    mapping = [block[0] for block in partition]
    if any(v >= graph.n for v in mapping):
        return False
    return is_induced_subgraph_of(quotient(doubled, partition), graph, mapping)


def is_total_dominating(graph: Graph, chosen: Iterable[int], required: Optional[Iterable[int]] = None) -> bool:
    chosen = set(chosen)
    targets = graph.vertices() if required is None else required
    return all(len(graph.neighbors(v) & chosen) > 0 for v in targets)


def is_dominating(graph: Graph, chosen: Iterable[int]) -> bool:
    chosen = set(chosen)
    return all(len(graph.closed_neighbors(v) & chosen) > 0 for v in graph.vertices())


@dataclass(frozen=True)
class TdsBlock:
    """
    Vertex ids of one block: a path segment p, its guards q, the connectors zhat and clique vertices z of the four
    states, and the clique guards y.
    """

    p: Tuple[int, ...]
    q: Tuple[int, ...]
    zhat: Tuple[int, ...]
    z: Tuple[int, ...]
    y: Tuple[int, int]

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self.p + self.q + self.zhat + self.z + self.y

    def state_vertices(self, state: int) -> Tuple[int, ...]:
        return tuple(self.p[k] for k in STATES[state])


def _add_block(builder: GraphBuilder, tag: str) -> TdsBlock:
    p = builder.add_vertices(4, tag + ":p")
    q = builder.add_vertices(4, tag + ":q")
    zhat = builder.add_vertices(4, tag + ":zhat")
    z = builder.add_vertices(4, tag + ":z")
    y = builder.add_vertices(2, tag + ":y")
    for k in range(3):
        builder.add_edge(p[k], p[k + 1])
    for j in range(4):
        builder.join([q[j]], [p[k] for k in range(4) if k != j])
    for s, state in enumerate(STATES):
        builder.join([zhat[s]], [p[k] for k in range(4) if k not in state])
        builder.add_edge(zhat[s], z[s])
    builder.add_clique(z + [y[0]])
    builder.add_edge(y[0], y[1])
    return TdsBlock(tuple(p), tuple(q), tuple(zhat), tuple(z), (y[0], y[1]))


@dataclass
class TdsReduction:
    """
    Total Dominating Set instance of a formula with an even number of variables: blocks[l][i] is the block of
    variable pair i on segment l, clause_vertices[l] the clause vertex wired into segment l.
    """

    graph: Graph
    budget: int
    decomposition: PathDecomposition
    formula: CnfFormula
    blocks: Tuple[Tuple[TdsBlock, ...], ...]
    clause_vertices: Tuple[int, ...]
    guards: Tuple[int, int, int, int]

    @property
    def pairs(self) -> int:
        return self.formula.n_vars // 2

    @property
    def segments(self) -> int:
        return len(self.blocks)

    def manifest(self) -> Dict[str, object]:
        return {
            "kind": "tds",
            "n": self.graph.n,
            "m": self.graph.m,
            "b": self.budget,
            "pairs": self.pairs,
            "segments": self.segments,
            "width": self.decomposition.width,
        }


def pair_state(values: Sequence[bool]) -> int:
    """
    State of a variable pair: 00 -> 1, 01 -> 2, 10 -> 3, 11 -> 4 (returned 0-based).
    """
    return assignment_index(values)


def _pair_decomposition(
    blocks: Sequence[Sequence[TdsBlock]], clause_vertices: Sequence[int], guards: Sequence[int]
) -> PathDecomposition:
    """
    Sweeps the segments left to right. The bag of block (l, i) keeps the exits p4 of the pairs before i and the
    entries p1 of the pairs after i; between segments the exits slide to the next entries one pair at a time.
    """
    decomposition = PathDecomposition()
    guards = list(guards)
    pairs = len(blocks[0])
    for ell, row in enumerate(blocks):
        for i, block in enumerate(row):
            bag = guards + [clause_vertices[ell]] + list(block.vertices)
            bag += [row[k].p[3] for k in range(i)] + [row[k].p[0] for k in range(i + 1, pairs)]
            decomposition.append(bag)
        if ell + 1 == len(blocks):
            break
        following = blocks[ell + 1]
        for i in range(pairs):
            bag = guards + [following[k].p[0] for k in range(i + 1)] + [row[k].p[3] for k in range(i, pairs)]
            decomposition.append(bag)
    return decomposition


def build_tds_reduction(formula: CnfFormula) -> TdsReduction:
    """
    n/2 paths of m(3n/2 + 1) segments each, one block per segment and variable pair, one clause vertex per clause and
    region, and four endpoint guards. Odd variable counts are padded with a variable that occurs in no clause.
    """
    if formula.m == 0:
        raise CwdelError("Formula has no clauses")
    formula = formula.padded_even()
    pairs = formula.n_vars // 2
    regions = 3 * pairs + 1
    segments = formula.m * regions

    builder = GraphBuilder()
    h1, h2, h1p, h2p = [builder.add_vertex(tag) for tag in ("h1", "h2", "h1'", "h2'")]
    builder.add_edge(h1, h1p)
    builder.add_edge(h1, h2)
    builder.add_edge(h1p, h2p)

    blocks: List[List[TdsBlock]] = []
    clause_vertices = []
    for ell in range(segments):
        row = [_add_block(builder, "B{}.{}".format(i + 1, ell + 1)) for i in range(pairs)]
        if ell > 0:
            for i in range(pairs):
                builder.add_edge(blocks[-1][i].p[3], row[i].p[0])
        blocks.append(row)
        gamma, j = divmod(ell, formula.m)
        c = builder.add_vertex("c{}.{}".format(j + 1, gamma + 1))
        clause_vertices.append(c)
        for i, block in enumerate(row):
            for state in satisfying_indices(formula, [2 * i + 1, 2 * i + 2], j):
                builder.add_edge(c, block.z[state])
    for i in range(pairs):
        builder.add_edge(h1, blocks[0][i].p[0])
        builder.add_edge(h1p, blocks[-1][i].p[3])

    guards = (h1, h2, h1p, h2p)
    budget = 4 * segments * pairs + 2
    decomposition = _pair_decomposition(blocks, clause_vertices, guards)
    return TdsReduction(
        builder.build(),
        budget,
        decomposition,
        formula,
        tuple(tuple(row) for row in blocks),
        tuple(clause_vertices),
        guards,
    )


def forward_tds_solution(reduction: TdsReduction, assignment: Sequence[bool]) -> FrozenSet[int]:
    """
    In every block the state of its pair, the clique vertex of that state and the clique guard y1, plus h1 and h1'.
    """
    values = list(assignment)
    if len(values) + 1 == reduction.formula.n_vars:
        values.append(True)
    if not reduction.formula.satisfied_by(values):
        raise UnsatisfiedAssignmentError("Assignment does not satisfy the formula")
    chosen: Set[int] = {reduction.guards[0], reduction.guards[2]}
    for row in reduction.blocks:
        for i, block in enumerate(row):
            state = pair_state(values[2 * i : 2 * i + 2])
            chosen.update(block.state_vertices(state))
            chosen.update([block.z[state], block.y[0]])
    return frozenset(chosen)


def _block_pattern_sets(block: TdsBlock) -> Dict[int, FrozenSet[int]]:
    return {s: frozenset(block.state_vertices(s) + (block.z[s], block.y[0])) for s in range(4)}


def tds_block_forced_sets() -> Tuple[TdsBlock, List[FrozenSet[int]]]:
    """
    Enumerates the sets of at most four vertices of a standalone block that dominate every block vertex except the
    path ends p1 and p4, which the neighboring segments may dominate. Returns the block and the sets found.
    """
    builder = GraphBuilder()
    block = _add_block(builder, "B")
    graph = builder.build()
    required = [v for v in block.vertices if v not in (block.p[0], block.p[3])]
    found = []
    for size in range(5):
        for chosen in combinations(block.vertices, size):
            if is_total_dominating(graph, chosen, required):
                found.append(frozenset(chosen))
    return block, found


def tds_state_order_check() -> Set[Tuple[int, int]]:
    """
    Two consecutive segments of one path, each taking a state with its clique vertex and y1. Returns the pairs of
    1-based states (left, right) under which every vertex except the outer path ends is dominated.
    """
    builder = GraphBuilder()
    left = _add_block(builder, "L")
    right = _add_block(builder, "R")
    builder.add_edge(left.p[3], right.p[0])
    graph = builder.build()
    required = [v for v in graph.vertices() if v not in (left.p[0], right.p[3])]
    allowed = set()
    left_sets, right_sets = _block_pattern_sets(left), _block_pattern_sets(right)
    for s, s_next in product(range(4), repeat=2):
        if is_total_dominating(graph, left_sets[s] | right_sets[s_next], required):
            allowed.add((s + 1, s_next + 1))
    return allowed

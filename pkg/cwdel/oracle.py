#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np
from omegaconf import DictConfig

from cwdel.errors import CwdelError, TooLargeError, WitnessError
from cwdel.graph import Graph, to_networkx
from cwdel.instances import CnfFormula, HittingSetInstance, ProblemKind
from cwdel.utils import load_config

DELETED = 0


@dataclass(frozen=True)
class Solution:
    """
    Map from vertices to colors 1..r, with DELETED (0) marking deleted vertices.
    """

    colors: Tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self):
        return len(self.colors)

    @property
    def deleted(self) -> List[int]:
        return [v for v, c in enumerate(self.colors) if c == DELETED]

    @property
    def cost(self) -> int:
        return sum(1 for c in self.colors if c == DELETED)

    def is_valid(self, graph: Graph, r: int) -> bool:
        if len(self.colors) != graph.n or any(not 0 <= c <= r for c in self.colors):
            return False
        return all(
            self.colors[u] == DELETED or self.colors[v] == DELETED or self.colors[u] != self.colors[v]
            for u, v in graph.edges()
        )


class DeletionResult(NamedTuple):
    cost: int
    solution: Solution


class _Budget:
    def __init__(self, cap):
        self.cap = cap
        self.used = 0

    def tick(self):
        self.used += 1
        if self.cap is not None and self.used > self.cap:
            raise TooLargeError("Coloring search", self.used, self.cap)


def _color_backtrack(
    neighbors: Sequence[Sequence[int]], allowed: Sequence[int], r: int, symmetric: bool, budget: _Budget
) -> Optional[List[int]]:
    """
    DSATUR backtracking over local vertices 0..k-1. allowed[v] is a bitmask of usable colors (bit c-1 for color c).
    With symmetric, colors are interchangeable and a new color is only tried once.
    """
    k = len(neighbors)
    color = [0] * k
    avail = list(allowed)
    if any(a == 0 for a in avail):
        return None
    degree = [len(nb) for nb in neighbors]

    def pick() -> int:
        best = -1
        best_key = None
        for v in range(k):
            if color[v] == 0:
                key = (bin(avail[v]).count("1"), -degree[v])
                if best_key is None or key < best_key:
                    best, best_key = v, key
        return best

    def search(colored: int, used: int) -> bool:
        if colored == k:
            return True
        budget.tick()
        v = pick()
        options = avail[v]
        if symmetric:
            options &= (1 << min(used + 1, r)) - 1
        while options:
            low = options & -options
            options ^= low
            changed = []
            dead = False
            for w in neighbors[v]:
                if color[w] == 0 and avail[w] & low:
                    avail[w] ^= low
                    changed.append(w)
                    if avail[w] == 0:
                        dead = True
            color[v] = low.bit_length()
            if not dead and search(colored + 1, max(used, color[v])):
                return True
            color[v] = 0
            for w in changed:
                avail[w] |= low
        return False

    if search(0, 0):
        return color
    return None


def list_color(
    graph: Graph,
    vertices: Sequence[int],
    r: int,
    lists: Optional[Dict[int, Iterable[int]]] = None,
    node_cap: Optional[int] = None,
) -> Optional[Dict[int, int]]:
    """
    (List-)r-coloring of G[vertices]; returns vertex -> color or None if none exists.
    """
    vertices = list(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    neighbors = [[index[w] for w in graph.neighbors(v) if w in index] for v in vertices]
    full = (1 << r) - 1
    if lists is None:
        allowed = [full] * len(vertices)
    else:
        allowed = [
            sum(1 << (c - 1) for c in lists[v] if 1 <= c <= r) if v in lists else full for v in vertices
        ]
    coloring = _color_backtrack(neighbors, allowed, r, lists is None, _Budget(node_cap))
    if coloring is None:
        return None
    return {v: coloring[i] for i, v in enumerate(vertices)}


def min_deletions_r_colorable(
    graph: Graph,
    r: int,
    cap: Optional[int] = None,
    lists: Optional[Dict[int, Iterable[int]]] = None,
    fixed: Optional[Dict[int, int]] = None,
) -> Optional[DeletionResult]:
    """
    Minimum number of deletions leaving a (list-)r-colorable graph, or None if more than cap are needed.

    Deletion sets are enumerated by size, then lexicographically; the first feasible one is returned. Vertices in
    fixed keep the given color (or DELETED) and neither count towards the cost nor get deleted.
    """
    if r < 1:
        raise CwdelError("r must be at least 1, got {}".format(r))
    fixed = dict(fixed or {})
    if cap is None:
        cap = graph.n
    # colors available to free vertices after the fixed ones
    allowed: Dict[int, Set[int]] = {}
    for v in graph.vertices():
        if v in fixed:
            continue
        base = set(lists[v]) if lists is not None and v in lists else set(range(1, r + 1))
        allowed[v] = base - {fixed[w] for w in graph.neighbors(v) if w in fixed and fixed[w] != DELETED}
    for u, v in graph.edges():
        if u in fixed and v in fixed and fixed[u] != DELETED and fixed[u] == fixed[v]:
            return None
    symmetric = lists is None and all(c == DELETED for c in fixed.values())
    free = [v for v in graph.vertices() if v not in fixed]
    for size in range(0, min(cap, len(free)) + 1):
        for removed in combinations(free, size):
            removed_set = set(removed)
            rest = [v for v in free if v not in removed_set]
            coloring = list_color(graph, rest, r, None if symmetric else allowed)
            if coloring is None:
                continue
            colors = [DELETED] * graph.n
            for v, c in fixed.items():
                colors[v] = c
            for v, c in coloring.items():
                colors[v] = c
            return DeletionResult(size, Solution(tuple(colors)))
    return None


def chromatic_number(graph: Graph, cfg: Optional[DictConfig] = None) -> int:
    cfg = load_config(cfg)
    if graph.n > cfg.chromatic_max_vertices:
        raise TooLargeError("Graph", graph.n, cfg.chromatic_max_vertices)
    if graph.n == 0:
        return 0
    k = 1 if graph.m == 0 else 2
    while list_color(graph, graph.vertices(), k) is None:
        k += 1
    return k


def extend_coloring(
    graph: Graph,
    r: int,
    deleted: Iterable[int],
    precolored: Dict[int, int],
    node_cap: Optional[int] = None,
) -> Solution:
    """
    Completes a partial solution: deleted vertices and precolored vertices are kept, every other vertex is colored
    component by component with lists restricted by the precolored neighbors. Raises WitnessError if impossible.
    """
    deleted = set(deleted)
    colors = [DELETED] * graph.n
    for v, c in precolored.items():
        colors[v] = c
    for u, v in graph.edges():
        if u in precolored and v in precolored and u not in deleted and v not in deleted:
            if precolored[u] == precolored[v]:
                raise WitnessError("Precolored neighbors {} and {} share color {}".format(u, v, precolored[u]))
    for component in graph.connected_components(removed=deleted | set(precolored)):
        blocked = {
            v: {precolored[w] for w in graph.neighbors(v) if w in precolored and w not in deleted} for v in component
        }
        lists = {v: set(range(1, r + 1)) - blocked[v] for v in component}
        coloring = list_color(graph, component, r, lists, node_cap)
        if coloring is None:
            raise WitnessError("Component of vertex {} cannot be colored".format(component[0]))
        for v, c in coloring.items():
            colors[v] = c
    return Solution(tuple(colors))


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _min_vertex_cover(graph: Graph) -> FrozenSet[int]:
    """
    Branch and bound: isolated vertices are dropped, a degree-1 vertex forces its neighbor, components are solved
    separately and a max-degree vertex v branches into {v} or N(v).
    """
    adjacency = [sum(1 << w for w in graph.neighbors(v)) for v in graph.vertices()]

    def matching_bound(alive: int) -> int:
        size = 0
        free = alive
        for v in _bits(alive):
            if free >> v & 1:
                nb = adjacency[v] & free
                if nb:
                    free &= ~((1 << v) | (nb & -nb))
                    size += 1
        return size

    def components(alive: int) -> List[int]:
        parts = []
        while alive:
            seen = alive & -alive
            frontier = seen
            while frontier:
                grown = 0
                for v in _bits(frontier):
                    grown |= adjacency[v]
                frontier = grown & alive & ~seen
                seen |= frontier
            parts.append(seen)
            alive &= ~seen
        return parts

    def solve(alive: int, limit: float) -> Optional[int]:
        # minimum cover of G[alive] of size < limit
        forced = 0
        changed = True
        while changed:
            changed = False
            for v in _bits(alive):
                nb = adjacency[v] & alive
                if nb == 0:
                    alive &= ~(1 << v)
                    changed = True
                elif nb & (nb - 1) == 0:
                    forced |= nb
                    alive &= ~(nb | (1 << v))
                    changed = True
                    break
        limit -= _popcount(forced)
        if alive == 0:
            return forced if limit > 0 else None
        if matching_bound(alive) >= limit:
            return None
        parts = components(alive)
        if len(parts) > 1:
            cover = forced
            for part in parts:
                sub = solve(part, limit - _popcount(cover & ~forced))
                if sub is None:
                    return None
                cover |= sub
            return cover
        v = max(_bits(alive), key=lambda x: (_popcount(adjacency[x] & alive), -x))
        best = None
        taken = solve(alive & ~(1 << v), limit - 1)
        if taken is not None:
            best = taken | (1 << v)
            limit = _popcount(best)
        nb = adjacency[v] & alive
        other = solve(alive & ~nb & ~(1 << v), limit - _popcount(nb))
        if other is not None:
            best = other | nb
        if best is None:
            return None
        return best | forced

    cover = solve((1 << graph.n) - 1, graph.n + 1)
    return frozenset(_bits(cover))


def _smallest_cover(n: int, masks: Sequence[int], target: int, cap: int) -> Optional[Tuple[int, ...]]:
    # smallest (then lexicographically first) vertex set whose masks OR to target
    for size in range(0, min(cap, n) + 1):
        for chosen in combinations(range(n), size):
            acc = 0
            for v in chosen:
                acc |= masks[v]
            if acc & target == target:
                return chosen
    return None


def _smallest_hitting(n: int, sets: Sequence[int]) -> Tuple[int, ...]:
    for size in range(0, n + 1):
        for chosen in combinations(range(n), size):
            mask = sum(1 << v for v in chosen)
            if all(s & mask for s in sets):
                return chosen
    raise CwdelError("Family contains an empty set")


def _max_cut(graph: Graph, chunk: int = 1 << 20) -> Tuple[int, FrozenSet[int]]:
    n = graph.n
    if n <= 1 or graph.m == 0:
        return 0, frozenset()
    edges = graph.edge_array()
    total = 1 << (n - 1)
    best_value = -1
    best_mask = 0
    # vertex 0 stays on side 0, bit v-1 of the mask places vertex v
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        sides = np.zeros((n, len(masks)), dtype=np.int8)
        for v in range(1, n):
            sides[v] = (masks >> (v - 1)) & 1
        cut = np.zeros(len(masks), dtype=np.int16)
        for u, v in edges:
            cut += sides[u] ^ sides[v]
        idx = int(np.argmax(cut))
        if int(cut[idx]) > best_value:
            best_value = int(cut[idx])
            best_mask = int(masks[idx])
    return best_value, frozenset(v for v in range(1, n) if best_mask >> (v - 1) & 1)


def r_cliques(graph: Graph, r: int) -> List[Tuple[int, ...]]:
    return sorted(tuple(sorted(c)) for c in nx.enumerate_all_cliques(to_networkx(graph)) if len(c) == r)


def min_hitting_cliques(graph: Graph, r: int) -> FrozenSet[int]:
    """
    Minimum K_r-free deletion: a smallest vertex set meeting every r-clique.
    """
    cliques = [sum(1 << v for v in c) for c in r_cliques(graph, r)]
    return frozenset(_smallest_hitting(graph.n, cliques))


def _dpll(clauses: List[Tuple[int, ...]], assignment: Dict[int, bool]) -> Optional[Dict[int, bool]]:
    assignment = dict(assignment)
    while True:
        unit = None
        remaining = []
        for clause in clauses:
            if any(assignment.get(abs(lit)) == (lit > 0) for lit in clause):
                continue
            open_literals = [lit for lit in clause if abs(lit) not in assignment]
            if len(open_literals) == 0:
                return None
            if len(open_literals) == 1 and unit is None:
                unit = open_literals[0]
            remaining.append(open_literals)
        if len(remaining) == 0:
            return assignment
        if unit is None:
            break
        assignment[abs(unit)] = unit > 0
        clauses = [tuple(c) for c in remaining]
    variable = abs(remaining[0][0])
    for value in (True, False):
        result = _dpll(clauses, {**assignment, variable: value})
        if result is not None:
            return result
    return None


def solve_sat(formula: CnfFormula) -> Optional[Tuple[bool, ...]]:
    """
    Satisfying assignment by DPLL with unit propagation (unassigned variables default to False), or None.
    """
    result = _dpll(list(formula.clauses), {})
    if result is None:
        return None
    return tuple(result.get(x, False) for x in range(1, formula.n_vars + 1))


def solve_exact(kind: ProblemKind, instance, r: Optional[int] = None, cfg: Optional[DictConfig] = None):
    """
    Exact optimum and witness for one of the problem kinds.

    Graph kinds take a Graph, HITTING_SET a HittingSetInstance and SAT a CnfFormula. Witnesses are vertex sets
    (the cut side for MAX_CUT), element sets for HITTING_SET and the assignment for SAT, whose value is 1 when
    satisfiable and 0 otherwise.
    """
    cfg = load_config(cfg)
    kind = ProblemKind(kind)
    if kind == ProblemKind.SAT:
        if instance.n_vars > cfg.sat_max_variables:
            raise TooLargeError("Formula", instance.n_vars, cfg.sat_max_variables)
        assignment = solve_sat(instance)
        return (0, None) if assignment is None else (1, assignment)
    if kind == ProblemKind.HITTING_SET:
        if instance.universe > cfg.exact_max_vertices:
            raise TooLargeError("Universe", instance.universe, cfg.exact_max_vertices)
        chosen = _smallest_hitting(instance.universe, [sum(1 << u for u in s) for s in instance.sets])
        return len(chosen), frozenset(chosen)

    graph: Graph = instance
    caps = {
        ProblemKind.VERTEX_COVER: cfg.vertex_cover_max_vertices,
        ProblemKind.MAX_CUT: cfg.maxcut_max_vertices,
    }
    cap = caps.get(kind, cfg.exact_max_vertices)
    if graph.n > cap:
        raise TooLargeError("Graph", graph.n, cap)
    if kind == ProblemKind.VERTEX_COVER:
        cover = _min_vertex_cover(graph)
        return len(cover), cover
    if kind == ProblemKind.MAX_CUT:
        return _max_cut(graph)
    if kind == ProblemKind.KR_FREE_DELETION:
        if r is None or r < 3:
            raise CwdelError("K_r-free deletion needs r >= 3, got {}".format(r))
        chosen = min_hitting_cliques(graph, r)
        return len(chosen), chosen
    full = (1 << graph.n) - 1
    if kind == ProblemKind.DOMINATING_SET:
        masks = [sum(1 << w for w in graph.closed_neighbors(v)) for v in graph.vertices()]
    elif kind == ProblemKind.TOTAL_DOMINATING_SET:
        isolated = [v for v in graph.vertices() if graph.degree(v) == 0]
        if len(isolated) > 0:
            raise CwdelError("No total dominating set exists, vertex {} is isolated".format(isolated[0]))
        masks = [sum(1 << w for w in graph.neighbors(v)) for v in graph.vertices()]
    else:
        raise ValueError("Problem {} unavailable".format(kind))
    chosen = _smallest_cover(graph.n, masks, full, graph.n)
    return len(chosen), frozenset(chosen)

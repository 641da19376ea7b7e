#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as csgraph_components

from cwdel.errors import CwdelError, DecompositionError, InvalidPartitionError, TooLargeError


class Graph:
    """
    Undirected simple graph on the vertex ids 0..n-1.

    Graphs are immutable; use GraphBuilder to construct them incrementally. Every vertex may carry a provenance
    tag (e.g. the gadget it was created for).
    """

    __slots__ = ("_adj", "_tags", "_m")

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = (), tags: Optional[Sequence[Optional[str]]] = None):
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise CwdelError("Edge {{{}, {}}} out of range for {} vertices".format(u, v, n))
            if u == v:
                raise CwdelError("Self-loop at vertex {}".format(u))
            adj[u].add(v)
            adj[v].add(u)
        if tags is not None and len(tags) != n:
            raise CwdelError("Got {} tags for {} vertices".format(len(tags), n))
        self._init(adj, tags)

    def _init(self, adj, tags):
        self._adj = tuple(frozenset(a) for a in adj)
        self._tags = tuple(tags) if tags is not None else (None,) * len(adj)
        self._m = sum(len(a) for a in self._adj) // 2

    @classmethod
    def _from_adjacency(cls, adj, tags=None):
        graph = cls.__new__(cls)
        graph._init(adj, tags)
        return graph

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return self._m

    @property
    def tags(self) -> Tuple[Optional[str], ...]:
        return self._tags

    def vertices(self):
        return range(self.n)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v]

    def adjacency(self, v: int) -> List[int]:
        return sorted(self._adj[v])

    def closed_neighbors(self, v: int) -> FrozenSet[int]:
        return self._adj[v] | {v}

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def tag(self, v: int) -> Optional[str]:
        return self._tags[v]

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    def edge_array(self) -> np.ndarray:
        edges = self.edges()
        if len(edges) == 0:
            return np.zeros((0, 2), dtype=np.int64)
        return np.asarray(edges, dtype=np.int64)

    def cut_size(self, side: Iterable[int]) -> int:
        side = set(side)
        return sum(1 for u, v in self.edges() if (u in side) != (v in side))

    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple["Graph", Dict[int, int]]:
        """
        Returns G[vertices] with vertices renumbered in increasing order, and the map old id -> new id.
        """
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        adj = [{index[w] for w in self._adj[v] if w in index} for v in order]
        return Graph._from_adjacency(adj, [self._tags[v] for v in order]), index

    def remove_vertices(self, removed: Iterable[int]) -> Tuple["Graph", Dict[int, int]]:
        removed = set(removed)
        return self.induced_subgraph(v for v in range(self.n) if v not in removed)

    def connected_components(self, removed: Iterable[int] = ()) -> List[List[int]]:
        """
        Connected components of G - removed, each sorted, ordered by smallest member.
        """
        removed = set(removed)
        keep = np.ones(self.n, dtype=bool)
        keep[list(removed)] = False
        if self.n == 0:
            return []
        edges = self.edge_array()
        if len(edges) > 0:
            mask = keep[edges[:, 0]] & keep[edges[:, 1]]
            edges = edges[mask]
        matrix = coo_matrix((np.ones(len(edges), dtype=np.int8), (edges[:, 0], edges[:, 1])), shape=(self.n, self.n))
        _, labels = csgraph_components(matrix, directed=False)
        groups = defaultdict(list)
        for v in np.flatnonzero(keep):
            groups[labels[v]].append(int(v))
        return sorted(groups.values(), key=lambda c: c[0])

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def __eq__(self, other):
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self):
        return hash(self._adj)

    def __repr__(self):
        return "Graph(n={}, m={})".format(self.n, self.m)


class GraphBuilder:
    """
    Mutable single-writer graph under construction. Vertex ids are handed out in creation order.
    """

    def __init__(self, n: int = 0, tag: Optional[str] = None):
        self._adj: List[set] = []
        self._tags: List[Optional[str]] = []
        self.add_vertices(n, tag)

    @property
    def n(self) -> int:
        return len(self._adj)

    def add_vertex(self, tag: Optional[str] = None) -> int:
        self._adj.append(set())
        self._tags.append(tag)
        return len(self._adj) - 1

    def add_vertices(self, count: int, tag: Optional[str] = None) -> List[int]:
        return [self.add_vertex(tag) for _ in range(count)]

    def add_edge(self, u: int, v: int):
        if u == v:
            raise CwdelError("Self-loop at vertex {}".format(u))
        self._adj[u].add(v)
        self._adj[v].add(u)

    def add_clique(self, vertices: Sequence[int]):
        for u, v in combinations(vertices, 2):
            self.add_edge(u, v)

    def join(self, a: Iterable[int], b: Iterable[int]):
        b = list(b)
        for u in a:
            for v in b:
                self.add_edge(u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: int) -> FrozenSet[int]:
        return frozenset(self._adj[v])

    def set_tag(self, v: int, tag: str):
        self._tags[v] = tag

    def tag(self, v: int) -> Optional[str]:
        return self._tags[v]

    def build(self) -> Graph:
        return Graph._from_adjacency(self._adj, self._tags)


@dataclass(frozen=True)
class Partition:
    """
    Partition of the vertex set into disjoint nonempty blocks, ordered by smallest member.
    """

    blocks: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        blocks = [tuple(sorted(set(b))) for b in blocks]
        return cls(tuple(sorted(blocks, key=lambda b: b[0] if len(b) > 0 else -1)))

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(tuple((v,) for v in range(n)))

    def validate(self, n: int):
        seen = [False] * n
        for block in self.blocks:
            if len(block) == 0:
                raise InvalidPartitionError("Partition contains an empty block")
            for v in block:
                if not 0 <= v < n:
                    raise InvalidPartitionError("Vertex {} is not a vertex of the graph".format(v))
                if seen[v]:
                    raise InvalidPartitionError("Vertex {} occurs in more than one block".format(v))
                seen[v] = True
        missing = [v for v in range(n) if not seen[v]]
        if len(missing) > 0:
            raise InvalidPartitionError("Partition does not cover vertex {}".format(missing[0]))

    def block_index(self, n: int) -> List[int]:
        index = [-1] * n
        for i, block in enumerate(self.blocks):
            for v in block:
                index[v] = i
        return index

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)


def are_twins(graph: Graph, u: int, v: int) -> bool:
    return graph.neighbors(u) - {v} == graph.neighbors(v) - {u}


def twinclass_partition(graph: Graph) -> Partition:
    """
    Partition into twinclasses. Vertices with equal open neighborhoods are false twins, vertices with equal closed
    neighborhoods are true twins; the twin relation is an equivalence, so both groupings can be merged.
    """
    parent = list(range(graph.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for key in (graph.neighbors, graph.closed_neighbors):
        first = {}
        for v in graph.vertices():
            root = first.setdefault(key(v), v)
            if root != v:
                parent[find(v)] = find(root)
    groups = defaultdict(list)
    for v in graph.vertices():
        groups[find(v)].append(v)
    return Partition.from_blocks(groups.values())


def is_twin_set(graph: Graph, block: Iterable[int]) -> bool:
    """
    True iff the vertices of block are pairwise twins.
    """
    block = sorted(set(block))
    if len(block) <= 1:
        return True
    members = set(block)
    outside = graph.neighbors(block[0]) - members
    inner = [len(graph.neighbors(v) & members) for v in block]
    clique = all(d == len(block) - 1 for d in inner)
    independent = all(d == 0 for d in inner)
    if not (clique or independent):
        return False
    return all(graph.neighbors(v) - members == outside for v in block)


def classify_twinclass(graph: Graph, block: Iterable[int]) -> str:
    """
    Returns "singleton", "true-twins" or "false-twins" for a twinclass of the graph.
    """
    block = sorted(set(block))
    if len(block) == 0 or not is_twin_set(graph, block):
        raise InvalidPartitionError("Vertices {} are not pairwise twins".format(block))
    u = block[0]
    members = set(block)
    if graph.degree(u) == 0:
        candidates = [w for w in graph.vertices() if graph.degree(w) == 0]
    else:
        candidates = set(graph.neighbors(u))
        for x in graph.neighbors(u):
            candidates |= graph.neighbors(x)
    for w in candidates:
        if w not in members and are_twins(graph, u, w):
            raise InvalidPartitionError("Block {} is not maximal, vertex {} is a twin of {}".format(block, w, u))
    if len(block) == 1:
        return "singleton"
    if graph.has_edge(block[0], block[1]):
        return "true-twins"
    return "false-twins"


def quotient(graph: Graph, partition: Partition) -> Graph:
    partition.validate(graph.n)
    index = partition.block_index(graph.n)
    edges = {(min(index[u], index[v]), max(index[u], index[v])) for u, v in graph.edges() if index[u] != index[v]}
    return Graph(len(partition), sorted(edges))


def is_induced_subgraph_of(small: Graph, big: Graph, mapping: Sequence[int]) -> bool:
    """
    Checks that mapping (vertex of small -> vertex of big) is injective and embeds small as an induced subgraph.
    """
    if len(mapping) != small.n or len(set(mapping)) != small.n:
        return False
    for u, v in combinations(range(small.n), 2):
        if small.has_edge(u, v) != big.has_edge(mapping[u], mapping[v]):
            return False
    return True


def to_networkx(graph: Graph) -> nx.Graph:
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(graph.vertices())
    nx_graph.add_edges_from(graph.edges())
    return nx_graph


def from_networkx(nx_graph: nx.Graph) -> Graph:
    nx_graph = nx.convert_node_labels_to_integers(nx_graph, ordering="sorted")
    return Graph(nx_graph.number_of_nodes(), nx_graph.edges())


class TreeDecomposition:
    """
    Tree decomposition given by bags (node id -> vertex set) and skeleton edges between node ids.
    """

    def __init__(self, bags: Iterable[Iterable[int]] = (), edges: Iterable[Tuple[int, int]] = ()):
        self.bags: List[FrozenSet[int]] = [frozenset(b) for b in bags]
        self.edges: List[Tuple[int, int]] = [tuple(e) for e in edges]

    def add_bag(self, bag: Iterable[int], parent: Optional[int] = None) -> int:
        self.bags.append(frozenset(bag))
        node = len(self.bags) - 1
        if parent is not None:
            self.edges.append((parent, node))
        return node

    def attach(self, other: "TreeDecomposition", parent: Optional[int], root: int = 0) -> int:
        """
        Copies other into this decomposition and links node root of other below parent. Returns the new id of root.
        """
        offset = len(self.bags)
        self.bags.extend(other.bags)
        self.edges.extend((a + offset, b + offset) for a, b in other.edges)
        if parent is not None:
            self.edges.append((parent, root + offset))
        return root + offset

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def vertices(self) -> FrozenSet[int]:
        return frozenset().union(*self.bags) if len(self.bags) > 0 else frozenset()

    def __len__(self):
        return len(self.bags)


class PathDecomposition(TreeDecomposition):
    def __init__(self, bags: Iterable[Iterable[int]] = ()):
        bags = list(bags)
        super().__init__(bags, [(i, i + 1) for i in range(len(bags) - 1)])

    def append(self, bag: Iterable[int]) -> int:
        return self.add_bag(bag, len(self.bags) - 1 if len(self.bags) > 0 else None)


def verify_decomposition(
    graph: Graph, decomposition: TreeDecomposition, vertices: Optional[Iterable[int]] = None
) -> int:
    """
    Checks the three decomposition axioms (and that the skeleton is a tree) and returns the width.

    With vertices given, the decomposition is checked against the induced subgraph on those vertices.
    Raises DecompositionError naming the violated axiom and a witness.
    """
    bags = decomposition.bags
    if vertices is None:
        scope = None
        required = range(graph.n)
    else:
        scope = set(vertices)
        required = sorted(scope)

    # skeleton
    nodes = len(bags)
    if nodes == 0:
        if len(required) > 0:
            raise DecompositionError("vertex", required[0])
        return -1
    if len(decomposition.edges) != nodes - 1:
        raise DecompositionError(
            "skeleton",
            len(decomposition.edges),
            "Skeleton with {} nodes has {} edges".format(nodes, len(decomposition.edges)),
        )
    neighbors = [[] for _ in range(nodes)]
    for a, b in decomposition.edges:
        if not (0 <= a < nodes and 0 <= b < nodes) or a == b:
            raise DecompositionError("skeleton", (a, b))
        neighbors[a].append(b)
        neighbors[b].append(a)
    reached = [False] * nodes
    reached[0] = True
    stack = [0]
    while stack:
        node = stack.pop()
        for nxt in neighbors[node]:
            if not reached[nxt]:
                reached[nxt] = True
                stack.append(nxt)
    if not all(reached):
        raise DecompositionError("skeleton", reached.index(False), "Skeleton is not connected")

    # vertex
    occurrences = defaultdict(int)
    for node, bag in enumerate(bags):
        for v in bag:
            if (scope is not None and v not in scope) or not 0 <= v < graph.n:
                raise DecompositionError("vertex", v, "Bag {} holds vertex {} outside the graph".format(node, v))
            occurrences[v] += 1
    for v in required:
        if occurrences[v] == 0:
            raise DecompositionError("vertex", v)

    # edge
    holders = defaultdict(list)
    for node, bag in enumerate(bags):
        for v in bag:
            holders[v].append(node)
    for u in required:
        for v in graph.neighbors(u):
            if v <= u or (scope is not None and v not in scope):
                continue
            small, large = (u, v) if occurrences[u] <= occurrences[v] else (v, u)
            if not any(large in bags[node] for node in holders[small]):
                raise DecompositionError("edge", (u, v))

    # connectivity: occurrence nodes of v span a subtree iff they are joined by exactly count - 1 skeleton edges
    links = defaultdict(int)
    for a, b in decomposition.edges:
        for v in bags[a] & bags[b]:
            links[v] += 1
    for v, count in occurrences.items():
        if count - links[v] != 1:
            raise DecompositionError("connectivity", v)
    return decomposition.width


def _reach_outside(adjacency: List[int], inside: int, v: int) -> int:
    # vertices outside inside + {v} reachable from v through inside
    seen = 1 << v
    frontier = 1 << v
    outside = 0
    while frontier:
        grown = 0
        while frontier:
            low = frontier & -frontier
            grown |= adjacency[low.bit_length() - 1]
            frontier ^= low
        grown &= ~seen
        seen |= grown
        outside |= grown & ~inside
        frontier = grown & inside
    return bin(outside).count("1")


def exact_treewidth(graph: Graph, max_vertices: int = 16) -> int:
    """
    Exact treewidth by the subset dynamic program over elimination orders:
    TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|).
    """
    n = graph.n
    if n > max_vertices:
        raise TooLargeError("Graph", n, max_vertices)
    if n == 0:
        return -1
    adjacency = [sum(1 << w for w in graph.neighbors(v)) for v in range(n)]
    full = (1 << n) - 1
    tw = [n] * (1 << n)
    tw[0] = -1
    for subset in range(1, full + 1):
        best = n
        rest = subset
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            smaller = subset ^ low
            if tw[smaller] >= best:
                continue
            value = max(tw[smaller], _reach_outside(adjacency, smaller, v))
            if value < best:
                best = value
        tw[subset] = best
    return tw[full]

#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from itertools import combinations

import networkx as nx
import pytest

from cwdel.graph import Graph, from_networkx
from cwdel.utils import load_config


def cycle(n: int) -> Graph:
    return Graph(n, [(v, (v + 1) % n) for v in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def path(n: int) -> Graph:
    return Graph(n, [(v, v + 1) for v in range(n - 1)])


def petersen() -> Graph:
    return from_networkx(nx.petersen_graph())


def atlas(first: int = 1, last: int = 208):
    """
    Small graphs of the networkx atlas (up to 7 vertices), skipping the empty graph.
    """
    return [from_networkx(g) for g in nx.graph_atlas_g()[first:last]]


@pytest.fixture
def solver_cfg():
    cfg = load_config()
    cfg.progress = False
    return cfg

#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from .graph import Graph, GraphBuilder, Partition, TreeDecomposition, PathDecomposition
from .oracle import Solution

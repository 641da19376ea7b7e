#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
############################################
# Reduce
#
# Generates an instance of one of the reductions and writes graph, tags, manifest, decompositions and, for the
# lower-bound instances, modulator and packing files into the output directory.
#
# Parameters are set in cfg/reduce_config.yaml and can be overridden on the command line, e.g.
# python scripts/reduce.py tiny.cnf --kind sparse --r 2 --p0 1
#
############################################
import sys

import hydra
from omegaconf import DictConfig

from cwdel.commands import cmd_reduce, run_command
from cwdel.utils import prep_args


@hydra.main(config_path="cfg", config_name="reduce_config.yaml")
def my_app(cfg: DictConfig) -> None:
    sys.exit(run_command(cmd_reduce, cfg))


if __name__ == "__main__":
    prep_args()
    my_app()

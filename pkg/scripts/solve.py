#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
############################################
# Solve
#
# Minimum number of deletions making the graph of a clique-expression r-colorable, by the dynamic program
# over label states. With a budget, exit code 0 means yes and 1 means no.
#
# Parameters are set in cfg/solve_config.yaml and can be overridden on the command line, e.g.
# python scripts/solve.py --expr-file k3.cwx --r 2 --budget 0
#
############################################
import sys

import hydra
from omegaconf import DictConfig

from cwdel.commands import cmd_solve, run_command
from cwdel.utils import prep_args


@hydra.main(config_path="cfg", config_name="solve_config.yaml")
def my_app(cfg: DictConfig) -> None:
    sys.exit(run_command(cmd_solve, cfg))


if __name__ == "__main__":
    prep_args()
    my_app()

#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
############################################
# Oracle
#
# Exact brute-force optima for small instances of every problem used by the reductions.
#
# Parameters are set in cfg/oracle_config.yaml and can be overridden on the command line, e.g.
# python scripts/oracle.py petersen.gr --problem dtc --r 2 --cap 3
#
############################################
import sys

import hydra
from omegaconf import DictConfig

from cwdel.commands import cmd_oracle, run_command
from cwdel.utils import prep_args


@hydra.main(config_path="cfg", config_name="oracle_config.yaml")
def my_app(cfg: DictConfig) -> None:
    sys.exit(run_command(cmd_oracle, cfg))


if __name__ == "__main__":
    prep_args()
    my_app()

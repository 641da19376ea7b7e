#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
############################################
# Critical graphs
#
# Writes the t-critical graph made of gamma cliques K_t chained by Hajos merges, with its path decomposition.
#
# Parameters are set in cfg/gen_critical_config.yaml and can be overridden on the command line, e.g.
# python scripts/gen_critical.py --t 3 --gamma 2
#
############################################
import sys

import hydra
from omegaconf import DictConfig

from cwdel.commands import cmd_gen_critical, run_command
from cwdel.utils import prep_args


@hydra.main(config_path="cfg", config_name="gen_critical_config.yaml")
def my_app(cfg: DictConfig) -> None:
    sys.exit(run_command(cmd_gen_critical, cfg))


if __name__ == "__main__":
    prep_args()
    my_app()

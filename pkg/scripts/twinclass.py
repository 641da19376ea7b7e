#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
############################################
# Twinclasses
#
# Prints the twinclass partition of a graph, one classified block per line, and the size of its quotient.
#
# Parameters are set in cfg/twinclass_config.yaml and can be overridden on the command line, e.g.
# python scripts/twinclass.py graph.gr
#
############################################
import sys

import hydra
from omegaconf import DictConfig

from cwdel.commands import cmd_twinclass, run_command
from cwdel.utils import prep_args


@hydra.main(config_path="cfg", config_name="twinclass_config.yaml")
def my_app(cfg: DictConfig) -> None:
    sys.exit(run_command(cmd_twinclass, cfg))


if __name__ == "__main__":
    prep_args()
    my_app()

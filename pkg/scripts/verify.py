#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
############################################
# Verify
#
# Checks a generated instance directory (packing, modulator, decompositions, witness) or a single solution.
#
# Parameters are set in cfg/verify_config.yaml and can be overridden on the command line, e.g.
# python scripts/verify.py --instance reduced/manifest.txt
#
############################################
import sys

import hydra
from omegaconf import DictConfig

from cwdel.commands import cmd_verify, run_command
from cwdel.utils import prep_args


@hydra.main(config_path="cfg", config_name="verify_config.yaml")
def my_app(cfg: DictConfig) -> None:
    sys.exit(run_command(cmd_verify, cfg))


if __name__ == "__main__":
    prep_args()
    my_app()

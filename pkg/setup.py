#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from setuptools import find_packages
from distutils.core import setup

INSTALL_REQUIRES = [
    # generic
    "numpy",
    "scipy",
    "networkx",
    "tqdm",
    "pip",
    "pytest",
    "pytictoc",
    "omegaconf",
    "hydra-core",
    "prettytable",
    "termcolor",
]

setup(
    name="cwdel",
    version="0.0.1",
    author="Piotr Libera, Jonas Frey, Matias Mattamala",
    author_email="plibera@student.ethz.ch, jonfrey@ethz.ch, matias@leggedrobotics.com",
    packages=find_packages(),
    package_data={"cwdel": ["cfg/*.yaml"]},
    python_requires=">=3.7",
    description="Deletion to r-Colorable by clique-width: exact solver, oracles and lower-bound instance generators",
    install_requires=[INSTALL_REQUIRES],
)

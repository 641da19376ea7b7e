#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple

from cwdel.errors import CwdelError


class ProblemKind(Enum):
    VERTEX_COVER = "vc"
    DOMINATING_SET = "ds"
    TOTAL_DOMINATING_SET = "tds"
    MAX_CUT = "maxcut"
    KR_FREE_DELETION = "krfree"
    HITTING_SET = "hs"
    SAT = "sat"


@dataclass(frozen=True)
class CnfFormula:
    """
    CNF formula over the variables 1..n_vars. Literals are nonzero integers, negative for negated variables.
    """

    n_vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        for idx, clause in enumerate(self.clauses):
            if len(clause) == 0:
                raise CwdelError("Clause {} is empty".format(idx + 1))
            for literal in clause:
                if literal == 0 or abs(literal) > self.n_vars:
                    raise CwdelError("Literal {} out of range in clause {}".format(literal, idx + 1))

    @classmethod
    def of(cls, n_vars: int, clauses: Sequence[Sequence[int]]) -> "CnfFormula":
        return cls(n_vars, tuple(tuple(c) for c in clauses))

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def q(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    def clause_satisfied(self, clause_index: int, assignment: Sequence[bool]) -> bool:
        return any(assignment[abs(lit) - 1] == (lit > 0) for lit in self.clauses[clause_index])

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        if len(assignment) != self.n_vars:
            raise CwdelError("Assignment has {} values for {} variables".format(len(assignment), self.n_vars))
        return all(self.clause_satisfied(j, assignment) for j in range(self.m))

    def padded_even(self) -> "CnfFormula":
        """
        Adds one variable that occurs in no clause when the variable count is odd.
        """
        if self.n_vars % 2 == 0:
            return self
        return CnfFormula(self.n_vars + 1, self.clauses)


@dataclass(frozen=True)
class HittingSetInstance:
    """
    Universe {0..universe-1}, a family of nonempty sets and a budget t. Files use 1-indexed elements.
    """

    universe: int
    sets: Tuple[Tuple[int, ...], ...]
    budget: int

    def __post_init__(self):
        for idx, members in enumerate(self.sets):
            if len(members) == 0:
                raise CwdelError("Set {} is empty".format(idx + 1))
            for u in members:
                if not 0 <= u < self.universe:
                    raise CwdelError("Element {} of set {} outside the universe".format(u + 1, idx + 1))

    @classmethod
    def of(cls, universe: int, sets: Sequence[Sequence[int]], budget: int) -> "HittingSetInstance":
        return cls(universe, tuple(tuple(sorted(set(s))) for s in sets), budget)

    @property
    def q(self) -> int:
        return max((len(s) for s in self.sets), default=0)

    def is_hitting_set(self, chosen) -> bool:
        chosen = set(chosen)
        return all(any(u in chosen for u in members) for members in self.sets)

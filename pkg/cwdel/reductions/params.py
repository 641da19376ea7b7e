#
# Copyright (c) 2022-2024, ETH Zurich, Piotr Libera, Jonas Frey, Matias Mattamala.
# All rights reserved. Licensed under the MIT license.
# See LICENSE file in the project root for details.
#
#
from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from cwdel.errors import CwdelError
from cwdel.instances import CnfFormula

DENSE = "dense"
SPARSE = "sparse"

# a group member: one color set per twinclass (dense) or per vertex (sparse), the empty set meaning deleted
Member = Tuple[FrozenSet[int], ...]


@dataclass(frozen=True)
class ReductionParams:
    """
    Sizes of a lower-bound instance: r colors, groups of p0 variables, t groups, p twinclasses (dense) or vertices
    (sparse) per group. size_counts[k] is the number of twinclasses carrying a color set of size k in every member.
    """

    setting: str
    r: int
    p0: int
    t: int
    p: int
    size_counts: Tuple[int, ...]

    @property
    def modulator_blocks(self) -> int:
        return self.t * self.p + self.r

    @property
    def group_deletions(self) -> int:
        if self.setting == DENSE:
            return sum((self.r - k) * c for k, c in enumerate(self.size_counts))
        return self.p // (self.r + 1)

    @property
    def copies(self) -> int:
        """
        Copies of every structure gadget: one more than the budget spent on the modulator.
        """
        return 1 + self.t * self.group_deletions


def choose_p_dense(p0: int, r: int) -> int:
    """
    Smallest p divisible by 2^r with (2^r)^p (2^r - 1)! / 2^(2^r) / p^(2^r) >= 2^p0, in exact integer arithmetic.
    """
    if p0 < 1 or r < 2:
        raise CwdelError("Dense groups need p0 >= 1 and r >= 2, got p0={} r={}".format(p0, r))
    states = 1 << r
    p = states
    while states**p * factorial(states - 1) < (1 << p0) * (1 << states) * p**states:
        p += states
    return p


def choose_p_sparse(p0: int, r: int) -> int:
    """
    Smallest multiple p of r+1 with (r+1)^p / (p+1) >= 2^p0.
    """
    if p0 < 1 or r < 2:
        raise CwdelError("Sparse groups need p0 >= 1 and r >= 2, got p0={} r={}".format(p0, r))
    p = r + 1
    while (r + 1) ** p < (1 << p0) * (p + 1):
        p += r + 1
    return p


def make_params(setting: str, r: int, p0: int, n_vars: int) -> ReductionParams:
    if n_vars < 1:
        raise CwdelError("Formula has no variables")
    t = -(-n_vars // p0)
    if setting == DENSE:
        p = choose_p_dense(p0, r)
        counts = tuple(comb(r, k) * p >> r for k in range(r + 1))
    elif setting == SPARSE:
        p = choose_p_sparse(p0, r)
        counts = (p // (r + 1), r * p // (r + 1))
    else:
        raise ValueError("Setting {} unavailable".format(setting))
    return ReductionParams(setting, r, p0, t, p, counts)


def color_sets(r: int, max_size: int) -> List[FrozenSet[int]]:
    """
    Subsets of 1..r with at most max_size elements, ranked by size and then lexicographically.
    """
    return [frozenset(c) for k in range(max_size + 1) for c in combinations(range(1, r + 1), k)]


def _alphabet(params: ReductionParams) -> List[FrozenSet[int]]:
    return color_sets(params.r, params.r if params.setting == DENSE else 1)


def member_count(params: ReductionParams) -> int:
    """
    Number of members of a group: multinomial over the size counts times the choices of sets of each size.
    """
    count = factorial(params.p)
    for k, c in enumerate(params.size_counts):
        count //= factorial(c)
        count *= comb(params.r, k) ** c
    return count


def iter_members(params: ReductionParams) -> Iterator[Member]:
    """
    All members of a group in lexicographic order of their rank tuples.
    """
    alphabet = _alphabet(params)
    remaining = list(params.size_counts)
    prefix: List[FrozenSet[int]] = []
    # explicit stack of (position, next alphabet index to try)
    stack = [0]
    while stack:
        idx = stack[-1]
        if len(prefix) == params.p:
            yield tuple(prefix)
            stack.pop()
            remaining[len(prefix[-1])] += 1
            prefix.pop()
            continue
        while idx < len(alphabet) and remaining[len(alphabet[idx])] == 0:
            idx += 1
        if idx == len(alphabet):
            stack.pop()
            if prefix:
                remaining[len(prefix[-1])] += 1
                prefix.pop()
            continue
        stack[-1] = idx + 1
        prefix.append(alphabet[idx])
        remaining[len(alphabet[idx])] -= 1
        stack.append(0)


def group_variables(params: ReductionParams, n_vars: int, group: int) -> List[int]:
    return list(range(group * params.p0 + 1, min((group + 1) * params.p0, n_vars) + 1))


def assignment_index(values: Sequence[bool]) -> int:
    """
    Index of a partial assignment, the first variable being the most significant bit.
    """
    index = 0
    for value in values:
        index = (index << 1) | int(bool(value))
    return index


def index_assignment(index: int, width: int) -> Tuple[bool, ...]:
    return tuple(bool(index >> (width - 1 - k) & 1) for k in range(width))


def build_phi_kappa(params: ReductionParams, group_size: int) -> Tuple[List[Member], List[Member]]:
    """
    Enumerates the members of a group and the table mapping the 2^group_size assignments of the group to its first
    members.
    """
    if member_count(params) < 1 << group_size:
        raise CwdelError(
            "Only {} members for {} assignments, p={} is too small".format(
                member_count(params), 1 << group_size, params.p
            )
        )
    members = list(iter_members(params))
    return members, members[: 1 << group_size]


def satisfying_indices(formula: CnfFormula, variables: Sequence[int], clause: int) -> List[int]:
    """
    Indices of the assignments of variables that make some literal of the clause true.
    """
    position: Dict[int, int] = {x: k for k, x in enumerate(variables)}
    literals = [lit for lit in formula.clauses[clause] if abs(lit) in position]
    hits = []
    for index in range(1 << len(variables)):
        values = index_assignment(index, len(variables))
        if any(values[position[abs(lit)]] == (lit > 0) for lit in literals):
            hits.append(index)
    return hits

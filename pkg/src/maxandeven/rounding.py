"""Rounding a ternary assignment to +/-1 so enough clauses have even parity.

Variables at +/-1 are kept.  Variables at 0 are free: at random each is an
independent fair coin, and every clause with a free variable is then weakly
satisfied with probability exactly 1/2 (this needs each variable to appear
at most once per clause).  The deterministic version fixes the free
variables one by one, each time satisfying the majority of the clauses it is
the last free variable of.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from maxandeven.halfint import half_integral_solve
from maxandeven.model import (
    BoolAssignment,
    Instance,
    NormalizationReport,
    TernaryAssignment,
    is_normalized,
    normalize,
    objective_value,
    weak_count,
)

__all__ = [
    "EnumerationCapExceeded",
    "Solution",
    "derandomized_round",
    "expected_weak_count",
    "randomized_round",
    "solve_max_and_even",
]

HALF = Fraction(1, 2)


class EnumerationCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Solution:
    assignment: BoolAssignment
    weak_count: int
    lp_value: Fraction
    promise_note: int | None = None
    # weak count over the normalized (kept) clauses only
    kept_weak_count: int | None = None
    ternary: TernaryAssignment | None = None
    report: NormalizationReport | None = field(default=None, compare=False)

    @property
    def guaranteed(self) -> int:
        return math.ceil(self.lp_value)


def randomized_round(c: TernaryAssignment, seed: int) -> BoolAssignment:
    rng = random.Random(seed)
    return BoolAssignment(tuple(v if v else rng.choice((-1, 1)) for v in c))


def expected_weak_count(inst: Instance, c: TernaryAssignment, cap: int = 20) -> Fraction:
    """Exact expected weak count when the zero entries of ``c`` are fair coins."""
    zeros = len(c.zeros())
    if zeros > cap:
        raise EnumerationCapExceeded(f"{zeros} free variables exceeds the cap of {cap}")
    if not is_normalized(inst):
        raise ValueError("closed-form expectation needs each variable at most once per clause")
    total = Fraction(0)
    for clause in inst.clauses:
        product = 1
        free = False
        for lit in clause:
            v = c(lit.var)
            if v == 0:
                free = True
                break
            product *= lit.sign * v
        if free:
            total += HALF
        elif product == 1:
            total += 1
    return total


def derandomized_round(inst: Instance, c: TernaryAssignment) -> Solution:
    """Conditional-expectation rounding over free variables in ascending id.

    Ties in the majority vote go to +1.
    """
    if not is_normalized(inst):
        raise ValueError("derandomized_round needs a normalized instance")
    values = list(c.values)
    free = set(c.zeros())
    by_var: dict[int, list[int]] = {v: [] for v in free}
    for i, clause in enumerate(inst.clauses):
        for lit in clause:
            if lit.var in free:
                by_var[lit.var].append(i)
    for v in sorted(free):
        votes = 0
        for i in by_var[v]:
            product = 1
            last = True
            for lit in inst.clauses[i]:
                if lit.var == v:
                    product *= lit.sign
                elif values[lit.var - 1] == 0:
                    last = False
                    break
                else:
                    product *= lit.sign * values[lit.var - 1]
            if last:
                # v = product makes the clause's literal product +1
                votes += product
        values[v - 1] = -1 if votes < 0 else 1
    assignment = BoolAssignment(tuple(values))
    count = weak_count(inst, assignment)
    # lp_value here is the ternary objective of c, the LP value when c came from the solver
    return Solution(
        assignment, count, objective_value(inst, c), kept_weak_count=count, ternary=c
    )


def solve_max_and_even(inst: Instance, promise: int | None = None) -> Solution:
    """Assignment weakly satisfying at least as many clauses as any strongly satisfies."""
    normalized, report = normalize(inst)
    ternary, lp_value = half_integral_solve(normalized)
    rounded = derandomized_round(normalized, ternary)
    return Solution(
        assignment=rounded.assignment,
        weak_count=weak_count(inst, rounded.assignment),
        lp_value=lp_value,
        promise_note=promise,
        kept_weak_count=rounded.weak_count,
        ternary=ternary,
        report=report,
    )

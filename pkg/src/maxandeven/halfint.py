"""Turn an exact LP optimum over ``[-1, 1]^n`` into an equally good ternary point.

After flipping literal signs so the point is nonnegative, the objective is an
affine function on the region where the variables keep their sorted order,
because each clause's minimising literal is determined by the order alone.
At an optimum every block of equal fractional values must have zero total
coefficient in that function, so the block can be lowered to 0 for free.
Repeating this leaves values in {0, 1}; undoing the flips gives {-1, 0, +1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from maxandeven.lp import LpStatus, build_lp, simplex_solve, tighten
from maxandeven.model import (
    Clause,
    Instance,
    Literal,
    TernaryAssignment,
    fractional_objective,
    is_normalized,
    objective_value,
)

__all__ = [
    "AffineForm",
    "InvariantViolation",
    "SignFlip",
    "affine_form",
    "collapse_blocks",
    "flip_signs",
    "half_integral_solve",
    "select_argmin",
    "sorted_order",
]

ZERO = Fraction(0)
HALF = Fraction(1, 2)


class InvariantViolation(RuntimeError):
    """An internal guarantee failed; the input point was not LP-optimal."""


@dataclass(frozen=True)
class SignFlip:
    sigma: tuple[int, ...]

    def apply(self, values: Sequence) -> tuple:
        return tuple(s * v for s, v in zip(self.sigma, values))


@dataclass(frozen=True)
class AffineForm:
    constant: Fraction
    coefficients: tuple[Fraction, ...]
    # selected literal index per clause, None for empty clauses
    selector: tuple[int | None, ...]

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return self.constant + sum(
            (a * x for a, x in zip(self.coefficients, point)), ZERO
        )


def flip_signs(
    inst: Instance, c: Sequence[Fraction]
) -> tuple[Instance, SignFlip, tuple[Fraction, ...]]:
    sigma = tuple(-1 if x < 0 else 1 for x in c)
    flipped = Instance(
        inst.n,
        tuple(
            Clause(tuple(Literal(lit.var, lit.sign * sigma[lit.var - 1]) for lit in clause))
            for clause in inst.clauses
        ),
    )
    return flipped, SignFlip(sigma), tuple(abs(Fraction(x)) for x in c)


def sorted_order(c: Sequence[Fraction]) -> list[int]:
    """Variables (1-based) ascending by value, ties by variable id."""
    return sorted(range(1, len(c) + 1), key=lambda v: (c[v - 1], v))


def _ranks(order: Sequence[int]) -> dict[int, int]:
    return {v: r for r, v in enumerate(order)}


def select_argmin(clause: Clause, rank: Mapping[int, int]) -> int:
    """Index of the literal attaining ``min_j s_j c(x_j)`` for any point sorted by ``rank``.

    With a negative literal present the minimum is the negative literal of
    highest rank; otherwise it is the literal of lowest rank.
    """
    if not clause.literals:
        raise ValueError("empty clause has no minimising literal")
    negatives = [j for j, lit in enumerate(clause.literals) if lit.sign < 0]
    if negatives:
        return max(negatives, key=lambda j: rank[clause.literals[j].var])
    return min(range(len(clause)), key=lambda j: rank[clause.literals[j].var])


def affine_form(inst: Instance, order: Sequence[int]) -> AffineForm:
    rank = _ranks(order)
    coeffs = [ZERO] * inst.n
    constant = ZERO
    selector: list[int | None] = []
    for clause in inst.clauses:
        if not clause.literals:
            constant += 1
            selector.append(None)
            continue
        j = select_argmin(clause, rank)
        lit = clause.literals[j]
        constant += HALF
        coeffs[lit.var - 1] += HALF * lit.sign
        selector.append(j)
    return AffineForm(constant, tuple(coeffs), tuple(selector))


def collapse_blocks(
    c: Sequence[Fraction], inst: Instance
) -> tuple[Fraction, ...]:
    """Lower fractional blocks to 0 until every value is 0 or 1.

    ``c`` must be a nonnegative LP-optimal point for the sign-flipped ``inst``.
    Raises :class:`InvariantViolation` if a block has nonzero coefficient sum.
    """
    point = [Fraction(x) for x in c]
    if any(not ZERO <= x <= 1 for x in point):
        raise ValueError("collapse_blocks expects values in [0, 1]")
    value = fractional_objective(inst, point)
    iterations = 0
    while True:
        fractional = [x for x in point if ZERO < x < 1]
        if not fractional:
            return tuple(point)
        iterations += 1
        if iterations > inst.n:
            raise InvariantViolation("collapse did not terminate within n iterations")
        low = min(fractional)
        block = [v for v in range(1, inst.n + 1) if point[v - 1] == low]
        order = sorted_order(point)
        form = affine_form(inst, order)
        if form.evaluate(point) != value:
            raise InvariantViolation("affine form disagrees with the objective")
        slope = sum((form.coefficients[v - 1] for v in block), ZERO)
        if slope != 0:
            raise InvariantViolation(
                f"block {block} at value {low} has coefficient sum {slope}; point is not optimal"
            )
        for v in block:
            point[v - 1] = ZERO
        if fractional_objective(inst, point) != value:
            raise InvariantViolation("collapsing a block changed the objective")
        # the pre-collapse order must still sort the point
        ordered = [point[v - 1] for v in order]
        if ordered != sorted(ordered) or ordered[0] < 0:
            raise InvariantViolation("collapse broke the ascending order")


def half_integral_solve(inst: Instance) -> tuple[TernaryAssignment, Fraction]:
    """Optimal ternary assignment of a normalized instance and its exact value."""
    if not is_normalized(inst):
        raise ValueError("half_integral_solve needs a normalized instance")
    lp = build_lp(inst)
    sol = simplex_solve(lp)
    if sol.status is not LpStatus.OPTIMAL:
        raise InvariantViolation(f"clause LP reported {sol.status.value}")
    sol = tighten(inst, lp, sol)
    c = sol.values[: inst.n]
    flipped, flip, nonneg = flip_signs(inst, c)
    collapsed = collapse_blocks(nonneg, flipped)
    ternary = TernaryAssignment(tuple(int(x) for x in flip.apply(collapsed)))
    if objective_value(inst, ternary) != sol.objective_value:
        raise InvariantViolation("ternary point lost objective value")
    return ternary, sol.objective_value

"""Exact bounded-variable simplex and the clause LP built from an instance.

The solver maximises ``objective . x + constant`` subject to ``A x <= b`` and
finite box bounds ``lower <= x <= upper``.  Box bounds are handled natively
(nonbasic variables sit at either bound), so the tableau only carries one row
per general constraint.  Pivoting follows Bland's rule for both the entering
and the leaving choice, which rules out cycling on degenerate vertices.

All arithmetic is exact (``gmpy2.mpq`` inside the tableau when available,
:class:`fractions.Fraction` at the interface); there are no tolerances.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from maxandeven.model import Instance, is_normalized
from maxandeven.rational import fmt

__all__ = [
    "Constraint",
    "LinearProgram",
    "LpSolution",
    "LpStatus",
    "build_lp",
    "dump_lp",
    "evaluate_objective",
    "is_feasible",
    "simplex_solve",
    "tighten",
]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

try:  # GMP rationals are exact too and far cheaper per pivot
    from gmpy2 import mpq as _scalar
except ImportError:  # pragma: no cover
    _scalar = Fraction


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return _scalar(x.numerator, x.denominator)
    return _scalar(x)


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class LpStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    """``coeffs . x <= rhs``."""

    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    relation: str = "<="


@dataclass
class LinearProgram:
    num_vars: int
    lower: list[Fraction]
    upper: list[Fraction]
    constraints: list[Constraint]
    objective: list[Fraction]
    constant: Fraction = ZERO
    # Filled by build_lp: number of assignment variables and, for each
    # auxiliary variable, the index of the clause it bounds.
    n_assign: int = 0
    aux_clauses: tuple[int, ...] = ()
    names: list[str] = field(default_factory=list)
    # preferred starting point for simplex_solve; None means all lower bounds
    start: list[Fraction] | None = None

    def __post_init__(self) -> None:
        self.lower = [Fraction(v) for v in self.lower]
        self.upper = [Fraction(v) for v in self.upper]
        self.objective = [Fraction(v) for v in self.objective]
        self.constant = Fraction(self.constant)
        if self.start is not None:
            self.start = [Fraction(v) for v in self.start]
        self.constraints = [
            Constraint(tuple(Fraction(a) for a in c.coeffs), Fraction(c.rhs), c.relation)
            for c in self.constraints
        ]
        if len(self.lower) != self.num_vars or len(self.upper) != self.num_vars:
            raise ValueError("bounds must have one entry per variable")
        if len(self.objective) != self.num_vars:
            raise ValueError("objective must have one entry per variable")
        for j, (lo, up) in enumerate(zip(self.lower, self.upper)):
            if lo > up:
                raise ValueError(f"variable {j}: lower bound {lo} exceeds upper {up}")
        for i, c in enumerate(self.constraints):
            if c.relation != "<=":
                raise ValueError(f"constraint {i}: only '<=' rows are supported")
            if len(c.coeffs) != self.num_vars:
                raise ValueError(f"constraint {i}: row length {len(c.coeffs)} != {self.num_vars}")
        if not self.names:
            self.names = [f"v{j + 1}" for j in range(self.num_vars)]

    @classmethod
    def from_dense(
        cls,
        objective: Sequence,
        A: Sequence[Sequence],
        b: Sequence,
        lower: Sequence,
        upper: Sequence,
        constant=0,
    ) -> LinearProgram:
        return cls(
            num_vars=len(objective),
            lower=list(lower),
            upper=list(upper),
            constraints=[Constraint(tuple(row), rhs) for row, rhs in zip(A, b)],
            objective=list(objective),
            constant=constant,
        )


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    values: tuple[Fraction, ...] = ()
    objective_value: Fraction | None = None
    pivots: int = 0


def evaluate_objective(lp: LinearProgram, x: Sequence[Fraction]) -> Fraction:
    return lp.constant + sum((c * v for c, v in zip(lp.objective, x)), ZERO)


def is_feasible(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    if len(x) != lp.num_vars:
        return False
    if any(not lo <= v <= up for v, lo, up in zip(x, lp.lower, lp.upper)):
        return False
    return all(
        sum((a * v for a, v in zip(c.coeffs, x)), ZERO) <= c.rhs for c in lp.constraints
    )


class _Tableau:
    """Sparse-row tableau ``x_B + sum_N T[i][j] x_j = const`` with explicit values."""

    def __init__(self, lp: LinearProgram, start: Sequence[Fraction] | None = None) -> None:
        n = lp.num_vars
        m = len(lp.constraints)
        self.n = n
        zero, one = _q(0), _q(1)
        lower = [_q(v) for v in lp.lower]
        x = list(lower) if start is None else [_q(v) for v in start]
        upper: list = [_q(v) for v in lp.upper]
        rows: list[dict[int, Fraction]] = []
        basis: list[int] = []
        artificial: list[int] = []
        # slacks occupy columns n .. n+m-1; artificials are appended after them
        x.extend([zero] * m)
        lower.extend([zero] * m)
        upper.extend([None] * m)
        for i, con in enumerate(lp.constraints):
            row = {j: _q(a) for j, a in enumerate(con.coeffs) if a}
            residual = _q(con.rhs) - sum((a * x[j] for j, a in row.items()), zero)
            slack = n + i
            if residual >= 0:
                row[slack] = one
                x[slack] = residual
                basis.append(slack)
            else:
                art = len(x)
                x.append(-residual)
                lower.append(zero)
                upper.append(None)
                row = {j: -a for j, a in row.items()}
                row[slack] = -one
                row[art] = one
                basis.append(art)
                artificial.append(art)
            rows.append(row)
        self.x = x
        self.lower = lower
        self.upper = upper
        self.rows = rows
        self.basis = basis
        self.artificial = artificial
        self.in_basis = [False] * len(x)
        for b in basis:
            self.in_basis[b] = True
        self.pivots = 0
        self.rc: list[Fraction] = []
        self.cost: list[Fraction] = []

    def set_cost(self, cost: list[Fraction]) -> None:
        self.cost = cost = [_q(c) for c in cost]
        rc = list(cost)
        for i, row in enumerate(self.rows):
            cb = cost[self.basis[i]]
            if cb:
                for j, a in row.items():
                    rc[j] -= cb * a
        self.rc = rc

    def _entering(self) -> tuple[int, int] | None:
        for j, r in enumerate(self.rc):
            if self.in_basis[j] or not r:
                continue
            up = self.upper[j]
            if r > 0 and (up is None or self.x[j] < up):
                return j, 1
            if r < 0 and self.x[j] > self.lower[j]:
                return j, -1
        return None

    def run(self, max_pivots: int) -> LpStatus:
        while True:
            choice = self._entering()
            if choice is None:
                return LpStatus.OPTIMAL
            j, direction = choice
            best: Fraction | None = None
            leaving_var = -1
            leaving_row = -1
            # the entering variable's own distance to the bound it moves towards
            if direction < 0:
                best = self.x[j] - self.lower[j]
                leaving_var = j
            elif self.upper[j] is not None:
                best = self.upper[j] - self.x[j]
                leaving_var = j
            for i, row in enumerate(self.rows):
                a = row.get(j)
                if not a:
                    continue
                rate = -a * direction
                b = self.basis[i]
                if rate < 0:
                    theta = (self.x[b] - self.lower[b]) / -rate
                elif self.upper[b] is not None:
                    theta = (self.upper[b] - self.x[b]) / rate
                else:
                    continue
                if best is None or theta < best or (theta == best and b < leaving_var):
                    best, leaving_var, leaving_row = theta, b, i
            if best is None:
                return LpStatus.UNBOUNDED
            self._step(j, direction, best, leaving_row if leaving_var != j else -1)
            self.pivots += 1
            if self.pivots > max_pivots:
                raise RuntimeError("simplex exceeded its pivot budget")

    def _step(self, j: int, direction: int, theta: Fraction, r: int) -> None:
        if theta:
            delta = direction * theta
            self.x[j] += delta
            for i, row in enumerate(self.rows):
                a = row.get(j)
                if a:
                    self.x[self.basis[i]] -= a * delta
        if r < 0:
            return  # bound flip, basis unchanged
        leaving = self.basis[r]
        assert self.x[leaving] in (self.lower[leaving], self.upper[leaving])
        pivot_row = self.rows[r]
        p = pivot_row[j]
        if p != 1:
            pivot_row = {k: v / p for k, v in pivot_row.items()}
            self.rows[r] = pivot_row
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(j)
            if not f:
                continue
            for k, v in pivot_row.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        f = self.rc[j]
        if f:
            for k, v in pivot_row.items():
                self.rc[k] -= f * v
        self.basis[r] = j
        self.in_basis[j] = True
        self.in_basis[leaving] = False


def simplex_solve(
    lp: LinearProgram,
    start: Sequence[Fraction] | None = None,
    max_pivots: int = 1_000_000,
) -> LpSolution:
    """Maximise ``lp`` exactly.  Returns status ``optimal``, ``infeasible`` or ``unbounded``.

    Structural variables start nonbasic at ``start`` (default: their lower
    bounds).  A start strictly inside a box is allowed; such a variable may
    move in either direction, and rows it leaves infeasible get phase-1
    artificials.
    """
    if start is None:
        start = lp.start
    if start is not None:
        if len(start) != lp.num_vars:
            raise ValueError("start must give one value per variable")
        if any(not lo <= v <= up for v, lo, up in zip(start, lp.lower, lp.upper)):
            raise ValueError("start lies outside the variable bounds")
    tab = _Tableau(lp, start)
    width = len(tab.x)
    if tab.artificial:
        cost = [ZERO] * width
        for a in tab.artificial:
            cost[a] = -ONE
        tab.set_cost(cost)
        tab.run(max_pivots)
        if any(tab.x[a] for a in tab.artificial):
            return LpSolution(LpStatus.INFEASIBLE, pivots=tab.pivots)
        for a in tab.artificial:
            tab.upper[a] = _q(0)
    cost = list(lp.objective) + [ZERO] * (width - lp.num_vars)
    tab.set_cost(cost)
    status = tab.run(max_pivots)
    if status is LpStatus.UNBOUNDED:
        return LpSolution(status, pivots=tab.pivots)
    values = tuple(_to_fraction(v) for v in tab.x[: lp.num_vars])
    if not is_feasible(lp, values):
        raise AssertionError("simplex returned an infeasible point")
    return LpSolution(LpStatus.OPTIMAL, values, evaluate_objective(lp, values), tab.pivots)


def build_lp(inst: Instance) -> LinearProgram:
    """LP over ``c(x) in [-1, 1]`` with one auxiliary ``t_i <= s_j c(x_j)`` per clause.

    Empty clauses get no auxiliary variable and contribute 1 to the constant.
    """
    if not is_normalized(inst):
        raise ValueError("build_lp needs a normalized instance (each variable once per clause)")
    n = inst.n
    aux = tuple(i for i, c in enumerate(inst.clauses) if len(c))
    width = n + len(aux)
    constraints: list[Constraint] = []
    for k, ci in enumerate(aux):
        for lit in inst.clauses[ci]:
            row = [ZERO] * width
            row[n + k] = ONE
            row[lit.var - 1] = Fraction(-lit.sign)
            constraints.append(Constraint(tuple(row), ZERO))
    empties = inst.m - len(aux)
    return LinearProgram(
        num_vars=width,
        lower=[-ONE] * width,
        upper=[ONE] * width,
        constraints=constraints,
        objective=[ZERO] * n + [HALF] * len(aux),
        constant=HALF * len(aux) + empties,
        n_assign=n,
        aux_clauses=aux,
        names=[f"c{v}" for v in range(1, n + 1)] + [f"t{ci + 1}" for ci in aux],
        # every c in the box is feasible once all t sit at -1; c = +1 is a vertex
        start=[ONE] * n + [-ONE] * len(aux),
    )


def tighten(inst: Instance, lp: LinearProgram, sol: LpSolution) -> LpSolution:
    """Raise every auxiliary ``t_i`` to ``min_j s_j c(x_j)`` of its clause."""
    if sol.status is not LpStatus.OPTIMAL:
        raise ValueError(f"cannot tighten a {sol.status.value} solution")
    n = lp.n_assign
    values = list(sol.values)
    for k, ci in enumerate(lp.aux_clauses):
        tight = min(lit.sign * values[lit.var - 1] for lit in inst.clauses[ci])
        if values[n + k] > tight:
            raise AssertionError(f"auxiliary t{ci + 1} exceeds its clause minimum")
        values[n + k] = tight
    new_value = evaluate_objective(lp, values)
    if new_value != sol.objective_value:
        raise AssertionError("tightening changed an optimal objective; LP was not optimal")
    return LpSolution(sol.status, tuple(values), new_value, sol.pivots)


def dump_lp(lp: LinearProgram) -> str:
    """Plain-text dump: rationals as ``p/q``, one constraint per line."""
    lines = [f"vars {lp.num_vars}"]
    lines.append("names " + " ".join(lp.names))
    for j in range(lp.num_vars):
        lines.append(f"bound {lp.names[j]} {fmt(lp.lower[j])} {fmt(lp.upper[j])}")
    lines.append(
        "max " + " ".join(fmt(c) for c in lp.objective) + f" + {fmt(lp.constant)}"
    )
    for con in lp.constraints:
        lines.append(" ".join(fmt(a) for a in con.coeffs) + f" <= {fmt(con.rhs)}")
    return "\n".join(lines) + "\n"

"""Instances of signed-literal clauses and their three evaluation semantics.

A clause is a multiset of literals.  Under a +/-1 assignment it is

* strongly satisfied when no literal is false (AND semantics),
* weakly satisfied when an even number of literals are false (parity).

Over ternary assignments with values in {-1, 0, +1} a clause scores
``1/2 + 1/2 * min_j s_j c(x_j)``; summing these gives the objective maximised
by the half-integral solver.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

__all__ = [
    "BoolAssignment",
    "Clause",
    "Instance",
    "Literal",
    "NormalizationReport",
    "TernaryAssignment",
    "clause_min",
    "normalize",
    "objective_value",
    "strong_count",
    "strong_satisfied",
    "weak_count",
    "weak_satisfied",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class Literal:
    var: int
    sign: int = 1

    def __post_init__(self) -> None:
        if self.var < 1:
            raise ValueError(f"variable ids are 1-based, got {self.var}")
        if self.sign not in (-1, 1):
            raise ValueError(f"literal sign must be -1 or +1, got {self.sign}")

    @classmethod
    def from_int(cls, lit: int) -> Literal:
        if lit == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(lit), 1 if lit > 0 else -1)

    def to_int(self) -> int:
        return self.sign * self.var

    def __neg__(self) -> Literal:
        return Literal(self.var, -self.sign)

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}x{self.var}"


@dataclass(frozen=True)
class Clause:
    """Ordered multiset of literals; duplicates and complementary pairs allowed."""

    literals: tuple[Literal, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "literals", tuple(self.literals))

    @classmethod
    def of(cls, *lits: int) -> Clause:
        """Build from DIMACS-style signed integers, e.g. ``Clause.of(-1, 2)``."""
        return cls(tuple(Literal.from_int(x) for x in lits))

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def variables(self) -> set[int]:
        return {lit.var for lit in self.literals}

    def is_tautology(self) -> bool:
        signs: dict[int, int] = {}
        for lit in self.literals:
            if signs.setdefault(lit.var, lit.sign) != lit.sign:
                return True
        return False

    def to_ints(self) -> list[int]:
        return [lit.to_int() for lit in self.literals]

    def __str__(self) -> str:
        return "{" + ", ".join(str(lit) for lit in self.literals) + "}"


@dataclass(frozen=True)
class Instance:
    n: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.n < 0:
            raise ValueError("variable count must be nonnegative")
        for i, clause in enumerate(self.clauses):
            for lit in clause:
                if lit.var > self.n:
                    raise ValueError(
                        f"clause {i}: variable {lit.var} outside 1..{self.n}"
                    )

    @classmethod
    def from_lists(cls, n: int, clauses: Iterable[Sequence[int]]) -> Instance:
        return cls(n, tuple(Clause.of(*c) for c in clauses))

    @property
    def m(self) -> int:
        return len(self.clauses)

    def to_lists(self) -> list[list[int]]:
        return [c.to_ints() for c in self.clauses]


class _Assignment:
    allowed: frozenset[int] = frozenset()
    values: tuple[int, ...]

    def _check(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        for i, v in enumerate(self.values):
            if v not in self.allowed:
                raise ValueError(
                    f"{type(self).__name__}: value {v} at variable {i + 1} "
                    f"not in {sorted(self.allowed)}"
                )

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __call__(self, var: int) -> int:
        """Value of variable ``var`` (1-based)."""
        if not 1 <= var <= len(self.values):
            raise IndexError(f"variable {var} outside 1..{len(self.values)}")
        return self.values[var - 1]


@dataclass(frozen=True)
class TernaryAssignment(_Assignment):
    values: tuple[int, ...]
    allowed = frozenset({-1, 0, 1})

    def __post_init__(self) -> None:
        self._check()

    def zeros(self) -> list[int]:
        return [v for v in range(1, self.n + 1) if self(v) == 0]


@dataclass(frozen=True)
class BoolAssignment(_Assignment):
    values: tuple[int, ...]
    allowed = frozenset({-1, 1})

    def __post_init__(self) -> None:
        self._check()

    def as_ternary(self) -> TernaryAssignment:
        return TernaryAssignment(self.values)


@dataclass(frozen=True)
class NormalizationReport:
    kept: tuple[int, ...]
    excluded_tautologies: tuple[int, ...]
    pair_removals: dict[int, int] = field(default_factory=dict)
    empty_clauses: tuple[int, ...] = ()


def _literal_values(clause: Clause, a: _Assignment) -> Iterator[int]:
    for lit in clause:
        yield lit.sign * a(lit.var)


def strong_satisfied(clause: Clause, a: BoolAssignment) -> bool:
    return all(v == 1 for v in _literal_values(clause, a))


def weak_satisfied(clause: Clause, a: BoolAssignment) -> bool:
    false_count = sum(1 for v in _literal_values(clause, a) if v == -1)
    return false_count % 2 == 0


def clause_min(clause: Clause, t: TernaryAssignment) -> int:
    if not clause.literals:
        raise ValueError("clause_min of the empty clause is undefined")
    return min(_literal_values(clause, t))


def clause_score(clause: Clause, t: TernaryAssignment) -> Fraction:
    """``1/2 + 1/2 * clause_min``; the empty clause scores 1."""
    if not clause.literals:
        return Fraction(1)
    return HALF + HALF * clause_min(clause, t)


def objective_value(inst: Instance, t: TernaryAssignment) -> Fraction:
    return sum((clause_score(c, t) for c in inst.clauses), Fraction(0))


def strong_count(inst: Instance, a: BoolAssignment) -> int:
    return sum(1 for c in inst.clauses if strong_satisfied(c, a))


def weak_count(inst: Instance, a: BoolAssignment) -> int:
    return sum(1 for c in inst.clauses if weak_satisfied(c, a))


def normalize(inst: Instance) -> tuple[Instance, NormalizationReport]:
    """Make every variable occur at most once per clause.

    Clauses holding both ``x`` and ``-x`` are dropped.  Repeated identical
    literals are cancelled in pairs, which leaves the parity of false literals
    (weak satisfaction) unchanged.  The returned instance lists the kept
    clauses in their original order; ``report.kept[i]`` is the original index
    of output clause ``i``.
    """
    kept: list[int] = []
    tautologies: list[int] = []
    pairs: dict[int, int] = {}
    empties: list[int] = []
    out: list[Clause] = []
    for i, clause in enumerate(inst.clauses):
        if clause.is_tautology():
            tautologies.append(i)
            continue
        counts = Counter(clause.literals)
        removed = sum(k // 2 for k in counts.values())
        seen: set[Literal] = set()
        lits = []
        for lit in clause.literals:
            if counts[lit] % 2 == 1 and lit not in seen:
                seen.add(lit)
                lits.append(lit)
        if removed:
            pairs[i] = removed
        if not lits:
            empties.append(i)
        kept.append(i)
        out.append(Clause(tuple(lits)))
    report = NormalizationReport(
        kept=tuple(kept),
        excluded_tautologies=tuple(tautologies),
        pair_removals=pairs,
        empty_clauses=tuple(empties),
    )
    return Instance(inst.n, tuple(out)), report


def is_normalized(inst: Instance) -> bool:
    return all(len(c.variables()) == len(c) for c in inst.clauses)


def fractional_objective(inst: Instance, point: Sequence[Fraction]) -> Fraction:
    """Objective at a real point of ``[-1, 1]^n`` (``point[v-1]`` is variable ``v``)."""
    total = Fraction(0)
    for clause in inst.clauses:
        if not clause.literals:
            total += 1
        else:
            total += HALF + HALF * min(lit.sign * point[lit.var - 1] for lit in clause)
    return total

"""Digraph problems reduced to clause instances.

An arc ``(u, v)`` becomes the clause ``{-u, +v}``.  Reading an assignment as
a bipartition, the clause is strongly satisfied exactly when ``u`` is on the
-1 side and ``v`` on the +1 side (the arc is in the directed cut), and weakly
satisfied exactly when the endpoints are on different sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from maxandeven.halfint import InvariantViolation, half_integral_solve
from maxandeven.model import Clause, Instance, Literal, TernaryAssignment, normalize
from maxandeven.rounding import solve_max_and_even

__all__ = [
    "AcyclicResult",
    "CutResult",
    "Digraph",
    "VertexOrdering",
    "candidate_orderings",
    "digraph_to_instance",
    "directed_cut_value",
    "remove_loops",
    "solve_dicut_acyclic",
    "solve_dicut_cut",
    "undirected_cut_value",
    "well_ordered_arcs",
    "well_ordered_count",
]


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        arcs = tuple((int(u), int(v)) for u, v in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        for i, (u, v) in enumerate(arcs):
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"arc {i} ({u}, {v}) has an endpoint outside 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class VertexOrdering:
    order: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))
        if sorted(self.order) != list(range(1, len(self.order) + 1)):
            raise ValueError("ordering must be a permutation of 1..n")

    def positions(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


@dataclass(frozen=True)
class CutResult:
    side: tuple[int, ...]
    undirected_cut_value: int
    lp_value: Fraction
    directed_cut_value: int = 0


@dataclass(frozen=True)
class AcyclicResult:
    ordering: VertexOrdering
    kept_arcs: tuple[int, ...]
    value: int
    partition_sizes: tuple[int, int, int]
    lp_value: Fraction = Fraction(0)
    ternary: TernaryAssignment | None = None
    chose_reversed: bool = False


def digraph_to_instance(g: Digraph) -> Instance:
    return Instance(
        g.n, tuple(Clause((Literal(u, -1), Literal(v, 1))) for u, v in g.arcs)
    )


def undirected_cut_value(g: Digraph, side: Sequence[int]) -> int:
    return sum(1 for u, v in g.arcs if u != v and side[u - 1] != side[v - 1])


def directed_cut_value(g: Digraph, side: Sequence[int]) -> int:
    """Arcs from the -1 side to the +1 side."""
    return sum(1 for u, v in g.arcs if side[u - 1] == -1 and side[v - 1] == 1)


def solve_dicut_cut(g: Digraph) -> CutResult:
    """Undirected cut at least as large as the maximum directed cut of ``g``."""
    sol = solve_max_and_even(digraph_to_instance(g))
    side = sol.assignment.values
    value = undirected_cut_value(g, side)
    assert value == sol.weak_count
    return CutResult(side, value, sol.lp_value, directed_cut_value(g, side))


def remove_loops(g: Digraph) -> Digraph:
    return Digraph(g.n, tuple((u, v) for u, v in g.arcs if u != v))


def candidate_orderings(c: TernaryAssignment) -> tuple[VertexOrdering, VertexOrdering]:
    """``(V_-1, V_0, V_1)`` and the same with the middle block reversed."""
    low = [v for v in range(1, c.n + 1) if c(v) == -1]
    mid = [v for v in range(1, c.n + 1) if c(v) == 0]
    high = [v for v in range(1, c.n + 1) if c(v) == 1]
    return (
        VertexOrdering(tuple(low + mid + high)),
        VertexOrdering(tuple(low + mid[::-1] + high)),
    )


def well_ordered_arcs(g: Digraph, o: VertexOrdering) -> tuple[int, ...]:
    pos = o.positions()
    return tuple(i for i, (u, v) in enumerate(g.arcs) if pos[u] < pos[v])


def well_ordered_count(g: Digraph, o: VertexOrdering) -> int:
    return len(well_ordered_arcs(g, o))


def solve_dicut_acyclic(g: Digraph) -> AcyclicResult:
    """Vertex ordering that keeps at least as many arcs as the maximum directed cut.

    ``kept_arcs`` index into ``g.arcs`` (loops included in the indexing, never kept).
    """
    loopless = remove_loops(g)
    normalized, _ = normalize(digraph_to_instance(loopless))
    ternary, lp_value = half_integral_solve(normalized)
    sigma, sigma_rev = candidate_orderings(ternary)
    chosen = sigma
    reversed_ = False
    if well_ordered_count(loopless, sigma_rev) > well_ordered_count(loopless, sigma):
        chosen, reversed_ = sigma_rev, True
    kept = well_ordered_arcs(g, chosen)
    sizes = tuple(sum(1 for x in ternary if x == s) for s in (-1, 0, 1))
    result = AcyclicResult(
        ordering=chosen,
        kept_arcs=kept,
        value=len(kept),
        partition_sizes=sizes,  # type: ignore[arg-type]
        lp_value=lp_value,
        ternary=ternary,
        chose_reversed=reversed_,
    )
    if result.value < math.ceil(lp_value):
        raise InvariantViolation("chosen ordering keeps fewer arcs than the LP value")
    return result


def arcs_subgraph(g: Digraph, indices: Iterable[int]) -> Digraph:
    return Digraph(g.n, tuple(g.arcs[i] for i in indices))

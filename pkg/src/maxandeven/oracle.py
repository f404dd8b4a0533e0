"""Naive exhaustive references.  Used by tests and ``verify``; never by the solvers.

Assignments are enumerated in ``itertools.product`` order over ``(-1, +1)``
or ``(-1, 0, +1)`` with variable 1 most significant, so reported witnesses
are the first optimum in that order.
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction

import numpy as np

from maxandeven.graphs import Digraph
from maxandeven.model import BoolAssignment, Instance, TernaryAssignment, weak_count

__all__ = [
    "BOOL_CAP",
    "TERNARY_CAP",
    "OracleCapExceeded",
    "brute_expected_weak_count",
    "brute_max_cut",
    "brute_max_dicut",
    "brute_strong_opt",
    "brute_strong_witness",
    "brute_ternary_opt",
    "brute_ternary_witness",
    "brute_weak_opt",
    "check_acyclic",
]

BOOL_CAP = 20
TERNARY_CAP = 13


class OracleCapExceeded(ValueError):
    pass


def _grid(n: int, domain: tuple[int, ...], cap: int) -> np.ndarray:
    if n > cap:
        raise OracleCapExceeded(f"n = {n} exceeds the oracle cap of {cap}")
    base = len(domain)
    index = np.arange(base**n, dtype=np.int64)
    # digit k (variable k+1) is most significant first, matching itertools.product
    powers = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
    digits = (index[:, None] // powers[None, :]) % base
    return np.asarray(domain, dtype=np.int8)[digits].reshape(base**n, n)


def _literal_matrix(grid: np.ndarray, clause) -> np.ndarray:
    cols = [grid[:, lit.var - 1] * lit.sign for lit in clause]
    return np.stack(cols, axis=1)


def _strong_counts(inst: Instance, grid: np.ndarray) -> np.ndarray:
    counts = np.zeros(grid.shape[0], dtype=np.int64)
    for clause in inst.clauses:
        if len(clause) == 0:
            counts += 1
        else:
            counts += np.all(_literal_matrix(grid, clause) == 1, axis=1)
    return counts


def brute_strong_witness(inst: Instance, cap: int = BOOL_CAP) -> tuple[int, BoolAssignment]:
    grid = _grid(inst.n, (-1, 1), cap)
    counts = _strong_counts(inst, grid)
    best = int(np.argmax(counts))
    return int(counts[best]), BoolAssignment(tuple(int(v) for v in grid[best]))


def brute_strong_opt(inst: Instance, cap: int = BOOL_CAP) -> int:
    return brute_strong_witness(inst, cap)[0]


def brute_weak_opt(inst: Instance, cap: int = BOOL_CAP) -> int:
    grid = _grid(inst.n, (-1, 1), cap)
    counts = np.zeros(grid.shape[0], dtype=np.int64)
    for clause in inst.clauses:
        if len(clause) == 0:
            counts += 1
        else:
            counts += np.prod(_literal_matrix(grid, clause).astype(np.int64), axis=1) == 1
    return int(counts.max())


def brute_ternary_witness(
    inst: Instance, cap: int = TERNARY_CAP
) -> tuple[Fraction, TernaryAssignment]:
    grid = _grid(inst.n, (-1, 0, 1), cap)
    # twice the objective, kept integral
    doubled = np.zeros(grid.shape[0], dtype=np.int64)
    for clause in inst.clauses:
        if len(clause) == 0:
            doubled += 2
        else:
            doubled += 1 + _literal_matrix(grid, clause).min(axis=1)
    best = int(np.argmax(doubled))
    return Fraction(int(doubled[best]), 2), TernaryAssignment(tuple(int(v) for v in grid[best]))


def brute_ternary_opt(inst: Instance, cap: int = TERNARY_CAP) -> Fraction:
    return brute_ternary_witness(inst, cap)[0]


def brute_max_dicut(g: Digraph, cap: int = BOOL_CAP) -> int:
    """Max over bipartitions of arcs going from the -1 side to the +1 side."""
    grid = _grid(g.n, (-1, 1), cap)
    counts = np.zeros(grid.shape[0], dtype=np.int64)
    for u, v in g.arcs:
        counts += (grid[:, u - 1] == -1) & (grid[:, v - 1] == 1)
    return int(counts.max())


def brute_max_cut(g: Digraph, cap: int = BOOL_CAP) -> int:
    grid = _grid(g.n, (-1, 1), cap)
    counts = np.zeros(grid.shape[0], dtype=np.int64)
    for u, v in g.arcs:
        if u != v:
            counts += grid[:, u - 1] != grid[:, v - 1]
    return int(counts.max())


def brute_expected_weak_count(
    inst: Instance, c: TernaryAssignment, cap: int = BOOL_CAP
) -> Fraction:
    """Average weak count over all +/-1 completions of the zeros of ``c``."""
    zeros = c.zeros()
    if len(zeros) > cap:
        raise OracleCapExceeded(f"{len(zeros)} free variables exceeds the oracle cap of {cap}")
    total = 0
    values = list(c.values)
    for bits in itertools.product((-1, 1), repeat=len(zeros)):
        for v, b in zip(zeros, bits):
            values[v - 1] = b
        total += weak_count(inst, BoolAssignment(tuple(values)))
    return Fraction(total, 2 ** len(zeros))


def check_acyclic(g: Digraph) -> bool:
    """Kahn's algorithm: True iff every arc can be removed by peeling sources."""
    indegree = [0] * (g.n + 1)
    out: list[list[int]] = [[] for _ in range(g.n + 1)]
    for u, v in g.arcs:
        out[u].append(v)
        indegree[v] += 1
    queue = deque(v for v in range(1, g.n + 1) if indegree[v] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in out[u]:
            indegree[v] -= 1
            if indegree[v] == 0:
                queue.append(v)
    return seen == g.n

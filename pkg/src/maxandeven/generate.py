"""Seeded random instances and digraphs (Python's Mersenne Twister)."""

from __future__ import annotations

import random

from maxandeven.graphs import Digraph, directed_cut_value
from maxandeven.model import Clause, Instance, Literal

__all__ = ["PRNG_NAME", "planted_digraph", "random_digraph", "random_instance"]

PRNG_NAME = "python-random-mt19937"


def _rng(seed: int | random.Random) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_instance(
    n: int, m: int, kmin: int = 1, kmax: int = 3, seed: int | random.Random = 0
) -> Instance:
    """Clauses of uniform size in ``[kmin, kmax]``; literals drawn with replacement."""
    if n < 1 and m > 0 and kmax > 0:
        raise ValueError("need at least one variable to draw literals")
    if not 0 <= kmin <= kmax:
        raise ValueError("need 0 <= kmin <= kmax")
    rng = _rng(seed)
    clauses = []
    for _ in range(m):
        k = rng.randint(kmin, kmax)
        clauses.append(
            Clause(tuple(Literal(rng.randint(1, n), rng.choice((-1, 1))) for _ in range(k)))
        )
    return Instance(n, tuple(clauses))


def random_digraph(
    n: int, m: int, seed: int | random.Random = 0, loops: bool = True
) -> Digraph:
    rng = _rng(seed)
    arcs = []
    while len(arcs) < m:
        u, v = rng.randint(1, n), rng.randint(1, n)
        if u == v and not loops:
            if n == 1:
                raise ValueError("a loop-free digraph on one vertex has no arcs")
            continue
        arcs.append((u, v))
    return Digraph(n, tuple(arcs))


def planted_digraph(
    n: int, m: int, density: float, seed: int | random.Random = 0
) -> tuple[Digraph, int]:
    """Digraph where roughly ``density * m`` arcs cross a hidden bipartition forwards.

    Returns the digraph and the dicut value of the planted bipartition, a lower
    bound on the maximum directed cut.
    """
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = _rng(seed)
    side = [rng.choice((-1, 1)) for _ in range(n)]
    sources = [v for v in range(1, n + 1) if side[v - 1] == -1]
    sinks = [v for v in range(1, n + 1) if side[v - 1] == 1]
    arcs = []
    for _ in range(m):
        if sources and sinks and rng.random() < density:
            arcs.append((rng.choice(sources), rng.choice(sinks)))
        else:
            arcs.append((rng.randint(1, n), rng.randint(1, n)))
    g = Digraph(n, tuple(arcs))
    return g, directed_cut_value(g, side)

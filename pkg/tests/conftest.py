import random

import pytest
from hypothesis import strategies as st

from maxandeven.graphs import Digraph
from maxandeven.model import Clause, Instance, Literal


@pytest.fixture
def cycle3():
    return Digraph(3, ((1, 2), (2, 3), (3, 1)))


@pytest.fixture
def path2():
    return Digraph(3, ((1, 2), (2, 3)))


@pytest.fixture
def x_and_not_x():
    return Instance.from_lists(1, [[1], [-1]])


@st.composite
def instances(draw, max_n=6, max_m=8, max_k=4, min_k=0):
    n = draw(st.integers(1, max_n))
    lit = st.builds(Literal, st.integers(1, n), st.sampled_from((-1, 1)))
    clause = st.lists(lit, min_size=min_k, max_size=max_k).map(lambda ls: Clause(tuple(ls)))
    return Instance(n, tuple(draw(st.lists(clause, max_size=max_m))))


@st.composite
def digraphs(draw, max_n=6, max_m=10):
    n = draw(st.integers(1, max_n))
    v = st.integers(1, n)
    return Digraph(n, tuple(draw(st.lists(st.tuples(v, v), max_size=max_m))))


def seeded(seed):
    return random.Random(seed)

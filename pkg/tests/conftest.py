"""Shared fixtures: small hand-constructed graphs with known structure."""

import itertools

import numpy as np
import pytest

from walkfp.graphs import Graph


def make_cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_rook(m: int) -> Graph:
    """Line graph of K_{m,m}: vertices are cells of an m x m grid, adjacency is
    same row or same column."""
    n = m * m
    a = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and (i // m == j // m or i % m == j % m):
                a[i, j] = True
    return Graph(n, a)


def make_petersen() -> Graph:
    verts = list(itertools.combinations(range(5), 2))
    a = np.zeros((10, 10), dtype=bool)
    for i, u in enumerate(verts):
        for j, v in enumerate(verts):
            if i != j and not set(u) & set(v):
                a[i, j] = True
    return Graph(10, a)


def make_shrikhande() -> Graph:
    """Cayley graph on Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}."""
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    a = np.zeros((16, 16), dtype=bool)
    for x in range(16):
        for y in range(16):
            d = ((x // 4 - y // 4) % 4, (x % 4 - y % 4) % 4)
            if d in conn:
                a[x, y] = True
    return Graph(16, a)


def make_paley(q: int) -> Graph:
    squares = {(x * x) % q for x in range(1, q)}
    a = np.zeros((q, q), dtype=bool)
    for x in range(q):
        for y in range(q):
            if x != y and (x - y) % q in squares:
                a[x, y] = True
    return Graph(q, a)


def make_kneser62() -> Graph:
    verts = list(itertools.combinations(range(6), 2))
    a = np.zeros((15, 15), dtype=bool)
    for i, u in enumerate(verts):
        for j, v in enumerate(verts):
            if i != j and not set(u) & set(v):
                a[i, j] = True
    return Graph(15, a)


@pytest.fixture(scope="session")
def petersen():
    return make_petersen()


@pytest.fixture(scope="session")
def cycle5():
    return make_cycle(5)


@pytest.fixture(scope="session")
def rook4():
    return make_rook(4)


@pytest.fixture(scope="session")
def shrikhande():
    return make_shrikhande()


@pytest.fixture(scope="session")
def srg16_pair(rook4, shrikhande):
    """The two strongly regular graphs with parameters (16, 6, 2, 2)."""
    return rook4, shrikhande


@pytest.fixture(scope="session")
def small_srgs(cycle5, petersen, rook4, shrikhande):
    return [cycle5, make_rook(3), petersen, make_paley(13), make_kneser62(),
            rook4, shrikhande]


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)


def random_graph(rng, n, p_edge=0.5) -> Graph:
    upper = rng.random((n, n)) < p_edge
    a = np.triu(upper, k=1)
    a = a | a.T
    return Graph(n, a)

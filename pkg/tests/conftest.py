import itertools
import random

import pytest
from hypothesis import strategies as st

from kclique.graph import Graph


def naive_is_clique(g, s):
    return all(g.has_edge(u, v) for u, v in itertools.combinations(s, 2))


def naive_cliques(g, k):
    return [c for c in itertools.combinations(range(g.n), k) if naive_is_clique(g, c)]


def naive_alpha(g):
    best = 0
    for size in range(g.n + 1):
        for s in itertools.combinations(range(g.n), size):
            if not any(g.has_edge(u, v) for u, v in itertools.combinations(s, 2)):
                best = size
                break
    return best


def naive_alpha_k(g, k):
    best = 0
    for size in range(g.n + 1):
        for s in itertools.combinations(range(g.n), size):
            if not any(naive_is_clique(g, c) for c in itertools.combinations(s, k)):
                best = size
                break
    return best


def random_graph(rng, n, p=0.5):
    return Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


@st.composite
def graphs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def graphs_with_weights(draw, max_n=6, max_w=3, max_m=None):
    g = draw(graphs(max_n=max_n))
    w = draw(st.lists(st.integers(0, max_w), min_size=g.n, max_size=g.n))
    if max_m is not None and sum(w) > max_m:
        w = [0] * g.n
    return g, tuple(w)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

from __future__ import annotations

import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from regsub.enumeration import degree_sequence_histogram
from regsub.errors import DomainError, Graph6Error
from regsub.graph import (MAX_VERTICES, Graph, degree_sequence, induced_subgraph, is_graphical,
                          is_regular, sample_gnp)
from regsub.graph6 import parse_graph6, write_graph6
from regsub.rng import Rng, derive_seed

seeds = st.integers(min_value=0, max_value=2**64 - 1)


@st.composite
def graphs(draw, max_n=40):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


def test_construction_rejects_bad_adjacency():
    with pytest.raises(DomainError):
        Graph(2, (0b10, 0b00))  # asymmetric
    with pytest.raises(DomainError):
        Graph(1, (0b1,))  # loop
    with pytest.raises(DomainError):
        Graph(MAX_VERTICES + 1, (0,) * (MAX_VERTICES + 1))


@given(graphs())
def test_symmetric_zero_diagonal(g):
    for u in range(g.n):
        assert not g.has_edge(u, u)
        for v in range(g.n):
            assert g.has_edge(u, v) == g.has_edge(v, u)
    assert sum(degree_sequence(g)) == 2 * g.edge_count()


@given(st.integers(0, 30), st.floats(0, 1), seeds)
@settings(max_examples=50)
def test_sample_gnp_deterministic(n, p, seed):
    assert sample_gnp(n, p, seed) == sample_gnp(n, p, seed)


def test_sample_gnp_extremes():
    assert sample_gnp(10, 0.0, 1) == Graph.empty(10)
    assert sample_gnp(10, 1.0, 1) == Graph.complete(10)
    with pytest.raises(DomainError):
        sample_gnp(5, 1.5, 0)


def test_sample_gnp_edge_mean():
    n, trials = 30, 10_000
    m = math.comb(n, 2)
    total = sum(sample_gnp(n, 0.5, derive_seed(2024, t)).edge_count() for t in range(trials))
    mean = total / trials
    sigma = math.sqrt(m * 0.25 / trials)
    assert abs(mean - m / 2) <= 3 * sigma


def test_rng_streams():
    a, b = Rng(5), Rng(5)
    assert list(a.raw(4)) == list(b.raw(4))
    u = Rng(9).uniforms(1000)
    assert ((u >= 0) & (u < 1)).all()
    r = Rng(3)
    assert all(0 <= r.below(7) < 7 for _ in range(200))
    assert derive_seed(1, 2) != derive_seed(1, 3)
    with pytest.raises(DomainError):
        Rng(-1)


@pytest.mark.parametrize("k", range(1, 8))
def test_is_graphical_matches_realizability(k):
    realizable = set(degree_sequence_histogram(k))
    for d in itertools.product(range(k), repeat=k):
        assert is_graphical(d) == (d in realizable), d


def test_is_graphical_edge_cases():
    assert is_graphical(())
    assert not is_graphical((1,))
    assert not is_graphical((-1, 1))
    assert is_graphical((3, 3, 3, 3))
    assert not is_graphical((3, 3, 1, 1))


def test_induced_subgraph():
    g = Graph.petersen()
    h = induced_subgraph(g, [0, 1, 2])
    assert h.n == 3 and h.edges() == [(0, 1), (1, 2)]
    assert is_regular(g, 3) and not is_regular(h)
    with pytest.raises(DomainError):
        induced_subgraph(g, [10])


def test_graph6_examples():
    assert parse_graph6("Bw") == Graph.complete(3)
    assert parse_graph6("B?") == Graph.empty(3)
    assert write_graph6(parse_graph6("Bw")) == "Bw"
    assert parse_graph6(">>graph6<<Bw\n") == Graph.complete(3)


def test_graph6_round_trip_random():
    for t in range(1000):
        seed = derive_seed(77, t)
        n = Rng(seed).below(41)
        g = sample_gnp(n, 0.5, seed)
        assert parse_graph6(write_graph6(g)) == g


@given(graphs(max_n=MAX_VERTICES))
@settings(max_examples=40)
def test_graph6_round_trip_property(g):
    assert parse_graph6(write_graph6(g)) == g


@given(graphs(max_n=20))
@settings(max_examples=60)
def test_graph6_matches_networkx(g):
    ref = nx.Graph()
    ref.add_nodes_from(range(g.n))
    ref.add_edges_from(g.edges())
    expected = nx.to_graph6_bytes(ref, header=False).decode().strip()
    assert write_graph6(g) == expected


@pytest.mark.parametrize("text, offset", [
    ("", 0),
    ("B", 1),
    ("Bw?", 2),
    ("B\x7f", 1),
    ("Bx", 1),  # nonzero padding bits
    ("~?", 2),
])
def test_graph6_errors_carry_offset(text, offset):
    with pytest.raises(Graph6Error) as err:
        parse_graph6(text)
    assert err.value.offset == offset
    assert f"at byte {offset}" in str(err.value)

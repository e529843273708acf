import random

from hypothesis import given, settings
from hypothesis import strategies as st

from latin_chroma.coloring import exact_chromatic, greedy_coloring, verify_coloring
from latin_chroma.graph import build_graph
from latin_chroma.squares import (
    ROLE_CONJUGATES,
    apply_isotopy,
    conjugate,
    format_square,
    parse_square,
    random_isotopy,
    random_square,
)
from latin_chroma.transversals import count_transversals, max_partial_transversal

squares = st.builds(random_square, st.integers(1, 6), st.integers(0, 10**6))
small = st.builds(random_square, st.integers(2, 5), st.integers(0, 10**6))


@given(squares)
def test_text_roundtrip(L):
    assert parse_square(format_square(L)) == L


@given(squares)
def test_graph_regular(L):
    G = build_graph(L)
    assert all(G.degree(v) == 3 * (L.n - 1) for v in range(L.n ** 2))


@given(squares)
def test_greedy_proper_and_bounded(L):
    col = greedy_coloring(L)
    assert verify_coloring(L, col).proper
    assert L.n <= col.num_colors <= max(1, 3 * L.n - 2)


@settings(max_examples=40, deadline=None)
@given(small, st.integers(0, 10**6), st.sampled_from(ROLE_CONJUGATES))
def test_main_class_invariance(L, seed, perm):
    # chi, transversal count and longest partial transversal survive
    # isotopy and conjugation
    M = conjugate(apply_isotopy(L, *random_isotopy(L.n, random.Random(seed))), perm)
    assert exact_chromatic(L).chi == exact_chromatic(M).chi
    assert count_transversals(L) == count_transversals(M)
    assert max_partial_transversal(L)[0] == max_partial_transversal(M)[0]


@settings(max_examples=30, deadline=None)
@given(small)
def test_exact_witness_matches(L):
    res = exact_chromatic(L)
    assert res.exact
    assert verify_coloring(L, res.witness).proper
    assert res.witness.num_colors == res.chi == res.lower == res.upper

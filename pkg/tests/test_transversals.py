import itertools

import networkx as nx
import pytest

from latin_chroma import errors
from latin_chroma.graph import build_graph
from latin_chroma.groups import cayley_square, group_by_name
from latin_chroma.squares import circulant, random_square, williams_row_complete
from latin_chroma.transversals import (
    count_transversals,
    diagonal_plex_partition,
    has_orthogonal_mate,
    has_transversal,
    is_partial_transversal,
    is_plex,
    is_transversal,
    mate_from_decomposition,
    max_disjoint_transversals,
    max_partial_transversal,
    maximal_partial_transversals,
    transversals,
    validate_partition,
)


def brute_transversal_count(L):
    n = L.n
    return sum(
        len({L.grid[r][p[r]] for r in range(n)}) == n for p in itertools.permutations(range(n))
    )


@pytest.mark.parametrize("n,expected", [(1, 1), (3, 3), (5, 15), (7, 133), (2, 0), (4, 0), (6, 0)])
def test_cyclic_transversal_counts(n, expected):
    assert count_transversals(circulant(n)) == expected


@pytest.mark.parametrize("seed", range(6))
def test_count_matches_permutation_brute_force(seed):
    L = random_square(6, seed)
    assert count_transversals(L) == brute_transversal_count(L)


@pytest.mark.parametrize("name,expected", [("z2xz2", 8), ("z2xz4", 384), ("z2xz2xz2", 384), ("q8", 384), ("z8", 0)])
def test_group_transversal_counts(name, expected):
    assert count_transversals(cayley_square(group_by_name(name))) == expected


def test_predicates():
    L = circulant(5)
    diag = [(r, (2 * r) % 5) for r in range(5)]
    assert is_transversal(L, diag)
    assert is_partial_transversal(L, diag[:3])
    assert not is_partial_transversal(L, [(0, 0), (0, 1)])
    assert not is_transversal(L, diag[:4])
    assert is_plex(L, [(r, c) for r in range(5) for c in range(5)], 5)


def test_transversals_listing_is_valid():
    L = random_square(5, 7)
    trs = transversals(L)
    assert len(trs) == count_transversals(L)
    assert all(is_transversal(L, t) for t in trs)
    assert has_transversal(L) == bool(trs)


@pytest.mark.parametrize("seed", range(5))
def test_max_partial_matches_networkx_independence(seed):
    L = random_square(5, 100 + seed)
    G = build_graph(L)
    H = nx.Graph()
    H.add_nodes_from(range(25))
    H.add_edges_from((u, v) for u, v, _ in G.edges())
    H = nx.complement(H)
    omega = max(len(c) for c in nx.find_cliques(H))
    length, cells, complete = max_partial_transversal(L)
    assert complete and length == omega
    assert is_partial_transversal(L, cells)


def test_even_circulant_max_partial_is_n_minus_1():
    for n in (2, 4, 6, 8):
        assert max_partial_transversal(circulant(n))[0] == n - 1


def test_maximal_partial_transversals_are_maximal():
    L = circulant(4)
    for pt in maximal_partial_transversals(L):
        assert is_partial_transversal(L, pt)
        for r, c in itertools.product(range(4), repeat=2):
            if (r, c, L.grid[r][c]) not in pt:
                assert not is_partial_transversal(L, list(pt) + [(r, c)])


def test_orthogonal_mate_of_odd_circulant():
    L = circulant(5)
    ok, dec = has_orthogonal_mate(L)
    assert ok
    M = mate_from_decomposition(L, dec)
    pairs = {(L.grid[r][c], M.grid[r][c]) for r in range(5) for c in range(5)}
    assert len(pairs) == 25


def test_no_mate_for_even_circulant():
    assert has_orthogonal_mate(circulant(4)) == (False, None)


def test_max_disjoint_transversals_exact():
    assert max_disjoint_transversals(circulant(5)).t == 5
    assert max_disjoint_transversals(circulant(6)).t == 0
    pk = max_disjoint_transversals(cayley_square(group_by_name("z2xz2")))
    assert pk.exact and pk.t == 4


def test_diagonal_plex_partition():
    P = diagonal_plex_partition(circulant(6))
    assert P.d == 3 and P.ks == (2, 2, 2)
    with pytest.raises(errors.OddOrder):
        diagonal_plex_partition(circulant(5))
    with pytest.raises(errors.NotCirculant):
        diagonal_plex_partition(williams_row_complete(4))


def test_validate_partition_rejects():
    L = circulant(3)
    rows = [[(r, c) for c in range(3)] for r in range(3)]
    with pytest.raises(errors.InvalidPartition):
        validate_partition(L, rows, [1, 1, 1])
    with pytest.raises(errors.InvalidPartition):
        validate_partition(L, [[(r, c) for r in range(3) for c in range(3)]], [2])

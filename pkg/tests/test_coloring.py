import pytest

from latin_chroma import errors
from latin_chroma.coloring import (
    Budget,
    Coloring,
    bound_report,
    circulant_coloring,
    circulant_parts,
    coloring_from_classes,
    coloring_from_grid,
    coloring_from_json,
    conjecture_bound,
    exact_chromatic,
    exceptional_sets,
    greedy_coloring,
    improve_coloring,
    plex_bound_coloring,
    row_complete_coloring,
    shift_vector,
    verify_coloring,
)
from latin_chroma.graph import build_graph
from latin_chroma.groups import cayley_square, group_by_name
from latin_chroma.squares import circulant, random_square, williams_row_complete
from latin_chroma.transversals import diagonal_plex_partition, is_partial_transversal

REFERENCE_Z4 = [[4, 1, 5, 3], [5, 0, 4, 2], [3, 2, 1, 0], [0, 3, 2, 1]]
REFERENCE_Z6 = [
    [6, 1, 3, 2, 7, 5],
    [5, 0, 1, 6, 3, 4],
    [4, 5, 0, 1, 2, 3],
    [3, 4, 7, 0, 6, 2],
    [2, 6, 5, 4, 1, 0],
    [0, 3, 2, 5, 4, 1],
]
REFERENCE_Z8 = [
    [8, 1, 2, 3, 9, 5, 6, 7],
    [6, 0, 1, 8, 2, 4, 5, 9],
    [7, 6, 0, 1, 3, 2, 4, 5],
    [9, 7, 6, 0, 8, 3, 2, 4],
    [5, 4, 7, 9, 1, 0, 3, 8],
    [3, 5, 4, 6, 7, 1, 0, 2],
    [2, 3, 5, 4, 6, 7, 1, 0],
    [0, 2, 3, 5, 4, 6, 7, 1],
]
ROW_COMPLETE_4 = [[1, 3, 2, 4], [2, 0, 3, 5], [3, 1, 0, 6], [0, 2, 1, 7]]


def brute_chi(L):
    """Plain backtracking, no shared code with the solver."""
    G = build_graph(L)
    nv = L.n * L.n
    for k in range(1, nv + 1):
        col = [-1] * nv

        def rec(v):
            if v == nv:
                return True
            used = {col[u] for u in G.nbrs[v]}
            for c in range(min(k, max(col[:v], default=-1) + 2)):
                if c not in used:
                    col[v] = c
                    if rec(v + 1):
                        return True
            col[v] = -1
            return False

        if rec(0):
            return k


@pytest.mark.parametrize("n,grid", [(4, REFERENCE_Z4), (6, REFERENCE_Z6), (8, REFERENCE_Z8)])
def test_reference_colorings_are_proper(n, grid):
    L = circulant(n)
    rep = verify_coloring(L, coloring_from_grid(L, grid))
    assert rep.proper and rep.num_colors == n + 2


def test_reference_z8_exceptional_cells():
    X, X2, _, _ = exceptional_sets(4)
    cells = sorted((r, c) for r, c, _ in X + X2)
    red = sorted((r, c) for r in range(8) for c in range(8) if REFERENCE_Z8[r][c] == 8)
    assert cells == red == [(0, 0), (1, 3), (3, 4), (4, 7)]


def test_row_complete_coloring_reference():
    col = row_complete_coloring(williams_row_complete(4))
    assert [list(r) for r in col.grid()] == ROW_COMPLETE_4


def test_row_complete_requires_row_complete():
    with pytest.raises(errors.NotRowComplete):
        row_complete_coloring(circulant(4))


def test_verify_reports_all_clashes():
    L = circulant(3)
    rep = verify_coloring(L, Coloring(L, (0,) * 9))
    assert not rep.proper
    # one clash per edge: 9 vertices of degree 6
    assert len(rep.clashes) == 27
    assert rep.to_json()["proper"] is False


def test_coloring_json_roundtrip():
    L = random_square(4, 2)
    col = greedy_coloring(L)
    assert coloring_from_json(L, col.to_json()) == col
    assert coloring_from_classes(L, list(col.classes().values())) == col.relabeled()


def test_classes_are_partial_transversals():
    L = random_square(6, 4)
    col = greedy_coloring(L)
    assert all(is_partial_transversal(L, cls) for cls in col.classes().values())


@pytest.mark.parametrize("seed", range(8))
def test_exact_matches_brute_force_order4(seed):
    L = random_square(4, seed)
    res = exact_chromatic(L)
    assert res.exact and res.chi == brute_chi(L)
    assert verify_coloring(L, res.witness).proper
    assert res.witness.num_colors == res.chi


def test_exact_small_cases():
    assert exact_chromatic(circulant(1)).chi == 1
    assert exact_chromatic(circulant(2)).chi == 4
    assert exact_chromatic(circulant(3)).chi == 3
    assert exact_chromatic(cayley_square(group_by_name("z2xz2"))).chi == 4


def test_proof_tags():
    assert exact_chromatic(circulant(5)).lower_bound_proof == "RowClique"
    assert exact_chromatic(circulant(6)).lower_bound_proof == "IndependenceBound"


def test_budget_zero_gives_interval():
    L = random_square(7, 3)
    res = exact_chromatic(L, Budget(time_ms=0))
    assert res.lower <= res.upper
    assert verify_coloring(L, res.witness).proper
    if not res.exact:
        with pytest.raises(errors.BudgetExhausted):
            res.raise_if_inexact()


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("LATIN_CHROMA_BUDGET_MS", "250")
    assert Budget.from_env().time_ms == 250.0
    monkeypatch.delenv("LATIN_CHROMA_BUDGET_MS")
    assert Budget.from_env(7).time_ms == 7


def test_greedy_within_upper_bound():
    for n in range(2, 9):
        L = random_square(n, n)
        assert greedy_coloring(L).num_colors <= 3 * n - 2


def test_greedy_explicit_order_is_first_fit():
    L = circulant(3)
    col = greedy_coloring(L, order=range(9))
    assert col.color(0, 0) == 0 and verify_coloring(L, col).proper


def test_shift_vector():
    assert shift_vector(3) == (3, 4, 1)
    assert shift_vector(4) == (3, 4, -1)


def test_circulant_parts_cover():
    for n in (4, 6, 10, 14):
        parts, (xs, ys) = circulant_parts(n)
        cells = [(r, c) for p in parts for r, c, _ in p] + [(r, c) for r, c, _ in xs + ys]
        assert sorted(cells) == [(r, c) for r in range(n) for c in range(n)]


@pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 9, 12, 14])
def test_circulant_coloring_counts(n):
    col = circulant_coloring(n)
    assert verify_coloring(col.owner, col).proper
    assert col.num_colors == (n if n % 2 else n + 2)


def test_plex_bound_coloring():
    L = circulant(6)
    col = plex_bound_coloring(L, diagonal_plex_partition(L))
    assert verify_coloring(L, col).proper
    # each 2-plex induces a 3-regular graph, at most 4 colors per part
    assert col.num_colors <= 12


def test_improve_coloring_order8():
    L = random_square(8, 1)
    res = improve_coloring(L, Budget(time_ms=20000))
    assert verify_coloring(L, res.witness).proper
    assert res.upper <= 10


def test_bound_report_consistent():
    L = circulant(6)
    rep = bound_report(L, exact=8)
    assert rep.consistent and rep.conjecture_holds()
    assert rep.best_upper >= 8
    assert conjecture_bound(6) == 8 and conjecture_bound(7) == 8

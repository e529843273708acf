import importlib

import pytest

from latin_chroma import kernels
from latin_chroma.graph import build_graph
from latin_chroma.squares import circulant, random_square

py = importlib.import_module("latin_chroma._pykernels")
try:
    cy = importlib.import_module("latin_chroma._ckernels")
except ImportError:
    cy = None

needs_cy = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def _init(n):
    init = [-1] * (n * n)
    init[:n] = range(n)
    return init


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


@needs_cy
@pytest.mark.parametrize("n,k", [(4, 5), (4, 6), (5, 5), (6, 7), (6, 8)])
def test_kcolor_identical(n, k):
    L = circulant(n)
    nbrs = build_graph(L).adjacency_lists()
    assert cy.kcolor(nbrs, k, _init(n)) == py.kcolor(nbrs, k, _init(n))


@needs_cy
@pytest.mark.parametrize("seed", range(4))
def test_kcolor_node_limit_identical(seed):
    L = random_square(6, seed)
    nbrs = build_graph(L).adjacency_lists()
    a = cy.kcolor(nbrs, 7, _init(6), node_limit=500)
    b = py.kcolor(nbrs, 7, _init(6), node_limit=500)
    assert a == b


def test_kcolor_rejects_bad_precoloring():
    nbrs = build_graph(circulant(3)).adjacency_lists()
    init = [0, 0] + [-1] * 7
    assert py.kcolor(nbrs, 3, init)[0] == py.EXHAUSTED


@needs_cy
@pytest.mark.parametrize("seed", range(5))
def test_transversals_identical(seed):
    grid = random_square(7, seed).rows()
    assert cy.transversals(grid) == py.transversals(grid)
    assert cy.transversals(grid, 3) == py.transversals(grid, 3)
    assert cy.transversals(grid, 0, False)[0] == py.transversals(grid, 0, False)[0]


@needs_cy
@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_max_partial_identical(n):
    for grid in (circulant(n).rows(), random_square(n, n).rows()):
        assert cy.max_partial_transversal(grid) == py.max_partial_transversal(grid)


@needs_cy
@pytest.mark.parametrize("seed", range(3))
def test_tabucol_identical(seed):
    L = random_square(7, seed)
    nbrs = build_graph(L).adjacency_lists()
    init = [(r * 3 + c) % 9 for r in range(7) for c in range(7)]
    assert cy.tabucol(nbrs, 9, init, 2000) == py.tabucol(nbrs, 9, init, 2000)


def test_pure_fallback_selected(monkeypatch):
    monkeypatch.setenv("LATIN_CHROMA_PURE", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
        assert mod.kcolor is py.kcolor
    finally:
        monkeypatch.delenv("LATIN_CHROMA_PURE")
        importlib.reload(kernels)

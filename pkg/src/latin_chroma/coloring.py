"""Colorings of Latin square graphs: verification, greedy, exact search,
the circulant construction, row-complete and plex-partition colorings,
and bound reports."""
from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

from . import kernels
from .errors import BudgetExhausted, NotRowComplete, UncoveredCell
from .graph import build_graph, induced, is_circulant, right_diagonal, shift, two_coloring
from .squares import LatinSquare, circulant, is_row_complete
from .transversals import (
    PlexPartition,
    diagonal_plex_partition,
    max_disjoint_transversals,
    max_partial_transversal,
    orthogonal_decomposition,
    transversals,
    validate_partition,
)


@dataclass(frozen=True)
class Coloring:
    owner: LatinSquare
    colors: tuple  # row-major, one color id per cell

    @property
    def n(self):
        return self.owner.n

    @property
    def num_colors(self):
        return len(set(self.colors))

    def color(self, r, c):
        return self.colors[r * self.owner.n + c]

    def grid(self):
        n = self.owner.n
        return [list(self.colors[r * n:(r + 1) * n]) for r in range(n)]

    def classes(self):
        out = {}
        for v, col in enumerate(self.colors):
            out.setdefault(col, []).append(self.owner.cell(v))
        return out

    def relabeled(self):
        """Same partition with colors renumbered 0.. by first appearance."""
        seen = {}
        return Coloring(self.owner, tuple(seen.setdefault(c, len(seen)) for c in self.colors))

    def to_json(self):
        return {"n": self.n, "numColors": self.num_colors, "colors": self.grid()}


def coloring_from_grid(L: LatinSquare, grid) -> Coloring:
    n = L.n
    if len(grid) != n or any(len(row) != n for row in grid):
        raise UncoveredCell(f"coloring grid must be {n}x{n}")
    flat = []
    for r, row in enumerate(grid):
        for c, x in enumerate(row):
            if x is None or isinstance(x, bool) or not isinstance(x, int) or x < 0:
                raise UncoveredCell(f"cell ({r},{c}) has no color")
            flat.append(x)
    return Coloring(L, tuple(flat))


def coloring_from_json(L: LatinSquare, obj) -> Coloring:
    if obj.get("n", L.n) != L.n:
        raise UncoveredCell(f"coloring is for order {obj.get('n')}, square has order {L.n}")
    return coloring_from_grid(L, obj["colors"])


def coloring_from_classes(L: LatinSquare, classes) -> Coloring:
    n = L.n
    flat = [None] * (n * n)
    for col, cells in enumerate(classes):
        for cell in cells:
            flat[cell[0] * n + cell[1]] = col
    if None in flat:
        raise UncoveredCell(f"cell {divmod(flat.index(None), n)} is uncovered")
    return Coloring(L, tuple(flat))


# ------------------------------------------------------------ verification


@dataclass
class VerifyReport:
    proper: bool
    num_colors: int
    clashes: list = field(default_factory=list)

    def __bool__(self):
        return self.proper

    def to_json(self):
        return {
            "proper": self.proper,
            "numColors": self.num_colors,
            "clashes": [
                {"kind": k, "color": col, "cells": [list(a), list(b)]} for k, col, a, b in self.clashes
            ],
        }


def verify_coloring(L: LatinSquare, col: Coloring) -> VerifyReport:
    """Every monochromatic pair sharing a row, column or symbol is a clash."""
    n = L.n
    if len(col.colors) != n * n or any(x is None for x in col.colors):
        raise UncoveredCell("coloring does not assign every cell")
    clashes = []
    for role, kind in enumerate(("row", "column", "symbol")):
        groups = {}
        for t in L.triples():
            key = (t[role], col.colors[t[0] * n + t[1]])
            groups.setdefault(key, []).append(t)
        for (_, colr), cells in sorted(groups.items()):
            for a in range(len(cells)):
                for b in range(a + 1, len(cells)):
                    clashes.append((kind, colr, cells[a], cells[b]))
    return VerifyReport(not clashes, col.num_colors, clashes)


def is_proper(L: LatinSquare, col: Coloring) -> bool:
    return verify_coloring(L, col).proper


# ------------------------------------------------------------------ greedy


def dsatur_order_coloring(nbrs, fixed=None):
    """DSATUR: max saturation, then max degree into uncolored vertices, then
    least index; smallest free color. Returns a color list."""
    nv = len(nbrs)
    colors = [-1] * nv
    seen = [set() for _ in range(nv)]
    udeg = [len(x) for x in nbrs]

    def put(v, c):
        colors[v] = c
        for u in nbrs[v]:
            seen[u].add(c)
            udeg[u] -= 1

    if fixed:
        for v, c in fixed.items():
            put(v, c)
    for _ in range(nv - len(fixed or ())):
        best, bs, bd = -1, -1, -1
        for v in range(nv):
            if colors[v] >= 0:
                continue
            s = len(seen[v])
            if s > bs or (s == bs and udeg[v] > bd):
                best, bs, bd = v, s, udeg[v]
        c = 0
        while c in seen[best]:
            c += 1
        put(best, c)
    return colors


def greedy_coloring(L: LatinSquare, order=None, G=None) -> Coloring:
    """DSATUR by default; with ``order`` (cells or cell indices) plain
    first-fit in that order. Uses at most 3n-2 colors either way."""
    G = G or build_graph(L)
    nbrs = G.nbrs
    if order is None:
        return Coloring(L, tuple(dsatur_order_coloring(nbrs)))
    n = L.n
    idx = [x if isinstance(x, int) else x[0] * n + x[1] for x in order]
    if sorted(idx) != list(range(n * n)):
        raise UncoveredCell("ordering must list every cell exactly once")
    colors = [-1] * (n * n)
    for v in idx:
        used = {colors[u] for u in nbrs[v]}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return Coloring(L, tuple(colors))


# ------------------------------------------------------------------- exact


@dataclass
class Budget:
    """Wall-clock (milliseconds) and search-node caps; None means unlimited."""

    time_ms: float | None = None
    nodes: int | None = None

    @classmethod
    def from_env(cls, default=None):
        raw = os.environ.get("LATIN_CHROMA_BUDGET_MS")
        if raw:
            return cls(time_ms=float(raw))
        return cls(time_ms=default)


@dataclass
class ChiResult:
    chi: int
    witness: Coloring
    lower: int
    upper: int
    exact: bool
    lower_bound_proof: str
    nodes: int = 0
    elapsed: float = 0.0

    def to_json(self):
        out = self.witness.to_json()
        out.update(
            chi=self.chi,
            exact=self.exact,
            lower=self.lower,
            upper=self.upper,
            lowerBoundProof=self.lower_bound_proof,
        )
        return out

    def raise_if_inexact(self):
        if not self.exact:
            raise BudgetExhausted(self.lower, self.upper, self)
        return self


def _first_row_init(n):
    init = [-1] * (n * n)
    for c in range(n):
        init[c] = c
    return init


def _expired(deadline):
    return deadline is not None and time.monotonic() >= deadline


def _squeeze(nbrs, colors, k):
    """Fold colors >= k into 0..k-1, each vertex taking its least-conflict color."""
    out = list(colors)
    for v, c in enumerate(out):
        if c >= k:
            seen = [0] * k
            for u in nbrs[v]:
                if out[u] < k:
                    seen[out[u]] += 1
            out[v] = min(range(k), key=seen.__getitem__)
    return out


def _anchored_search(L, nbrs, node_limit, deadline):
    """(n+1)-colorability, one exhaustive search per transversal taken as color 0."""
    n = L.n
    total = 0
    for tr in transversals(L):
        init = [-1] * (n * n)
        for r, c, _ in tr:
            init[r * n + c] = 0
        nxt = 1
        for c in range(n):
            if init[c] < 0:
                init[c] = nxt
                nxt += 1
        left = 0
        if node_limit:
            left = node_limit - total
            if left <= 0:
                return kernels.OUT_OF_BUDGET, None, total
        status, colors, used = kernels.kcolor(nbrs, n + 1, init, left, deadline)
        total += used
        if status != kernels.EXHAUSTED:
            return status, colors, total
    return kernels.EXHAUSTED, None, total


def local_search_upper(L, nbrs, best: Coloring, floor: int, iters: int, deadline=None) -> Coloring:
    """Tabu search for (chi_best - 1)-colorings down to ``floor``; returns the best found."""
    kdeadline = 0.0 if deadline is None else deadline
    k = best.num_colors - 1
    while k >= floor and iters > 0 and not _expired(deadline):
        found, colors, _ = kernels.tabucol(nbrs, k, _squeeze(nbrs, best.relabeled().colors, k),
                                           iters, kdeadline)
        if not found:
            break
        best = Coloring(L, tuple(colors))
        k = best.num_colors - 1
    return best


def exact_chromatic(
    L: LatinSquare,
    budget: Budget | None = None,
    mate_search=True,
    independence_bound=True,
    local_search_iters=50_000,
    anchored=True,
) -> ChiResult:
    """Chromatic number by k-colorability tests from the lower bound upward.

    Lower bound: n (a row is a clique), raised to ceil(n^2 / alpha) when the
    longest partial transversal alpha is computed. Upper bound: DSATUR. Each
    k is then refuted or realised by exhaustive DSATUR backtracking with the
    first row fixed to colors 0..n-1. At k = n the color classes are
    necessarily transversals, so ``mate_search`` answers that level by exact
    cover over the transversal list instead. Before the exhaustive levels a
    tabu search tries to pull the upper bound down (it can only supply
    colorings, never refutations). Out of budget, the returned result is an
    interval with ``exact=False``.

    With ``anchored``, level k = n+1 is split by which transversal forms a
    color class: n+1 classes of at most n cells cover n^2 cells only if one
    class has exactly n, so trying every transversal as class 0 is complete.
    """
    budget = budget or Budget()
    t0 = time.monotonic()
    deadline = None if budget.time_ms is None else t0 + budget.time_ms / 1000.0
    kdeadline = 0.0 if deadline is None else max(deadline, 1e-9)
    n = L.n
    G = build_graph(L)
    nbrs = G.adjacency_lists()
    best = greedy_coloring(L, G=G)
    lower, proof = n, "RowClique"
    nodes = 0
    exact = True
    # tabu search only tightens the upper end; it never reaches k = n, which
    # the exhaustive levels below settle
    if local_search_iters and best.num_colors > n + 1:
        best = local_search_upper(L, nbrs, best, n + 1, local_search_iters, deadline)

    if independence_bound and lower < best.num_colors and not _expired(deadline):
        alpha, _, complete = max_partial_transversal(L, kdeadline)
        if complete and alpha:
            lb = -(-n * n // alpha)
            if lb > lower:
                lower, proof = lb, "IndependenceBound"

    k = lower
    while k < best.num_colors:
        if _expired(deadline):
            exact = False
            break
        if k == n and mate_search:
            try:
                dec = orthogonal_decomposition(L, kdeadline)
            except TimeoutError:
                exact = False
                break
            if dec is not None:
                best = coloring_from_classes(L, dec)
                break
            lower, proof = n + 1, f"Exhausted-{n}"
            k += 1
            continue
        left = 0
        if budget.nodes is not None:
            left = budget.nodes - nodes
            if left <= 0:
                exact = False
                break
        if k == n + 1 and anchored and n >= 2:
            status, colors, used = _anchored_search(L, nbrs, left, kdeadline)
        else:
            status, colors, used = kernels.kcolor(nbrs, k, _first_row_init(n), left, kdeadline)
        nodes += used
        if status == kernels.FOUND:
            best = Coloring(L, tuple(colors))
            break
        if status == kernels.OUT_OF_BUDGET:
            exact = False
            break
        lower, proof = k + 1, f"Exhausted-{k}"
        k += 1

    upper = best.num_colors
    if lower >= upper:
        exact = True
        lower = upper
    return ChiResult(upper, best, lower, upper, exact, proof, nodes, time.monotonic() - t0)


def improve_coloring(L: LatinSquare, budget: Budget | None = None, nodes_per_k=200_000,
                     local_search_iters=100_000) -> ChiResult:
    """Heuristic mode: DSATUR, tabu search, then node-capped exhaustive
    searches for ever smaller k.

    Never claims exactness beyond what the lower bound n (or a completed
    mate search) certifies.
    """
    budget = budget or Budget()
    t0 = time.monotonic()
    deadline = None if budget.time_ms is None else t0 + budget.time_ms / 1000.0
    kdeadline = 0.0 if deadline is None else max(deadline, 1e-9)
    n = L.n
    G = build_graph(L)
    nbrs = G.adjacency_lists()
    best = greedy_coloring(L, G=G)
    best = local_search_upper(L, nbrs, best, n + 1, local_search_iters, deadline)
    lower, proof = n, "RowClique"
    nodes = 0
    k = best.num_colors - 1
    while k > n and not _expired(deadline):
        status, colors, used = kernels.kcolor(nbrs, k, _first_row_init(n), nodes_per_k, kdeadline)
        nodes += used
        if status != kernels.FOUND:
            if status == kernels.EXHAUSTED:
                lower, proof = k + 1, f"Exhausted-{k}"
            break
        best = Coloring(L, tuple(colors))
        k = best.num_colors - 1
    if k == n and best.num_colors == n + 1 and not _expired(deadline):
        try:
            dec = orthogonal_decomposition(L, kdeadline)
        except TimeoutError:
            dec = False
        if dec:
            best = coloring_from_classes(L, dec)
        elif dec is None:
            lower, proof = n + 1, f"Exhausted-{n}"
    upper = best.num_colors
    return ChiResult(upper, best, min(lower, upper), upper, lower >= upper, proof, nodes,
                     time.monotonic() - t0)


# ------------------------------------------------------ circulant colorings


def shift_vector(m: int):
    return (m, m + 1, 1) if m % 3 == 0 else (m - 1, m, -1)


def exceptional_sets(m: int):
    """The four cell sets X, X', Y, Y' carved out of L_{Z_2m} (m >= 2)."""
    if m < 2:
        raise ValueError("needs m >= 2")
    n = 2 * m
    k = -(-m // 2)
    d = shift_vector(m)
    X = [(j % n, (3 * j) % n, (4 * j) % n) for j in range(k)]
    X2 = [shift(x, d, n) for x in X]
    Y = [shift(X[j], (0, 2 * k, 2 * k), n) for j in range(m - k)]
    Y2 = [shift(y, d, n) for y in Y]
    return X, X2, Y, Y2


def circulant_parts(n: int):
    """The m+1 cell parts of the even construction, each with its color pair."""
    m = n // 2
    k = -(-m // 2)
    X, X2, Y, Y2 = exceptional_sets(m)
    removed = {}
    for j in range(k):
        removed[j] = {X[j], X2[j]}
    for j in range(m - k):
        removed[j + k] = {Y[j], Y2[j]}
    parts = []
    for j in range(m):
        plex = right_diagonal(n, 2 * j) + right_diagonal(n, 2 * j + 1)
        parts.append([x for x in plex if x not in removed[j]])
    return parts, (X + X2, Y + Y2)


def circulant_coloring(n: int) -> Coloring:
    """n colors for odd n (one per right diagonal), n+2 for even n."""
    L = circulant(n)
    if n % 2:
        return Coloring(L, tuple((c - r) % n for r in range(n) for c in range(n)))
    if n == 2:
        return Coloring(L, (0, 1, 2, 3))
    m = n // 2
    G = build_graph(L)
    colors = [None] * (n * n)
    parts, (xs, ys) = circulant_parts(n)
    for j, part in enumerate(parts):
        for v, c in two_coloring(induced(G, part), (2 * j, 2 * j + 1)).items():
            colors[v] = c
    for r, c, _ in xs:
        colors[r * n + c] = 2 * m
    for r, c, _ in ys:
        colors[r * n + c] = 2 * m + 1
    return Coloring(L, tuple(colors))


def row_complete_coloring(L: LatinSquare) -> Coloring:
    """Cell (i, j) gets the symbol to its right; the last column gets n fresh colors."""
    if not is_row_complete(L):
        raise NotRowComplete("square is not row-complete")
    n = L.n
    g = L.grid
    colors = []
    for i in range(n):
        colors.extend(g[i][j + 1] for j in range(n - 1))
        colors.append(n + i)
    return Coloring(L, tuple(colors))


def plex_bound_coloring(L: LatinSquare, partition: PlexPartition) -> Coloring:
    """Each k-plex part induces a (3k-3)-regular graph; DSATUR it with fresh colors."""
    validate_partition(L, partition.parts, partition.ks)
    G = build_graph(L)
    n = L.n
    colors = [None] * (n * n)
    offset = 0
    for part in partition.parts:
        sub = induced(G, part)
        verts = list(sub.vertices)
        local = {v: i for i, v in enumerate(verts)}
        nb = [[local[u] for u, _ in sub.adj[v]] for v in verts]
        cols = dsatur_order_coloring(nb)
        for v, c in zip(verts, cols):
            colors[v] = offset + c
        offset += max(cols) + 1
    return Coloring(L, tuple(colors))


# ----------------------------------------------------------------- bounds


def conjecture_bound(n: int) -> int:
    return n + 1 if n % 2 else n + 2


@dataclass
class BoundReport:
    n: int
    lower: int
    greedy_bound: int
    dsatur: int
    t: int | None = None
    t_exact: bool = False
    corollary: dict | None = None
    row_complete: int | None = None
    constructive: dict = field(default_factory=dict)
    exact: int | None = None
    notes: list = field(default_factory=list)

    def uppers(self):
        vals = {"greedy": self.greedy_bound, "dsatur": self.dsatur}
        if self.corollary is not None:
            vals["transversal_corollary"] = self.corollary["value"]
        if self.row_complete is not None:
            vals["row_complete"] = self.row_complete
        vals.update(self.constructive)
        return vals

    @property
    def best_upper(self):
        return min(self.uppers().values())

    @property
    def consistent(self):
        floor = self.exact if self.exact is not None else self.lower
        return all(v >= floor for v in self.uppers().values()) and self.lower <= self.best_upper

    def conjecture_holds(self):
        """None when undecided; otherwise whether chi <= n+1 (odd) / n+2 (even)."""
        cap = conjecture_bound(self.n)
        if self.best_upper <= cap:
            return True
        if self.exact is not None:
            return self.exact <= cap
        return None

    def to_json(self):
        return {
            "n": self.n,
            "lower": self.lower,
            "greedyBound": self.greedy_bound,
            "dsatur": self.dsatur,
            "disjointTransversals": self.t,
            "disjointTransversalsExact": self.t_exact,
            "corollary": self.corollary,
            "rowComplete": self.row_complete,
            "constructive": self.constructive,
            "exact": self.exact,
            "bestUpper": self.best_upper,
            "consistent": self.consistent,
            "conjectureHolds": self.conjecture_holds(),
            "notes": self.notes,
        }


def bound_report(L: LatinSquare, exact=None, packing=None) -> BoundReport:
    n = L.n
    rep = BoundReport(n, n, 3 * n - 2, greedy_coloring(L).num_colors, exact=exact)
    if packing is None:
        packing = max_disjoint_transversals(L)
    t = packing.t
    rep.t, rep.t_exact = t, packing.exact
    if t >= n - 1:
        # n-1 disjoint transversals leave a transversal behind
        rep.corollary = {"t": t, "value": n, "equality": True}
        rep.lower = n
    else:
        rep.corollary = {"t": t, "value": 3 * n - 2 * t - 2, "equality": False}
    if 0 < t < n:
        rest = {x for x in L.triples()} - {x for tr in packing.transversals for x in tr}
        part = validate_partition(L, list(packing.transversals) + [sorted(rest)], [1] * t + [n - t])
        rep.constructive["transversal_plex"] = plex_bound_coloring(L, part).num_colors
    if is_row_complete(L) and n > 1:
        rep.row_complete = 2 * n
        rep.constructive["row_complete_coloring"] = row_complete_coloring(L).num_colors
    if is_circulant(L):
        rep.constructive["circulant"] = circulant_coloring(n).num_colors
        if n % 2 == 0 and n >= 2:
            rep.constructive["diagonal_plex"] = plex_bound_coloring(L, diagonal_plex_partition(L)).num_colors
    if not packing.exact:
        rep.notes.append("t is a greedy lower bound on the disjoint transversal count")
    rep.notes.append("asymptotically chi <= n + o(n) (hypergraph edge-coloring); no numeric bound implied")
    return rep

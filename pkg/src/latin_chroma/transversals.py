"""Partial transversals, transversal packings, plexes and plex partitions."""
from __future__ import annotations

import time
from dataclasses import dataclass

from . import kernels
from .errors import ForeignCell, InvalidPartition, NotCirculant, OddOrder
from .graph import is_circulant, right_diagonal
from .squares import LatinSquare

# Packings are searched exhaustively up to this order; above it only a
# greedy lower bound is produced unless the caller raises the limit.
EXACT_PACKING_MAX_ORDER = 7


def _triples(L: LatinSquare, cells):
    out = []
    for cell in cells:
        r, c = cell[0], cell[1]
        if not (0 <= r < L.n and 0 <= c < L.n):
            raise ForeignCell(f"{tuple(cell)} lies outside an order-{L.n} square")
        s = L.grid[r][c]
        if len(cell) > 2 and cell[2] != s:
            raise ForeignCell(f"{tuple(cell)} does not match symbol {s} at ({r},{c})")
        out.append((r, c, s))
    return out


def is_partial_transversal(L: LatinSquare, cells) -> bool:
    ts = _triples(L, cells)
    if len(set(ts)) != len(ts):
        return False
    for k in range(3):
        vals = [t[k] for t in ts]
        if len(set(vals)) != len(vals):
            return False
    return True


def is_transversal(L: LatinSquare, cells) -> bool:
    return len(cells) == L.n and is_partial_transversal(L, cells)


def is_plex(L: LatinSquare, cells, k: int) -> bool:
    ts = _triples(L, cells)
    n = L.n
    if len(set(ts)) != len(ts) or len(ts) != k * n:
        return False
    for role in range(3):
        counts = [0] * n
        for t in ts:
            counts[t[role]] += 1
        if any(x != k for x in counts):
            return False
    return True


def max_partial_transversal(L: LatinSquare, deadline=0.0):
    """Longest partial transversal as ``(length, cells)``.

    With a ``deadline`` the search may stop early; the third element of the
    returned tuple says whether the length is proven maximal.
    """
    length, rc, complete = kernels.max_partial_transversal(L.rows(), deadline)
    return length, [(r, c, L.grid[r][c]) for r, c in rc], complete


def count_transversals(L: LatinSquare) -> int:
    return kernels.transversals(L.rows(), 0, False)[0]


def has_transversal(L: LatinSquare) -> bool:
    return kernels.transversals(L.rows(), 1, False)[0] > 0


def transversals(L: LatinSquare, limit=0):
    """All transversals (row order, columns ascending), each as a list of triples."""
    _, found = kernels.transversals(L.rows(), limit, True)
    g = L.grid
    return [[(r, c, g[r][c]) for r, c in enumerate(cols)] for cols in found]


def partial_transversals(L: LatinSquare):
    """Every partial transversal including the empty one. Exponential; small n only."""
    n = L.n
    g = L.grid
    out = []
    cur = []
    used_c, used_s = set(), set()

    def rec(r):
        if r == n:
            out.append(tuple(cur))
            return
        rec(r + 1)
        for c in range(n):
            s = g[r][c]
            if c in used_c or s in used_s:
                continue
            used_c.add(c)
            used_s.add(s)
            cur.append((r, c, s))
            rec(r + 1)
            cur.pop()
            used_c.discard(c)
            used_s.discard(s)

    rec(0)
    return out


def maximal_partial_transversals(L: LatinSquare):
    result = []
    for pt in partial_transversals(L):
        rows = {t[0] for t in pt}
        cols = {t[1] for t in pt}
        syms = {t[2] for t in pt}
        extendable = any(
            L.grid[r][c] not in syms
            for r in range(L.n)
            if r not in rows
            for c in range(L.n)
            if c not in cols
        )
        if not extendable:
            result.append(pt)
    return result


# ---------------------------------------------------------------- packings


@dataclass
class Packing:
    t: int
    transversals: list
    exact: bool

    def to_json(self):
        return [[list(x) for x in tr] for tr in self.transversals]


def _masks(L, trs):
    n = L.n
    return [sum(1 << (r * n + c) for r, c, _ in tr) for tr in trs]


def _decompose(n, trs, masks, deadline=0.0):
    """Exact cover of all cells by transversals; branch on least uncovered cell."""
    full = (1 << (n * n)) - 1
    by_cell = [[] for _ in range(n * n)]
    for idx, m in enumerate(masks):
        x = m
        while x:
            low = x & -x
            by_cell[low.bit_length() - 1].append(idx)
            x ^= low
    chosen = []
    ticks = [0]

    def rec(covered):
        if covered == full:
            return True
        ticks[0] += 1
        if deadline and ticks[0] % 4096 == 0 and time.monotonic() >= deadline:
            raise TimeoutError
        free = ~covered & full
        cell = (free & -free).bit_length() - 1
        for idx in by_cell[cell]:
            m = masks[idx]
            if m & covered:
                continue
            chosen.append(idx)
            if rec(covered | m):
                return True
            chosen.pop()
        return False

    if rec(0):
        return [trs[i] for i in chosen]
    return None


def _max_packing(n, masks, deadline=0.0):
    """Largest set of pairwise disjoint masks; least uncovered cell either gets
    one of its transversals or is declared permanently empty."""
    full = (1 << (n * n)) - 1
    by_cell = [[] for _ in range(n * n)]
    for idx, m in enumerate(masks):
        x = m
        while x:
            low = x & -x
            by_cell[low.bit_length() - 1].append(idx)
            x ^= low
    best = [[]]
    chosen = []
    ticks = [0]

    def rec(blocked):
        ticks[0] += 1
        if deadline and ticks[0] % 4096 == 0 and time.monotonic() >= deadline:
            raise TimeoutError
        free = ~blocked & full
        if len(chosen) + bin(free).count("1") // n <= len(best[0]):
            return
        if not free:
            best[0] = list(chosen)
            return
        cell = (free & -free).bit_length() - 1
        for idx in by_cell[cell]:
            m = masks[idx]
            if m & blocked:
                continue
            chosen.append(idx)
            rec(blocked | m)
            chosen.pop()
            if len(best[0]) == n:
                return
        rec(blocked | (1 << cell))

    rec(0)
    return best[0]


def max_disjoint_transversals(L: LatinSquare, exact_max_order=None, deadline=0.0) -> Packing:
    limit = EXACT_PACKING_MAX_ORDER if exact_max_order is None else exact_max_order
    n = L.n
    if n > limit:
        # greedy maximal packing over the transversals in enumeration order
        trs = transversals(L, limit=20000)
        taken, used = [], 0
        for tr, m in zip(trs, _masks(L, trs)):
            if not m & used:
                taken.append(tr)
                used |= m
        return Packing(len(taken), taken, False)
    trs = transversals(L)
    masks = _masks(L, trs)
    try:
        dec = _decompose(n, trs, masks, deadline)
        if dec is not None:
            return Packing(n, dec, True)
        picked = _max_packing(n, masks, deadline)
    except TimeoutError:
        taken, used = [], 0
        for tr, m in zip(trs, masks):
            if not m & used:
                taken.append(tr)
                used |= m
        return Packing(len(taken), taken, False)
    return Packing(len(picked), [trs[i] for i in picked], True)


def orthogonal_decomposition(L: LatinSquare, deadline=0.0):
    """Partition into n disjoint transversals, or None. Raises TimeoutError past ``deadline``."""
    trs = transversals(L)
    return _decompose(L.n, trs, _masks(L, trs), deadline)


def has_orthogonal_mate(L: LatinSquare):
    """``(True, decomposition)`` or ``(False, None)``."""
    dec = orthogonal_decomposition(L)
    return (dec is not None), dec


def mate_from_decomposition(L: LatinSquare, decomposition):
    """Orthogonal mate: cell gets the index of the transversal containing it."""
    from .squares import validate

    n = L.n
    grid = [[None] * n for _ in range(n)]
    for i, tr in enumerate(decomposition):
        for r, c, _ in tr:
            grid[r][c] = i
    return validate(grid)


# --------------------------------------------------------------- plex parts


@dataclass(frozen=True)
class PlexPartition:
    parts: tuple
    ks: tuple

    @property
    def d(self):
        return len(self.parts)


def validate_partition(L: LatinSquare, parts, ks) -> PlexPartition:
    n = L.n
    if len(parts) != len(ks):
        raise InvalidPartition("one multiplicity per part is required")
    if sum(ks) != n:
        raise InvalidPartition(f"multiplicities sum to {sum(ks)}, not {n}")
    seen = set()
    frozen = []
    for part, k in zip(parts, ks):
        ts = _triples(L, part)
        if not is_plex(L, ts, k):
            raise InvalidPartition(f"part of size {len(ts)} is not a {k}-plex")
        for t in ts:
            if t in seen:
                raise InvalidPartition(f"cell {t} lies in two parts")
            seen.add(t)
        frozen.append(tuple(sorted(ts)))
    if len(seen) != n * n:
        raise InvalidPartition("parts do not cover every cell")
    return PlexPartition(tuple(frozen), tuple(ks))


def diagonal_plex_partition(L: LatinSquare) -> PlexPartition:
    """Pairs of consecutive right diagonals ``T_{2j} u T_{2j+1}`` of an even circulant."""
    if not is_circulant(L):
        raise NotCirculant("diagonal plex partition needs the circulant square")
    n = L.n
    if n % 2:
        raise OddOrder(f"diagonal plex partition needs even order, got {n}")
    parts = [right_diagonal(n, 2 * j) + right_diagonal(n, 2 * j + 1) for j in range(n // 2)]
    return validate_partition(L, parts, [2] * (n // 2))


def transversal_partition(L: LatinSquare, decomposition) -> PlexPartition:
    return validate_partition(L, decomposition, [1] * len(decomposition))

"""Latin squares: validation, standard constructions, transformations, text I/O."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BadSymbol,
    ColumnRepeat,
    NonSquare,
    OddOrder,
    ParseError,
    RowRepeat,
    SizeMismatch,
)

# S_3 acting on (row, column, symbol) positions: new triple[i] = old[perm[i]]
ROLE_CONJUGATES = tuple(itertools.permutations(range(3)))


@dataclass(frozen=True)
class LatinSquare:
    n: int
    grid: tuple[tuple[int, ...], ...]

    def __getitem__(self, rc):
        r, c = rc
        return self.grid[r][c]

    def rows(self):
        return [list(row) for row in self.grid]

    def triples(self):
        n = self.n
        return [(r, c, self.grid[r][c]) for r in range(n) for c in range(n)]

    def cell_index(self, r, c):
        return r * self.n + c

    def cell(self, index):
        r, c = divmod(index, self.n)
        return (r, c, self.grid[r][c])

    def __str__(self):
        return format_square(self)


def validate(grid: Sequence[Sequence[int]]) -> LatinSquare:
    """Check ``grid`` is a Latin square over 0..n-1 and freeze it."""
    n = len(grid)
    if n == 0:
        raise NonSquare("empty grid")
    rows = []
    for r, row in enumerate(grid):
        row = list(row)
        if len(row) != n:
            raise NonSquare(f"row {r} has {len(row)} entries, expected {n}")
        for c, s in enumerate(row):
            if isinstance(s, bool) or not isinstance(s, int) or not 0 <= s < n:
                raise BadSymbol(r, c, s)
        rows.append(tuple(row))
    for r, row in enumerate(rows):
        seen = set()
        for s in row:
            if s in seen:
                raise RowRepeat(r, s)
            seen.add(s)
    for c in range(n):
        seen = set()
        for r in range(n):
            s = rows[r][c]
            if s in seen:
                raise ColumnRepeat(c, s)
            seen.add(s)
    return LatinSquare(n, tuple(rows))


def is_latin(grid) -> bool:
    try:
        validate(grid)
    except (NonSquare, BadSymbol, RowRepeat, ColumnRepeat):
        return False
    return True


def normalize_symbols(grid: Sequence[Sequence]) -> list[list[int]]:
    """Relabel an arbitrary alphabet onto 0..n-1 (sorted order of the labels)."""
    labels = sorted({x for row in grid for x in row}, key=_label_key)
    index = {x: i for i, x in enumerate(labels)}
    return [[index[x] for x in row] for row in grid]


def _label_key(x):
    try:
        return (0, int(x), "")
    except (TypeError, ValueError):
        return (1, 0, str(x))


def from_symbols(grid: Sequence[Sequence]) -> LatinSquare:
    n = len(grid)
    if all(isinstance(x, int) and 0 <= x < n for row in grid for x in row):
        return validate(grid)
    return validate(normalize_symbols(grid))


def circulant(n: int) -> LatinSquare:
    if n < 1:
        raise ValueError("order must be positive")
    return LatinSquare(n, tuple(tuple((r + c) % n for c in range(n)) for r in range(n)))


def williams_row_complete(n: int) -> LatinSquare:
    """Row-complete square from the Williams sequence 0, 1, n-1, 2, n-2, ..."""
    if n < 2 or n % 2:
        raise OddOrder(f"row-complete construction needs even n >= 2, got {n}")
    seq = [0]
    lo, hi = 1, n - 1
    while len(seq) < n:
        seq.append(lo)
        lo += 1
        if len(seq) < n:
            seq.append(hi)
            hi -= 1
    return LatinSquare(n, tuple(tuple((x + r) % n for x in seq) for r in range(n)))


def is_row_complete(L: LatinSquare) -> bool:
    seen = set()
    for row in L.grid:
        for a, b in zip(row, row[1:]):
            if (a, b) in seen:
                return False
            seen.add((a, b))
    return True


def conjugate(L: LatinSquare, perm: Sequence[int]) -> LatinSquare:
    perm = tuple(perm)
    if sorted(perm) != [0, 1, 2]:
        raise ValueError(f"not a permutation of the three roles: {perm}")
    n = L.n
    out = [[None] * n for _ in range(n)]
    for t in L.triples():
        r, c, s = (t[perm[0]], t[perm[1]], t[perm[2]])
        out[r][c] = s
    return validate(out)


def conjugates(L: LatinSquare):
    return [conjugate(L, p) for p in ROLE_CONJUGATES]


def apply_isotopy(L: LatinSquare, row_perm, col_perm, sym_perm) -> LatinSquare:
    n = L.n
    for p in (row_perm, col_perm, sym_perm):
        if len(p) != n or sorted(p) != list(range(n)):
            raise SizeMismatch(f"need a permutation of range({n}), got {list(p)}")
    out = [[None] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            out[row_perm[r]][col_perm[c]] = sym_perm[L.grid[r][c]]
    return validate(out)


def random_isotopy(n: int, rng: random.Random):
    perms = []
    for _ in range(3):
        p = list(range(n))
        rng.shuffle(p)
        perms.append(p)
    return tuple(perms)


def random_square(n: int, seed=None) -> LatinSquare:
    """Seeded Latin square by row-by-row backtracking. Not uniform."""
    if n < 1:
        raise ValueError("order must be positive")
    rng = random.Random(seed)
    col_used = [set() for _ in range(n)]
    rows = []
    for _ in range(n):
        order = list(range(n))
        rng.shuffle(order)
        row = [None] * n
        in_row = set()

        def fill(c):
            if c == n:
                return True
            for s in order:
                if s in in_row or s in col_used[c]:
                    continue
                row[c] = s
                in_row.add(s)
                if fill(c + 1):
                    return True
                in_row.discard(s)
            return False

        # a Latin rectangle always extends by a row, so this cannot fail
        if not fill(0):
            raise AssertionError("row extension failed")
        for c, s in enumerate(row):
            col_used[c].add(s)
        rows.append(row)
    return validate(rows)


# ---------------------------------------------------------------- text I/O


def format_square(L: LatinSquare) -> str:
    lines = [str(L.n)]
    lines.extend(" ".join(str(s) for s in row) for row in L.grid)
    return "\n".join(lines) + "\n"


def parse_square(text: str) -> LatinSquare:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    return _parse_block(lines)


def _parse_block(lines: list[str]) -> LatinSquare:
    if not lines:
        raise ParseError("empty square block")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"first line must be the order, got {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} rows, got {len(body)}")
    grid = []
    for ln in body:
        toks = ln.split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries in row {ln!r}")
        grid.append([int(t) if t.lstrip("-").isdigit() else t for t in toks])
    return from_symbols(grid)


def parse_catalog(text: str) -> list[tuple[str | None, LatinSquare]]:
    """Blocks separated by blank lines, each optionally headed by ``# label``."""
    entries = []
    block: list[str] = []
    label = None

    def flush():
        nonlocal block, label
        if block:
            entries.append((label, _parse_block(block)))
        elif label is not None:
            raise ParseError(f"label {label!r} without a square")
        block, label = [], None

    for raw in text.splitlines():
        ln = raw.strip()
        if not ln:
            flush()
            continue
        if ln.startswith("#"):
            if block:
                flush()
            label = ln[1:].strip() or None
            continue
        block.append(ln)
    flush()
    return entries


def format_catalog(entries: Iterable[tuple[str | None, LatinSquare]]) -> str:
    blocks = []
    for label, L in entries:
        head = f"# {label}\n" if label else ""
        blocks.append(head + format_square(L))
    return "\n".join(blocks)

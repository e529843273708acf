"""The Latin square graph and the ladder structure inside circulants."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import ForeignCell, NotCirculant, StructureViolation
from .squares import LatinSquare, circulant

ROW, COLUMN, SYMBOL = "row", "column", "symbol"


def edge_kind(a, b):
    """Kind of the edge between two cell triples, or None if not adjacent."""
    if a == b:
        return None
    eq = (a[0] == b[0], a[1] == b[1], a[2] == b[2])
    if sum(eq) != 1:
        return None
    return (ROW, COLUMN, SYMBOL)[eq.index(True)]


@dataclass(frozen=True)
class LSGraph:
    """Graph on cells ``r*n + c``; ``nbrs[v]`` is sorted, ``kinds[v]`` parallel to it."""

    owner: LatinSquare
    nbrs: tuple[tuple[int, ...], ...]
    kinds: tuple[tuple[str, ...], ...]

    @property
    def n_vertices(self):
        return len(self.nbrs)

    def degree(self, v):
        return len(self.nbrs[v])

    def edges(self):
        for v, row in enumerate(self.nbrs):
            for u, kind in zip(row, self.kinds[v]):
                if v < u:
                    yield v, u, kind

    def n_edges(self):
        return sum(len(row) for row in self.nbrs) // 2

    def adjacent(self, u, v):
        return edge_kind(self.owner.cell(u), self.owner.cell(v)) is not None

    def adjacency_lists(self):
        return [list(row) for row in self.nbrs]


def build_graph(L: LatinSquare) -> LSGraph:
    n = L.n
    by_row = [[] for _ in range(n)]
    by_col = [[] for _ in range(n)]
    by_sym = [[] for _ in range(n)]
    for r in range(n):
        for c in range(n):
            v = r * n + c
            by_row[r].append(v)
            by_col[c].append(v)
            by_sym[L.grid[r][c]].append(v)
    nbrs, kinds = [], []
    for r in range(n):
        for c in range(n):
            v = r * n + c
            tagged = [(u, ROW) for u in by_row[r] if u != v]
            tagged += [(u, COLUMN) for u in by_col[c] if u != v]
            tagged += [(u, SYMBOL) for u in by_sym[L.grid[r][c]] if u != v]
            tagged.sort()
            nbrs.append(tuple(u for u, _ in tagged))
            kinds.append(tuple(k for _, k in tagged))
    return LSGraph(L, tuple(nbrs), tuple(kinds))


@dataclass(frozen=True)
class Subgraph:
    """Induced subgraph; ``vertices`` are cell indices of the parent graph."""

    parent: LSGraph
    vertices: tuple[int, ...]
    adj: dict = field(hash=False, compare=False)

    def edges(self):
        for v in self.vertices:
            for u, kind in self.adj[v]:
                if v < u:
                    yield v, u, kind

    def degree(self, v):
        return len(self.adj[v])

    def to_json(self):
        L = self.parent.owner
        return {
            "vertices": [list(L.cell(v)) for v in self.vertices],
            "edges": [[list(L.cell(a)), list(L.cell(b)), k] for a, b, k in self.edges()],
        }


def _as_index(L, cell):
    if isinstance(cell, int):
        if not 0 <= cell < L.n * L.n:
            raise ForeignCell(f"no cell with index {cell}")
        return cell
    r, c = cell[0], cell[1]
    if not (0 <= r < L.n and 0 <= c < L.n) or (len(cell) > 2 and L.grid[r][c] != cell[2]):
        raise ForeignCell(f"{tuple(cell)} is not a cell of this square")
    return r * L.n + c


def induced(G: LSGraph, cells) -> Subgraph:
    L = G.owner
    verts = sorted({_as_index(L, x) for x in cells})
    vs = set(verts)
    adj = {}
    for v in verts:
        adj[v] = [(u, k) for u, k in zip(G.nbrs[v], G.kinds[v]) if u in vs]
    return Subgraph(G, tuple(verts), adj)


@dataclass
class BipartiteResult:
    bipartite: bool
    sides: dict | None = None
    odd_cycle: list | None = None

    def __bool__(self):
        return self.bipartite


def is_bipartite(sub: Subgraph) -> BipartiteResult:
    """BFS 2-coloring from the least-index vertex of each component.

    On failure ``odd_cycle`` lists the vertices of an odd closed walk that is
    a simple cycle (found from the two BFS branches meeting at the bad edge).
    """
    side = {}
    parent = {}
    for root in sub.vertices:
        if root in side:
            continue
        side[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u, _ in sub.adj[v]:
                if u not in side:
                    side[u] = 1 - side[v]
                    parent[u] = v
                    queue.append(u)
                elif side[u] == side[v]:
                    return BipartiteResult(False, None, _odd_cycle(parent, v, u))
    return BipartiteResult(True, side)


def _odd_cycle(parent, a, b):
    path_a = [a]
    while parent[path_a[-1]] is not None:
        path_a.append(parent[path_a[-1]])
    pos = {v: i for i, v in enumerate(path_a)}
    path_b = [b]
    while path_b[-1] not in pos:
        path_b.append(parent[path_b[-1]])
    meet = path_b[-1]
    return path_a[: pos[meet] + 1] + path_b[-2::-1]


def two_coloring(sub: Subgraph, colors=(0, 1)):
    res = is_bipartite(sub)
    if not res:
        raise StructureViolation(f"not bipartite: odd cycle {res.odd_cycle}")
    return {v: colors[s] for v, s in res.sides.items()}


# ------------------------------------------------------- circulant structure


def right_diagonal(n: int, i: int):
    i %= n
    return [(r, (r + i) % n, (2 * r + i) % n) for r in range(n)]


def is_circulant(L: LatinSquare) -> bool:
    return L == circulant(L.n)


def _require_circulant(L):
    if not is_circulant(L):
        raise NotCirculant("expected the circulant (r + c mod n) square")


def shift(cell, delta, n):
    return tuple((a + d) % n for a, d in zip(cell, delta))


@dataclass
class MobiusCertificate:
    n: int
    index: int
    rim: list
    rungs: list
    nearly_antipodal: list

    def to_json(self):
        return {
            "n": self.n,
            "i": self.index,
            "rim": [list(x) for x in self.rim],
            "rungs": [[list(a), list(b)] for a, b in self.rungs],
            "nearlyAntipodalPairs": [[list(a), list(b)] for a, b in self.nearly_antipodal],
        }


def mobius_check(L: LatinSquare, i: int, G: LSGraph | None = None) -> MobiusCertificate:
    """Verify the pair of diagonals ``T_i, T_{i+1}`` induces a Möbius ladder of order 2n.

    Checks directly: row and column edges form one Hamiltonian cycle (the
    rim), every symbol edge joins rim-opposite vertices, and there are
    exactly n of them. For even n each ``x`` in ``T_i`` is paired with
    ``x + (m, m+1, 1)`` and ``x + (m-1, m, -1)``, and both are confirmed to
    sit at rim distance n-1 from ``x``.
    """
    _require_circulant(L)
    n = L.n
    if not 0 <= i < n:
        raise ValueError(f"diagonal index {i} out of range")
    if G is None:
        G = build_graph(L)
    cells = right_diagonal(n, i) + right_diagonal(n, i + 1)
    if len({(r, c) for r, c, _ in cells}) != 2 * n:
        raise StructureViolation(f"T_{i} and T_{i + 1} are not disjoint (n={n})")
    sub = induced(G, cells)
    verts = sub.vertices

    rim_adj = {v: [u for u, k in sub.adj[v] if k != SYMBOL] for v in verts}
    rungs = sorted({tuple(sorted((v, u))) for v in verts for u, k in sub.adj[v] if k == SYMBOL})
    for v in verts:
        if len(rim_adj[v]) != 2:
            raise StructureViolation(f"vertex {L.cell(v)} has rim degree {len(rim_adj[v])}")
    order = [verts[0]]
    prev, cur = None, verts[0]
    while True:
        a, b = rim_adj[cur]
        nxt = a if a != prev else b
        if nxt == verts[0]:
            break
        order.append(nxt)
        prev, cur = cur, nxt
        if len(order) > 2 * n:
            break
    if len(order) != 2 * n:
        raise StructureViolation(f"rim is not one Hamiltonian cycle (walked {len(order)})")
    pos = {v: p for p, v in enumerate(order)}
    if len(rungs) != n:
        raise StructureViolation(f"expected {n} rungs, found {len(rungs)}")
    for a, b in rungs:
        d = abs(pos[a] - pos[b])
        if min(d, 2 * n - d) != n:
            raise StructureViolation(f"rung {L.cell(a)}-{L.cell(b)} is not antipodal")
    near = []
    if n % 2 == 0:
        m = n // 2
        for x in right_diagonal(n, i):
            for delta in ((m, m + 1, 1), (m - 1, m, -1)):
                y = shift(x, delta, n)
                va, vb = x[0] * n + x[1], y[0] * n + y[1]
                if vb not in pos:
                    raise StructureViolation(f"{y} is not in T_{i} u T_{i + 1}")
                d = abs(pos[va] - pos[vb])
                if min(d, 2 * n - d) != n - 1:
                    raise StructureViolation(f"{x} and {y} are not nearly antipodal")
                near.append((x, y))
    return MobiusCertificate(
        n,
        i,
        [L.cell(v) for v in order],
        [(L.cell(a), L.cell(b)) for a, b in rungs],
        near,
    )


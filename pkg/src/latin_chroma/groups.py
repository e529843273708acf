"""Finite groups as multiplication tables, and the transversal-related
predicates decidable for small groups."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotLatin,
    OrderTooLarge,
    ParseError,
    Undecidable,
)
from .squares import LatinSquare, format_square, validate
from .errors import LatinError

EQUAL_N = "Equal_n"
AT_LEAST_N_PLUS_2 = "AtLeast_n_plus_2"


@dataclass(frozen=True)
class GroupTable:
    n: int
    mult: tuple
    identity: int
    name: str = ""

    def __call__(self, a, b):
        return self.mult[a][b]

    def inverse(self, a):
        row = self.mult[a]
        return row.index(self.identity)

    def is_abelian(self):
        return all(self.mult[a][b] == self.mult[b][a] for a in range(self.n) for b in range(a))


def validate_group(mult, identity=None, name="") -> GroupTable:
    try:
        sq = validate(mult)
    except LatinError as exc:
        raise NotLatin(str(exc)) from None
    n = sq.n
    g = sq.grid
    ids = [e for e in range(n) if all(g[e][x] == x and g[x][e] == x for x in range(n))]
    if not ids:
        raise NoIdentity("no two-sided identity element")
    e = ids[0]
    if identity is not None and identity != e:
        raise NoIdentity(f"declared identity {identity} is not the identity ({e} is)")
    for a in range(n):
        b = g[a].index(e)
        if g[b][a] != e:
            raise NoInverse(a)
    for a, b, c in itertools.product(range(n), repeat=3):
        if g[g[a][b]][c] != g[a][g[b][c]]:
            raise NotAssociative(a, b, c)
    return GroupTable(n, g, e, name)


def cayley_square(G: GroupTable) -> LatinSquare:
    return validate(G.mult)


# ------------------------------------------------------------ constructors


def cyclic(n: int) -> GroupTable:
    return GroupTable(n, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0, f"z{n}")


def direct_product(G: GroupTable, H: GroupTable) -> GroupTable:
    """Elements (g, h) are numbered g * |H| + h."""
    m = H.n
    size = G.n * m
    table = []
    for x in range(size):
        g1, h1 = divmod(x, m)
        table.append(tuple(G(g1, g2) * m + H(h1, h2) for g2 in range(G.n) for h2 in range(m)))
    name = f"{G.name}x{H.name}" if G.name and H.name else ""
    return GroupTable(size, tuple(table), G.identity * m + H.identity, name)


def dihedral(k: int) -> GroupTable:
    """Symmetries of a k-gon, order 2k; rotation r^i is i, reflection s r^i is k + i."""
    size = 2 * k

    def mul(x, y):
        a, i = divmod(x, k)
        b, j = divmod(y, k)
        # (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j)
        return ((a + b) % 2) * k + ((-i if b else i) + j) % k

    return GroupTable(size, tuple(tuple(mul(x, y) for y in range(size)) for x in range(size)), 0, f"d{k}")


def quaternion() -> GroupTable:
    # elements +-1, +-i, +-j, +-k encoded as sign * 4 + unit
    units = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}

    def mul(x, y):
        sx, ux = divmod(x, 4)
        sy, uy = divmod(y, 4)
        s, u = units[(ux, uy)]
        neg = (sx + sy + (s < 0)) % 2
        return neg * 4 + u

    return GroupTable(8, tuple(tuple(mul(x, y) for y in range(8)) for x in range(8)), 0, "q8")


def group_by_name(name: str) -> GroupTable:
    """``z6``, ``z2xz4``, ``z2xz2xz2``, ``d3``, ``q8``; case-insensitive."""
    parts = name.lower().replace("×", "x").split("x")
    groups = []
    for p in parts:
        if p.startswith("z") and p[1:].isdigit() and int(p[1:]) >= 1:
            groups.append(cyclic(int(p[1:])))
        elif p.startswith("d") and p[1:].isdigit() and int(p[1:]) >= 1:
            groups.append(dihedral(int(p[1:])))
        elif p == "q8":
            groups.append(quaternion())
        else:
            raise ValueError(f"unknown group factor {p!r} in {name!r}")
    out = groups[0]
    for h in groups[1:]:
        out = direct_product(out, h)
    return out


# -------------------------------------------------------------- predicates


def element_orders(G: GroupTable) -> dict:
    orders = {}
    for a in range(G.n):
        x, k = a, 1
        while x != G.identity:
            x = G(x, a)
            k += 1
        orders[a] = k
    return orders


def involutions(G: GroupTable):
    return [a for a, k in element_orders(G).items() if k == 2]


def unique_involution(G: GroupTable) -> bool:
    return len(involutions(G)) == 1


def hall_paige_product(G: GroupTable, max_order=8):
    """Search for an ordering of all elements whose product is the identity.

    Returns ``(True, ordering)`` or ``(False, None)``. Abelian groups need one
    product chain (the order is irrelevant). Otherwise all orderings are
    explored through the (used-set, partial product) states they pass
    through, which covers every enumeration without listing n! of them.
    """
    n = G.n
    if G.is_abelian():
        acc = G.identity
        for a in range(n):
            acc = G(acc, a)
        return (acc == G.identity), (list(range(n)) if acc == G.identity else None)
    if n > max_order:
        raise OrderTooLarge(f"order {n} exceeds the search limit {max_order}")
    # layer[mask] = {product: (previous product, last element)}
    layers = [{0: {G.identity: None}}]
    for _ in range(n):
        nxt = {}
        for mask, prods in layers[-1].items():
            for p in prods:
                for a in range(n):
                    if mask >> a & 1:
                        continue
                    m2 = mask | (1 << a)
                    q = G(p, a)
                    slot = nxt.setdefault(m2, {})
                    if q not in slot:
                        slot[q] = (p, a)
        layers.append(nxt)
    full = (1 << n) - 1
    if G.identity not in layers[n].get(full, {}):
        return False, None
    order = []
    mask, p = full, G.identity
    for depth in range(n, 0, -1):
        prev, a = layers[depth][mask][p]
        order.append(a)
        mask &= ~(1 << a)
        p = prev
    order.reverse()
    return True, order


def predict_chi_class(G: GroupTable, max_order=8) -> str:
    if G.is_abelian():
        return AT_LEAST_N_PLUS_2 if unique_involution(G) else EQUAL_N
    if G.n > max_order:
        raise Undecidable(f"non-abelian group of order {G.n} above the search limit")
    ok, _ = hall_paige_product(G, max_order)
    return EQUAL_N if ok else AT_LEAST_N_PLUS_2


# ------------------------------------------------------------------- files


def format_group(G: GroupTable) -> str:
    body = format_square(validate(G.mult)).split("\n", 1)[1]
    return f"{G.n} {G.identity}\n{body}"


def parse_group(text: str) -> GroupTable:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty group file")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise ParseError("group header must be 'n identity'")
    n, e = int(head[0]), int(head[1])
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} table rows, got {len(rows)}")
    try:
        table = [[int(t) for t in ln.split()] for ln in rows]
    except ValueError:
        raise ParseError("table entries must be integers") from None
    return validate_group(table, e)

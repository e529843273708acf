"""Pure-Python search kernels.

Same algorithms, branching order and node accounting as ``_ckernels.pyx``;
the two must stay result-identical (tests compare them directly).
"""
import time

FOUND = 1
EXHAUSTED = 0
OUT_OF_BUDGET = -1

_CHECK_EVERY = 1 << 14


class _Stop(Exception):
    pass


def kcolor(nbrs, k, init, node_limit=0, deadline=0.0):
    """Exhaustive DSATUR k-colorability search.

    ``nbrs`` is a list of neighbour lists, ``init`` a list of pre-assigned
    colors (-1 for free vertices). Returns ``(status, colors, nodes)``.
    Vertex choice: max saturation, then max degree into uncolored vertices,
    then least index. Colors are tried ascending, and at most one color
    beyond the largest one in use is opened (kills color permutations).
    """
    nv = len(nbrs)
    colors = list(init)
    counts = [[0] * k for _ in range(nv)]
    sat = [0] * nv
    udeg = [0] * nv
    for v in range(nv):
        udeg[v] = sum(1 for u in nbrs[v] if colors[u] < 0)
    maxc = -1
    ncolored = 0
    for v in range(nv):
        c = colors[v]
        if c < 0:
            continue
        if c >= k:
            return EXHAUSTED, None, 0
        ncolored += 1
        maxc = max(maxc, c)
        for u in nbrs[v]:
            if colors[u] == c:
                return EXHAUSTED, None, 0
            if counts[u][c] == 0:
                sat[u] += 1
            counts[u][c] += 1
    nodes = [0]
    if deadline and time.monotonic() >= deadline:
        return OUT_OF_BUDGET, None, 0

    def assign(v, c):
        colors[v] = c
        for u in nbrs[v]:
            cu = counts[u]
            if cu[c] == 0:
                sat[u] += 1
            cu[c] += 1
            if colors[u] < 0:
                udeg[u] -= 1

    def unassign(v, c):
        colors[v] = -1
        for u in nbrs[v]:
            cu = counts[u]
            cu[c] -= 1
            if cu[c] == 0:
                sat[u] -= 1
            if colors[u] < 0:
                udeg[u] += 1

    def search(ncolored, maxc):
        if ncolored == nv:
            return True
        nodes[0] += 1
        if node_limit and nodes[0] > node_limit:
            raise _Stop
        if deadline and nodes[0] % _CHECK_EVERY == 0 and time.monotonic() >= deadline:
            raise _Stop
        best = -1
        bs = bd = -1
        for v in range(nv):
            if colors[v] >= 0:
                continue
            s = sat[v]
            if s > bs or (s == bs and udeg[v] > bd):
                best, bs, bd = v, s, udeg[v]
        if bs >= k:
            return False
        cv = counts[best]
        top = min(k - 1, maxc + 1)
        for c in range(top + 1):
            if cv[c]:
                continue
            assign(best, c)
            if search(ncolored + 1, max(maxc, c)):
                return True
            unassign(best, c)
        return False

    try:
        ok = search(ncolored, maxc)
    except _Stop:
        return OUT_OF_BUDGET, None, nodes[0]
    if ok:
        return FOUND, colors, nodes[0]
    return EXHAUSTED, None, nodes[0]


def transversals(grid, limit=0, collect=True):
    """Row-by-row transversal enumeration.

    Columns are tried ascending. Each transversal is reported as the tuple
    of chosen columns indexed by row. Stops after ``limit`` hits if nonzero.
    Returns ``(count, found)``.
    """
    n = len(grid)
    found = []
    cols = [0] * n
    used_c = [False] * n
    used_s = [False] * n
    count = 0

    def rec(r):
        nonlocal count
        if r == n:
            count += 1
            if collect:
                found.append(tuple(cols))
            if limit and count >= limit:
                raise _Stop
            return
        row = grid[r]
        for c in range(n):
            if used_c[c]:
                continue
            s = row[c]
            if used_s[s]:
                continue
            used_c[c] = used_s[s] = True
            cols[r] = c
            rec(r + 1)
            used_c[c] = used_s[s] = False

    try:
        rec(0)
    except _Stop:
        pass
    return count, found


def max_partial_transversal(grid, deadline=0.0):
    """Branch and bound for the longest partial transversal.

    Rows are visited in order; for each row the cells are tried by ascending
    column before the option of skipping the row. Returns
    ``(length, cells, complete)`` where ``cells`` is a list of ``(r, c)``.
    """
    n = len(grid)
    used_c = [False] * n
    used_s = [False] * n
    cur = []
    best = []
    nodes = 0
    timed_out = False

    def rec(r):
        nonlocal best, nodes, timed_out
        nodes += 1
        if deadline and nodes % _CHECK_EVERY == 0 and time.monotonic() >= deadline:
            timed_out = True
            raise _Stop
        if len(cur) + (n - r) <= len(best):
            return
        if r == n:
            best = list(cur)
            if len(best) == n:
                raise _Stop
            return
        row = grid[r]
        for c in range(n):
            if used_c[c]:
                continue
            s = row[c]
            if used_s[s]:
                continue
            used_c[c] = used_s[s] = True
            cur.append((r, c))
            rec(r + 1)
            cur.pop()
            used_c[c] = used_s[s] = False
        rec(r + 1)

    try:
        if n:
            rec(0)
    except _Stop:
        pass
    return len(best), best, not timed_out


def tabucol(nbrs, k, init, max_iter=100000, deadline=0.0):
    """Tabu search for a conflict-free k-coloring from ``init``.

    Moves recolor a conflicting vertex; the best non-tabu move is taken
    (first in vertex/color order on ties), tabu moves only when they beat
    the best conflict count so far. Tenure is 0.6*conflicts + iter % 10.
    Returns ``(found, colors, iterations)``.
    """
    nv = len(nbrs)
    col = list(init)
    gamma = [[0] * k for _ in range(nv)]
    for v in range(nv):
        for u in nbrs[v]:
            gamma[v][col[u]] += 1
    conflicts = sum(gamma[v][col[v]] for v in range(nv)) // 2
    best_conf = conflicts
    tabu = [[0] * k for _ in range(nv)]
    it = 0
    while conflicts and it < max_iter:
        it += 1
        if deadline and it % 1024 == 0 and time.monotonic() >= deadline:
            break
        bv = bc = -1
        bd = None
        for v in range(nv):
            cv = col[v]
            gv = gamma[v]
            if gv[cv] == 0:
                continue
            base = gv[cv]
            for c in range(k):
                if c == cv:
                    continue
                d = gv[c] - base
                if tabu[v][c] > it and conflicts + d >= best_conf:
                    continue
                if bd is None or d < bd:
                    bv, bc, bd = v, c, d
        if bd is None:
            continue
        old = col[bv]
        col[bv] = bc
        for u in nbrs[bv]:
            gamma[u][old] -= 1
            gamma[u][bc] += 1
        conflicts += bd
        tabu[bv][old] = it + int(0.6 * conflicts) + it % 10
        if conflicts < best_conf:
            best_conf = conflicts
    return (conflicts == 0), (col if conflicts == 0 else None), it

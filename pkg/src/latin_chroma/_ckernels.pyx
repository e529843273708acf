# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; mirror of ``_pykernels`` (same results, same node counts)."""
from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport int64_t
import time

DEF CHECK_MASK = 16383

cdef struct KState:
    int nv
    int k
    int *off
    int *adj
    int *colors
    int *counts
    int *sat
    int *udeg
    int64_t nodes
    int64_t node_limit
    double deadline
    int stop


cdef inline void _assign(KState *st, int v, int c):
    cdef int i, u
    st.colors[v] = c
    for i in range(st.off[v], st.off[v + 1]):
        u = st.adj[i]
        if st.counts[u * st.k + c] == 0:
            st.sat[u] += 1
        st.counts[u * st.k + c] += 1
        if st.colors[u] < 0:
            st.udeg[u] -= 1


cdef inline void _unassign(KState *st, int v, int c):
    cdef int i, u
    st.colors[v] = -1
    for i in range(st.off[v], st.off[v + 1]):
        u = st.adj[i]
        st.counts[u * st.k + c] -= 1
        if st.counts[u * st.k + c] == 0:
            st.sat[u] -= 1
        if st.colors[u] < 0:
            st.udeg[u] += 1


cdef int _ksearch(KState *st, int ncolored, int maxc):
    cdef int v, best, bs, bd, s, c, top, nm
    if ncolored == st.nv:
        return 1
    st.nodes += 1
    if st.node_limit and st.nodes > st.node_limit:
        st.stop = 1
        return 0
    if st.deadline > 0 and (st.nodes & CHECK_MASK) == 0:
        if time.monotonic() >= st.deadline:
            st.stop = 1
            return 0
    best = -1
    bs = -1
    bd = -1
    for v in range(st.nv):
        if st.colors[v] >= 0:
            continue
        s = st.sat[v]
        if s > bs or (s == bs and st.udeg[v] > bd):
            best = v
            bs = s
            bd = st.udeg[v]
    if bs >= st.k:
        return 0
    top = maxc + 1
    if top > st.k - 1:
        top = st.k - 1
    for c in range(top + 1):
        if st.counts[best * st.k + c]:
            continue
        _assign(st, best, c)
        nm = maxc if maxc > c else c
        if _ksearch(st, ncolored + 1, nm):
            return 1
        _unassign(st, best, c)
        if st.stop:
            return 0
    return 0


def kcolor(nbrs, int k, init, node_limit=0, double deadline=0.0):
    cdef int nv = len(nbrs)
    cdef int total = 0
    cdef int v, u, c, i, maxc = -1, ncolored = 0, ok
    cdef KState st
    for v in range(nv):
        total += len(nbrs[v])
    st.nv = nv
    st.k = k
    st.off = <int *> malloc((nv + 1) * sizeof(int))
    st.adj = <int *> malloc((total + 1) * sizeof(int))
    st.colors = <int *> malloc((nv + 1) * sizeof(int))
    st.counts = <int *> calloc(nv * k + 1, sizeof(int))
    st.sat = <int *> calloc(nv + 1, sizeof(int))
    st.udeg = <int *> calloc(nv + 1, sizeof(int))
    st.nodes = 0
    st.node_limit = node_limit
    st.deadline = deadline
    st.stop = 0
    try:
        i = 0
        for v in range(nv):
            st.off[v] = i
            st.colors[v] = init[v]
            for u in nbrs[v]:
                st.adj[i] = u
                i += 1
        st.off[nv] = i
        for v in range(nv):
            for i in range(st.off[v], st.off[v + 1]):
                if st.colors[st.adj[i]] < 0:
                    st.udeg[v] += 1
        for v in range(nv):
            c = st.colors[v]
            if c < 0:
                continue
            if c >= k:
                return 0, None, 0
            ncolored += 1
            if c > maxc:
                maxc = c
            for i in range(st.off[v], st.off[v + 1]):
                u = st.adj[i]
                if st.colors[u] == c:
                    return 0, None, 0
                if st.counts[u * k + c] == 0:
                    st.sat[u] += 1
                st.counts[u * k + c] += 1
        if deadline > 0 and time.monotonic() >= deadline:
            return -1, None, 0
        ok = _ksearch(&st, ncolored, maxc)
        if st.stop:
            return -1, None, st.nodes
        if ok:
            return 1, [st.colors[v] for v in range(nv)], st.nodes
        return 0, None, st.nodes
    finally:
        free(st.off)
        free(st.adj)
        free(st.colors)
        free(st.counts)
        free(st.sat)
        free(st.udeg)


cdef struct TState:
    int n
    int *grid
    int *cols
    char *used_c
    char *used_s
    int64_t count
    int64_t limit
    int stop


cdef void _trec(TState *st, int r, list found):
    cdef int c, s
    if r == st.n:
        st.count += 1
        if found is not None:
            found.append(tuple([st.cols[i] for i in range(st.n)]))
        if st.limit and st.count >= st.limit:
            st.stop = 1
        return
    for c in range(st.n):
        if st.used_c[c]:
            continue
        s = st.grid[r * st.n + c]
        if st.used_s[s]:
            continue
        st.used_c[c] = 1
        st.used_s[s] = 1
        st.cols[r] = c
        _trec(st, r + 1, found)
        st.used_c[c] = 0
        st.used_s[s] = 0
        if st.stop:
            return


def transversals(grid, limit=0, collect=True):
    cdef int n = len(grid)
    cdef int r, c
    cdef TState st
    cdef list found = [] if collect else None
    st.n = n
    st.grid = <int *> malloc((n * n + 1) * sizeof(int))
    st.cols = <int *> malloc((n + 1) * sizeof(int))
    st.used_c = <char *> calloc(n + 1, 1)
    st.used_s = <char *> calloc(n + 1, 1)
    st.count = 0
    st.limit = limit
    st.stop = 0
    try:
        for r in range(n):
            for c in range(n):
                st.grid[r * n + c] = grid[r][c]
        _trec(&st, 0, found)
        return st.count, (found if collect else [])
    finally:
        free(st.grid)
        free(st.cols)
        free(st.used_c)
        free(st.used_s)


cdef struct PState:
    int n
    int *grid
    char *used_c
    char *used_s
    int *cur_r
    int *cur_c
    int ncur
    int *best_r
    int *best_c
    int nbest
    int64_t nodes
    double deadline
    int stop
    int timed_out


cdef void _prec(PState *st, int r):
    cdef int c, s, i
    st.nodes += 1
    if st.deadline > 0 and (st.nodes & CHECK_MASK) == 0:
        if time.monotonic() >= st.deadline:
            st.timed_out = 1
            st.stop = 1
            return
    if st.ncur + (st.n - r) <= st.nbest:
        return
    if r == st.n:
        for i in range(st.ncur):
            st.best_r[i] = st.cur_r[i]
            st.best_c[i] = st.cur_c[i]
        st.nbest = st.ncur
        if st.nbest == st.n:
            st.stop = 1
        return
    for c in range(st.n):
        if st.used_c[c]:
            continue
        s = st.grid[r * st.n + c]
        if st.used_s[s]:
            continue
        st.used_c[c] = 1
        st.used_s[s] = 1
        st.cur_r[st.ncur] = r
        st.cur_c[st.ncur] = c
        st.ncur += 1
        _prec(st, r + 1)
        st.ncur -= 1
        st.used_c[c] = 0
        st.used_s[s] = 0
        if st.stop:
            return
    _prec(st, r + 1)


def max_partial_transversal(grid, double deadline=0.0):
    cdef int n = len(grid)
    cdef int r, c, i
    cdef PState st
    st.n = n
    st.grid = <int *> malloc((n * n + 1) * sizeof(int))
    st.used_c = <char *> calloc(n + 1, 1)
    st.used_s = <char *> calloc(n + 1, 1)
    st.cur_r = <int *> malloc((n + 1) * sizeof(int))
    st.cur_c = <int *> malloc((n + 1) * sizeof(int))
    st.best_r = <int *> malloc((n + 1) * sizeof(int))
    st.best_c = <int *> malloc((n + 1) * sizeof(int))
    st.ncur = 0
    st.nbest = 0
    st.nodes = 0
    st.deadline = deadline
    st.stop = 0
    st.timed_out = 0
    try:
        for r in range(n):
            for c in range(n):
                st.grid[r * n + c] = grid[r][c]
        if n:
            _prec(&st, 0)
        cells = [(st.best_r[i], st.best_c[i]) for i in range(st.nbest)]
        return st.nbest, cells, not st.timed_out
    finally:
        free(st.grid)
        free(st.used_c)
        free(st.used_s)
        free(st.cur_r)
        free(st.cur_c)
        free(st.best_r)
        free(st.best_c)


def tabucol(nbrs, int k, init, int max_iter=100000, double deadline=0.0):
    cdef int nv = len(nbrs)
    cdef int total = 0, i, v, u, c, cv, base, d, bv, bc, bd, have, old
    cdef int conflicts = 0, best_conf, it = 0
    for v in range(nv):
        total += len(nbrs[v])
    cdef int *off = <int *> malloc((nv + 1) * sizeof(int))
    cdef int *adj = <int *> malloc((total + 1) * sizeof(int))
    cdef int *col = <int *> malloc((nv + 1) * sizeof(int))
    cdef int *gamma = <int *> calloc(nv * k + 1, sizeof(int))
    cdef int *tabu = <int *> calloc(nv * k + 1, sizeof(int))
    try:
        i = 0
        for v in range(nv):
            off[v] = i
            col[v] = init[v]
            for u in nbrs[v]:
                adj[i] = u
                i += 1
        off[nv] = i
        for v in range(nv):
            for i in range(off[v], off[v + 1]):
                gamma[v * k + col[adj[i]]] += 1
        for v in range(nv):
            conflicts += gamma[v * k + col[v]]
        conflicts //= 2
        best_conf = conflicts
        while conflicts and it < max_iter:
            it += 1
            if deadline > 0 and it % 1024 == 0:
                if time.monotonic() >= deadline:
                    break
            have = 0
            bv = -1
            bc = -1
            bd = 0
            for v in range(nv):
                cv = col[v]
                base = gamma[v * k + cv]
                if base == 0:
                    continue
                for c in range(k):
                    if c == cv:
                        continue
                    d = gamma[v * k + c] - base
                    if tabu[v * k + c] > it and conflicts + d >= best_conf:
                        continue
                    if not have or d < bd:
                        have = 1
                        bv = v
                        bc = c
                        bd = d
            if not have:
                continue
            old = col[bv]
            col[bv] = bc
            for i in range(off[bv], off[bv + 1]):
                u = adj[i]
                gamma[u * k + old] -= 1
                gamma[u * k + bc] += 1
            conflicts += bd
            tabu[bv * k + old] = it + <int> (0.6 * conflicts) + it % 10
            if conflicts < best_conf:
                best_conf = conflicts
        if conflicts == 0:
            return True, [col[v] for v in range(nv)], it
        return False, None, it
    finally:
        free(off)
        free(adj)
        free(col)
        free(gamma)
        free(tabu)

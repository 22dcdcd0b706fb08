# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``; same contracts, same output order."""

from libc.stdlib cimport malloc, calloc, free


cdef struct Ctx:
    const int* add
    const int* neg
    int order
    int k
    int* elems
    int* pos
    char* mark
    int* reach
    int nreach
    int* mult
    int max_len
    int saturated
    int best
    int* best_mult


cdef class _Buffers:
    cdef Ctx c
    cdef object _refs

    def __cinit__(self, const int[::1] add, const int[::1] neg, int order, elems, int max_len):
        cdef int i
        cdef int k = len(elems)
        self._refs = (add, neg)
        self.c.add = &add[0]
        self.c.neg = &neg[0]
        self.c.order = order
        self.c.k = k
        self.c.max_len = max_len
        self.c.saturated = 0
        self.c.best = 0
        self.c.nreach = 0
        self.c.elems = <int*>malloc((k + 1) * sizeof(int))
        self.c.mult = <int*>calloc(k + 1, sizeof(int))
        self.c.best_mult = <int*>calloc(k + 1, sizeof(int))
        self.c.pos = <int*>malloc(order * sizeof(int))
        self.c.mark = <char*>calloc(order, sizeof(char))
        self.c.reach = <int*>malloc((order + 1) * sizeof(int))
        if (self.c.elems == NULL or self.c.mult == NULL or self.c.pos == NULL or self.c.mark == NULL
                or self.c.reach == NULL or self.c.best_mult == NULL):
            raise MemoryError()
        for i in range(order):
            self.c.pos[i] = -1
        for i in range(k):
            self.c.elems[i] = elems[i]
            self.c.pos[<int>elems[i]] = i

    def __dealloc__(self):
        free(self.c.elems)
        free(self.c.mult)
        free(self.c.best_mult)
        free(self.c.pos)
        free(self.c.mark)
        free(self.c.reach)


cdef inline int _push(Ctx* c, int g) noexcept nogil:
    """Extend Sigma by g; return the old stack height."""
    cdef int base = c.nreach
    cdef int t, s
    if not c.mark[g]:
        c.mark[g] = 1
        c.reach[c.nreach] = g
        c.nreach += 1
    for t in range(base):
        s = c.add[c.reach[t] * c.order + g]
        if not c.mark[s]:
            c.mark[s] = 1
            c.reach[c.nreach] = s
            c.nreach += 1
    return base


cdef inline void _pop(Ctx* c, int base) noexcept nogil:
    while c.nreach > base:
        c.nreach -= 1
        c.mark[c.reach[c.nreach]] = 0


cdef int _atoms_visit(Ctx* c, int start, int length, int total, list out) except -1:
    cdef int i, g, base
    cdef int j = c.pos[c.neg[total]]
    if j >= start and length < c.max_len:
        c.mult[j] += 1
        out.append(tuple([c.mult[i] for i in range(c.k)]))
        c.mult[j] -= 1
    if length >= c.max_len:
        c.saturated = 1
        return 0
    for i in range(start, c.k):
        g = c.elems[i]
        if g == 0 or c.mark[c.neg[g]]:
            continue
        base = _push(c, g)
        c.mult[i] += 1
        _atoms_visit(c, i, length + 1, c.add[total * c.order + g], out)
        c.mult[i] -= 1
        _pop(c, base)
    return 0


cdef void _longest_visit(Ctx* c, int start, int length) noexcept nogil:
    cdef int i, g, base
    if length > c.best:
        c.best = length
        for i in range(c.k):
            c.best_mult[i] = c.mult[i]
    if length >= c.max_len:
        c.saturated = 1
        return
    for i in range(start, c.k):
        g = c.elems[i]
        if g == 0 or c.mark[c.neg[g]]:
            continue
        base = _push(c, g)
        c.mult[i] += 1
        _longest_visit(c, i, length + 1)
        c.mult[i] -= 1
        _pop(c, base)


def zsf_atoms(add, neg, int order, elems, int max_len):
    cdef _Buffers buf = _Buffers(add, neg, order, list(elems), max_len)
    cdef list out = []
    _atoms_visit(&buf.c, 0, 0, 0, out)
    return out, bool(buf.c.saturated)


def longest_zsf(add, neg, int order, elems, int limit):
    cdef _Buffers buf = _Buffers(add, neg, order, list(elems), limit)
    cdef int i
    with nogil:
        _longest_visit(&buf.c, 0, 0)
    return buf.c.best, tuple([buf.c.best_mult[i] for i in range(buf.c.k)]), bool(buf.c.saturated)


def bfs_distances(const int[::1] add, int order, steps):
    cdef int n = len(steps)
    cdef int* st = <int*>malloc((n + 1) * sizeof(int))
    cdef int* dist = <int*>malloc(order * sizeof(int))
    cdef int* queue = <int*>malloc(order * sizeof(int))
    cdef int head = 0, tail = 0, i, x, y, d
    if st == NULL or dist == NULL or queue == NULL:
        free(st); free(dist); free(queue)
        raise MemoryError()
    for i in range(n):
        st[i] = steps[i]
    for i in range(order):
        dist[i] = -1
    dist[0] = 0
    queue[tail] = 0
    tail += 1
    with nogil:
        while head < tail:
            x = queue[head]
            head += 1
            d = dist[x] + 1
            for i in range(n):
                y = add[x * order + st[i]]
                if dist[y] < 0:
                    dist[y] = d
                    queue[tail] = y
                    tail += 1
    result = [dist[i] for i in range(order)]
    free(st); free(dist); free(queue)
    return result

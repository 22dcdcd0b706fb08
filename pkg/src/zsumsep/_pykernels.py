"""Pure-Python search kernels; the reference the compiled twin must match.

All kernels work on mixed-radix element indices.  ``add`` is the flat
``order * order`` addition table and ``neg`` the negation table.
"""

from collections import deque


def zsf_atoms(add, neg, order, elems, max_len):
    """Atoms of length <= max_len over ``elems`` as multiplicity tuples.

    Walks zero-sum free sequences S in multiset order, keeping Sigma(S) as a
    marked stack.  Each atom A is emitted once, as S*g where g is the term of
    A with the largest support position.  ``saturated`` reports whether some
    zero-sum free S of length max_len exists, i.e. whether longer atoms may
    lie beyond the bound.
    """
    k = len(elems)
    pos = [-1] * order
    for i, e in enumerate(elems):
        pos[e] = i
    mark = bytearray(order)
    reach = []
    mult = [0] * k
    atoms = []
    saturated = False

    def visit(start, length, total):
        nonlocal saturated
        j = pos[neg[total]]
        if j >= start and length < max_len:
            mult[j] += 1
            atoms.append(tuple(mult))
            mult[j] -= 1
        if length >= max_len:
            saturated = True
            return
        for i in range(start, k):
            g = elems[i]
            if g == 0 or mark[neg[g]]:
                continue
            base = len(reach)
            if not mark[g]:
                mark[g] = 1
                reach.append(g)
            for t in range(base):
                s = add[reach[t] * order + g]
                if not mark[s]:
                    mark[s] = 1
                    reach.append(s)
            mult[i] += 1
            visit(i, length + 1, add[total * order + g])
            mult[i] -= 1
            while len(reach) > base:
                mark[reach.pop()] = 0

    visit(0, 0, 0)
    return atoms, saturated


def longest_zsf(add, neg, order, elems, limit):
    """Longest zero-sum free multiset over ``elems`` (first found in DFS order).

    Returns ``(length, mult, saturated)``; ``saturated`` means the search hit
    ``limit`` and stopped descending.
    """
    k = len(elems)
    mark = bytearray(order)
    reach = []
    mult = [0] * k
    best = [0, tuple(mult)]
    saturated = False

    def visit(start, length):
        nonlocal saturated
        if length > best[0]:
            best[0] = length
            best[1] = tuple(mult)
        if length >= limit:
            saturated = True
            return
        for i in range(start, k):
            g = elems[i]
            if g == 0 or mark[neg[g]]:
                continue
            base = len(reach)
            if not mark[g]:
                mark[g] = 1
                reach.append(g)
            for t in range(base):
                s = add[reach[t] * order + g]
                if not mark[s]:
                    mark[s] = 1
                    reach.append(s)
            mult[i] += 1
            visit(i, length + 1)
            mult[i] -= 1
            while len(reach) > base:
                mark[reach.pop()] = 0

    visit(0, 0)
    return best[0], best[1], saturated


def bfs_distances(add, order, steps):
    """Directed Cayley-graph distances from 0; -1 marks unreachable."""
    dist = [-1] * order
    dist[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        row = x * order
        d = dist[x] + 1
        for a in steps:
            y = add[row + a]
            if dist[y] < 0:
                dist[y] = d
                queue.append(y)
    return dist

"""Exact integer lattices: Hermite and Smith normal forms, kernels, membership.

Everything is plain Python ``int`` arithmetic, so there is no overflow to
guard against.  Lattices are always stored in one canonical row-style HNF:
pivot columns strictly increase, pivots are positive and every entry above a
pivot lies in ``[0, pivot)``.  Equality of lattices is equality of bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .errors import DimensionMismatch, GroupMismatch

Vector = tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``x*a + y*b = g``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class IntLattice:
    dim: int
    basis: tuple[Vector, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(row) if x) for row in self.basis]

    def contains(self, v: Sequence[int]) -> bool:
        return lattice_contains(self, v)

    def index(self) -> int | None:
        """``[Z^dim : L]`` for full-rank lattices, else ``None``."""
        if self.rank != self.dim:
            return None
        return prod(row[i] for i, row in enumerate(self.basis))

    def issubset(self, other: "IntLattice") -> bool:
        return all(other.contains(row) for row in self.basis)

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": [list(r) for r in self.basis]}


class LatticeBuilder:
    """Mutable echelon basis that accepts generators one at a time."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: dict[int, list[int]] = {}

    def add(self, v: Sequence[int]) -> bool:
        """Insert ``v``; return True when the lattice grew."""
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in dimension {self.dim}")
        v = list(v)
        rows = self._rows
        grew = False
        for c in range(self.dim):
            b = v[c]
            if b == 0:
                continue
            row = rows.get(c)
            if row is None:
                if b < 0:
                    v = [-x for x in v]
                rows[c] = v
                self._reduce()
                return True
            a = row[c]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
                continue
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            rows[c] = [x * r + y * w for r, w in zip(row, v)]
            v = [ag * w - bg * r for r, w in zip(row, v)]
            grew = True
        if grew:
            self._reduce()
        return grew

    def _reduce(self) -> None:
        cols = sorted(self._rows)
        for i, c in enumerate(cols):
            p = self._rows[c][c]
            for c2 in cols[:i]:
                above = self._rows[c2]
                q = above[c] // p
                if q:
                    self._rows[c2] = [x - q * y for x, y in zip(above, self._rows[c])]

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in dimension {self.dim}")
        return _contains(self._rows, v)

    def freeze(self) -> IntLattice:
        return IntLattice(self.dim, tuple(tuple(self._rows[c]) for c in sorted(self._rows)))


def _contains(rows: dict[int, Sequence[int]], v: Sequence[int]) -> bool:
    v = list(v)
    for c in range(len(v)):
        b = v[c]
        if b == 0:
            continue
        row = rows.get(c)
        if row is None or b % row[c]:
            return False
        q = b // row[c]
        v = [x - q * y for x, y in zip(v, row)]
    return True


def _infer_dim(rows: Sequence[Sequence[int]], dim: int | None) -> int:
    if dim is None:
        if not rows:
            raise DimensionMismatch("dimension required for an empty generator list")
        dim = len(rows[0])
    for r in rows:
        if len(r) != dim:
            raise DimensionMismatch(f"row {tuple(r)} does not have dimension {dim}")
    return dim


def hnf(M: Sequence[Sequence[int]], dim: int | None = None) -> IntLattice:
    """Canonical HNF basis of the row lattice of ``M``."""
    M = [list(r) for r in M]
    b = LatticeBuilder(_infer_dim(M, dim))
    for r in M:
        b.add(r)
    return b.freeze()


def sublattice_from_generators(vectors: Iterable[Sequence[int]], dim: int | None = None) -> IntLattice:
    return hnf(list(vectors), dim)


def zero_lattice(dim: int) -> IntLattice:
    return IntLattice(dim, ())


def full_lattice(dim: int) -> IntLattice:
    return IntLattice(dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))


def lattice_contains(L: IntLattice, v: Sequence[int]) -> bool:
    if len(v) != L.dim:
        raise DimensionMismatch(f"vector of length {len(v)} against lattice in dimension {L.dim}")
    return _contains({next(i for i, x in enumerate(r) if x): r for r in L.basis}, v)


def lattice_equal(L1: IntLattice, L2: IntLattice) -> bool:
    if L1.dim != L2.dim:
        raise DimensionMismatch(f"{L1.dim} vs {L2.dim}")
    return L1.basis == L2.basis


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def snf(M: Sequence[Sequence[int]]):
    """Smith normal form.

    Returns ``(diag, U, V)`` with ``U @ M @ V`` diagonal, the diagonal entries
    nonnegative and forming a divisibility chain (zeros last), and ``U``, ``V``
    unimodular.  ``diag`` has ``min(rows, cols)`` entries.
    """
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    diag = [A[i][i] for i in range(min(m, n))]
    return diag, U, V


def relation_lattice(H, elems) -> IntLattice:
    """Kernel ``{u in Z^k : sum u_i a_i = 0 in H}`` via SNF of ``[A | diag(n)]``."""
    k = len(elems)
    r = H.rank
    for a in elems:
        if a.group != H:
            raise GroupMismatch(f"element of {a.group} used in {H}")
    if r == 0:
        return full_lattice(k)
    M = [[a.residues[i] for a in elems] + [H.factors[i] * int(i == j) for j in range(r)] for i in range(r)]
    diag, _, V = snf(M)
    rank = sum(1 for d in diag if d)
    kernel = [[V[row][col] for row in range(k)] for col in range(rank, k + r)]
    return hnf(kernel, k)

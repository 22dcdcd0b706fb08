"""Finite abelian groups in invariant-factor form.

A group is stored as its invariant-factor chain ``n1 | n2 | ... | nr`` and
elements as residue tuples in that coordinate order.  Internally the hot
paths work on the mixed-radix index of an element (first coordinate most
significant), which makes integer order coincide with lexicographic order
on residue tuples.
"""

from __future__ import annotations

import re
from array import array
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product
from math import gcd, lcm, prod
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, GroupMismatch, ParseError

DEFAULT_MAX_ORDER = 4096


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError(f"no prime factor for {n}")
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Canonical chain of ``C_{m1} + C_{m2} + ...`` by prime-power regrouping."""
    by_prime: dict[int, list[int]] = {}
    for m in orders:
        if m < 1:
            raise ValueError(f"cyclic order must be >= 1, got {m}")
        for p, e in factorize(m).items():
            by_prime.setdefault(p, []).append(p**e)
    if not by_prime:
        return ()
    rank = max(len(v) for v in by_prime.values())
    chain = [1] * rank
    for powers in by_prime.values():
        powers.sort()
        # largest prime powers go to the last factors
        for i, q in enumerate(reversed(powers)):
            chain[rank - 1 - i] *= q
    return tuple(chain)


@dataclass(frozen=True)
class AbelianGroup:
    factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(int(x) for x in self.factors)
        object.__setattr__(self, "factors", f)
        for a in f:
            if a < 2:
                raise ValueError(f"invariant factors must be >= 2: {f}")
        for a, b in zip(f, f[1:]):
            if b % a:
                raise ValueError(f"not a divisibility chain: {f}")

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "AbelianGroup":
        return cls(invariant_factors(orders))

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    def is_trivial(self) -> bool:
        return not self.factors

    # Derived symbols of the closed-form formulas.  ``s`` is floor((r+1)/2).
    @property
    def s(self) -> int:
        return (self.rank + 1) // 2

    @property
    def n_s(self) -> int | None:
        return self.factors[self.s - 1] if self.factors else None

    @property
    def p1(self) -> int | None:
        return smallest_prime_factor(self.factors[0]) if self.factors else None

    @property
    def tail_sum(self) -> int:
        """Sum of the factors strictly after position s (often written T)."""
        return sum(self.factors[self.s:])

    @property
    def helly_dimension(self) -> int:
        return self.rank + 1

    def __str__(self) -> str:
        return render_group(self)

    def elem(self, *residues) -> "GroupElement":
        if len(residues) == 1 and isinstance(residues[0], (tuple, list)):
            residues = tuple(residues[0])
        return GroupElement.of(self, residues)

    def from_index(self, idx: int) -> "GroupElement":
        return GroupElement(self, _tables(self.factors).decode[idx])

    def index(self, residues: Sequence[int]) -> int:
        return _encode(self.factors, tuple(residues))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)


@dataclass(frozen=True, order=True)
class GroupElement:
    group: AbelianGroup
    residues: tuple[int, ...]

    @classmethod
    def of(cls, group: AbelianGroup, residues: Iterable[int]) -> "GroupElement":
        res = tuple(residues)
        if len(res) != group.rank:
            raise ValueError(f"element {res} has wrong length for {group}")
        return cls(group, tuple(x % n for x, n in zip(res, group.factors)))

    @property
    def index(self) -> int:
        return _encode(self.group.factors, self.residues)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return add(self, other)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return add(self, neg(other))

    def __neg__(self) -> "GroupElement":
        return neg(self)

    def __rmul__(self, c: int) -> "GroupElement":
        return scalar_mul(c, self)

    def is_zero(self) -> bool:
        return not any(self.residues)

    def __repr__(self) -> str:
        return f"{self.residues}"


def _check(a: GroupElement, b: GroupElement) -> None:
    if a.group != b.group:
        raise GroupMismatch(f"{a.group} vs {b.group}")


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    _check(a, b)
    return GroupElement(a.group, tuple((x + y) % n for x, y, n in zip(a.residues, b.residues, a.group.factors)))


def neg(a: GroupElement) -> GroupElement:
    return GroupElement(a.group, tuple(-x % n for x, n in zip(a.residues, a.group.factors)))


def scalar_mul(c: int, a: GroupElement) -> GroupElement:
    return GroupElement(a.group, tuple(c * x % n for x, n in zip(a.residues, a.group.factors)))


def zero(G: AbelianGroup) -> GroupElement:
    return G.zero()


def element_order(a: GroupElement) -> int:
    return reduce(lcm, (n // gcd(x, n) for x, n in zip(a.residues, a.group.factors)), 1)


def dstar(G: AbelianGroup) -> int:
    return 1 + sum(n - 1 for n in G.factors)


_TOKEN = re.compile(r"^c?(\d+)$", re.IGNORECASE)


def parse_group(spec: str) -> AbelianGroup:
    """Parse ``"C2xC4"``, ``"c2 x c4"`` or ``"2,4"`` into canonical form.

    An empty string, ``"1"`` or ``"C1"`` is the trivial group.
    """
    text = spec.strip()
    if not text:
        return AbelianGroup(())
    if "," in text:
        tokens = [t.strip() for t in text.split(",")]
    else:
        tokens = [t.strip() for t in re.split("x", text, flags=re.IGNORECASE)]
    orders = []
    for tok in tokens:
        m = _TOKEN.match(tok)
        if not m:
            raise ParseError(f"malformed group token {tok!r} in {spec!r}")
        k = int(m.group(1))
        if k < 1:
            raise ParseError(f"cyclic order must be >= 1 in {spec!r}")
        orders.append(k)
    return AbelianGroup.from_orders(orders)


def render_group(G: AbelianGroup) -> str:
    if not G.factors:
        return "C1"
    return "x".join(f"C{n}" for n in G.factors)


def multiplied_subgroup(G: AbelianGroup, n: int):
    """Structure of ``nG`` and an embedding of its residue tuples into ``G``.

    Uses ``n * C_m = C_{m / gcd(n, m)}`` factorwise, so any ``n >= 1`` works.
    """
    if n < 1:
        raise ValueError("multiplier must be >= 1")
    scales = [gcd(n, m) for m in G.factors]
    kept = [i for i, m in enumerate(G.factors) if m // scales[i] > 1]
    H = AbelianGroup(tuple(G.factors[i] // scales[i] for i in kept))

    def embed(h: GroupElement) -> GroupElement:
        if h.group != H:
            raise GroupMismatch(f"{h.group} is not {H}")
        res = [0] * G.rank
        for x, i in zip(h.residues, kept):
            res[i] = x * scales[i]
        return GroupElement.of(G, res)

    return H, embed


def enumerate_elements(G: AbelianGroup, max_order: int = DEFAULT_MAX_ORDER) -> Iterator[GroupElement]:
    if G.order > max_order:
        raise BudgetExceeded(f"|G| = {G.order} exceeds element budget {max_order}")
    for res in product(*(range(n) for n in G.factors)):
        yield GroupElement(G, res)


def closure(G: AbelianGroup, gens: Iterable[GroupElement]) -> set[tuple[int, ...]]:
    """Residue tuples of the subgroup generated by ``gens`` (brute force)."""
    seen = {G.zero().residues}
    frontier = list(seen)
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % n for a, b, n in zip(x, g.residues, G.factors))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def subgroup_generated(G: AbelianGroup, gens: Sequence[GroupElement]) -> AbelianGroup:
    """Invariant factors of ``<gens>`` from the SNF of its relation lattice."""
    from .intlat import relation_lattice, snf

    gens = list(gens)
    if not gens:
        return AbelianGroup(())
    lat = relation_lattice(G, gens)
    diag, _, _ = snf([list(r) for r in lat.basis])
    return AbelianGroup(tuple(d for d in diag if d > 1))


def abelian_groups_of_order(n: int) -> list[AbelianGroup]:
    """All abelian groups of order ``n`` up to isomorphism."""

    def partitions(e, largest=None):
        if e == 0:
            yield ()
            return
        largest = e if largest is None else largest
        for k in range(min(e, largest), 0, -1):
            for rest in partitions(e - k, k):
                yield (k,) + rest

    choices = [[[p**k for k in part] for part in partitions(e)] for p, e in sorted(factorize(n).items())]
    out = {AbelianGroup.from_orders([x for part in combo for x in part]) for combo in product(*choices)}
    return sorted(out, key=lambda g: (len(g.factors), g.factors))


def _encode(factors: tuple[int, ...], residues: tuple[int, ...]) -> int:
    idx = 0
    for x, n in zip(residues, factors):
        idx = idx * n + x % n
    return idx


class _Tables:
    """Flat lookup tables over mixed-radix indices, shared by the kernels."""

    __slots__ = ("order", "decode", "add", "neg", "orders", "add_buf", "neg_buf")

    def __init__(self, factors: tuple[int, ...]):
        self.order = prod(factors)
        self.decode = list(product(*(range(n) for n in factors)))
        enc = {res: i for i, res in enumerate(self.decode)}
        N = self.order
        self.add = [0] * (N * N)
        for i, a in enumerate(self.decode):
            row = i * N
            for j, b in enumerate(self.decode):
                self.add[row + j] = enc[tuple((x + y) % n for x, y, n in zip(a, b, factors))]
        self.neg = [enc[tuple(-x % n for x, n in zip(a, factors))] for a in self.decode]
        self.orders = [reduce(lcm, (n // gcd(x, n) for x, n in zip(a, factors)), 1) for a in self.decode]
        self.add_buf = array("i", self.add)
        self.neg_buf = array("i", self.neg)


@lru_cache(maxsize=64)
def _tables(factors: tuple[int, ...]) -> _Tables:
    return _Tables(factors)


def tables(G: AbelianGroup, max_order: int = DEFAULT_MAX_ORDER) -> _Tables:
    if G.order > max_order:
        raise BudgetExceeded(f"|G| = {G.order} exceeds table budget {max_order}")
    return _tables(G.factors)

"""Sequences over a support, stored as exponent vectors.

A sequence ``S = g_1^{m_1} ... g_k^{m_k}`` over a support ``(g_1, ..., g_k)``
is the multiplicity vector ``(m_1, ..., m_k)``.  Supports are sorted in the
canonical element order and exclude 0 unless explicitly asked for.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from . import kernels
from .errors import BudgetExceeded, GroupMismatch
from .group import AbelianGroup, GroupElement, tables

DEFAULT_MAX_LEN = 64


@dataclass(frozen=True)
class Support:
    group: AbelianGroup
    elems: tuple[GroupElement, ...]

    def __post_init__(self):
        for e in self.elems:
            if e.group != self.group:
                raise GroupMismatch(f"{e} is not in {self.group}")
        if len(set(self.elems)) != len(self.elems):
            raise ValueError("support elements must be distinct")
        if list(self.elems) != sorted(self.elems, key=lambda e: e.residues):
            raise ValueError("support must be in canonical order; use Support.of")

    @classmethod
    def of(cls, group: AbelianGroup, elems: Iterable, include_zero: bool = False) -> "Support":
        items = []
        for e in elems:
            if not isinstance(e, GroupElement):
                e = group.elem(e)
            items.append(e)
        if not include_zero and any(e.is_zero() for e in items):
            raise ValueError("0 is excluded from supports unless include_zero=True")
        return cls(group, tuple(sorted(set(items), key=lambda e: e.residues)))

    def __len__(self) -> int:
        return len(self.elems)

    @property
    def indices(self) -> list[int]:
        return [e.index for e in self.elems]

    def seq(self, mult: Sequence[int]) -> "SeqVec":
        return SeqVec(self, tuple(mult))

    def to_json(self) -> list[list[int]]:
        return [list(e.residues) for e in self.elems]


@dataclass(frozen=True)
class SeqVec:
    support: Support
    mult: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mult", tuple(int(m) for m in self.mult))
        if len(self.mult) != len(self.support):
            raise ValueError(f"{len(self.mult)} multiplicities for a support of size {len(self.support)}")
        if any(m < 0 for m in self.mult):
            raise ValueError("multiplicities must be nonnegative")

    @property
    def group(self) -> AbelianGroup:
        return self.support.group

    def __len__(self) -> int:
        return sum(self.mult)

    @property
    def supp(self) -> tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.mult) if m)

    def divides(self, other: "SeqVec") -> bool:
        return self.support == other.support and all(a <= b for a, b in zip(self.mult, other.mult))

    def quotient(self, T: "SeqVec") -> "SeqVec":
        """``T^{-1} S`` for a subsequence ``T`` of ``S``."""
        if not T.divides(self):
            raise ValueError("not a subsequence")
        return SeqVec(self.support, tuple(a - b for a, b in zip(self.mult, T.mult)))

    def __mul__(self, other: "SeqVec") -> "SeqVec":
        if self.support != other.support:
            raise GroupMismatch("sequences over different supports")
        return SeqVec(self.support, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __pow__(self, l: int) -> "SeqVec":
        return SeqVec(self.support, tuple(l * m for m in self.mult))

    def canonical(self) -> "SeqVec":
        """The same sequence over exactly the elements it uses."""
        keep = self.supp
        sup = Support(self.group, tuple(self.support.elems[i] for i in keep))
        return SeqVec(sup, tuple(self.mult[i] for i in keep))

    def to_json(self) -> dict:
        return {"support": self.support.to_json(), "mult": list(self.mult)}

    @classmethod
    def from_json(cls, group: AbelianGroup, data: dict) -> "SeqVec":
        sup = Support.of(group, [tuple(x) for x in data["support"]], include_zero=True)
        order = {e.residues: i for i, e in enumerate(sup.elems)}
        mult = [0] * len(sup)
        for res, m in zip(data["support"], data["mult"]):
            mult[order[tuple(x % n for x, n in zip(res, group.factors))]] = m
        return cls(sup, tuple(mult))

    def __repr__(self) -> str:
        terms = [f"{e.residues}^{m}" for e, m in zip(self.support.elems, self.mult) if m]
        return "·".join(terms) if terms else "1"


def sigma(S: SeqVec) -> GroupElement:
    G = S.group
    tot = [0] * G.rank
    for e, m in zip(S.support.elems, S.mult):
        for i, x in enumerate(e.residues):
            tot[i] += m * x
    return GroupElement.of(G, tot)


def subsequence_sums(S: SeqVec, max_len: int = 10_000) -> set[GroupElement]:
    """Sums of nonempty subsequences by DP over the reachable-sum set."""
    if len(S) > max_len:
        raise BudgetExceeded(f"|S| = {len(S)} exceeds {max_len}")
    G = S.group
    tab = tables(G)
    N = tab.order
    reach = bytearray(N)
    for e, m in zip(S.support.elems, S.mult):
        g = e.index
        for _ in range(m):
            new = [tab.add[x * N + g] for x in range(N) if reach[x]]
            reach[g] = 1
            for y in new:
                reach[y] = 1
    return {G.from_index(i) for i in range(N) if reach[i]}


def is_zero_sum(S: SeqVec) -> bool:
    return sigma(S).is_zero()


def is_zero_sum_free(S: SeqVec) -> bool:
    return all(not x.is_zero() for x in subsequence_sums(S))


def is_atom(S: SeqVec) -> bool:
    if len(S) == 0 or not is_zero_sum(S):
        return False
    for i in S.supp:
        mult = list(S.mult)
        mult[i] -= 1
        if not is_zero_sum_free(SeqVec(S.support, tuple(mult))):
            return False
    return True


def _atom_key(S: SeqVec):
    return (len(S), S.mult)


def enumerate_atoms(support: Support, max_len: int, *, strict: bool = False, backend=None) -> list[SeqVec]:
    """All atoms over ``support`` of length at most ``max_len``, each once.

    Sorted by length, then by multiplicity vector.  With ``strict=True`` a
    ``BudgetExceeded`` is raised when atoms longer than ``max_len`` might
    exist, so callers asking for *all* atoms never get a truncated list.
    """
    if max_len < 0:
        return []
    tab = tables(support.group)
    mults, saturated = kernels.zsf_atoms(tab, support.indices, max_len, backend)
    if strict and saturated:
        raise BudgetExceeded(f"atoms over {support.to_json()} may exceed length {max_len}")
    return sorted((SeqVec(support, m) for m in mults), key=_atom_key)


def all_atoms(support: Support, budget: int = DEFAULT_MAX_LEN, backend=None) -> list[SeqVec]:
    return enumerate_atoms(support, budget, strict=True, backend=backend)


def naive_atoms(support: Support, max_len: int) -> list[SeqVec]:
    """Brute scan of every multiplicity vector with m_i <= ord(g_i); test oracle."""
    from .group import element_order

    caps = [element_order(e) for e in support.elems]
    out = []
    for mult in product(*(range(c + 1) for c in caps)):
        if 0 < sum(mult) <= max_len:
            S = SeqVec(support, mult)
            if _is_atom_by_subsets(S):
                out.append(S)
    return sorted(out, key=_atom_key)


def _is_atom_by_subsets(S: SeqVec) -> bool:
    if not is_zero_sum(S):
        return False
    for sub in product(*(range(m + 1) for m in S.mult)):
        if 0 < sum(sub) < len(S) and is_zero_sum(SeqVec(S.support, sub)):
            return False
    return True


@dataclass(frozen=True)
class DavenportResult:
    group: AbelianGroup
    value: int
    witness: SeqVec | None


def davenport_brute(G: AbelianGroup, budget: int = DEFAULT_MAX_LEN, backend=None) -> DavenportResult:
    """``D(G)`` as one plus the longest zero-sum free sequence over ``G \\ {0}``."""
    if G.is_trivial():
        return DavenportResult(G, 1, None)
    tab = tables(G)
    nonzero = list(range(1, tab.order))
    length, mult, saturated = kernels.longest_zsf(tab, nonzero, budget, backend)
    if saturated:
        raise BudgetExceeded(f"zero-sum free sequences in {G} reach the length budget {budget}")
    sup = Support(G, tuple(G.from_index(i) for i in nonzero))
    S = SeqVec(sup, mult)
    closing = -sigma(S)
    m = list(mult)
    m[closing.index - 1] += 1
    return DavenportResult(G, length + 1, SeqVec(sup, tuple(m)).canonical())

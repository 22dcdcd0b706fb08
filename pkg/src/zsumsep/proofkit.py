"""Executable versions of the decomposition-by-n constructions.

For an atom ``A = prod g_i^{m_i}``, a modulus ``n`` and a multiplier ``l``:

* ``l m_i = n k_i + x_i`` splits each scaled multiplicity,
* ``h_i = n g_i`` are the steps in ``nG`` and ``B = prod h_i^{k_i}``,
* the surrogate ``u`` is a shortest representation of ``sigma(B)`` over the
  steps, lifted back to ``W = prod g_i^{n u_i + x_i}``,
* the compensator ``t >= 1`` minimizes ``sum t_i`` with
  ``sum (t_i n - x_i) g_i = 0``, giving ``V`` and ``Y = prod h_i^{t_i - 1}``.

All checks here are instance checks on concrete sequences inside bounded
boxes, never symbolic proofs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Sequence

from .errors import BudgetExceeded, PreconditionViolated
from .geodesic import min_positive_representation, positive_length
from .group import AbelianGroup, GroupElement, dstar, multiplied_subgroup, render_group
from .intlat import IntLattice, LatticeBuilder, relation_lattice
from .seqmonoid import SeqVec, Support, is_zero_sum, sigma
from .septest import zero_sum_lattice

MAX_BOX = 2_000_000


def _combo(G: AbelianGroup, coeffs: Sequence[int], elems: Sequence[GroupElement]) -> GroupElement:
    tot = [0] * G.rank
    for c, e in zip(coeffs, elems):
        for i, x in enumerate(e.residues):
            tot[i] += c * x
    return GroupElement.of(G, tot)


@dataclass(frozen=True)
class SurrogateDecomposition:
    atom: SeqVec
    n: int
    l: int
    quotients: tuple[int, ...]
    remainders: tuple[int, ...]
    steps: tuple[GroupElement, ...]
    surrogate: tuple[int, ...]
    compensator: tuple[int, ...]

    @property
    def group(self) -> AbelianGroup:
        return self.atom.group

    @property
    def k(self) -> int:
        return len(self.atom.support)

    @property
    def remainder_sum(self) -> int:
        return sum(self.remainders)

    @property
    def quotient_len(self) -> int:
        return sum(self.quotients)

    @property
    def quotient_sum(self) -> GroupElement:
        return _combo(self.group, self.quotients, self.steps)

    @property
    def lifted(self) -> SeqVec:
        return self.atom.support.seq([self.n * u + x for u, x in zip(self.surrogate, self.remainders)])

    @property
    def V(self) -> SeqVec:
        return self.atom.support.seq([t * self.n - x for t, x in zip(self.compensator, self.remainders)])

    @property
    def Y(self) -> tuple[int, ...]:
        return tuple(t - 1 for t in self.compensator)

    @property
    def y_sum(self) -> GroupElement:
        return _combo(self.group, self.Y, self.steps)

    def dstar_nG(self) -> int:
        return dstar(multiplied_subgroup(self.group, self.n)[0])

    def to_json(self) -> dict:
        return {
            "atom": self.atom.to_json(),
            "n": self.n,
            "l": self.l,
            "quotients": list(self.quotients),
            "remainders": list(self.remainders),
            "steps": [list(h.residues) for h in self.steps],
            "remainder_sum": self.remainder_sum,
            "surrogate": list(self.surrogate),
            "compensator": list(self.compensator),
            "lifted_len": len(self.lifted),
            "V_len": len(self.V),
        }


def decompose(A: SeqVec, n: int, l: int) -> SurrogateDecomposition:
    """Euclidean split of ``l * mult(A)`` by ``n`` with surrogate and compensator.

    The compensator minimization over ``t_i >= 1`` is solved as a shortest
    representation of ``y = t - 1``, whose target is
    ``sum x_i g_i - sum h_i``.  That target lies in ``<h_i>`` exactly when
    ``A`` is zero-sum, so non-zero-sum input is rejected up front.
    """
    if n < 1 or l < 1:
        raise ValueError("n and l must be positive")
    if len(A) == 0:
        raise ValueError("cannot decompose the empty sequence")
    if not is_zero_sum(A):
        raise PreconditionViolated(f"{A} is not zero-sum; the compensator target is unreachable")
    G = A.group
    elems = A.support.elems
    split = [divmod(l * m, n) for m in A.mult]
    quot = tuple(q for q, _ in split)
    rem = tuple(x for _, x in split)
    steps = tuple(n * g for g in elems)
    u = min_positive_representation(G, steps, _combo(G, quot, steps))
    comp_target = _combo(G, rem, elems) - _combo(G, [1] * len(steps), steps)
    y = min_positive_representation(G, steps, comp_target)
    return SurrogateDecomposition(A, n, l, quot, rem, steps, u, tuple(c + 1 for c in y))


def check_B_geodesic(D: SurrogateDecomposition) -> bool:
    size = D.quotient_len
    return size == positive_length(D.group, D.steps, D.quotient_sum) and size <= D.dstar_nG() - 1


def check_Y_geodesic(D: SurrogateDecomposition) -> bool:
    size = sum(D.Y)
    return size == positive_length(D.group, D.steps, D.y_sum) and size <= D.dstar_nG() - 1


def surrogate_bounds(D: SurrogateDecomposition) -> tuple[bool, bool]:
    """Length bounds on the lifted surrogate and on the compensating sequence.

    With ``M = n (D*(nG) - 1)`` and ``f`` the remainder sum:
    ``|W| <= M + f`` (plus ``W`` zero-sum) and ``|V| <= M + k n - f``.  For
    even rank the second flag also carries ``|W| + |V| <= 2T + (k - 2s) n``.
    """
    G = D.group
    M = D.n * (D.dstar_nG() - 1)
    W, V = D.lifted, D.V
    f = D.remainder_sum
    first = is_zero_sum(W) and len(W) <= M + f
    second = len(V) <= M + D.k * D.n - f
    if G.rank and G.rank % 2 == 0 and D.n == G.n_s:
        T, s = G.tail_sum, G.s
        second = second and len(W) + len(V) <= 2 * T + (D.k - 2 * s) * D.n
    return first, second


@dataclass(frozen=True)
class LiftCertificate:
    decomposition: SurrogateDecomposition
    p: tuple[int, ...]
    q: tuple[int, ...]
    c: tuple[int, ...]

    def _scaled(self, v) -> SeqVec:
        return self.decomposition.atom.support.seq([self.decomposition.n * x for x in v])

    @property
    def P(self) -> SeqVec:
        return self._scaled(self.p)

    @property
    def Q(self) -> SeqVec:
        return self._scaled(self.q)

    @property
    def C(self) -> SeqVec:
        return self._scaled(self.c)

    def exponent_identity(self) -> bool:
        D = self.decomposition
        left = (D.atom ** D.l) * self.Q * self.C
        right = D.lifted * self.P * self.C
        return left.mult == right.mult

    def balanced(self) -> bool:
        return is_zero_sum(self.P * self.C) and is_zero_sum(self.Q * self.C)


def lift_certificate(D: SurrogateDecomposition) -> LiftCertificate:
    p = tuple(max(k - u, 0) for k, u in zip(D.quotients, D.surrogate))
    q = tuple(max(u - k, 0) for k, u in zip(D.quotients, D.surrogate))
    s = _combo(D.group, p, D.steps)
    c = min_positive_representation(D.group, D.steps, -s)
    return LiftCertificate(D, p, q, c)


@lru_cache(maxsize=1024)
def _short_lattice(support: Support, d: int) -> IntLattice:
    return zero_sum_lattice(support, d)


def power_membership(A: SeqVec, l: int) -> bool:
    """Whether ``A^l`` lies in the span of zero-sum sequences shorter than ``A``."""
    return _short_lattice(A.support, len(A) - 1).contains([l * m for m in A.mult])


def _divisible_box(support: Support, A_len: int, step: int, cap: int) -> bool:
    levels = cap // step + 1
    if levels ** len(support) > MAX_BOX:
        raise BudgetExceeded(f"{levels}^{len(support)} box vectors exceed {MAX_BOX}")
    lat = _short_lattice(support, A_len - 1)
    for mult in product(range(0, cap + 1, step), repeat=len(support)):
        if not any(mult):
            continue
        if sigma(support.seq(mult)).is_zero() and not lat.contains(mult):
            return False
    return True


def n_divisible_lifting_check(support: Support, A_len: int, n: int, cap: int) -> bool:
    """Every n-divisible zero-sum vector in the box ``[0, cap]^k`` is short-generated."""
    if cap <= 0:
        return True
    return _divisible_box(support, A_len, n, cap)


def divisible_lifting_check(support: Support, A_len: int, d: int, cap: int) -> bool:
    """Same box check for d-divisible vectors, under ``d * beta_sep(dG) <= A_len - 1``."""
    from .theorems import beta_sep_formula

    dG = multiplied_subgroup(support.group, d)[0]
    if d * beta_sep_formula(dG) > A_len - 1:
        raise PreconditionViolated(
            f"d * beta_sep(dG) = {d} * {beta_sep_formula(dG)} exceeds |A| - 1 = {A_len - 1}")
    if cap <= 0:
        return True
    return _divisible_box(support, A_len, d, cap)


def coprime_inverse_multiplier(n: int, delta: int) -> int | None:
    """Least ``l`` in ``[1, n-1]`` with ``gcd(l, n) = 1`` and ``l b = 1 (mod n/d)``.

    Here ``d = gcd(delta, n)`` and ``b = delta / d``.  Found by exhaustive
    search; ``None`` when no such ``l`` exists.
    """
    d = gcd(delta, n)
    b, mod = delta // d, n // d
    for l in range(1, n):
        if gcd(l, n) == 1 and (l * b - 1) % mod == 0:
            return l
    return None


def coprime_window_search(n: int, p1: int) -> list[tuple[int, int | None]]:
    """``(delta, l)`` for every ``n/p1 < delta <= n/2`` with ``b >= 2``."""
    out = []
    for delta in range(n // p1 + 1, n // 2 + 1):
        if delta // gcd(delta, n) >= 2:
            out.append((delta, coprime_inverse_multiplier(n, delta)))
    return out


def nonnegative_relations(H: AbelianGroup, elems: Sequence[GroupElement], max_len: int) -> list[tuple[int, ...]]:
    """Every ``u >= 0`` with ``1 <= |u| <= max_len`` and ``sum u_i a_i = 0``."""
    k = len(elems)
    out: list[tuple[int, ...]] = []
    u = [0] * k
    zero = H.zero()

    def rec(i, left, acc):
        if i == k:
            if acc == zero and any(u):
                out.append(tuple(u))
            return
        a = elems[i]
        cur = acc
        for c in range(left + 1):
            u[i] = c
            rec(i + 1, left - c, cur)
            cur = cur + a
        u[i] = 0

    rec(0, max_len, zero)
    return out


def short_generation_check(H: AbelianGroup, elems: Sequence[GroupElement], beta_H: int) -> bool:
    """Relation lattice equals the span of nonnegative relations of length <= beta_H."""
    elems = list(elems)
    full = relation_lattice(H, elems)
    b = LatticeBuilder(len(elems))
    for u in nonnegative_relations(H, elems, beta_H):
        b.add(u)
    return b.freeze() == full


# -- harness ---------------------------------------------------------------


@dataclass
class LemmaTally:
    lemma: str
    group: str
    instances: int = 0
    failures: int = 0

    def record(self, ok: bool) -> None:
        self.instances += 1
        self.failures += 0 if ok else 1

    def to_json(self) -> dict:
        return {"lemma": self.lemma, "group": self.group, "instances": self.instances, "failures": self.failures}


LEMMAS = (
    "B-geodesic",
    "Y-geodesic",
    "surrogate-basic",
    "V-upper",
    "V-lower-coprime",
    "lift-certificate",
    "WV-divisible",
    "geodesic-lift",
    "coprime-power",
    "n-divisible-lifting",
    "n1-divisible-lifting",
    "window-empty",
    "n1-rank-shift",
)


def lemma_suite(G: AbelianGroup, beta: int, witnesses: Sequence[SeqVec]) -> list[LemmaTally]:
    """Run every instance check over the extremal witnesses of ``G`` (rank >= 2).

    ``l`` ranges over ``[1, n_s]``; lifting boxes use the cap ``2 n_r``.
    """
    from .theorems import beta_sep_formula

    name = render_group(G)
    tally = {lem: LemmaTally(lem, name) for lem in LEMMAS}
    n, n1 = G.n_s, G.factors[0]
    cap = 2 * G.exponent
    # A^{n1} is short-generated under this bound, so no power A^l with
    # gcd(l, n1) = 1 can be, or A itself would be.
    n1_lifts = n1 * beta_sep_formula(multiplied_subgroup(G, n1)[0]) <= beta - 1
    seen_supports = set()
    for A in witnesses:
        for l in range(1, n + 1):
            D = decompose(A, n, l)
            if l == 1:
                tally["B-geodesic"].record(check_B_geodesic(D))
            tally["Y-geodesic"].record(check_Y_geodesic(D))
            first, second = surrogate_bounds(D)
            tally["surrogate-basic"].record(first)
            tally["V-upper"].record(second)
            if gcd(l, n) == 1:
                tally["V-lower-coprime"].record(len(D.V) >= len(A))
            cert = lift_certificate(D)
            tally["lift-certificate"].record(cert.exponent_identity() and cert.balanced())
            WV = D.lifted * D.V
            tally["WV-divisible"].record(all(m % n == 0 for m in WV.mult) and is_zero_sum(WV))
            if min(len(D.lifted), len(D.V)) <= len(A) - 1:
                tally["geodesic-lift"].record(power_membership(A, l))
            if n1_lifts and gcd(l, n1) == 1:
                tally["coprime-power"].record(not power_membership(A, l))
        if A.support not in seen_supports:
            seen_supports.add(A.support)
            tally["n-divisible-lifting"].record(n_divisible_lifting_check(A.support, beta, n, cap))
            tally["n1-divisible-lifting"].record(divisible_lifting_check(A.support, beta, n1, cap))
    if G.rank % 2 == 0:
        T = G.tail_sum
        tally["window-empty"].record(not (T + Fraction(n, G.p1) < beta))
        n1G = multiplied_subgroup(G, n1)[0]
        tally["n1-rank-shift"].record(n1 * beta_sep_formula(n1G) <= T)
    return [tally[lem] for lem in LEMMAS if tally[lem].instances]

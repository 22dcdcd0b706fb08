"""Separating atoms and the brute-force separating Noether number.

An atom ``A`` over ``G0`` is separating when its exponent vector is not in
the lattice spanned by the zero-sum sequences over ``G0`` of length at most
``|A| - 1``.  Every such zero-sum sequence factors into atoms no longer than
itself, so the atoms alone span that lattice.  ``beta_sep_brute`` maximizes
the separating length over all supports of size at most ``rank + 1``.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, groupby

from .config import Budgets, check_deadline
from .errors import BudgetExceeded
from .group import AbelianGroup, render_group, tables
from .intlat import IntLattice, LatticeBuilder
from .seqmonoid import SeqVec, Support, all_atoms, enumerate_atoms, is_atom

SCHEMA = "zsum-sep/1"


def zero_sum_lattice(support: Support, d: int) -> IntLattice:
    """Span of the exponent vectors of all atoms over ``support`` of length <= d."""
    b = LatticeBuilder(len(support))
    for A in enumerate_atoms(support, d):
        b.add(A.mult)
    return b.freeze()


def is_separating_atom(A: SeqVec) -> bool:
    if not is_atom(A):
        return False
    return not zero_sum_lattice(A.support, len(A) - 1).contains(A.mult)


def separating_profile(atoms: list[SeqVec], dim: int) -> dict[int, list[SeqVec]]:
    """Separating atoms by length, sweeping d upward over one atom list.

    ``atoms`` must be every atom up to the largest length of interest, sorted
    by length.  Atoms of length L are tested against the lattice of all
    shorter atoms, then inserted.
    """
    builder = LatticeBuilder(dim)
    out: dict[int, list[SeqVec]] = {}
    for L, batch in groupby(atoms, key=len):
        batch = list(batch)
        sep = [A for A in batch if not builder.contains(A.mult)]
        if sep:
            out[L] = sep
        for A in batch:
            builder.add(A.mult)
    return out


def max_separating_atom_length(support: Support, budgets: Budgets | None = None, backend=None):
    """``(length, witnesses)`` of the longest separating atoms over ``support``.

    Returns ``(0, [])`` when the support carries no separating atom.
    """
    budgets = budgets or Budgets()
    atoms = all_atoms(support, budgets.max_atom_len, backend=backend)
    profile = separating_profile(atoms, len(support))
    if not profile:
        return 0, []
    best = max(profile)
    return best, sorted(profile[best], key=lambda A: A.mult)


@dataclass
class SeparatingReport:
    group: AbelianGroup
    beta_brute: int
    witnesses: list[SeqVec] = field(default_factory=list)
    supports_checked: int = 0
    elapsed: float = 0.0

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "schema": SCHEMA,
            "group": render_group(self.group),
            "beta_brute": self.beta_brute,
            "supports_checked": self.supports_checked,
            "witnesses": [
                dict(A.to_json(), support_size=len(A.support), supp_size=len(A.supp)) for A in self.witnesses
            ],
        }
        if timing:
            out["elapsed_ms"] = round(self.elapsed * 1000)
        return out


def candidate_supports(G: AbelianGroup, include_zero: bool = False, max_size: int | None = None):
    """Index tuples of every support of size 1..rank+1, in canonical order."""
    start = 0 if include_zero else 1
    pool = range(start, G.order)
    top = G.rank + 1 if max_size is None else max_size
    for size in range(1, top + 1):
        yield from combinations(pool, size)


def _scan(factors, chunk, budgets, deadline, backend):
    """Worker: best separating length within ``chunk`` and its witnesses."""
    G = AbelianGroup(factors)
    decode = tables(G).decode
    best, found = 0, []
    for n, idx in enumerate(chunk):
        if n % 64 == 0:
            check_deadline(deadline)
        sup = Support(G, tuple(G.elem(decode[i]) for i in idx))
        L, wit = max_separating_atom_length(sup, budgets, backend)
        if L > best:
            best, found = L, [(idx, A.mult) for A in wit]
        elif L == best and L:
            found.extend((idx, A.mult) for A in wit)
    return best, found


def _chunks(items: list, parts: int) -> list[list]:
    size = max(1, -(-len(items) // parts))
    return [items[i:i + size] for i in range(0, len(items), size)]


def beta_sep_brute(
    G: AbelianGroup,
    budgets: Budgets | None = None,
    jobs: int = 1,
    include_zero: bool = False,
    backend=None,
) -> SeparatingReport:
    """Longest separating atom over supports of size <= rank + 1.

    Supports are scanned in canonical order; with ``jobs > 1`` contiguous
    chunks go to worker processes and the merge re-sorts witnesses, so the
    report does not depend on scheduling.
    """
    budgets = budgets or Budgets()
    t0 = time.perf_counter()
    if G.is_trivial():
        return SeparatingReport(G, 1, [], 0, time.perf_counter() - t0)
    if G.order > budgets.max_group_order:
        raise BudgetExceeded(f"|G| = {G.order} exceeds max_group_order {budgets.max_group_order}")
    supports = list(candidate_supports(G, include_zero))
    if len(supports) > budgets.max_support_count:
        raise BudgetExceeded(f"{len(supports)} supports exceed max_support_count {budgets.max_support_count}")
    deadline = budgets.deadline()
    if jobs <= 1:
        results = [_scan(G.factors, supports, budgets, deadline, backend)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = [ex.submit(_scan, G.factors, c, budgets, deadline, backend) for c in _chunks(supports, jobs * 4)]
            results = [f.result() for f in futs]
    best = max(r[0] for r in results)
    merged = sorted(w for r in results if r[0] == best for w in r[1])
    decode = tables(G).decode
    witnesses = [Support(G, tuple(G.elem(decode[i]) for i in idx)).seq(mult) for idx, mult in merged]
    return SeparatingReport(G, best, witnesses, len(supports), time.perf_counter() - t0)

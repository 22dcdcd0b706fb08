"""Closed-form separating Noether numbers and the harness that checks them.

For ``G = C_{n1} + ... + C_{nr}`` with ``s = floor((r+1)/2)``:

* odd ``r``:  ``beta_sep(G) = n_s + n_{s+1} + ... + n_r``
* even ``r``: ``beta_sep(G) = n_s / p1 + n_{s+1} + ... + n_r``

where ``p1`` is the least prime dividing ``n1``; the trivial group has 1.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .config import Budgets
from .group import AbelianGroup, dstar, parse_group, render_group
from .septest import SCHEMA, SeparatingReport, beta_sep_brute

DEFAULT_CATALOG = (
    "C2", "C3", "C4", "C5", "C6", "C8",
    "C2xC2", "C2xC4", "C3xC3", "C2xC6",
    "C2xC2xC2", "C2xC2xC4", "C2xC2xC2xC2",
)


def _closed_form(G: AbelianGroup) -> int:
    s, T = G.s, G.tail_sum
    if G.rank % 2:
        return G.n_s + T
    if G.n_s % G.p1:
        raise AssertionError(f"p1 = {G.p1} does not divide n_s = {G.n_s}")
    return G.n_s // G.p1 + T


def beta_sep_formula(G: AbelianGroup) -> int:
    if G.is_trivial():
        return 1
    return _closed_form(G)


def lower_bound(G: AbelianGroup) -> int:
    """The known general lower bound; it has the same case expression."""
    if G.is_trivial():
        raise ValueError("the lower bound is stated for rank >= 1")
    return _closed_form(G)


def even_half_bound(G: AbelianGroup) -> Fraction:
    """``n_s / 2 + n_{s+1} + ... + n_r`` as an exact rational (even rank only)."""
    if G.rank == 0 or G.rank % 2:
        raise ValueError(f"{render_group(G)} does not have even rank")
    return Fraction(G.n_s, 2) + G.tail_sum


@dataclass
class FormulaReport:
    group: AbelianGroup
    beta_formula: int
    lower_bound: int | None
    half_bound: Fraction | None = None
    beta_brute: int | None = None
    match: bool | None = None
    bounds_ok: bool | None = None
    corollary_ok: bool | None = None

    @property
    def ok(self) -> bool:
        return self.match is not False and self.bounds_ok is not False and self.corollary_ok is not False

    def to_json(self) -> dict:
        G = self.group
        hb = self.half_bound
        return {
            "group": render_group(G),
            "factors": list(G.factors),
            "rank": G.rank,
            "s": G.s,
            "n_s": G.n_s,
            "p1": G.p1,
            "T": G.tail_sum,
            "dstar": dstar(G),
            "beta_formula": self.beta_formula,
            "lower_bound": self.lower_bound,
            "half_bound": None if hb is None else (hb.numerator if hb.denominator == 1 else str(hb)),
            "beta_brute": self.beta_brute,
            "match": self.match,
            "bounds_ok": self.bounds_ok,
            "corollary_ok": self.corollary_ok,
        }


def formula_report(G: AbelianGroup) -> FormulaReport:
    hb = even_half_bound(G) if G.rank and G.rank % 2 == 0 else None
    lb = None if G.is_trivial() else lower_bound(G)
    return FormulaReport(G, beta_sep_formula(G), lb, hb)


def corollary_holds(G: AbelianGroup, report: SeparatingReport) -> bool | None:
    """Support shape of the extremal witnesses.

    Rank >= 2: every witness uses all of its support and that support has
    rank + 1 elements.  Rank 1: some witness lives on a single element.
    """
    if G.rank == 0:
        return None
    if G.rank == 1:
        return any(len(A.supp) == 1 for A in report.witnesses)
    r1 = G.rank + 1
    return bool(report.witnesses) and all(len(A.supp) == len(A.support) == r1 for A in report.witnesses)


def verify_group(G: AbelianGroup, budgets: Budgets | None = None, corollary: bool = False,
                 include_zero: bool = False, report: SeparatingReport | None = None) -> FormulaReport:
    fr = formula_report(G)
    report = report or beta_sep_brute(G, budgets, include_zero=include_zero)
    fr.beta_brute = report.beta_brute
    fr.match = report.beta_brute == fr.beta_formula
    if fr.lower_bound is None:
        fr.bounds_ok = True
    else:
        fr.bounds_ok = fr.lower_bound <= report.beta_brute and (fr.half_bound is None or report.beta_brute <= fr.half_bound)
    if corollary:
        fr.corollary_ok = corollary_holds(G, report)
    return fr


def verify_theorem(G: AbelianGroup, budgets: Budgets | None = None) -> FormulaReport:
    return verify_group(G, budgets)


def verify_corollary(G: AbelianGroup, budgets: Budgets | None = None) -> FormulaReport:
    return verify_group(G, budgets, corollary=True)


def load_catalog(spec: str | None) -> list[AbelianGroup]:
    """``None``/``"default"`` or a file with one group per line (``#`` comments)."""
    if spec in (None, "default"):
        names = DEFAULT_CATALOG
    else:
        names = []
        for line in Path(spec).read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                names.append(line)
    return [parse_group(n) for n in names]


def _verify_one(kind: str, factors, budgets: Budgets, include_zero: bool):
    from .proofkit import lemma_suite

    G = AbelianGroup(factors)
    if kind == "lemmas":
        if G.rank < 2:
            return []
        rep = beta_sep_brute(G, budgets, include_zero=include_zero)
        return [t.to_json() for t in lemma_suite(G, rep.beta_brute, rep.witnesses)]
    fr = verify_group(G, budgets, corollary=kind == "corollary", include_zero=include_zero)
    return [dict(fr.to_json(), ok=fr.ok)]


def verify_catalog(kind: str, groups: list[AbelianGroup], budgets: Budgets | None = None,
                   jobs: int = 1, include_zero: bool = False) -> tuple[list[dict], bool]:
    """Rows for every catalog group plus an overall verdict; rows keep catalog order."""
    if kind not in ("theorem", "corollary", "lemmas"):
        raise ValueError(f"unknown verification {kind!r}")
    budgets = budgets or Budgets()
    args = [(kind, G.factors, budgets, include_zero) for G in groups]
    if not args:
        return [], True
    if jobs <= 1:
        chunks = [_verify_one(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_verify_one, *zip(*args)))
    rows = [row for chunk in chunks for row in chunk]
    if kind == "lemmas":
        ok = all(r["failures"] == 0 for r in rows)
    else:
        ok = all(r["ok"] for r in rows)
    return rows, ok


def verification_document(kind: str, rows: list[dict], ok: bool) -> dict:
    return {"schema": SCHEMA, "verify": kind, "ok": ok, "rows": rows}

"""End-to-end acceptance checks; each test records one PASS/FAIL line."""

import random
import subprocess
import sys
import time
from itertools import combinations

from conftest import record_acceptance
from oracles import bounded_combination, lattice_instance
from zsumsep.geodesic import absolute_positive_diameter
from zsumsep.group import AbelianGroup, abelian_groups_of_order, dstar, enumerate_elements, parse_group, render_group
from zsumsep.intlat import hnf, lattice_contains
from zsumsep.proofkit import lemma_suite, short_generation_check
from zsumsep.seqmonoid import Support, davenport_brute, enumerate_atoms, naive_atoms
from zsumsep.septest import beta_sep_brute
from zsumsep.theorems import beta_sep_formula, corollary_holds

EXPECTED = {
    "C2": 2, "C3": 3, "C4": 4, "C5": 5, "C6": 6,
    "C2xC2": 3, "C2xC4": 5, "C3xC3": 4, "C2xC6": 7,
    "C2xC2xC2": 4, "C2xC2xC4": 6, "C2xC2xC2xC2": 5,
}

_reports = {}


def report(spec):
    if spec not in _reports:
        _reports[spec] = beta_sep_brute(parse_group(spec))
    return _reports[spec]


def test_criterion_1_brute_matches_formula():
    t0 = time.perf_counter()
    bad = []
    for spec, value in EXPECTED.items():
        G = parse_group(spec)
        brute, formula = report(spec).beta_brute, beta_sep_formula(G)
        if not brute == formula == value:
            bad.append(f"{spec}: brute {brute}, formula {formula}, expected {value}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed <= 900
    detail = f"brute = formula on {len(EXPECTED)} groups in {elapsed:.1f}s" if ok else "; ".join(bad) or f"{elapsed:.0f}s"
    assert record_acceptance(1, ok, detail), detail


def test_criterion_2_witness_supports():
    bad = []
    for spec in EXPECTED:
        G = parse_group(spec)
        if G.rank >= 2 and not corollary_holds(G, report(spec)):
            bad.append(spec)
    c6 = any(len(A.supp) == 1 for A in report("C6").witnesses)
    if not c6:
        bad.append("C6 has no single-element witness")
    ok = not bad
    detail = "rank >= 2 witnesses use r+1 elements; C6 has a single-element witness" if ok else ", ".join(bad)
    assert record_acceptance(2, ok, detail), detail


def test_criterion_3_absolute_diameter():
    t0 = time.perf_counter()
    bad, count = [], 0
    for n in range(1, 17):
        for G in abelian_groups_of_order(n):
            count += 1
            d = absolute_positive_diameter(G)
            if d != dstar(G) - 1:
                bad.append(f"{render_group(G)}: {d} != {dstar(G) - 1}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed <= 120
    detail = f"diameter = D* - 1 for all {count} groups of order <= 16 in {elapsed:.1f}s" if ok else "; ".join(bad) or f"{elapsed:.0f}s"
    assert record_acceptance(3, ok, detail), detail


def test_criterion_4_davenport():
    t0 = time.perf_counter()
    specs = [f"C{n}" for n in range(2, 13)] + ["C2xC2", "C2xC4", "C3xC3", "C2xC6", "C4xC4", "C6xC6"]
    bad = []
    for spec in specs:
        G = parse_group(spec)
        v = davenport_brute(G).value
        if v != dstar(G):
            bad.append(f"{spec}: D = {v}, D* = {dstar(G)}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed <= 300
    detail = f"D = D* on {len(specs)} groups in {elapsed:.1f}s" if ok else "; ".join(bad) or f"{elapsed:.0f}s"
    assert record_acceptance(4, ok, detail), detail


def test_criterion_5_lemma_suite():
    instances, failures = 0, []
    for spec in EXPECTED:
        G = parse_group(spec)
        if G.rank < 2:
            continue
        rep = report(spec)
        for t in lemma_suite(G, rep.beta_brute, rep.witnesses):
            instances += t.instances
            if t.failures:
                failures.append(f"{spec} {t.lemma}: {t.failures}/{t.instances}")
    ok = not failures and instances > 0
    detail = f"{instances} lemma instances, 0 failures" if ok else "; ".join(failures)
    assert record_acceptance(5, ok, detail), detail


def test_criterion_6_short_generation():
    rng = random.Random(6)
    specs = ["C1", "C2", "C3", "C4", "C2xC2", "C6"]
    total, bad = 0, []
    for spec in specs:
        H = parse_group(spec)
        elems = list(enumerate_elements(H))
        beta = beta_sep_formula(H)
        for _ in range(200):
            a = [rng.choice(elems) for _ in range(rng.randint(1, 5))]
            total += 1
            if not short_generation_check(H, a, beta):
                bad.append(f"{spec} {[g.residues for g in a]}")
    ok = not bad
    detail = f"{total} tuples over {len(specs)} groups, 0 failures" if ok else f"{len(bad)} failures, first {bad[0]}"
    assert record_acceptance(6, ok, detail), detail


def test_criterion_7_oracle_equivalence():
    rng = random.Random(7)
    lattice_bad = 0
    for _ in range(100):
        dim, rows, v = lattice_instance(rng, max_dim=4, entry=6)
        if lattice_contains(hnf(rows, dim), v) != bounded_combination(rows, v, 10):
            lattice_bad += 1
    atom_bad, supports = 0, 0
    for order in range(2, 10):
        for G in abelian_groups_of_order(order):
            nonzero = list(enumerate_elements(G))[1:]
            for size in (1, 2, 3):
                for elems in combinations(nonzero, size):
                    sup = Support.of(G, elems)
                    cap = size * G.exponent
                    supports += 1
                    fast = sorted(A.mult for A in enumerate_atoms(sup, cap))
                    slow = sorted(A.mult for A in naive_atoms(sup, cap))
                    atom_bad += fast != slow
    ok = lattice_bad == 0 and atom_bad == 0
    detail = (f"lattice membership 100 instances ({lattice_bad} discrepancies); "
              f"atom enumeration {supports} supports ({atom_bad} discrepancies)")
    assert record_acceptance(7, ok, detail), detail


def test_criterion_8_parallel_determinism():
    def run(jobs):
        cmd = [sys.executable, "-m", "zsumsep", "verify", "theorem", "--catalog", "default", "--jobs", str(jobs)]
        return subprocess.run(cmd, capture_output=True, check=False)

    one, eight = run(1), run(8)
    ok = one.returncode == eight.returncode == 0 and one.stdout == eight.stdout and one.stdout
    detail = (f"jobs 1 and jobs 8 give byte-identical JSON ({len(one.stdout)} bytes)" if ok
              else f"exit {one.returncode}/{eight.returncode}, identical={one.stdout == eight.stdout}")
    assert record_acceptance(8, bool(ok), detail), detail

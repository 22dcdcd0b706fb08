from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zsumsep.errors import BudgetExceeded, GroupMismatch
from zsumsep.group import abelian_groups_of_order, dstar, enumerate_elements, parse_group
from zsumsep.seqmonoid import (
    SeqVec,
    Support,
    all_atoms,
    davenport_brute,
    enumerate_atoms,
    is_atom,
    is_zero_sum,
    is_zero_sum_free,
    naive_atoms,
    sigma,
    subsequence_sums,
)

from oracles import atom_by_definition, subset_sums_explicit
from strategies import elements, nontrivial_groups

C = parse_group


def seq(spec, elems, mult):
    G = C(spec)
    return Support.of(G, elems).seq(mult)


@st.composite
def sequences(draw, max_order=24, max_support=4, max_mult=4):
    G = draw(nontrivial_groups(max_order))
    elems = draw(st.lists(elements(G), min_size=1, max_size=max_support, unique=True))
    elems = [e for e in elems if not e.is_zero()] or [G.from_index(1)]
    sup = Support.of(G, elems)
    mult = draw(st.lists(st.integers(0, max_mult), min_size=len(sup), max_size=len(sup)))
    return sup.seq(mult)


def test_support_validation():
    G = C("C4")
    with pytest.raises(ValueError):
        Support.of(G, [(0,), (1,)])
    assert len(Support.of(G, [(0,), (1,)], include_zero=True)) == 2
    with pytest.raises(ValueError):
        Support(G, (G.elem(2), G.elem(1)))
    with pytest.raises(GroupMismatch):
        Support(G, (C("C2").elem(1),))
    assert Support.of(G, [(3,), (1,), (3,)]).indices == [1, 3]


def test_seqvec_operations():
    A = seq("C4", [(1,), (2,)], (2, 1))
    B = seq("C4", [(1,), (2,)], (1, 0))
    assert len(A) == 3 and A.supp == (0, 1)
    assert B.divides(A) and not A.divides(B)
    assert A.quotient(B).mult == (1, 1)
    assert (A * B).mult == (3, 1)
    assert (A ** 3).mult == (6, 3)
    assert B.canonical().mult == (1,)
    assert SeqVec.from_json(A.group, A.to_json()) == A
    with pytest.raises(ValueError):
        B.quotient(A)


@pytest.mark.parametrize("spec,elems,mult,total", [
    ("C2xC2", [(1, 0), (0, 1), (1, 1)], (1, 1, 1), (0, 0)),
    ("C4", [(1,), (2,)], (2, 1), (0,)),
    ("C4", [(1,)], (0,), (0,)),
    ("C6", [(1,), (4,)], (1, 1), (5,)),
])
def test_sigma(spec, elems, mult, total):
    assert sigma(seq(spec, elems, mult)).residues == total


@pytest.mark.parametrize("spec,elems,mult,sums", [
    ("C4", [(1,)], (1,), {(1,)}),
    ("C4", [(1,)], (2,), {(1,), (2,)}),
    ("C2xC2", [(1, 0), (0, 1)], (1, 1), {(1, 0), (0, 1), (1, 1)}),
    ("C4", [(1,)], (0,), set()),
])
def test_subsequence_sums(spec, elems, mult, sums):
    assert {g.residues for g in subsequence_sums(seq(spec, elems, mult))} == sums


@settings(max_examples=80)
@given(sequences(max_mult=3))
def test_subsequence_sums_match_explicit(S):
    if len(S) > 12:
        return
    items = [g for g, m in zip(S.support.elems, S.mult) for _ in range(m)]
    assert {g.residues for g in subsequence_sums(S)} == subset_sums_explicit(S.group, items)


@pytest.mark.parametrize("mult,zsf,zs", [((2,), True, False), ((4,), False, True), ((0,), True, True)])
def test_zero_sum_predicates_in_c4(mult, zsf, zs):
    S = seq("C4", [(1,)], mult)
    assert is_zero_sum_free(S) is zsf
    assert is_zero_sum(S) is zs


@pytest.mark.parametrize("spec,elems,mult,expected", [
    ("C5", [(2,)], (5,), True),
    ("C2xC2", [(1, 0), (0, 1), (1, 1)], (1, 1, 1), True),
    ("C4", [(1,), (2,)], (2, 1), True),
    ("C4", [(1,), (2,)], (4, 2), False),
    ("C4", [(1,)], (0,), False),
    ("C4", [(1,), (3,)], (2, 2), False),
])
def test_is_atom(spec, elems, mult, expected):
    assert is_atom(seq(spec, elems, mult)) is expected


@settings(max_examples=120)
@given(sequences(max_mult=4))
def test_is_atom_matches_definition(S):
    assert is_atom(S) == atom_by_definition(S.support, S.mult)


def mults(atoms):
    return sorted(A.mult for A in atoms)


def test_enumerate_atoms_examples():
    G = C("C3")
    assert mults(enumerate_atoms(Support.of(G, [(1,)]), 5)) == [(3,)]
    sup = Support.of(C("C2xC2"), [(1, 0), (0, 1), (1, 1)])
    assert mults(enumerate_atoms(sup, 3)) == [(0, 0, 2), (0, 2, 0), (1, 1, 1), (2, 0, 0)]
    sup = Support.of(C("C4"), [(1,), (2,)])
    assert mults(enumerate_atoms(sup, 4)) == [(0, 2), (2, 1), (4, 0)]


def test_enumerate_atoms_is_sorted_by_length():
    sup = Support.of(C("C2xC6"), [(0, 1), (1, 2), (1, 5)])
    atoms = enumerate_atoms(sup, 12)
    assert [(len(A), A.mult) for A in atoms] == sorted((len(A), A.mult) for A in atoms)


def test_enumerate_atoms_strict_budget():
    sup = Support.of(C("C8"), [(1,)])
    assert enumerate_atoms(sup, 7) == []
    with pytest.raises(BudgetExceeded):
        enumerate_atoms(sup, 7, strict=True)
    assert mults(all_atoms(sup, 8)) == [(8,)]


@pytest.mark.parametrize("order", range(2, 10))
def test_enumerate_atoms_match_naive_scan(order):
    for G in abelian_groups_of_order(order):
        nonzero = list(enumerate_elements(G))[1:]
        for size in (1, 2, 3):
            for elems in combinations(nonzero, size):
                sup = Support.of(G, elems)
                cap = len(sup) * G.exponent
                fast = enumerate_atoms(sup, cap)
                assert mults(fast) == mults(naive_atoms(sup, cap))
                for A in fast:
                    assert is_atom(A)
                    for i in A.supp:
                        m = list(A.mult)
                        m[i] -= 1
                        assert is_zero_sum_free(sup.seq(m))


@pytest.mark.parametrize("spec,value", [
    ("C1", 1), ("C2", 2), ("C7", 7), ("C2xC2", 3), ("C3xC3", 5), ("C2xC4", 5),
    ("C2xC2xC2", 4), ("C2xC2xC2xC2", 5),
])
def test_davenport(spec, value):
    res = davenport_brute(C(spec))
    assert res.value == value
    if res.witness is not None:
        assert len(res.witness) == value and is_atom(res.witness)


@pytest.mark.parametrize("spec", ["C2", "C4", "C2xC2", "C2xC4", "C3xC3", "C2xC6", "C2xC2xC2", "C2xC2xC4", "C3xC6"])
def test_davenport_at_least_dstar(spec):
    assert davenport_brute(C(spec)).value >= dstar(C(spec))


def test_davenport_budget():
    with pytest.raises(BudgetExceeded):
        davenport_brute(C("C20"), budget=10)

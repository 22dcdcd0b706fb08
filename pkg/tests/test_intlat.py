import random
from itertools import product
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zsumsep.errors import DimensionMismatch
from zsumsep.group import abelian_groups_of_order, closure, enumerate_elements, parse_group
from zsumsep.intlat import (
    IntLattice,
    LatticeBuilder,
    full_lattice,
    hnf,
    lattice_contains,
    lattice_equal,
    relation_lattice,
    snf,
    sublattice_from_generators,
    xgcd,
    zero_lattice,
)

from oracles import bounded_combination, lattice_instance
from strategies import int_matrices


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def random_unimodular(rng, n, steps=12):
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            U[i] = [-x for x in U[i]]
            continue
        q = rng.randint(-3, 3)
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
    return U


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_xgcd(a, b):
    g, x, y = xgcd(a, b)
    assert g >= 0 and x * a + y * b == g
    if a or b:
        assert a % g == 0 and b % g == 0


@pytest.mark.parametrize("rows,dim,basis", [
    ([(2, 0), (0, 2)], 2, ((2, 0), (0, 2))),
    ([(1, 1), (2, 0)], 2, ((1, 1), (0, 2))),
    ([], 3, ()),
    ([(1, 1, 1), (2, 0, 0)], 3, ((1, 1, 1), (0, 2, 2))),
    ([(2, 0, 0), (0, 2, 0), (0, 0, 2)], 3, ((2, 0, 0), (0, 2, 0), (0, 0, 2))),
    ([(0, 0), (3, 6), (2, 4)], 2, ((1, 2),)),
])
def test_hnf_examples(rows, dim, basis):
    assert hnf(rows, dim).basis == basis


def test_hnf_needs_dimension():
    with pytest.raises(ValueError):
        hnf([])
    with pytest.raises(DimensionMismatch):
        hnf([(1, 2), (1, 2, 3)])


@settings(max_examples=150)
@given(int_matrices(max_rows=5, max_dim=5, bound=10), st.randoms(use_true_random=False))
def test_hnf_canonical_under_unimodular(data, rnd):
    dim, rows = data
    if not rows:
        return
    U = random_unimodular(rnd, len(rows))
    assert hnf(matmul(U, rows), dim) == hnf(rows, dim)


@given(int_matrices(max_rows=5, max_dim=4, bound=10))
def test_hnf_shape(data):
    dim, rows = data
    L = hnf(rows, dim)
    piv = L.pivots()
    assert piv == sorted(set(piv))
    for k, (p, row) in enumerate(zip(piv, L.basis)):
        assert row[p] > 0
        assert all(x == 0 for x in row[:p])
        for above in L.basis[:k]:
            assert 0 <= above[p] < row[p]
    assert all(L.contains(r) for r in rows)


@given(int_matrices(max_rows=4, max_dim=4, bound=6))
def test_builder_matches_hnf(data):
    dim, rows = data
    b = LatticeBuilder(dim)
    for r in rows:
        grew = b.add(r)
        assert b.contains(r)
        assert isinstance(grew, bool)
    assert b.freeze() == hnf(rows, dim)


@pytest.mark.parametrize("M,diag", [
    ([[2, 0], [0, 4]], [2, 4]),
    ([[2, 0], [0, 3]], [1, 6]),
    ([[0]], [0]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
])
def test_snf_examples(M, diag):
    assert snf(M)[0] == diag


def det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(n))


@settings(max_examples=150)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_snf_properties(m, n, data):
    M = data.draw(st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m))
    diag, U, V = snf(M)
    D = matmul(matmul(U, M), V)
    for i in range(m):
        for j in range(n):
            assert D[i][j] == (diag[i] if i == j else 0)
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[len(nz):] == [0] * (len(diag) - len(nz))
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    if m == n and det(M):
        assert prod(diag) == abs(det(M))


@pytest.mark.parametrize("rows,v,expected", [
    ([(1, 1)], (2, 2), True),
    ([(2, 0), (0, 2)], (1, 1), False),
    ([(1, 1), (0, 2)], (2, 1), False),
    ([], (0, 0), True),
    ([], (0, 1), False),
])
def test_lattice_contains_examples(rows, v, expected):
    assert lattice_contains(hnf(rows, 2), v) is expected


def test_lattice_contains_dimension():
    with pytest.raises(DimensionMismatch):
        lattice_contains(hnf([(1, 0)], 2), (1, 0, 0))


def test_lattice_equal_examples():
    assert lattice_equal(hnf([(1, 1), (2, 0)]), hnf([(1, 1), (0, 2)]))
    assert not lattice_equal(hnf([(2, 0), (0, 2)]), full_lattice(2))
    assert lattice_equal(zero_lattice(3), zero_lattice(3))
    with pytest.raises(DimensionMismatch):
        lattice_equal(zero_lattice(2), zero_lattice(3))


def test_sublattice_from_generators():
    assert sublattice_from_generators([(2, 0, 0), (0, 2, 0), (0, 0, 2)]) == hnf([(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    assert sublattice_from_generators([], 2) == zero_lattice(2)
    assert hnf([(2, 0), (0, 2)]).index() == 4
    assert hnf([(1, 1)], 2).index() is None


@pytest.mark.parametrize("seed", range(3))
def test_lattice_contains_matches_bounded_search(seed):
    rng = random.Random(seed)
    for _ in range(100):
        dim, rows, v = lattice_instance(rng)
        assert lattice_contains(hnf(rows, dim), v) == bounded_combination(rows, v, 10)


def test_membership_beyond_small_coefficients():
    # the only representation is -4 r1 - 26 r2, out of reach of a [-10, 10] search
    rows = [(-1, -5), (0, 1)]
    assert lattice_contains(hnf(rows), (4, -6))
    assert not bounded_combination(rows, (4, -6), 10)
    assert bounded_combination(rows, (4, -6), 26)


@pytest.mark.parametrize("spec,elems,basis", [
    ("C2", [(1,), (1,)], ((1, 1), (0, 2))),
    ("C4", [(1,), (2,)], ((1, 1, ), (0, 2))),
])
def test_relation_lattice_examples(spec, elems, basis):
    H = parse_group(spec)
    L = relation_lattice(H, [H.elem(e) for e in elems])
    if spec == "C4":
        # {u : u1 + 2 u2 = 0 mod 4}, enumerated then saturated
        gens = [u for u in product(range(8), repeat=2) if (u[0] + 2 * u[1]) % 4 == 0]
        assert L == hnf(gens, 2)
    else:
        assert L.basis == basis


def test_relation_lattice_trivial():
    H = parse_group("C1")
    assert relation_lattice(H, [H.zero()] * 3) == full_lattice(3)


@pytest.mark.parametrize("order", range(1, 17))
def test_relation_lattice_index_identity(order):
    rng = random.Random(order)
    for H in abelian_groups_of_order(order):
        elems = list(enumerate_elements(H))
        for _ in range(6):
            k = rng.randint(1, 3)
            a = [rng.choice(elems) for _ in range(k)]
            L = relation_lattice(H, a)
            assert L.rank == k
            for row in L.basis:
                total = H.zero()
                for c, g in zip(row, a):
                    total = total + c * g
                assert total.is_zero()
            assert L.index() == len(closure(H, a))

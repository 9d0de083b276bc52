import random

import pytest
from hypothesis import given, strategies as st

from k3corr.core_arith import is_perfect_square
from k3corr.lattice2 import (
    Elem2,
    Elem8,
    Gram2,
    basis_gram,
    construct_h1_N8,
    gamma_gram,
    gamma_invariant,
    generators,
    in_fundamental_interval,
    inner,
    is_member,
    is_nef_norm_minus1,
    is_reduced_negative,
    mu,
    orthogonal,
)
from k3corr.pell import PellSolution, oracle_b_bound, solve_pm8_oracle
from k3corr.quadorder import DomainError, fundamental_unit

from conftest import nonsquare_1mod8, pm8_family

ALL_1MOD8 = list(range(1, 500, 8))


@pytest.mark.parametrize("d, want", [(17, 1), (41, 3), (1, 1), (9, 3)])
def test_mu(d, want):
    assert mu(d) == want
    assert (want * want - d) % 16 == 0


def test_mu_domain():
    with pytest.raises(DomainError):
        mu(13)


def test_inner_examples():
    assert inner(Elem2(17, 2, 0), Elem2(17, 2, 0)) == 2
    assert inner(Elem8(17, 8, 0), Elem8(17, 8, 0)) == 8
    assert inner(Elem2(17, 13, 3), Elem2(17, 13, 3)) == 8


def test_inner_kind_mismatch():
    with pytest.raises(ValueError):
        inner(Elem2(17, 2, 0), Elem8(17, 8, 0))


def test_membership_examples():
    assert is_member(17, 13, -3, "N8")
    assert not is_member(17, 13, 3, "N8")
    assert not is_member(17, 1, 2, "N2")
    with pytest.raises(ValueError):
        is_member(17, 1, 1, "N4")


@pytest.mark.parametrize("d", ALL_1MOD8)
def test_even_lattices(d):
    rng = random.Random(d)
    for kind, cls in (("N8", Elem8), ("N2", Elem2)):
        gens = generators(d, kind)
        for _ in range(30):
            c = [rng.randint(-9, 9) for _ in gens]
            x = sum(ci * g.x for ci, g in zip(c, gens))
            y = sum(ci * g.y for ci, g in zip(c, gens))
            v = cls(d, x, y)
            assert v.is_member()
            assert inner(v, v) % 2 == 0


@pytest.mark.parametrize("d", ALL_1MOD8)
def test_determinant_minus_d(d):
    assert basis_gram(d, "N8").det == -d
    assert basis_gram(d, "N2").det == -d


@pytest.mark.parametrize("d", ALL_1MOD8)
def test_gamma_of_polarisations(d):
    assert gamma_invariant(Elem8(d, 8, 0)) == 1
    assert gamma_invariant(Elem2(d, 2, 0)) == 1


def test_gamma_rank_one():
    assert gamma_gram(((8,),), (1,)) == 8
    assert gamma_gram(((8, 1), (1, -2)), (1, 0)) == 1


def test_gamma_non_member():
    with pytest.raises(DomainError):
        gamma_invariant(Elem8(17, 13, 3))


@pytest.mark.parametrize("d, sol, sq", [(17, PellSolution(3, 1, -1), -4), (41, PellSolution(7, 1, 1), 4)])
def test_construct_h1_N8(d, sol, sq):
    h1 = construct_h1_N8(d, sol)
    assert h1.is_member()
    assert h1.square == sq
    assert inner(h1, Elem8(d, 8, 0)) % 2 == 0


def test_construct_h1_N8_all_solutions():
    n = 0
    for d in nonsquare_1mod8(2010):
        for sign in (1, -1):
            for sol in pm8_family(d, sign):
                h1 = construct_h1_N8(d, sol)
                assert h1.is_member() and h1.square == 4 * sign
                assert inner(h1, Elem8(d, 8, 0)) % 2 == 0
                n += 1
    assert n >= 200


@pytest.mark.parametrize("d", [d for d in range(17, 200, 8) if is_perfect_square(d) is None])
def test_square_two_members_match_x2_minus_dy2_16(d):
    Y = 3000
    members, odd_solutions = set(), set()
    for y in range(-Y, Y + 1):
        x = is_perfect_square(16 + d * y * y)
        if x is None:
            continue
        for xx in {x, -x}:
            if is_member(d, xx, y, "N8"):
                assert Elem8(d, xx, y).square == 2
                members.add((xx, y))
            if xx % 2 and y % 2:
                odd_solutions.add((xx, y))
    # exactly one of (x, y), (x, -y) is a member for odd solutions, and even ones never are
    assert all(x % 2 and y % 2 for x, y in members)
    for x, y in odd_solutions:
        assert ((x, y) in members) != ((x, -y) in members)
    assert len(members) * 2 == len(odd_solutions)


def test_reflect_line_example():
    g = Gram2(8, 1, -2)
    assert g.reflect_neg2((1, -1), (0, 1)) == (1, 2)
    assert g.reflect_neg2((0, 1), (0, 1)) == (0, -1)


def test_reflect_needs_root():
    with pytest.raises(DomainError):
        Gram2(8, 1, -2).reflect_neg2((1, 0), (1, 0))


def _gram_with_root():
    return st.tuples(st.integers(-30, 30), st.integers(-30, 30)).filter(
        lambda t: -2 * t[0] != t[1] * t[1]).map(lambda t: Gram2(t[0], t[1], -2))


vecs = st.tuples(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))


@given(_gram_with_root(), vecs, vecs)
def test_reflect_isometry_and_involution(g, x, y):
    delta = (0, 1)
    rx, ry = g.reflect_neg2(x, delta), g.reflect_neg2(y, delta)
    assert g.inner(rx, ry) == g.inner(x, y)
    assert g.reflect_neg2(rx, delta) == x


def test_degenerate_gram():
    with pytest.raises(DomainError):
        Gram2(1, 1, 1)


def test_nef_examples():
    u = fundamental_unit(17)
    assert is_nef_norm_minus1(Elem2(17, 2, 0), u)
    assert not is_nef_norm_minus1(Elem2(17, 0, 2), u)
    assert is_nef_norm_minus1(Elem2(17, 13, 3), u)
    with pytest.raises(DomainError):
        is_nef_norm_minus1(Elem2(33, 2, 0), fundamental_unit(33))


def test_fundamental_interval_examples():
    assert in_fundamental_interval(Elem2(17, 13, 3), fundamental_unit(17))
    assert in_fundamental_interval(Elem2(17, 2, 0), fundamental_unit(17))
    assert in_fundamental_interval(Elem2(33, 29, 5), fundamental_unit(33))
    assert in_fundamental_interval(Elem2(101, 2, 0), fundamental_unit(101))


def test_reduced_negative_examples():
    u = fundamental_unit(17)
    assert is_reduced_negative(Elem2(17, 8, 2), u)   # r = eps0, on the boundary
    assert is_reduced_negative(Elem2(17, 3, 1), u)
    assert is_reduced_negative(Elem2(17, 0, 2), u)
    assert orthogonal(Elem2(17, 8, 2)).square == 2 * 17


def test_reduced_negative_domain():
    with pytest.raises(DomainError):
        is_reduced_negative(Elem2(17, 13, 3), fundamental_unit(17))


def test_H_from_certificates_in_interval():
    from k3corr.k3class import classify
    for d in nonsquare_1mod8(600):
        c = classify(d)
        if c.H is not None:
            assert in_fundamental_interval(c.H, c.eps0), d
            if c.eps0.norm == -1:
                assert is_nef_norm_minus1(c.H, c.eps0)

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orefree import (PoleError, Poly, QuatPoly, QuatRat, Quaternion, centralizer_basis, clear_left_denominator,
                     embed_series, quat_arith, verify_centralizer_in_Dt)
from orefree.quaternion import COMMUTING_BUT_OUTSIDE, IN_ZT, NOT_COMMUTING

import _oracle as O

I, J, K = Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
quats = st.builds(Quaternion, rationals, rationals, rationals, rationals)


def random_quat(rng, lo=-4, hi=4):
    return Quaternion(*(Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(4)))


# --- examples ---------------------------------------------------------------


def test_hamilton_relations():
    assert quat_arith(I, J, "*") == K
    assert J * I == -K and I * I == J * J == K * K == I * J * K == Quaternion(-1)


def test_inverse_example(frozen):
    inv = quat_arith(Quaternion(1), I, "+").inverse()
    assert inv == Quaternion(Fraction(1, 2), Fraction(-1, 2))
    assert [str(x) for x in inv.parts] == frozen["quaternion"]["inverse_1_plus_i"]
    assert quat_arith(Quaternion(1, 1), Quaternion(1, 1), "/") == Quaternion(1)
    with pytest.raises(ZeroDivisionError):
        Quaternion().inverse()


def test_parse():
    assert Quaternion.parse("1+i") == Quaternion(1, 1)
    assert Quaternion.parse("2*j - k/2") == Quaternion(0, 0, 2, Fraction(-1, 2))


def test_centralizer_examples(frozen):
    dims = frozen["quaternion"]["centralizer_dims"]
    assert centralizer_basis(I) == [Quaternion(1), I] and dims["i"] == 2
    assert len(centralizer_basis(Quaternion(3))) == 4 == dims["3"]
    basis = centralizer_basis(I + J)
    assert len(basis) == 2 == dims["i+j"]
    assert all(b * (I + J) == (I + J) * b for b in basis)
    assert basis == [Quaternion(1), I + J]


def test_centralizer_in_Dt_examples():
    w = QuatRat(QuatPoly([1, I]), Poly([1, 0, 1], "t"))
    assert verify_centralizer_in_Dt(w, I).status == IN_ZT
    assert verify_centralizer_in_Dt(QuatRat.parse("(1 + i*t)/(1 + t^2)"), I).status == IN_ZT
    assert verify_centralizer_in_Dt(QuatRat(J), I).status == NOT_COMMUTING
    for a in (I, J + K, Quaternion(2, 1, -1, 3)):
        assert verify_centralizer_in_Dt(QuatRat.parse("t"), a).status == IN_ZT


def test_clear_denominator_examples():
    c = clear_left_denominator(I)
    assert str(c.p) == "t^2 + 1" and c.cofactor == QuatPoly([1, I])
    assert clear_left_denominator(Quaternion()).p == Poly([1], "t")
    c = clear_left_denominator(Quaternion(1, 1))
    assert c.p == Poly([1, -2, 2], "t") and c.cofactor == QuatPoly([1, -Quaternion(1, -1)])


def test_embedding_examples(frozen):
    f = embed_series(QuatRat(1, None) / QuatRat(QuatPoly([1, -I])), 4)
    expected = [Quaternion(*map(Fraction, parts)) for parts in frozen["quaternion"]["embed_1_minus_it"]]
    assert [f.coefficient(n) for n in range(5)] == expected
    assert expected == [Quaternion(1), I, Quaternion(-1), -I, Quaternion(1)]
    g = embed_series(QuatRat.parse("1/(1 - t)"), 2)
    assert [g.coefficient(n) for n in range(3)] == [Quaternion(1)] * 3
    h = embed_series(QuatRat.parse("t/(1 - t)"), 2)
    assert [h.coefficient(n) for n in range(3)] == [Quaternion(0), Quaternion(1), Quaternion(1)]


def test_embedding_pole_handling():
    with pytest.raises(PoleError):
        embed_series(QuatRat.parse("1/t"), 3)
    f = embed_series(QuatRat.parse("(1 + i)/(t - t^2)"), 2, laurent=True)
    assert f.start == -1
    assert [f.coefficient(n) for n in range(-1, 3)] == [Quaternion(1, 1)] * 4


# --- properties -------------------------------------------------------------


def test_two_hundred_inverses_against_sympy():
    rng = random.Random(8)
    done = 0
    while done < 200:
        q = random_quat(rng)
        if q.is_zero():
            continue
        inv = q.inverse()
        assert q * inv == Quaternion(1) == inv * q
        assert inv.parts == O.quat_parts(O.quat(*q.parts) ** -1)
        done += 1


@given(quats, quats)
def test_products_match_sympy_and_norm_is_multiplicative(p, q):
    assert (p * q).parts == O.quat_parts(O.quat(*p.parts) * O.quat(*q.parts))
    assert (p * q).norm() == p.norm() * q.norm()
    assert p.norm() == 0 or not p.is_zero()


@given(quats)
def test_centralizer_dimension_matches_sympy(a):
    basis = centralizer_basis(a)
    assert len(basis) == O.centralizer_dim(a.parts)
    assert len(basis) == (4 if a.is_central() else 2)
    assert all(a * b == b * a for b in basis)


def test_hundred_elements_of_Zt_are_recognized():
    rng = random.Random(21)
    basis = centralizer_basis(I)
    for _ in range(100):
        coeffs = [sum((b * Fraction(rng.randint(-3, 3)) for b in basis), Quaternion()) for _ in range(rng.randint(1, 4))]
        den = Poly([rng.randint(1, 3)] + [rng.randint(-2, 2) for _ in range(rng.randint(0, 2))], "t")
        w = QuatRat(QuatPoly(coeffs), den if not den.is_zero() else None)
        check = verify_centralizer_in_Dt(w, I)
        assert check.status == IN_ZT
        assert check.status != COMMUTING_BUT_OUTSIDE
    # a generic element of H(t) does not commute with i
    w = QuatRat(QuatPoly([1, J]), Poly([1, 1], "t"))
    assert verify_centralizer_in_Dt(w, I).status == NOT_COMMUTING


@given(quats, st.lists(quats, min_size=1, max_size=3))
def test_commuting_elements_lie_in_Zt(a, extra):
    basis = centralizer_basis(a)
    coeffs = [sum((b * e.parts[k % 4] for k, b in enumerate(basis)), Quaternion()) for e in extra]
    w = QuatRat(QuatPoly(coeffs), Poly([2, 1], "t"))
    assert verify_centralizer_in_Dt(w, a).status == IN_ZT


def test_hundred_denominator_clearings():
    rng = random.Random(4)
    for _ in range(100):
        a = random_quat(rng)
        c = clear_left_denominator(a)
        assert QuatPoly([1, -a]) * c.cofactor == QuatPoly.from_poly(c.p)
        assert c.p == Poly([1, -2 * a.parts[0], sum(x * x for x in a.parts)], "t")
        assert QuatRat(c.p) / QuatRat(QuatPoly([1, -a])) == QuatRat(c.cofactor)


@given(st.lists(quats, min_size=1, max_size=3), st.lists(st.integers(-3, 3), min_size=1, max_size=3),
       st.integers(1, 3), st.integers(0, 6))
def test_embedding_times_denominator_is_numerator(num, den_tail, c0, N):
    den = Poly([c0] + den_tail, "t")
    w = QuatRat(QuatPoly(num), den)
    f = embed_series(w, N)
    for n in range(N + 1):
        acc = sum((f.coefficient(n - i) * w.den[i] for i in range(min(n, w.den.degree) + 1)), Quaternion())
        assert acc == w.num[n]


@given(quats, st.integers(0, 6))
def test_geometric_embedding(a, N):
    f = embed_series(QuatRat(1) / QuatRat(QuatPoly([1, -a])), N)
    assert [f.coefficient(n) for n in range(N + 1)] == [a ** n for n in range(N + 1)]

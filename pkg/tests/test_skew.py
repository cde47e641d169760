from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orefree import (NotAUnit, PrecisionError, RatFunc, SigmaMismatch, SigmaSpec, SkewPoly, SkewSeries,
                     expand_right_fraction, series_invert, skew_mul, word_to_series)
from orefree.skew import G1, G2, all_words

import _oracle as O

SHIFT1 = SigmaSpec.shift(1)
R = RatFunc.parse


def P(text, sigma=SHIFT1):
    return SkewPoly.parse(text, sigma)


def geometric(b, N, sigma=SHIFT1):
    return expand_right_fraction(P(b, sigma), P("1 - x", sigma), N)


coef = st.sampled_from(["1", "s", "1/s", "s+1", "2/(s-1)", "-3", "s^2", "1/(s^2+1)", "0"]).map(R)
sigmas = st.sampled_from([SHIFT1, SigmaSpec.shift(Fraction(1, 2)), SigmaSpec.dilation(2), SigmaSpec.dilation(-3)])


@st.composite
def skew_polys(draw, sigma=None, max_degree=3):
    sigma = sigma or draw(sigmas)
    cs = draw(st.lists(coef, min_size=1, max_size=max_degree + 1))
    return SkewPoly(cs, sigma)


@st.composite
def unit_series(draw, prec=5):
    sigma = draw(sigmas)
    cs = draw(st.lists(coef, min_size=1, max_size=prec + 1))
    head = draw(coef.filter(bool))
    v = draw(st.integers(-1, 1))
    return SkewSeries(v, [head] + cs, prec, sigma)


# --- examples ---------------------------------------------------------------


def test_twist_rule():
    x = SkewPoly.x(SHIFT1)
    assert skew_mul(x, SkewPoly.constant(R("s"), SHIFT1)) == SkewPoly({1: R("s+1")}, SHIFT1)
    x2 = skew_mul(x, x)
    assert skew_mul(x2, SkewPoly.constant(R("1/s"), SHIFT1)) == SkewPoly({2: R("1/(s+2)")}, SHIFT1)
    p = P("s*x^2 + 3")
    assert skew_mul(p, SkewPoly.constant(1, SHIFT1)) == p


def test_mismatched_sigma_is_rejected():
    with pytest.raises(SigmaMismatch):
        skew_mul(P("x"), P("x", SigmaSpec.shift(2)))


def test_inverse_of_one_minus_x():
    g = series_invert(P("1 - x").to_series(3))
    assert g == SkewSeries(0, [1, 1, 1, 1], 3, SHIFT1) and g.prec == 3
    assert series_invert(SkewSeries(0, [R("s")], 2, SHIFT1)) == SkewSeries(0, [R("1/s")], 2, SHIFT1)


def test_inverse_of_one_minus_sx(frozen):
    g = series_invert(P("1 - s*x").to_series(4))
    expected = [R(c) for c in frozen["invert_1_minus_sx"]]
    assert [g[n] for n in range(5)] == expected
    assert g[2] == R("s*(s+1)")


def test_inverse_needs_nonzero_window():
    with pytest.raises(NotAUnit):
        series_invert(SkewSeries(0, [], 3, SHIFT1))


def test_right_fraction_examples():
    assert geometric("1", 4) == SkewSeries(0, [1] * 5, 4, SHIFT1)
    r = P("1 + s*x^2 - x")
    assert expand_right_fraction(r, r, 5) == SkewSeries.one(5, SHIFT1)
    half = geometric("1/s", 2)
    assert [half[n] for n in range(3)] == [R("1/s")] * 3
    # multiplying back by the denominator recovers the numerator
    assert half * P("1 - x").to_series(2) == P("1/s").to_series(2)
    with pytest.raises(ZeroDivisionError):
        expand_right_fraction(P("1"), P("0"), 3)


def test_word_series_examples(frozen):
    N = 8
    gens = {G1: geometric("1", N), G2: geometric("1/s", N)}
    g21 = word_to_series((G2, G1), gens, N)
    g12 = word_to_series((G1, G2), gens, N)
    for n in range(N + 1):
        assert g21[n] == R(f"{n + 1}/s")
        assert g12[n] == sum((R(f"1/(s+{a})") for a in range(n + 1)), RatFunc(0))
        assert O.same_ratfunc(g21[n], O.sym(frozen["word_coeffs"]["G2*G1"][n]))
        assert O.same_ratfunc(g12[n], O.sym(frozen["word_coeffs"]["G1*G2"][n]))
    assert word_to_series((), gens, N) == SkewSeries.one(N, SHIFT1)


def test_word_series_needs_precision():
    gens = {G1: geometric("1", 3), G2: geometric("1/s", 3)}
    with pytest.raises(PrecisionError) as err:
        word_to_series((G1, G2), gens, 5)
    assert err.value.required == 5


def test_series_text_and_json():
    f = geometric("1/s", 2)
    assert str(f) == "1/s + 1/s*x + 1/s*x^2 + O(x^3)"
    assert f.to_json() == [[0, "1", "s"], [1, "1", "s"], [2, "1", "s"]]
    assert SkewSeries.from_json(f.to_json(), 2, SHIFT1) == f


def test_word_order_is_deglex():
    words = all_words(3)
    assert len(words) == 14
    assert words[:6] == [(G1,), (G2,), (G1, G1), (G1, G2), (G2, G1), (G2, G2)]


def test_window_rule():
    a = SkewSeries(-1, [1, 2, 3], 4, SHIFT1)
    b = SkewSeries(2, [1], 6, SHIFT1)
    assert (a * b).prec == min(4 + 2, 6 - 1)


# --- properties -------------------------------------------------------------


@given(st.data())
def test_skew_product_is_associative(data):
    sigma = data.draw(sigmas)
    a, b, c = (data.draw(skew_polys(sigma)) for _ in range(3))
    assert skew_mul(skew_mul(a, b), c) == skew_mul(a, skew_mul(b, c))


def test_associativity_hundred_triples():
    import random

    rng = random.Random(5)
    pool = ["1", "s", "1/s", "s+1", "2/(s-1)", "-3", "s^2", "1/(s^2+1)"]
    for _ in range(100):
        sigma = rng.choice([SHIFT1, SigmaSpec.dilation(2), SigmaSpec.shift(Fraction(-1, 3))])
        a, b, c = (SkewPoly([R(rng.choice(pool)) for _ in range(rng.randint(1, 4))], sigma) for _ in range(3))
        assert skew_mul(skew_mul(a, b), c) == skew_mul(a, skew_mul(b, c))


@given(unit_series())
def test_inverse_round_trip(f):
    g = series_invert(f)
    assert f * g == SkewSeries.one((f * g).prec, f.sigma)
    assert g * f == SkewSeries.one((g * f).prec, f.sigma)


def test_inverse_round_trip_fifty_units():
    import random

    rng = random.Random(3)
    pool = ["1", "s", "1/s", "s+1", "-2", "s^2-3", "1/(s+4)"]
    for _ in range(50):
        sigma = rng.choice([SHIFT1, SigmaSpec.dilation(3)])
        f = SkewSeries(rng.randint(-1, 1), [R(rng.choice(pool)) for _ in range(6)], 5, sigma)
        g = series_invert(f)
        assert f * g == SkewSeries.one((f * g).prec, sigma)
        assert g * f == SkewSeries.one((g * f).prec, sigma)


@given(st.data())
def test_right_fraction_times_denominator(data):
    sigma = data.draw(sigmas)
    p = data.draw(skew_polys(sigma))
    r = data.draw(skew_polys(sigma).filter(lambda r: r[0] != 0))
    N = 5
    f = expand_right_fraction(p, r, N)
    assert f * r.to_series(N) == p.to_series(N)


@given(st.sampled_from(["1/s", "s", "1/(s^2+1)", "2"]), st.integers(2, 6), st.integers(1, 4))
def test_precision_monotonicity(b, N, extra):
    lo, hi = geometric(b, N), geometric(b, N + extra)
    assert hi.truncate(N) == lo
    gens_lo = {G1: geometric("1", N), G2: lo}
    gens_hi = {G1: geometric("1", N + extra), G2: hi}
    w = (G2, G1, G2)
    assert word_to_series(w, gens_hi, N + extra).truncate(N) == word_to_series(w, gens_lo, N)


@settings(max_examples=30)
@given(st.lists(st.sampled_from([G1, G2]), max_size=3), st.lists(st.sampled_from([G1, G2]), max_size=3),
       st.sampled_from(["1/s", "1/s^2", "s+1"]))
def test_words_multiply_like_a_monoid(u, v, b):
    N = 4
    gens = {G1: geometric("1", N), G2: geometric(b, N)}
    u, v = tuple(u), tuple(v)
    assert word_to_series(u + v, gens, N) == word_to_series(u, gens, N) * word_to_series(v, gens, N)

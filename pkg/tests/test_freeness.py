from fractions import Fraction

import pytest

from orefree import (DEPENDENT, INDEPENDENT, NOT_DETERMINED, EscalationPolicy, FreenessCertificate, Generator,
                     PrecisionError, RatFunc, SigmaSpec, SkewPoly, SkewSeries, certify_free, combine_witnesses,
                     dependence_over_kt, expand_right_fraction, independence_over_k, power_independence,
                     shifted_power_probe)
from orefree._fastseries import expand_words_fast
from orefree.freeness import decode_word, expand_words, verify_relation
from orefree.skew import G1, G2, all_words

import _oracle as O

SHIFT1 = SigmaSpec.shift(1)
R = RatFunc.parse


def geometric(b, N, sigma=SHIFT1):
    return expand_right_fraction(SkewPoly.parse(b, sigma), SkewPoly.parse("1 - x", sigma), N)


def word_images(b, L, N, sigma=SHIFT1):
    gens = {G1: geometric("1", N, sigma), G2: geometric(b, N, sigma)}
    words = all_words(L)
    return words, expand_words(words, gens, N, sigma)


def swap(word):
    return tuple(G2 if a == G1 else G1 for a in word)


# --- independence over Q ----------------------------------------------------


def test_monomials_and_proportional_pair():
    x = SkewPoly.x(SHIFT1)
    res = independence_over_k([SkewSeries.one(2, SHIFT1), x.to_series(2), (x * x).to_series(2)], 2)
    assert res.verdict == INDEPENDENT and res.rank == 3
    for N in (0, 3, 7):
        res = independence_over_k([geometric("1", N), geometric("2", N)], N)
        assert res.verdict == NOT_DETERMINED and res.rank == 1
        assert res.relation == [2, -1]


def test_weyl_words_of_length_two(frozen):
    words, series = word_images("1/s", 2, 8)
    res = independence_over_k([series[w] for w in words], 8)
    assert res.verdict == INDEPENDENT and res.rank == 6
    ref = frozen["weyl_L2_N12"]
    assert ref["rank"] == 6
    words, series = word_images("1/s", 2, 12)
    res12 = independence_over_k([series[w] for w in words], 12)
    assert [list(p) for p in res12.pivots] == ref["pivots"]
    # the pivots found at N = 8 already sit inside the N = 8 window
    assert [list(p) for p in res.pivots] == ref["pivots"]


def test_word_images_match_reference_series():
    words, series = word_images("1/s", 3, 6)
    for w in words:
        ref = O.word_series(w, 1 / O.s, 6)
        ours = [O.to_field(O.sym(str(series[w][n]))) for n in range(7)]
        assert ours == ref, w


def test_ranks_match_reference(frozen):
    words, series = word_images("1/s", 3, 12)
    assert independence_over_k([series[w] for w in words], 12).rank == frozen["weyl_L3"]["rank_N12"] == 13
    words, series = word_images("1/s^2", 3, 12)
    assert independence_over_k([series[w] for w in words], 12).rank == frozen["weyl_square_L3_rank_N12"] == 14


def test_precision_is_checked():
    with pytest.raises(PrecisionError) as err:
        independence_over_k([geometric("1", 4), geometric("1/s", 3)], 4)
    assert err.value.required == 4


# --- certification ----------------------------------------------------------


@pytest.mark.parametrize("c", [2, -3, Fraction(1, 2)])
def test_proportional_generators(c):
    g1 = Generator("1", "1 - x")
    g2 = Generator(f"({c})", "1 - x")
    cert = certify_free(g1, g2, SHIFT1, 1)
    assert cert.verdict == DEPENDENT
    assert cert.relation_vector() == {(G1,): Fraction(c), (G2,): Fraction(-1)}


def test_equal_generators():
    cert = certify_free(Generator("1"), Generator("1"), SHIFT1, 1)
    assert cert.verdict == DEPENDENT and cert.rank == 1


def test_weyl_relation_at_length_three(frozen):
    g1, g2 = Generator.thm23("1/s")
    cert = certify_free(g1, g2, SHIFT1, 3)
    assert cert.verdict == DEPENDENT and cert.rank == 13 and cert.N == 12
    expected = {decode_word(w): Fraction(c) for w, c in frozen["weyl_L3"]["relation"]}
    assert cert.relation_vector() == expected
    assert frozen["weyl_L3"]["relation_vanishes_to"] == 16


def test_dependent_relation_is_sound():
    g1, g2 = Generator.thm23("1/s")
    cert = certify_free(g1, g2, SHIFT1, 3)
    rel = cert.relation_vector()
    assert verify_relation(rel, g1, g2, SHIFT1, 2 * cert.N)
    # independent re-expansion from the generator descriptions
    N = 2 * cert.N
    total = [O.QS(0)] * (N + 1)
    for w, c in rel.items():
        ref = O.word_series(w, 1 / O.s, N)
        total = [a + O.QS(c.numerator) / c.denominator * b for a, b in zip(total, ref)]
    assert all(v == 0 for v in total)


def test_independent_certificate_is_monotone():
    g1, g2 = Generator.thm23("1/s^2")
    cert = certify_free(g1, g2, SHIFT1, 3)
    assert cert.verdict == INDEPENDENT and cert.rank == 14 and len(cert.words) == 14
    N = 2 * cert.N
    gens = {G1: g1.expand(SHIFT1, N), G2: g2.expand(SHIFT1, N)}
    words = [decode_word(w) for w in cert.words]
    series = expand_words_fast(words, gens, N, SHIFT1)
    assert independence_over_k([series[w] for w in words], N).verdict == INDEPENDENT


def test_policy_orders():
    assert EscalationPolicy().orders(3) == [12, 24, 48]
    assert EscalationPolicy(N0=5, max_doublings=0).orders(3) == [5]


def test_truncation_dependence_is_escalated():
    # 1 + x^2 and 1 agree through x^1; the candidate relation fails at x^2 and N = 2 separates them
    g1, g2 = Generator("1 + x^2"), Generator("1")
    cert = certify_free(g1, g2, SHIFT1, 1, EscalationPolicy(N0=1))
    assert cert.verdict == INDEPENDENT and cert.N == 2
    assert [e["outcome"] for e in cert.trace] == ["relation fails at 2N", "full rank"]
    cert = certify_free(g1, g2, SHIFT1, 1, EscalationPolicy(N0=1, max_doublings=0))
    assert cert.verdict == "INCONCLUSIVE" and cert.relation is None and len(cert.trace) == 1


@pytest.mark.parametrize("b, sigma", [("1/s", SHIFT1), ("1/s^2", SHIFT1), ("2", SHIFT1),
                                      ("1/s", SigmaSpec.dilation(2))])
def test_label_swap_invariance(b, sigma):
    g1, g2 = Generator.thm23(b)
    L = 3 if not b.isdigit() else 1
    a = certify_free(g1, g2, sigma, L)
    c = certify_free(g2, g1, sigma, L)
    assert a.verdict == c.verdict and a.rank == c.rank
    if a.verdict == DEPENDENT:
        ra = {swap(w): v for w, v in a.relation_vector().items()}
        rc = c.relation_vector()
        assert set(ra) == set(rc)
        w0 = next(iter(ra))
        assert all(ra[w] * rc[w0] == rc[w] * ra[w0] for w in ra)


def test_certificate_json_round_trip():
    g1, g2 = Generator.thm23("1/s^2")
    cert = certify_free(g1, g2, SHIFT1, 2)
    back = FreenessCertificate.from_json(cert.to_json())
    assert back == cert and back.canonical() == cert.canonical()
    assert "timings" not in cert.canonical()


# --- fast kernel against the plain route ------------------------------------


@pytest.mark.parametrize("b, sigma", [
    ("1/s", SHIFT1), ("s/(s^2+1)", SigmaSpec.shift(Fraction(1, 2))), ("1/(s+1)", SigmaSpec.dilation(2)),
    ("(s-1)/(s+3)^2", SigmaSpec.dilation(Fraction(-1, 3))),
])
def test_fast_expansion_matches_plain_route(b, sigma):
    N = 6
    gens = {G1: geometric("1", N, sigma), G2: geometric(b, N, sigma)}
    words = all_words(3)
    fast = expand_words_fast(words, gens, N, sigma)
    slow = expand_words(words, gens, N, sigma)
    assert all(fast[w] == slow[w] for w in words)


# --- families over Q(t) -----------------------------------------------------


def test_kt_examples():
    rep = dependence_over_kt(["1", "s*t"], basis=["1", "s"])
    assert rep.verdict == INDEPENDENT
    assert [[str(a) for a in row] for row in rep.matrix] == [["1", "0"], ["0", "t"]]
    assert str(rep.minor_gcd) == "t" and rep.bad_points == [0]

    rep = dependence_over_kt(["s", "t*s"])
    assert rep.verdict == DEPENDENT
    lam = rep.relation
    # proportional to (t, -1): t*(s) - 1*(t*s) = 0
    assert str(lam[0] / lam[1]) == "-t"

    rep = dependence_over_kt(["1", "s+t"], basis=["1", "s"])
    assert rep.verdict == INDEPENDENT and rep.bad_points == []
    assert [[str(a) for a in row] for row in rep.matrix] == [["1", "0"], ["t", "1"]]


def test_denominators_add_bad_points():
    rep = dependence_over_kt(["1", "s*t"], ["t - 2", "1"], basis=["1", "s"])
    assert rep.verdict == INDEPENDENT and rep.bad_points == [0, 2]
    causes = {j["point"]: [c["reason"] for c in j["causes"]] for j in rep.justification}
    # the cleared second row carries the factor t - 2, so the minor vanishes there too
    assert causes == {"0": ["all maximal minors vanish"], "2": ["all maximal minors vanish", "denominator vanishes"]}
    rep = dependence_over_kt(["1", "s*t"], ["t^2 - 2", "1"], basis=["1", "s"])
    assert [str(p) for p in rep.irrational_bad] == ["t^2 - 2"]


def test_kt_families_match_reference(frozen):
    fams = frozen["kt_families"]
    assert len(fams) == 50
    assert {f["rank"] == len(f["elements"]) for f in fams} == {True, False}
    for fam in fams:
        rep = dependence_over_kt(fam["elements"])
        full = fam["rank"] == len(fam["elements"])
        assert rep.verdict == (INDEPENDENT if full else DEPENDENT), fam["elements"]
        if full:
            assert [str(a) for a in rep.bad_points] == fam["bad_points"]


def test_specialization_consistency(frozen):
    samples = [Fraction(k, 3) for k in range(-40, 41)]
    for fam in frozen["kt_families"]:
        rep = dependence_over_kt(fam["elements"])
        n = len(fam["elements"])
        alphas = [a for a in samples if a not in rep.bad_points][:20]
        assert len(alphas) == 20
        rows = O.coordinate_rows(fam["elements"])
        for alpha in alphas:
            got = rep.specialized_rank(alpha)
            ref = O.rank_q([[Fraction(str(x.subs(O.t, O.sp.Rational(alpha.numerator, alpha.denominator))))
                             for x in row] for row in rows])
            assert got == ref
            assert (got == n) == (rep.verdict == INDEPENDENT)
        for alpha in rep.bad_points:
            assert rep.specialized_rank(alpha) < n


# --- witnesses and probes ---------------------------------------------------


def test_combine_witnesses_examples():
    N = 5
    x = SkewSeries.monomial(1, 1, N, SHIFT1)
    zero = SkewSeries(N + 1, (), N, SHIFT1)
    assert combine_witnesses(x, zero).specialize(7) == x
    b = combine_witnesses(zero, x)
    assert b.coefficient(1) == {1: RatFunc(1)} and b.specialize(3) == x.left_scale(3)
    b = combine_witnesses(geometric("1", N), x)
    for n in range(N + 1):
        assert b.coefficient(n) == ({0: RatFunc(1), 1: RatFunc(1)} if n == 1 else {0: RatFunc(1)})
    for alpha in (0, 2, Fraction(-1, 2)):
        assert b.specialize(alpha) == geometric("1", N) + x.left_scale(alpha)


def test_combined_witness_products():
    N = 4
    u, v = geometric("1/s", N), geometric("s", N)
    b = combine_witnesses(u, v)
    sq = b * b
    for alpha in (1, -2):
        ub = u + v.left_scale(alpha)
        assert sq.specialize(alpha) == ub * ub


def test_power_independence_examples(frozen):
    x = SkewSeries.monomial(1, 1, 6, SHIFT1)
    assert power_independence(x, 3, 6).verdict == INDEPENDENT
    assert power_independence(SkewSeries.one(4, SHIFT1), 1, 4).verdict == NOT_DETERMINED
    res = power_independence(geometric("1/s", 16), 4, 16)
    assert res.verdict == INDEPENDENT and res.rank == frozen["power_rank_m4_N16"] == 5


def test_shifted_power_probe_examples():
    one = SkewSeries.one(3, SHIFT1)
    res = shifted_power_probe(one, SHIFT1, 1, (1, 4))
    assert res.found and res.relation == [RatFunc(1), RatFunc(-1)]
    s_const = SkewSeries(0, [R("s")], 3, SHIFT1)
    assert not shifted_power_probe(s_const, SHIFT1, 1, (1, 6)).found
    x = SkewSeries.monomial(1, 1, 8, SHIFT1)
    assert not shifted_power_probe(x, SHIFT1, 0, (1, 4)).found
    with pytest.raises(ValueError):
        shifted_power_probe(one, SHIFT1, 1, (1, 4), (3, 6))

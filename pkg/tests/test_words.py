import itertools
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orefree import build_language, find_periodic_word, gap_dichotomy, growth
from orefree.words import BINOMIAL_GROWTH, FINITE, GROWTH, NOT_FOUND, PERIODIC, power_cycle

SHIPPED = {
    "free": ("xy", []),
    "xx-yy": ("xy", ["xx", "yy"]),
    "yy-yx": ("xy", ["yy", "yx"]),
    "yy": ("xy", ["yy"]),
}


def accepted(word, forbidden):
    return not any(f in word for f in forbidden)


def brute_words(alphabet, forbidden, n):
    """Accepted words of length n, grown letter by letter with the substring test only."""
    layer = [""]
    for _ in range(n):
        layer = [w + a for w in layer for a in alphabet if accepted(w + a, forbidden)]
    return layer


def brute_extendable(alphabet, forbidden, n, extra):
    """Length-n prefixes of accepted words of length n + extra."""
    return {w[:n] for w in brute_words(alphabet, forbidden, n + extra)}


# --- examples ---------------------------------------------------------------


def test_membership_examples():
    lang = build_language("xy", ["yy"])
    assert lang.membership("xyx") and not lang.membership("xyyx")
    assert lang.membership("")
    with pytest.raises(ValueError):
        lang.membership("xz")
    free = build_language("xy", [])
    assert all(free.membership("".join(w)) for n in range(7) for w in itertools.product("xy", repeat=n))


def test_alternating_language_is_factors_of_xy_power():
    lang = build_language("xy", ["xx", "yy"])
    factors = {("xy" * 8)[i:i + n] for n in range(7) for i in range(8)}
    for n in range(7):
        for w in itertools.product("xy", repeat=n):
            w = "".join(w)
            assert lang.membership(w) == (w in factors)


def test_empty_alphabet_is_an_error():
    with pytest.raises(ValueError):
        build_language("", [])
    with pytest.raises(ValueError):
        build_language("xy", [""])


def test_growth_examples():
    p = growth(build_language("xy", ["xx", "yy"]), 10)
    assert p.f == (1,) + (2,) * 10 and p.g == (1,) + (2,) * 10
    p = growth(build_language("xy", ["yy"]), 5)
    assert p.f[1:] == (2, 3, 5, 8, 13)
    assert p.cumulative == (1, 3, 6, 11, 19, 32)
    p = growth(build_language("xy", []), 12)
    assert p.f == tuple(2 ** n for n in range(13))
    p = growth(build_language("xyz", ["xy", "z"]), 6)
    assert p.f == (1, 2, 3, 4, 5, 6, 7)


def test_periodic_examples():
    res = find_periodic_word(build_language("xy", ["xx", "yy"]))
    assert res.found and res.u == "xy" and res.index == 1
    assert res.proof["cycle_length"] >= 1
    res = find_periodic_word(build_language("xy", ["yy", "yx"]))
    assert res.found and res.u == "x"
    res = find_periodic_word(build_language("xy", []), horizon=30)
    assert not res.found and res.reason == GROWTH and res.profile.horizon == 31
    res = find_periodic_word(build_language("xy", ["x", "y"]))
    assert not res.found and res.reason == FINITE


def test_construction_is_recorded():
    lang = build_language("xy", ["yy", "xxx", "yxy"])
    res = find_periodic_word(lang)
    c = res.construction
    i = res.index
    assert len(c["v"]) == i * (c["m"] + 1)
    a, b = c["repeat"]
    assert c["blocks"][a] == c["blocks"][b] and c["u"] == "".join(c["blocks"][a:b])
    assert power_cycle(lang, c["u"]) is not None
    assert lang.membership(res.u * 20)


def test_dichotomy_examples():
    res = gap_dichotomy(build_language("xy", ["xx", "yy"]))
    assert res.kind == PERIODIC and res.u == "xy" and res.d == 2
    res = gap_dichotomy(build_language("xy", ["yy"]), 20)
    assert res.kind == BINOMIAL_GROWTH
    assert res.profile.cumulative[:6] == (1, 3, 6, 11, 19, 32)
    assert all(c >= comb(n + 2, 2) for n, c in enumerate(res.profile.cumulative))
    res = gap_dichotomy(build_language("xy", []), 20)
    assert res.kind == BINOMIAL_GROWTH
    assert res.profile.cumulative == tuple(2 ** (n + 1) - 1 for n in range(21))
    assert gap_dichotomy(build_language("xy", ["x", "yy"])).kind == NOT_FOUND


# --- properties -------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(SHIPPED))
def test_automaton_matches_enumeration(name):
    alphabet, forbidden = SHIPPED[name]
    lang = build_language(alphabet, forbidden)
    p = growth(lang, 12)
    extra = lang.num_states + 1
    for n in range(13):
        words = brute_words(alphabet, forbidden, n)
        assert p.f[n] == len(words)
        assert sorted(lang.words(n)) == sorted(words)
        if n <= 8:
            ext = brute_extendable(alphabet, forbidden, n, extra)
            assert set(lang.words(n, extendable=True)) == ext
            assert p.g[n] == len(ext)


forbidden_sets = st.lists(st.text("xyz", min_size=1, max_size=3), max_size=4)


@settings(max_examples=40)
@given(st.sampled_from(["xy", "xyz"]), forbidden_sets)
def test_automaton_matches_enumeration_random(alphabet, forbidden):
    forbidden = [f for f in forbidden if set(f) <= set(alphabet)]
    lang = build_language(alphabet, forbidden)
    p = growth(lang, 6)
    for n in range(7):
        assert p.f[n] == len(brute_words(alphabet, forbidden, n))
    assert all(a >= b for a, b in zip(p.f, p.g))
    assert all(a <= b for a, b in zip(p.g, p.g[1:]))


@pytest.mark.parametrize("name", sorted(SHIPPED))
def test_extendable_prefixes_stabilize(name):
    alphabet, forbidden = SHIPPED[name]
    lang = build_language(alphabet, forbidden)
    S = lang.num_states
    for n in range(6):
        target = set(lang.words(n, extendable=True))
        for p in range(n + S, n + S + 3):
            assert brute_extendable(alphabet, forbidden, n, p - n) == target


@pytest.mark.parametrize("forbidden", [["xx", "yy"], ["yy", "yx"], ["yy", "xxx", "yxy"], ["xyx", "xx", "yyy"]])
def test_unique_extension_law(forbidden):
    lang = build_language("xy", forbidden)
    p = growth(lang, 30)
    stable = [i for i in range(1, 30) if p.g[i] == p.g[i + 1]]
    assert stable
    i = stable[0]
    for w in lang.words(i, extendable=True):
        exts = [w + a for a in "xy" if lang.state_of(w + a) in lang.extendable]
        assert len(exts) == 1
    assert all(p.g[n] == p.g[i] for n in range(i, 31))


@pytest.mark.parametrize("forbidden", [["xx", "yy"], ["yy", "yx"], ["yy", "xxx", "yxy"],
                                       ["xyx", "xx", "yyy"]])
def test_period_is_proved(forbidden):
    lang = build_language("xy", forbidden)
    res = find_periodic_word(lang)
    assert res.found
    assert all(lang.membership(res.u * n) for n in range(21))
    proof = power_cycle(lang, res.u)
    assert proof == res.proof and proof["cycle_length"] >= 1
    # deglex-least among every word whose powers all survive
    for n in range(1, len(res.u) + 1):
        for w in itertools.product("xy", repeat=n):
            w = "".join(w)
            if (n, w) < (len(res.u), res.u) and power_cycle(lang, w) is not None:
                pytest.fail(f"{w} precedes {res.u}")


def test_linear_growth_without_stabilization():
    # x^n, (xy)^n and (xy)^k x^n all extend forever, so g grows without repeating
    lang = build_language("xy", ["yy", "xxy"])
    res = find_periodic_word(lang, horizon=20)
    assert not res.found and res.reason == GROWTH
    assert gap_dichotomy(lang, 20).kind == BINOMIAL_GROWTH
    assert find_periodic_word(build_language("xy", ["xyx", "xx", "yyy"])).u == "xyy"


def test_subword_closure():
    rng = random.Random(17)
    langs = [SHIPPED[k] for k in sorted(SHIPPED)] + [("xyz", ["xz", "yy", "zzz"])]
    for trial in range(100):
        alphabet, forbidden = langs[trial % len(langs)]
        lang = build_language(alphabet, forbidden)
        w = ""
        for _ in range(rng.randint(0, 20)):
            options = [a for a in alphabet if lang.membership(w + a)]
            if not options:
                break
            w += rng.choice(options)
        assert lang.membership(w)
        for i in range(len(w) + 1):
            for j in range(i, len(w) + 1):
                assert lang.membership(w[i:j])

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orefree import RatFunc, SigmaSpec, sigma_apply, solve_additive, thm23_hypothesis, weyl_element_exists
from orefree.sigma_eq import FAILS, HYPOTHESIS_HOLDS, SOLVABLE, UNSOLVABLE

import _oracle as O

SHIFT1 = SigmaSpec.shift(1)
R = RatFunc.parse


def check_solution(f, sigma, verdict):
    assert verdict.status == SOLVABLE
    u = verdict.u
    assert sigma_apply(u, sigma, 1) - u == RatFunc.coerce(f)
    quo, _ = divmod(u.num, u.den)
    assert quo[0] == 0


def test_constant_rhs():
    v = solve_additive(R("1"), SHIFT1)
    check_solution(R("1"), SHIFT1, v)
    assert v.u == R("s")


def test_linear_rhs():
    v = solve_additive(R("s"), SHIFT1)
    check_solution(R("s"), SHIFT1, v)
    assert v.u == R("(s^2 - s)/2")


def test_reciprocal_is_obstructed(frozen):
    v = solve_additive(R("1/s"), SHIFT1)
    assert v.status == UNSOLVABLE
    obs = v.obstruction
    assert obs["kind"] == "pole-orbit" and obs["representative"] == "s"
    assert R(obs["residue"]) == R("1/s")
    # bounded search with poles in s+j, |j| <= B, order <= 2: every system inconsistent
    assert all(not ok for ok in frozen["one_over_s_windows"].values())
    assert sorted(map(int, frozen["one_over_s_windows"])) == list(range(2, 11))


def test_obstruction_names_the_orbit():
    v = solve_additive(R("1/(s+2) + 1/(s-1)^2 + 1/(s^2+1)"), SHIFT1)
    assert v.status == UNSOLVABLE
    # telescoping is possible for a pair of shifted poles of opposite residues
    v = solve_additive(R("1/(s+3) - 1/s"), SHIFT1)
    check_solution(R("1/(s+3) - 1/s"), SHIFT1, v)


def test_fractional_shift():
    sigma = SigmaSpec.shift(Fraction(1, 2))
    f = R("1/(s+1/2) - 1/s + s^2")
    check_solution(f, sigma, solve_additive(f, sigma))
    assert solve_additive(R("1/s"), sigma).status == UNSOLVABLE


def test_dilation_cases():
    q = SigmaSpec.dilation(2)
    v = solve_additive(R("1"), q)
    assert v.status == UNSOLVABLE and v.obstruction["kind"] == "constant-term"
    for f in ["1/s", "s^3 - 2*s", "1/s^2 + s", "1/(2*s+1) - 1/(s+1)"]:
        check_solution(R(f), q, solve_additive(R(f), q))
    assert solve_additive(R("1/(s+1)"), q).status == UNSOLVABLE


def test_hypothesis_examples():
    v = thm23_hypothesis(R("1/s"), SHIFT1)
    assert v.status == HYPOTHESIS_HOLDS and v.holds
    v = thm23_hypothesis(R("s"), SHIFT1)
    assert v.status == FAILS and v.u == R("(s^2-s)/2") and v.e == 0
    v = thm23_hypothesis(R("1"), SHIFT1)
    assert v.status == FAILS and v.u == RatFunc(0) and v.e == -1
    for b in ["s", "1", "s^2 + 3", "1/(s+1) - 1/s + 7"]:
        v = thm23_hypothesis(R(b), SHIFT1)
        lhs = sigma_apply(v.u, SHIFT1, 1) - v.u
        assert lhs == R(b) + RatFunc(v.e)


def test_hypothesis_for_dilation():
    q = SigmaSpec.dilation(2)
    v = thm23_hypothesis(R("1/s"), q)
    assert v.status == FAILS and v.u == R("-2/s") and v.e == 0
    v = thm23_hypothesis(R("3 + 1/(s+1)"), q)
    assert v.status == HYPOTHESIS_HOLDS


def test_weyl_element():
    v = weyl_element_exists(SHIFT1)
    assert v.exists and v.u == R("s")
    v = weyl_element_exists(SigmaSpec.shift(2))
    assert v.exists and v.u == R("s/2")
    assert not weyl_element_exists(SigmaSpec.dilation(2)).exists
    assert weyl_element_exists(SigmaSpec.dilation(2)).to_json() == {"status": "NO"}


def test_solver_agrees_with_frozen_ansatz(frozen):
    cases = frozen["difference_cases"]
    assert len(cases) == 30
    assert any(c["solvable"] for c in cases) and any(not c["solvable"] for c in cases)
    for case in cases:
        v = solve_additive(R(case["text"]), SHIFT1)
        assert v.solvable == case["solvable"], case["text"]
        if v.solvable:
            check_solution(R(case["text"]), SHIFT1, v)


def test_frozen_cases_match_generator(frozen):
    texts = [c["text"] for c in O.random_difference_cases()]
    assert texts == [c["text"] for c in frozen["difference_cases"]]


# --- properties -------------------------------------------------------------

pole = st.tuples(st.integers(-3, 3), st.integers(-4, 4), st.integers(1, 3))
rhs = st.builds(
    lambda poly, poles: RatFunc.parse(" + ".join([f"({c})/(s + {a})^{k}" for a, c, k in poles] + [poly])),
    st.sampled_from(["0", "1", "s", "s^2 - 3", "2*s^3"]),
    st.lists(pole, max_size=3),
)


def telescoped(g):
    return sigma_apply(g, SHIFT1, 1) - g


@given(rhs)
def test_solutions_verify(f):
    v = solve_additive(f, SHIFT1)
    if v.solvable:
        check_solution(f, SHIFT1, v)


@given(rhs, rhs)
def test_linearity(g1, g2):
    f1, f2 = telescoped(g1), telescoped(g2)
    v1, v2, v12 = (solve_additive(f, SHIFT1) for f in (f1, f2, f1 + f2))
    assert v1.solvable and v2.solvable and v12.solvable
    assert (v12.u - v1.u - v2.u).is_constant()


@given(rhs, st.integers(-4, 4))
def test_shift_invariance(f, j):
    assert solve_additive(f, SHIFT1).solvable == solve_additive(sigma_apply(f, SHIFT1, j), SHIFT1).solvable


@pytest.mark.parametrize("text", ["1/(s+1)^2 - 1/(s-2)^2", "1/s^3", "s/(s^2+1) - (s+1)/(s^2+2*s+2)"])
def test_assorted_orbits(text):
    f = R(text)
    v = solve_additive(f, SHIFT1)
    expected = text != "1/s^3"
    assert v.solvable == expected
    if v.solvable:
        check_solution(f, SHIFT1, v)

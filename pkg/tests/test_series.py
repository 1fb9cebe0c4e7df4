from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ymstrata.errors import DivisionInexact, InvalidProgression
from ymstrata.series import (ONE_MINUS, ONE_PLUS, PowerSeries, RationalFunction, as_series,
                             exact_div_one_plus_t, is_nonneg, ps_add, ps_mul, rf_expand,
                             sum_progression)

PS = PowerSeries


def rf(num, *factors):
    return RationalFunction(num, [(ONE_MINUS, k, p) for k, p in factors])


def coeffs(s):
    return [int(c) if c.denominator == 1 else c for c in s.coeffs]


# -- ps_add / ps_mul ---------------------------------------------------------

def test_add_cancellation():
    assert ps_add(PS([1, 1], 2), PS([1, -1], 2)) == PS([2], 2)


def test_add_zero_identity():
    s = PS([3, Fraction(1, 2), -4], 5)
    assert ps_add(PS.zero(5), s) == s


def test_add_of_expansions():
    s = ps_add(rf_expand(rf([1], (2, 1)), 3), rf_expand(rf([0, 1], (2, 1)), 3))
    assert coeffs(s) == oracles.divide([1], [1, -1], 3) == [1, 1, 1, 1]


def test_mixed_truncation_uses_minimum():
    s = PS([1, 1, 1, 1], 3) + PS([1, 1], 1)
    assert s.truncation == 1 and coeffs(s) == [2, 2]


def test_mul_difference_of_squares():
    assert ps_mul(PS([1, 1], 4), PS([1, -1], 4)) == PS([1, 0, -1], 4)


def test_mul_inverse_pair():
    inv = rf_expand(RationalFunction([1], [(ONE_PLUS, 1, 1)]), 5)
    assert ps_mul(PS([1, 1], 5), inv) == PS.one(5)


def test_mul_polynomial_by_geometric():
    geo = rf_expand(rf([1], (2, 1), (4, 1)), 4)
    got = ps_mul(PS([1, 1, 0, 1, 1], 4), geo)
    want = oracles.divide([1, 1, 0, 1, 1], oracles.pmul(oracles.one_minus(2), oracles.one_minus(4)), 4)
    assert coeffs(got) == want == [1, 1, 1, 2, 3]


# -- rf_expand ---------------------------------------------------------------

def test_expand_geometric():
    assert coeffs(rf_expand(rf([1], (2, 1)), 6)) == [1, 0, 1, 0, 1, 0, 1]


def test_expand_square_over_difference():
    got = rf_expand(rf([1, 2, 1], (2, 1)), 3)
    assert coeffs(got) == oracles.divide([1, 1], [1, -1], 3) == [1, 2, 2, 2]


def test_expand_bg_u2_genus_one():
    f = RationalFunction([1, 1, 0, 1, 1], [(ONE_MINUS, 2, 1), (ONE_MINUS, 4, 1)])
    assert coeffs(f.expand(4)) == [1, 1, 1, 2, 3]


def test_expand_one_plus_factor_and_powers():
    f = RationalFunction([1], [(ONE_PLUS, 2, 2), (ONE_MINUS, 3, 1)])
    den = oracles.pmul(oracles.ppow(oracles.one_plus(2), 2), oracles.one_minus(3))
    assert coeffs(f.expand(15)) == oracles.divide([1], den, 15)


def test_expand_negative_order_rejected():
    with pytest.raises(ValueError):
        rf([1], (2, 1)).expand(-1)


# -- exact_div_one_plus_t ----------------------------------------------------

def test_div_factorization():
    assert exact_div_one_plus_t(PS([1, 0, -1], 2), polynomial=True) == PS([1, -1], 2)


def test_div_zero():
    assert exact_div_one_plus_t(PS.zero(4), polynomial=True).is_zero()


def test_div_inexact_polynomial():
    with pytest.raises(DivisionInexact) as info:
        exact_div_one_plus_t(PS([1, 0, 1], 2), polynomial=True)
    assert info.value.remainder != 0


def test_div_series_mode_always_succeeds():
    q = exact_div_one_plus_t(PS([1, 0, 1], 6))
    assert (PS([1, 1], 6) * q) == PS([1, 0, 1], 6)


# -- is_nonneg ---------------------------------------------------------------

@pytest.mark.parametrize("N", [0, 1, 7, 40])
def test_nonneg_geometric(N):
    assert is_nonneg(rf_expand(rf([1], (1, 1)), N))


def test_nonneg_fails():
    assert not is_nonneg(PS([1, -1], 3))


# -- sum_progression ---------------------------------------------------------

@pytest.mark.parametrize("residue,want", [((1, 2), rf([0, 0, 1], (4, 1))), ((0, 2), rf([0, 0, 0, 0, 1], (4, 1)))])
def test_progression_rank2_genus2(residue, want):
    g = 2
    series, closed = sum_progression(2, g - 2, residue, 40)
    assert closed == want
    assert series == want.expand(40)


def test_progression_rank3_genus1():
    series, closed = sum_progression(4, 3 * (1 - 1) - 1, None, 20)
    assert closed == rf([0, 0, 0, 1], (4, 1))
    assert coeffs(series) == oracles.divide(oracles.mono(3), oracles.one_minus(4), 20)


def test_progression_errors():
    with pytest.raises(InvalidProgression):
        sum_progression(0, 1)
    with pytest.raises(InvalidProgression):
        sum_progression(2, 0, (0, 0))
    with pytest.raises(InvalidProgression):
        sum_progression(1, -5)


# -- RationalFunction --------------------------------------------------------

def test_rf_equality_across_factorizations():
    assert rf([1], (2, 1)) == rf([1, 0, 1], (4, 1))
    assert rf([1], (2, 1)) != rf([1], (4, 1))
    assert rf([1], (2, 1)).same_form(rf([1], (2, 1)))
    assert not rf([1], (2, 1)).same_form(rf([1, 0, 1], (4, 1)))


def test_rf_arithmetic_against_oracle():
    a = RationalFunction([1, 2], [(ONE_MINUS, 2, 1)])
    b = RationalFunction([0, 0, 3], [(ONE_MINUS, 4, 1), (ONE_PLUS, 1, 1)])
    N = 25
    assert as_series(a + b, N) == a.expand(N) + b.expand(N)
    assert as_series(a * b, N) == a.expand(N) * b.expand(N)
    assert as_series(a - b, N) == a.expand(N) - b.expand(N)
    assert as_series(a ** 3, N) == a.expand(N) ** 3
    assert as_series(a.shift(5), N) == a.expand(N).shift(5)


def test_rf_rejects_non_integers():
    with pytest.raises(ValueError):
        RationalFunction([0.5])
    with pytest.raises(ValueError):
        RationalFunction([Fraction(1, 2)])


def test_rf_strings():
    assert str(rf([1, 1], (2, 1), (4, 1))) == "(1 + t)/((1-t^2)(1-t^4))"
    assert str(rf([2], (4, 1))) == "2/(1-t^4)"
    assert str(RationalFunction([1, -1])) == "1 - t"


def test_rf_immutable():
    f = rf([1], (2, 1))
    with pytest.raises(AttributeError):
        f.sign = -1


def test_rf_json_round_trip():
    f = RationalFunction([1, 0, 3], [(ONE_MINUS, 2, 2), (ONE_PLUS, 3, 1)], -1)
    g = RationalFunction.from_json(f.to_json())
    assert g.same_form(f)


def test_ps_json_round_trip_and_str():
    s = PS([1, -1, 0, Fraction(1, 2)], 4)
    assert PS.from_json(s.to_json()) == s
    assert str(s) == "1 - t + (1/2)t^3 + O(t^5)"


def test_truncate_cannot_extend():
    with pytest.raises(ValueError):
        PS([1], 2).truncate(3)


# -- property suites (>= 1000 examples each) ---------------------------------

small_int = st.integers(min_value=-6, max_value=6)
small_frac = st.builds(Fraction, small_int, st.integers(min_value=1, max_value=4))


@st.composite
def series(draw, N=None):
    if N is None:
        N = draw(st.integers(min_value=0, max_value=8))
    cs = draw(st.lists(small_frac, min_size=0, max_size=N + 1))
    return PS(cs, N)


@st.composite
def series_triple(draw):
    N = draw(st.integers(min_value=0, max_value=8))
    return draw(series(N)), draw(series(N)), draw(series(N))


@st.composite
def rational_functions(draw):
    num = draw(st.lists(small_int, min_size=1, max_size=5))
    factors = draw(st.lists(
        st.tuples(st.sampled_from([ONE_MINUS, ONE_PLUS]), st.integers(1, 4), st.integers(1, 2)),
        max_size=3))
    return RationalFunction(num, factors, draw(st.sampled_from([1, -1])))


PROPS = settings(max_examples=1000, deadline=None)


@PROPS
@given(series_triple())
def test_prop_distributive(abc):
    a, b, c = abc
    assert a * (b + c) == a * b + a * c


@PROPS
@given(series_triple())
def test_prop_ring_laws(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a - a == PS.zero(a.truncation)


@PROPS
@given(series())
def test_prop_division_round_trip(s):
    q = exact_div_one_plus_t(s)
    assert PS([1, 1], s.truncation) * q == s


@PROPS
@given(st.lists(small_int, min_size=1, max_size=8))
def test_prop_polynomial_division_round_trip(q):
    p = oracles.pmul(q, [1, 1])
    N = len(p) - 1
    got = exact_div_one_plus_t(PS(p, N), polynomial=True)
    assert coeffs(got)[:len(q)] == q


@PROPS
@given(series_triple(), st.integers(min_value=0, max_value=8))
def test_prop_truncation_coherent(abc, M):
    a, b, _ = abc
    M = min(M, a.truncation)
    assert (a * b).truncate(M) == a.truncate(M) * b.truncate(M)
    assert (a + b).truncate(M) == a.truncate(M) + b.truncate(M)


@PROPS
@given(rational_functions(), rational_functions(), st.integers(min_value=0, max_value=12))
def test_prop_expand_is_ring_map(f, g, N):
    assert as_series(f + g, N) == f.expand(N) + g.expand(N)
    assert as_series(f * g, N) == f.expand(N) * g.expand(N)


@PROPS
@given(rational_functions(), st.integers(min_value=0, max_value=12))
def test_prop_expand_matches_oracle(f, N):
    den = [1]
    for form, k, p in f.denominator:
        factor = oracles.one_minus(k) if form == ONE_MINUS else oracles.one_plus(k)
        den = oracles.pmul(den, oracles.ppow(factor, p))
    assert list(f.expand(N).coeffs) == oracles.divide(list(f.signed_numerator()), den, N)


@PROPS
@given(rational_functions(), rational_functions())
def test_prop_rf_equality_is_exact(f, g):
    # f * (1 - t^2) / (1 - t^2) is the same function written differently
    h = f * RationalFunction([1, 0, -1], [(ONE_MINUS, 2, 1)])
    assert h == f
    assert (f == g) == (as_series(f - g, 60).is_zero())

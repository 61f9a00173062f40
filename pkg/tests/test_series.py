from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kfib._precision import fp, to_mp
from kfib.errors import SingularError, UsageError
from kfib.quadfield import QuadNumber
from kfib.series import (
    TruncatedSeries,
    s_compose,
    s_diff,
    s_div,
    s_exp,
    s_log,
    s_mul,
    s_pow_real,
    s_revert,
)

from strategies import small_rationals

ORDER = 5


def series(order=ORDER, lead=None):
    head = st.just([lead]) if lead is not None else st.lists(small_rationals, min_size=1, max_size=1)
    return st.builds(
        lambda h, t: TruncatedSeries(h + t), head, st.lists(small_rationals, min_size=order, max_size=order)
    )


def normalized(order=ORDER):
    return st.lists(small_rationals, min_size=order - 1, max_size=order - 1).map(
        lambda t: TruncatedSeries([0, 1] + t)
    )


@given(series(), series(), series())
def test_multiplication_laws(a, b, c):
    assert s_mul(a, b) == s_mul(b, a)
    assert s_mul(s_mul(a, b), c) == s_mul(a, s_mul(b, c))
    assert a * (b + c) == a * b + a * c


@given(series(), series(lead=Fraction(1)))
def test_division_undoes_multiplication(a, b):
    assert s_div(s_mul(a, b), b) == a


@given(normalized())
def test_reversion_is_a_two_sided_inverse(f):
    g = s_revert(f)
    z = TruncatedSeries.identity(ORDER)
    assert s_compose(f, g) == z
    assert s_compose(g, f) == z


@given(series(lead=Fraction(1)))
def test_log_exp_round_trip(f):
    assert s_exp(s_log(f)) == f


@given(series(lead=Fraction(1)), st.fractions(-3, 3, max_denominator=6), st.fractions(-3, 3, max_denominator=6))
def test_real_powers_compose(f, p, q):
    assert s_mul(s_pow_real(f, p), s_pow_real(f, q)) == s_pow_real(f, p + q)


@given(series(lead=Fraction(1)))
def test_square_root(f):
    r = s_pow_real(f, Fraction(1, 2))
    assert s_mul(r, r) == f


@given(normalized(), normalized())
def test_float_mode_tracks_exact_mode(f, h):
    exact = s_compose(s_revert(f), h)
    approx = s_compose(s_revert(f.to_float()), h.to_float())
    for x, y in zip(exact, approx):
        assert abs(to_mp(x) - y) < _tol(x)


def test_derivative():
    f = TruncatedSeries([1, 2, 3, 4])
    assert s_diff(f) == TruncatedSeries([2, 6, 12, 0])


def test_quadratic_coefficients():
    r = QuadNumber(0, 1, 5)
    f = TruncatedSeries([1, r, 2])
    assert s_mul(f, f)[1] == 2 * r
    assert s_div(f, f) == TruncatedSeries.one(2)


def test_mode_mixing_is_rejected():
    a = TruncatedSeries([1, 1])
    with pytest.raises(UsageError):
        a + a.to_float()
    with pytest.raises(UsageError):
        a * 0.5


def test_singular_division():
    with pytest.raises(SingularError):
        s_div(TruncatedSeries([1, 1]), TruncatedSeries([0, 1]))


def test_reversion_needs_normalization():
    with pytest.raises(UsageError):
        s_revert(TruncatedSeries([0, 2, 1]))


def test_exact_power_rejects_float_exponent():
    with pytest.raises(UsageError):
        s_pow_real(TruncatedSeries([1, 1]), 0.5)


def _tol(x):
    return fp().ldexp(1, 20 - fp().prec) * max(1, abs(to_mp(x)))

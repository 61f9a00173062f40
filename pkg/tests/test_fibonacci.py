from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kfib.errors import UsageError
from kfib.fibonacci import KappaContext, kfib_binet, kfib_rec, lucas_like
from kfib.quadfield import qsign

from strategies import kappas


@given(kappas, st.integers(0, 80))
def test_recurrence_matches_closed_form(k, n):
    ctx = KappaContext.make(k)
    assert kfib_rec(ctx, n) == kfib_binet(ctx, n)


@given(kappas)
def test_tau_is_the_root_of_the_characteristic_polynomial(k):
    ctx = KappaContext.make(k)
    t = ctx.tau
    assert t * t == ctx.kappa * t + 1
    if k > 0:
        assert qsign(t) < 0


def test_classical_fibonacci():
    ctx = KappaContext.make(1)
    assert [kfib_rec(ctx, n) for n in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]


def test_kappa_three():
    ctx = KappaContext.make(3)
    assert [kfib_rec(ctx, n) for n in range(6)] == [0, 1, 3, 10, 33, 109]


def test_pell_numbers():
    ctx = KappaContext.make(2)
    assert [kfib_rec(ctx, n) for n in range(7)] == [0, 1, 2, 5, 12, 29, 70]


def test_past_the_cache():
    ctx = KappaContext.make(Fraction(1, 2), cache=4)
    assert kfib_rec(ctx, 30) == kfib_binet(ctx, 30)


def test_lucas_like_values():
    ctx = KappaContext.make(1)
    assert [lucas_like(ctx, n) for n in range(1, 7)] == [1, 3, 4, 7, 11, 18]
    with pytest.raises(UsageError):
        lucas_like(ctx, 0)


@pytest.mark.parametrize("bad", [0, 1.5, True, None])
def test_bad_kappa(bad):
    with pytest.raises(UsageError):
        KappaContext.make(bad)


def test_negative_index():
    ctx = KappaContext.make(1)
    for fn in (kfib_rec, kfib_binet):
        with pytest.raises(UsageError):
            fn(ctx, -1)


def test_string_kappa():
    assert KappaContext.make("3/2").kappa == Fraction(3, 2)

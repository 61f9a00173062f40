from fractions import Fraction

import numpy as np
from hypothesis import given

from kfib._precision import fp, to_mp
from kfib.fibonacci import KappaContext
from kfib.series import TruncatedSeries
from kfib.shelllike import (
    CaratheodoryPrefix,
    caratheodory_from_schwarz,
    caratheodory_grid,
    min_real_part_probe,
    ptilde_coeff_closed,
    ptilde_series,
    schwarz_series,
    subordination_compose,
    subordination_expand,
)

from strategies import kappas, small_rationals


@given(kappas)
def test_series_division_matches_closed_coefficients(k):
    ctx = KappaContext.make(k)
    p = ptilde_series(ctx, 15)
    assert p[0] == 1
    assert all(p[n] == ptilde_coeff_closed(ctx, n) for n in range(1, 16))


@given(kappas, small_rationals, small_rationals, small_rationals)
def test_closed_subordination_matches_composition(k, c1, c2, c3):
    ctx = KappaContext.make(k)
    c = CaratheodoryPrefix(c1, c2, c3)
    assert subordination_expand(ctx, c) == subordination_compose(ctx, c)


@given(small_rationals, small_rationals, small_rationals)
def test_schwarz_round_trip(c1, c2, c3):
    h = caratheodory_from_schwarz(schwarz_series(CaratheodoryPrefix(c1, c2, c3)))
    assert h == TruncatedSeries([1, c1, c2, c3])


def test_identity_schwarz_function_gives_ptilde():
    # h = (1+z)/(1-z) has c_n = 2 and u(z) = z
    ctx = KappaContext.make(2)
    got = subordination_expand(ctx, CaratheodoryPrefix(2, 2, 2))
    assert got == ptilde_series(ctx, 3)


def test_float_prefix_gives_float_series():
    ctx = KappaContext.make(1)
    exact = subordination_expand(ctx, CaratheodoryPrefix(Fraction(1, 2), 1, -1))
    approx = subordination_expand(ctx, CaratheodoryPrefix(0.5, 1.0, -1.0))
    assert approx.mode == "float"
    assert all(abs(to_mp(x) - y) < _tol(x) for x, y in zip(exact, approx))


def test_real_part_probe():
    val, theta = min_real_part_probe(KappaContext.make(1), 0.95, 1024)
    assert val >= 5**0.5 / 10
    assert 0 <= theta < 2 * np.pi


def test_grid_layout():
    c1, c2, c3 = caratheodory_grid(64)
    assert c1.shape == (64,)
    assert np.allclose([c1[0], c2[0], c3[0]], 2)
    for c in (c1, c2, c3):
        assert np.all(np.abs(c) <= 2 + 1e-12)
    # midpoints lie strictly inside
    assert np.all(np.abs(c1[32:]) < 2)


def _tol(x):
    return fp().ldexp(1, 20 - fp().prec) * max(1, abs(to_mp(x)))

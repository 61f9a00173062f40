from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kfib._precision import to_mp
from kfib.errors import SingularParameterError, UsageError
from kfib.fibonacci import KappaContext
from kfib.functionals import (
    ClassSpec,
    CoefficientPair,
    apply_functional,
    coefficient_equations,
    functional_matches_printed,
    normalized_series,
    printed_constants,
)
from kfib.series import TruncatedSeries, s_diff, s_div, s_div_z, s_mul_z
from kfib.shelllike import CaratheodoryPrefix

from strategies import small_rationals

pos = st.fractions(min_value=Fraction(1, 8), max_value=3, max_denominator=8)
nonneg = st.fractions(min_value=0, max_value=3, max_denominator=8)
unit = st.fractions(min_value=0, max_value=1, max_denominator=8)

specs = st.one_of(
    st.builds(lambda g, l, a: ClassSpec("W", g, l, a), pos, nonneg, nonneg),
    st.builds(lambda g, l: ClassSpec("R", g, l), pos, nonneg),
    st.builds(lambda l: ClassSpec("B", 1, 1 + l), nonneg),
    st.builds(lambda l: ClassSpec("P", 1, l), unit),
)


@given(specs, small_rationals, small_rationals)
def test_printed_constants_match_direct_expansion(spec, a2, a3):
    flags = functional_matches_printed(spec, a2, a3)
    assert all(flags.values()), flags


def test_float_parameters_match_too():
    spec = ClassSpec("R", 1.3, 2**0.5)
    assert all(functional_matches_printed(spec, 0.2, -0.4).values())


def _f(pair=CoefficientPair(Fraction(1, 3), Fraction(-1, 5), Fraction(1, 7)), order=4):
    return normalized_series(pair, order=order)


def _zfp_over_f(f):
    N = f.order - 1
    return s_div(s_diff(f).truncate(N), s_div_z(f))


def test_starlike_collapses():
    f = _f()
    expected = _zfp_over_f(f)
    assert apply_functional(ClassSpec("B", 1, 1), f) == expected
    assert apply_functional(ClassSpec("P", 1, 0), f) == expected


def test_derivative_collapses():
    f = _f()
    expected = s_diff(f).truncate(3)
    assert apply_functional(ClassSpec("W", 1, 0, 1), f) == expected
    assert apply_functional(ClassSpec("R", 1, 1), f) == expected


def test_convex_collapse_uses_first_power_of_z():
    f = _f()
    d1 = s_diff(f).truncate(3)
    zf2 = s_mul_z(s_diff(s_diff(f))).truncate(3)
    expected = TruncatedSeries.one(3) + s_div(zf2, d1)
    assert apply_functional(ClassSpec("P", 1, 1), f) == expected


def test_w_with_zero_parameters_is_f_over_z():
    f = _f()
    assert apply_functional(ClassSpec("W", 1, 0, 0), f) == s_div_z(f)


def test_printed_constants_values():
    assert printed_constants(ClassSpec("P", 1, 1)) == (2, 6, -4)
    assert printed_constants(ClassSpec("R", 2, 1)) == (1, Fraction(3, 2), 0)


@given(specs, small_rationals, small_rationals)
def test_equations_are_self_consistent(spec, c1, c2):
    ctx = KappaContext.make(2)
    c = CaratheodoryPrefix(c1, c2)
    sol = coefficient_equations(ctx, spec, c, c.negated_first())
    assert sol.a2sq_c1_route == sol.a2 * sol.a2
    assert all(sol.consistency_flags.values())


def test_float_equations_track_exact():
    ctx = KappaContext.make(1)
    spec = ClassSpec("W", Fraction(3, 2), 1, Fraction(1, 2))
    c = CaratheodoryPrefix(Fraction(1, 2), Fraction(-3, 4))
    e = coefficient_equations(ctx, spec, c, c.negated_first())
    cf = CaratheodoryPrefix(0.5, -0.75)
    f = coefficient_equations(ctx, spec, cf, cf.negated_first())
    assert abs(to_mp(e.a3) - f.a3) < 1e-30
    assert abs(to_mp(e.a2sq_added_route) - f.a2sq_added_route) < 1e-30


def test_inverse_prefix_must_negate_c1():
    ctx = KappaContext.make(1)
    c = CaratheodoryPrefix(1, 1)
    with pytest.raises(UsageError):
        coefficient_equations(ctx, ClassSpec("W"), c, c)


def test_degenerate_parameters():
    ctx = KappaContext.make(1)
    c = CaratheodoryPrefix(1, 1)
    spec = ClassSpec("B", 1, Fraction(1, 2), strict=False)
    with pytest.raises(SingularParameterError):
        coefficient_equations(ctx, spec, c, c.negated_first())


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(family="X"),
        dict(family="W", gamma=0),
        dict(family="B", gamma=2),
        dict(family="R", alpha=1),
        dict(family="W", lam=-1),
        dict(family="B", lam=Fraction(1, 2)),
        dict(family="P", lam=2),
        dict(family="R", lam=1j),
    ],
)
def test_parameter_validation(kwargs):
    with pytest.raises(UsageError):
        ClassSpec(**kwargs)


def test_needs_normalized_input():
    with pytest.raises(UsageError):
        apply_functional(ClassSpec("W"), TruncatedSeries([0, 2, 1]))

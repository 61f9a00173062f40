from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kfib.bounds import (
    SPECIAL_CASES,
    bounds_B,
    bounds_for,
    bounds_P,
    bounds_R,
    bounds_W,
    cor_KSL,
    cor_SL,
    cor_SLgamma,
    fekete,
)
from kfib.errors import UsageError
from kfib.fibonacci import KappaContext
from kfib.functionals import ClassSpec
from kfib.quadfield import QuadNumber

from strategies import kappas

pos = st.fractions(min_value=Fraction(1, 8), max_value=3, max_denominator=8)
nonneg = st.fractions(min_value=0, max_value=3, max_denominator=8)
unit = st.fractions(min_value=0, max_value=1, max_denominator=8)

specs = st.one_of(
    st.builds(lambda g, l, a: ClassSpec("W", g, l, a), pos, nonneg, nonneg),
    st.builds(lambda g, l: ClassSpec("R", g, l), pos, nonneg),
    st.builds(lambda l: ClassSpec("B", 1, 1 + l), nonneg),
    st.builds(lambda l: ClassSpec("P", 1, l), unit),
)
positive_kappas = kappas.filter(lambda k: k > 0)


def test_reference_value_w():
    r = bounds_W(KappaContext.make(1), 1, 0, 0)
    assert r.valid and r.mode == "exact"
    assert float(r.a2_bound) == pytest.approx(0.41330423812239926, rel=1e-15)
    assert r.a2_bound_sq == QuadNumber(Fraction(-1, 2), Fraction(3, 10), 5)


def test_invalid_domain_is_reported_not_raised():
    r = bounds_W(KappaContext.make(1), 1, 5, 0)
    assert not r.valid
    assert r.radicand == QuadNumber(5, -4, 5)
    assert r.a2_bound is None


def test_convex_case_value():
    r = cor_KSL(KappaContext.make(1))
    assert float(r.a2_bound) == pytest.approx(0.1937007136583712, rel=1e-14)


@given(specs, positive_kappas)
def test_a3_bound_is_flat_plus_a2_square(spec, k):
    r = bounds_for(spec, KappaContext.make(k))
    if r.valid:
        assert r.a3_bound_display == r.fekete_flat + r.a2_bound_sq


@given(specs, positive_kappas)
def test_fekete_branches_meet_at_threshold(spec, k):
    r = bounds_for(spec, KappaContext.make(k))
    if not r.valid:
        return
    assert r.fekete_slope * r.fekete_threshold == r.fekete_flat
    for mu in (1 - r.fekete_threshold, 1 + r.fekete_threshold):
        assert r.fekete(mu).value == r.fekete_flat


@given(specs, positive_kappas, st.fractions(-5, 6, max_denominator=4))
def test_fekete_structure(spec, k, mu):
    r = bounds_for(spec, KappaContext.make(k))
    if not r.valid:
        return
    fr = r.fekete(mu)
    assert fr.h_mu == (1 - mu) * r.a2_sq_coeff
    if abs(1 - mu) <= r.fekete_threshold:
        assert fr.branch == "flat" and fr.value == r.fekete_flat
    else:
        assert fr.branch == "slope" and fr.value == r.fekete_slope * abs(1 - mu)
    assert r.fekete(1).branch == "flat"


def test_module_level_fekete_matches_report():
    ctx = KappaContext.make(2)
    rep = bounds_R(ctx, 2, Fraction(1, 2))
    assert fekete("R", ctx, 3, gamma=2, lam=Fraction(1, 2)) == rep.fekete(3)


def test_float_parameters():
    ctx = KappaContext.make(1)
    exact = bounds_P(ctx, Fraction(1, 2))
    approx = bounds_P(ctx, 0.5)
    assert approx.mode == "float"
    assert float(approx.a2_bound) == pytest.approx(float(exact.a2_bound), rel=1e-15)


def test_complex_gamma_uses_moduli():
    r = bounds_W(KappaContext.make(1), 1 + 1j, 0, 0)
    assert r.valid and r.a3_bound_display is None
    assert any("moduli" in n for n in r.notes)
    assert abs(r.a3_bound - (r.fekete_flat + r.a2_bound_sq)) < 1e-30


def test_b_statement_note():
    r = bounds_B(KappaContext.make(2), 1)
    assert r.valid and r.notes


def test_special_cases_agree():
    ctx = KappaContext.make(3)
    assert bounds_P(ctx, 0).identity_key() == cor_SL(ctx).identity_key()
    assert cor_SLgamma(ctx, 1).identity_key() == cor_SL(ctx).identity_key()
    assert set(SPECIAL_CASES) == {"FSL", "BSL", "HSL", "SLg", "SL", "KSL"}


def test_special_cases_are_exact_only():
    with pytest.raises(UsageError):
        cor_SLgamma(KappaContext.make(1), 0.5)

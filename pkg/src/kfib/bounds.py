"""Closed-form coefficient and Fekete-Szego bounds for the four families and their special cases.

Every family shares one shape.  With ``X = kappa - (kappa^2 + 2) tau`` and a
family denominator ``Den`` (the radicand):

    a2^2       = K (c2 + d2),        K = c g^2 kappa^3 tau^2 / (4 Den)
    a3         = a2^2 + F (c2 - d2), F = g kappa tau / (4 s)
    |a2|      <= |g| |kappa tau| sqrt(kappa) sqrt(c / Den)
    |a3|      <= |g| |kappa tau| / s + |a2|_max^2
    |a3 - mu a2^2| <= flat  if |mu - 1| <= threshold, else slope |1 - mu|

where ``g`` is gamma (1 for B, P), ``c`` is 2 for R and 1 otherwise and ``s``
is the family's flat denominator.  The report also carries each family's
printed ``|a3|`` quotient, evaluated independently of the sum above.

Exact mode (rational kappa, lambda, alpha and rational gamma > 0) keeps every
quantity in Q(sqrt(kappa^2+4)) and takes signs exactly; only ``a2_bound``
itself, a square root, is a float.  Other inputs run in float mode at the
working precision, with moduli for complex gamma.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction

from ._precision import fp, is_exact, to_mp
from .errors import UsageError
from .fibonacci import KappaContext
from .functionals import ClassSpec
from .quadfield import QuadNumber, qfloat, qsign

__all__ = [
    "BoundReport",
    "FeketeReport",
    "bounds_W",
    "bounds_R",
    "bounds_B",
    "bounds_P",
    "bounds_for",
    "fekete",
    "cor_FSL",
    "cor_BSL",
    "cor_HSL",
    "cor_SLgamma",
    "cor_SL",
    "cor_KSL",
    "SPECIAL_CASES",
]


@dataclass(frozen=True)
class FeketeReport:
    mu: object
    value: object
    branch: str
    threshold: object
    h_mu: object


@dataclass(frozen=True)
class BoundReport:
    """Bounds for one parameter point.

    ``a2_sq_coeff`` and ``a3_coeff`` are the K and F of the module docstring;
    the sweep in :mod:`kfib.verify` rebuilds ``a2``, ``a3`` from them.
    Unset fields are ``None`` when ``valid`` is false.
    """

    family: str
    params: dict
    mode: str
    valid: bool
    radicand: object
    a2_bound: object = None
    a2_bound_sq: object = None
    a3_bound: object = None
    a3_bound_display: object = None
    fekete_flat: object = None
    fekete_slope: object = None
    fekete_threshold: object = None
    a2_sq_coeff: object = None
    a3_coeff: object = None
    notes: tuple = field(default=(), compare=False)

    def fekete(self, mu) -> FeketeReport:
        if not self.valid:
            raise UsageError(f"{self.family} bounds are not valid at {self.params}")
        if self.mode == "exact" and is_exact(mu):
            dist = abs(_lift_like(1 - _as_exact(mu), self.fekete_flat))
            one_minus = 1 - _as_exact(mu)
            flat, slope, threshold, K = self.fekete_flat, self.fekete_slope, self.fekete_threshold, self.a2_sq_coeff
        else:
            mu = to_mp(mu)
            if mu.imag != 0:
                raise UsageError("mu must be real")
            one_minus = 1 - mu.real
            dist = abs(one_minus)
            flat, slope, threshold, K = (
                to_mp(v) for v in (self.fekete_flat, self.fekete_slope, self.fekete_threshold, self.a2_sq_coeff)
            )
        if dist <= threshold:
            value, branch = flat, "flat"
        else:
            value, branch = slope * dist, "slope"
        return FeketeReport(mu, value, branch, threshold, one_minus * K)

    def identity_key(self):
        """The quantities two formula routes must agree on (radicand scaling aside)."""
        return (
            self.valid,
            self.a2_bound_sq,
            self.a3_bound,
            self.fekete_flat,
            self.fekete_slope,
            self.fekete_threshold,
        )


def _as_exact(x):
    return x if isinstance(x, QuadNumber) else Fraction(x)


def _lift_like(x, like):
    if isinstance(like, QuadNumber) and not isinstance(x, QuadNumber):
        return QuadNumber(x, 0, like.D)
    return x


# --- number-system plumbing --------------------------------------------------


class _Field:
    """Arithmetic helpers for one evaluation: exact Q(sqrt D) or mpmath."""

    def __init__(self, ctx: KappaContext, exact: bool):
        self.exact = exact
        self.ctx = ctx
        if exact:
            self.kappa = ctx.q(ctx.kappa)
            self.tau = ctx.tau
        else:
            self.mp = fp()
            self.kappa = to_mp(ctx.kappa)
            self.tau = to_mp(ctx.tau)

    def num(self, x):
        return self.ctx.q(x) if self.exact else to_mp(x)

    def mod(self, x):
        if self.exact:
            return abs(self.ctx.q(x))
        return abs(to_mp(x))

    def sqrt(self, x):
        if self.exact:
            return fp().sqrt(qfloat(x, fp().prec))
        return self.mp.sqrt(x)

    def flt(self, x):
        return qfloat(x, fp().prec) if self.exact else to_mp(x)

    def positive(self, x) -> bool:
        if self.exact:
            return qsign(x) > 0
        x = to_mp(x)
        return x.imag == 0 and x.real > 0

    def nonzero(self, x) -> bool:
        return qsign(x) != 0 if self.exact else to_mp(x) != 0

    def is_real(self, x) -> bool:
        return self.exact or to_mp(x).imag == 0


def _exact_ok(gamma, *params) -> bool:
    if not all(is_exact(p) for p in (gamma, *params)):
        return False
    return Fraction(gamma) > 0


def _check_kappa(ctx: KappaContext):
    if ctx.kappa <= 0:
        raise UsageError("the bounds assume kappa > 0")


def _assemble(family, params, F: _Field, g, den, c, s, a3_display, notes=()):
    """Build a report from the family denominator and constants.

    ``a3_display`` is a callable returning the printed |a3| quotient, or None
    to fall back on the proof route.
    """
    mode = "exact" if F.exact else "float"
    k, t = F.kappa, F.tau
    notes = list(notes)
    if not F.nonzero(s):
        return BoundReport(family, params, mode, False, den, notes=tuple(notes + ["flat denominator vanishes"]))
    if F.is_real(den) and not F.positive(den):
        return BoundReport(family, params, mode, False, den, notes=tuple(notes + ["radicand <= 0"]))
    if not F.nonzero(den):
        return BoundReport(family, params, mode, False, den, notes=tuple(notes + ["radicand is zero"]))
    if not F.is_real(den):
        notes.append("complex radicand; moduli used throughout")
    mg, mkt, mt = F.mod(g), F.mod(k * t), F.mod(t)
    mden = F.mod(den)
    a2_sq = c * mg * mg * k * k * k * t * t / mden
    flat = mg * mkt / F.mod(s)
    slope = c * mg * mg * k * k * k * t * t / mden
    threshold = mden / (c * mg * k * k * mt * F.mod(s))
    K = c * g * g * k * k * k * t * t / (4 * den)
    a3_coeff = g * k * t / (4 * s)
    display = a3_display() if a3_display is not None else None
    if display is not None and not F.exact:
        display = abs(display)
    a3 = display if display is not None else flat + a2_sq
    if display is None:
        notes.append("a3 bound from |gamma||kappa tau|/s + a2_bound^2")
    return BoundReport(
        family,
        params,
        mode,
        True,
        den,
        a2_bound=F.sqrt(a2_sq),
        a2_bound_sq=a2_sq,
        a3_bound=a3,
        a3_bound_display=display,
        fekete_flat=flat,
        fekete_slope=slope,
        fekete_threshold=threshold,
        a2_sq_coeff=K,
        a3_coeff=a3_coeff,
        notes=tuple(notes),
    )


def _real_positive_gamma(F: _Field, g) -> bool:
    return F.exact or (to_mp(g).imag == 0 and to_mp(g).real > 0)


# --- the four families --------------------------------------------------------


def bounds_W(ctx: KappaContext, gamma=1, lam=0, alpha=0) -> BoundReport:
    _check_kappa(ctx)
    ClassSpec("W", gamma, lam, alpha)
    F = _Field(ctx, _exact_ok(gamma, lam, alpha))
    g, l, a = F.num(gamma), F.num(lam), F.num(alpha)
    k, t = F.kappa, F.tau
    X = k - (k * k + 2) * t
    S = 1 + 2 * a + 2 * l
    den = g * k * k * t * S + X * (1 + a) ** 2

    def display():
        if not _real_positive_gamma(F, g):
            return None
        return F.mod(g) * F.mod(k * t) * X * (1 + a) ** 2 / (S * den)

    params = {"gamma": gamma, "lambda": lam, "alpha": alpha}
    return _assemble("W", params, F, g, den, 1, S, display)


def bounds_R(ctx: KappaContext, gamma=1, lam=0) -> BoundReport:
    _check_kappa(ctx)
    ClassSpec("R", gamma, lam)
    F = _Field(ctx, _exact_ok(gamma, lam))
    g, l = F.num(gamma), F.num(lam)
    k, t = F.kappa, F.tau
    X = k - (k * k + 2) * t
    M = g * k * k * t * (2 + l) * (1 + l) + 2 * (1 + l) ** 2 * X

    def display():
        if not _real_positive_gamma(F, g):
            return None
        return F.mod(g) * F.mod(k * t) * (M - 2 * (2 + l) * g * k * k * t) / ((2 + l) * M)

    # the printed a2 bound is sqrt(2)|g||kt|sqrt(k)/sqrt(M): c = 2 against Den = M
    params = {"gamma": gamma, "lambda": lam}
    return _assemble("R", params, F, g, M, 2, 2 + l, display)


def bounds_B(ctx: KappaContext, lam=1) -> BoundReport:
    """Uses the sqrt(kappa) form of |a2| that the proof derives.

    ``notes`` carries the value of the statement's form, which lacks the factor.
    """
    _check_kappa(ctx)
    ClassSpec("B", 1, lam)
    F = _Field(ctx, _exact_ok(1, lam))
    l = F.num(lam)
    g = F.num(1)
    k, t = F.kappa, F.tau
    X = k - (k * k + 2) * t
    den = l * (2 * l - 1) * k * k * t + X * (2 * l - 1) ** 2

    def display():
        return F.mod(k * t) * (X * (2 * l - 1) ** 2 + (2 * l * l - 4 * l + 1) * k * k * t) / ((3 * l - 1) * den)

    report = _assemble("B", {"lambda": lam}, F, g, den, 1, 3 * l - 1, display)
    if report.valid:
        as_stated = F.flt(F.mod(k * t)) / F.sqrt(den)
        report = replace(report, notes=report.notes + (f"a2 bound without sqrt(kappa): {_fmt(as_stated)}",))
    return report


def bounds_P(ctx: KappaContext, lam=0) -> BoundReport:
    _check_kappa(ctx)
    ClassSpec("P", 1, lam)
    F = _Field(ctx, _exact_ok(1, lam))
    l = F.num(lam)
    g = F.num(1)
    k, t = F.kappa, F.tau
    X = k - (k * k + 2) * t
    den = k * k * t * (1 + 2 * l - l * l) + X * (1 + l) ** 2

    def display():
        return F.mod(k * t) * (k - 2 * (k * k + 1) * t) * (1 + l) ** 2 / (2 * (1 + 2 * l) * den)

    return _assemble("P", {"lambda": lam}, F, g, den, 1, 2 * (1 + 2 * l), display)


def bounds_for(spec: ClassSpec, ctx: KappaContext) -> BoundReport:
    if spec.family == "W":
        return bounds_W(ctx, spec.gamma, spec.lam, spec.alpha)
    if spec.family == "R":
        return bounds_R(ctx, spec.gamma, spec.lam)
    if spec.family == "B":
        return bounds_B(ctx, spec.lam)
    return bounds_P(ctx, spec.lam)


def fekete(family: str, ctx: KappaContext, mu, gamma=1, lam=None, alpha=0) -> FeketeReport:
    """Fekete-Szego bound for one family at ``mu``; ``lam`` defaults to the family minimum."""
    if lam is None:
        lam = 1 if family == "B" else 0
    if family == "W":
        rep = bounds_W(ctx, gamma, lam, alpha)
    elif family == "R":
        rep = bounds_R(ctx, gamma, lam)
    elif family == "B":
        rep = bounds_B(ctx, lam)
    elif family == "P":
        rep = bounds_P(ctx, lam)
    else:
        raise UsageError(f"unknown family {family!r}")
    return rep.fekete(mu)


# --- special cases, transcribed from their own displays----------------------


def _special_case(name, params, F, g, den, a2_num_sq, a3, flat, slope, threshold):
    """Report from explicitly transcribed pieces; ``a2_num_sq`` is the squared numerator."""
    mode = "exact" if F.exact else "float"
    if F.is_real(den) and not F.positive(den):
        return BoundReport(name, params, mode, False, den, notes=("radicand <= 0",))
    a2_sq = a2_num_sq / F.mod(den)
    k, t = F.kappa, F.tau
    K = g * g * k * k * k * t * t / (4 * den)
    # flat = |g||kt|/s, so the subtracted-equation coefficient is g k t / (4 s)
    s = F.mod(g) * F.mod(k * t) / flat
    return BoundReport(
        name,
        params,
        mode,
        True,
        den,
        a2_bound=F.sqrt(a2_sq),
        a2_bound_sq=a2_sq,
        a3_bound=a3,
        a3_bound_display=a3,
        fekete_flat=flat,
        fekete_slope=slope,
        fekete_threshold=threshold,
        a2_sq_coeff=K,
        a3_coeff=g * k * t / (4 * s),
    )


def _cor_field(ctx, gamma, *params):
    _check_kappa(ctx)
    F = _Field(ctx, _exact_ok(gamma, *params))
    if not F.exact:
        raise UsageError("special-case evaluators need rational gamma > 0 and rational parameters")
    return F, F.kappa, F.tau, F.kappa - (F.kappa**2 + 2) * F.tau


def cor_FSL(ctx: KappaContext, gamma=1, lam=0) -> BoundReport:
    F, k, t, X = _cor_field(ctx, gamma, lam)
    g, l = F.num(gamma), F.num(lam)
    den = 3 * g * k * k * t * (1 + 2 * l) + 4 * X * (1 + l) ** 2
    mg, mkt = F.mod(g), F.mod(k * t)
    return _special_case(
        "FSL",
        {"gamma": gamma, "lambda": lam},
        F,
        g,
        den,
        mg * mg * mkt * mkt * k,
        4 * mg * mkt * X * (1 + l) ** 2 / (3 * (1 + 2 * l) * den),
        mg * mkt / (3 + 6 * l),
        g * g * k**3 * t * t / den,
        den / ((3 + 6 * l) * mg * k * k * F.mod(t)),
    )


def cor_BSL(ctx: KappaContext, gamma=1, alpha=0) -> BoundReport:
    F, k, t, X = _cor_field(ctx, gamma, alpha)
    g, a = F.num(gamma), F.num(alpha)
    den = g * k * k * t * (1 + 2 * a) + X * (1 + a) ** 2
    mg, mkt = F.mod(g), F.mod(k * t)
    return _special_case(
        "BSL",
        {"gamma": gamma, "alpha": alpha},
        F,
        g,
        den,
        mg * mg * mkt * mkt * k,
        mg * mkt * X * (1 + a) ** 2 / ((1 + 2 * a) * den),
        mg * mkt / (1 + 2 * a),
        g * g * k**3 * t * t / den,
        den / ((1 + 2 * a) * mg * k * k * F.mod(t)),
    )


def cor_HSL(ctx: KappaContext, gamma=1) -> BoundReport:
    F, k, t, X = _cor_field(ctx, gamma)
    g = F.num(gamma)
    den = 3 * g * k * k * t + 4 * X
    mg, mkt = F.mod(g), F.mod(k * t)
    return _special_case(
        "HSL",
        {"gamma": gamma},
        F,
        g,
        den,
        mg * mg * mkt * mkt * k,
        4 * mg * mkt * X / (3 * den),
        mg * mkt / 3,
        g * g * k**3 * t * t / den,
        den / (3 * mg * k * k * F.mod(t)),
    )


def cor_SLgamma(ctx: KappaContext, gamma=1) -> BoundReport:
    F, k, t, X = _cor_field(ctx, gamma)
    g = F.num(gamma)
    den = g * k * k * t + X
    mg, mkt = F.mod(g), F.mod(k * t)
    return _special_case(
        "SLg",
        {"gamma": gamma},
        F,
        g,
        den,
        mg * mg * mkt * mkt * k,
        mg * mkt * F.mod(X - g * k * k * t) / (2 * g * k * k * t + 2 * X),
        mg * mkt / 2,
        g * g * k**3 * t * t / den,
        den / (2 * mg * k * k * F.mod(t)),
    )


def cor_SL(ctx: KappaContext) -> BoundReport:
    F, k, t, _ = _cor_field(ctx, 1)
    den = k - 2 * t
    mkt = F.mod(k * t)
    return _special_case(
        "SL",
        {},
        F,
        F.num(1),
        den,
        mkt * mkt * k,
        mkt * (k - 2 * (k * k + 1) * t) / (2 * k - 4 * t),
        mkt / 2,
        k**3 * t * t / den,
        den / (2 * k * k * F.mod(t)),
    )


def cor_KSL(ctx: KappaContext) -> BoundReport:
    F, k, t, _ = _cor_field(ctx, 1)
    inner = 2 * k - (k * k + 4) * t
    den = 2 * inner
    mkt = F.mod(k * t)
    return _special_case(
        "KSL",
        {},
        F,
        F.num(1),
        den,
        mkt * mkt * k,
        mkt * (k - 2 * (k * k + 1) * t) / (3 * inner),
        mkt / 6,
        k**3 * t * t / den,
        inner / (3 * k * k * F.mod(t)),
    )


SPECIAL_CASES = {
    "FSL": cor_FSL,
    "BSL": cor_BSL,
    "HSL": cor_HSL,
    "SLg": cor_SLgamma,
    "SL": cor_SL,
    "KSL": cor_KSL,
}


def _fmt(x) -> str:
    v = qfloat(x, 64) if isinstance(x, QuadNumber) else to_mp(x)
    return fp().nstr(v, 17)

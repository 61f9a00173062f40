"""Class functionals W, R, B, P and their first two coefficient equations.

Each family maps a normalized ``f(z) = z + a2 z^2 + a3 z^3 + ...`` to a
series with constant term 1 that is required to be subordinate to ptilde:

    W: 1 + [(1-a+2l) f/z + (a-2l) f' + l z f'' - 1] / gamma
    R: 1 + [f' (f/z)^(l-1) - 1] / gamma
    B: f'^l / (f/z)
    P: (z f' + l z^2 f'') / ((1-l) f + l z f')

(``a`` = alpha, ``l`` = lambda).  The same operator is applied to the
inverse ``g = f^{-1}``.  Matching coefficients against the subordination
expansion gives the linear equations

    A1 a2               = c1 p1 / 2
    A2 a3 + B2 a2^2     = (c2 - c1^2/2) p1/2 + c1^2 p2/4
   -A1 a2               = d1 p1 / 2
    (2A2+B2) a2^2 - A2 a3 = (d2 - d1^2/2) p1/2 + d1^2 p2/4

with the printed family constants returned by :func:`printed_constants`.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from ._precision import fp, is_exact, to_mp
from .errors import SingularParameterError, UsageError
from .fibonacci import KappaContext
from .series import (
    TruncatedSeries,
    s_diff,
    s_div,
    s_div_z,
    s_mul,
    s_mul_z,
    s_pow_real,
    s_revert,
)
from .shelllike import CaratheodoryPrefix, ptilde_coeff_closed

__all__ = [
    "ClassSpec",
    "CoefficientPair",
    "apply_functional",
    "printed_constants",
    "coefficient_equations",
    "EquationSolution",
    "normalized_series",
    "functional_matches_printed",
]

FAMILIES = ("W", "R", "B", "P")


def _param(x):
    """Rationals stay exact; anything else becomes float mode."""
    if isinstance(x, bool):
        raise UsageError("boolean is not a parameter value")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return x


def _real_value(x):
    if is_exact(x):
        return x
    v = to_mp(x)
    if v.imag != 0:
        raise UsageError("lambda and alpha must be real")
    return v.real


@dataclass(frozen=True)
class ClassSpec:
    """Family tag plus parameters.

    ``strict=False`` skips the range checks so degenerate parameters can be
    probed on purpose.
    """

    family: str
    gamma: object = 1
    lam: object = 0
    alpha: object = 0
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UsageError(f"family must be one of {FAMILIES}, got {self.family!r}")
        object.__setattr__(self, "gamma", _param(self.gamma))
        object.__setattr__(self, "lam", _param(self.lam))
        object.__setattr__(self, "alpha", _param(self.alpha))
        if self.gamma == 0:
            raise UsageError("gamma must be nonzero")
        if self.family in ("B", "P") and self.gamma != 1:
            raise UsageError(f"family {self.family} has no gamma parameter")
        if self.family != "W" and self.alpha != 0:
            raise UsageError(f"family {self.family} has no alpha parameter")
        if self.strict:
            self._check_ranges()

    def _check_ranges(self):
        lam, alpha = _real_value(self.lam), _real_value(self.alpha)
        if self.family == "W" and (alpha < 0 or lam < 0):
            raise UsageError("W needs alpha >= 0 and lambda >= 0")
        if self.family == "R" and lam < 0:
            raise UsageError("R needs lambda >= 0")
        if self.family == "B" and lam < 1:
            raise UsageError("B needs lambda >= 1")
        if self.family == "P" and not 0 <= lam <= 1:
            raise UsageError("P needs 0 <= lambda <= 1")

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in (self.gamma, self.lam, self.alpha))

    def params(self) -> dict:
        out = {"family": self.family, "lambda": self.lam}
        if self.family in ("W", "R"):
            out["gamma"] = self.gamma
        if self.family == "W":
            out["alpha"] = self.alpha
        return out


@dataclass(frozen=True)
class CoefficientPair:
    a2: object
    a3: object
    a4: object = 0


def normalized_series(pair: CoefficientPair, order: int = 4, mode=None) -> TruncatedSeries:
    """``z + a2 z^2 + a3 z^3 + a4 z^4`` cut or padded to ``order``."""
    return TruncatedSeries.from_coeffs([0, 1, pair.a2, pair.a3, pair.a4], order=order, mode=mode)


def _scalar_for(series: TruncatedSeries, x):
    if series.mode == "exact":
        if not is_exact(x):
            raise UsageError("non-rational parameter needs a float-mode series")
        return x
    return to_mp(x)


def apply_functional(spec: ClassSpec, f: TruncatedSeries) -> TruncatedSeries:
    """The family's left-hand side as a series of order ``f.order - 1``.

    One order is lost to ``f/z``; the result is exact through its last
    coefficient.
    """
    if f.order < 2:
        raise UsageError("apply_functional needs f through at least z^2")
    if f[0] != 0 or f[1] != 1:
        raise UsageError("apply_functional needs a normalized f = z + ...")
    N = f.order - 1
    lam = _scalar_for(f, spec.lam)
    gamma = _scalar_for(f, spec.gamma)
    alpha = _scalar_for(f, spec.alpha)
    f_over_z = s_div_z(f)
    d1 = s_diff(f).truncate(N)
    z_d2 = s_mul_z(s_diff(s_diff(f))).truncate(N)  # z f''
    one = TruncatedSeries.one(N, f.mode)

    if spec.family == "W":
        body = (1 - alpha + 2 * lam) * f_over_z + (alpha - 2 * lam) * d1 + lam * z_d2 - one
        return one + body / gamma
    if spec.family == "R":
        body = s_mul(d1, s_pow_real(f_over_z, lam - 1)) - one
        return one + body / gamma
    if spec.family == "B":
        return s_div(s_pow_real(d1, lam), f_over_z)
    # P: divide numerator and denominator by z first
    num = d1 + lam * z_d2
    den = (1 - lam) * f_over_z + lam * d1
    return s_div(num, den)


def printed_constants(spec: ClassSpec):
    """``(A1, A2, B2)`` as they appear in the coefficient equations.

    W: (1+a)/g, (1+2a+2l)/g, 0
    R: (1+l)/g, (2+l)/g, (2+l)(l-1)/(2g)
    B: 2l-1, 3l-1, 2l^2-4l+1
    P: 1+l, 2(1+2l), -(1+l)^2
    """
    g, l, a = spec.gamma, spec.lam, spec.alpha
    if spec.family == "W":
        return (1 + a) / g, (1 + 2 * a + 2 * l) / g, 0 * l
    if spec.family == "R":
        return (1 + l) / g, (2 + l) / g, (2 + l) * (l - 1) / (2 * g)
    if spec.family == "B":
        return 2 * l - 1, 3 * l - 1, 2 * l * l - 4 * l + 1
    return 1 + l, 2 * (1 + 2 * l), -((1 + l) ** 2)


def _z2_rhs(c1, c2, p1, p2):
    half = Fraction(1, 2) if is_exact(c1) and is_exact(c2) else to_mp(0.5)
    return (c2 - c1 * c1 * half) * p1 * half + c1 * c1 * p2 * half * half


@dataclass
class EquationSolution:
    a2: object
    a3: object
    a2sq_c1_route: object
    a2sq_added_route: object
    g_z2_residual: object
    consistency_flags: dict


def _field_values(ctx: KappaContext, spec: ClassSpec, *data):
    p1, p2 = ptilde_coeff_closed(ctx, 1), ptilde_coeff_closed(ctx, 2)
    if spec.exact and all(is_exact(v) for v in data):
        return p1, p2, spec, data
    return to_mp(p1), to_mp(p2), _float_spec(spec), tuple(to_mp(v) for v in data)


def _float_spec(spec: ClassSpec) -> ClassSpec:
    return ClassSpec(
        spec.family, to_mp(spec.gamma), to_mp(spec.lam), to_mp(spec.alpha), strict=False
    )


def coefficient_equations(
    ctx: KappaContext, spec: ClassSpec, c: CaratheodoryPrefix, d: CaratheodoryPrefix
) -> EquationSolution:
    """Solve the printed equations for ``a2`` (z-equation) and ``a3`` (f-side z^2).

    Also returns ``a2^2`` through the c1 route and through the added z^2
    equations, the residual of the inverse-side z^2 equation (zero exactly when
    ``d2`` is consistent with ``c``), and flags telling whether the printed
    constants match a direct expansion of the functional.
    """
    if d.c1 != -c.c1:
        raise UsageError("the inverse-side prefix must satisfy d1 = -c1")
    p1, p2, sp, (c1, c2, d1, d2) = _field_values(ctx, spec, c.c1, c.c2, d.c1, d.c2)
    A1, A2, B2 = printed_constants(sp)
    if A1 == 0 or A2 == 0 or A2 + B2 == 0:
        raise SingularParameterError(
            f"degenerate coefficient equations for {spec.family} with lambda={spec.lam}"
        )
    a2 = c1 * p1 / (2 * A1)
    a3 = (_z2_rhs(c1, c2, p1, p2) - B2 * a2 * a2) / A2
    a2sq_c1 = (c1 * c1 + d1 * d1) * p1 * p1 / (8 * A1 * A1)
    a2sq_added = (_z2_rhs(c1, c2, p1, p2) + _z2_rhs(d1, d2, p1, p2)) / (2 * (A2 + B2))
    g_res = (2 * A2 + B2) * a2 * a2 - A2 * a3 - _z2_rhs(d1, d2, p1, p2)
    flags = functional_matches_printed(sp, a2, a3)
    return EquationSolution(a2, a3, a2sq_c1, a2sq_added, g_res, flags)


def functional_matches_printed(spec: ClassSpec, a2, a3, order: int = 3) -> dict:
    """Compare the functional's z, z^2 coefficients with the printed left-hand sides.

    Exact arithmetic gives an exact verdict; in float mode the comparison
    allows ``2**(12 - prec)`` relative slack at the working precision.
    """
    if not (spec.exact and is_exact(a2) and is_exact(a3)):
        spec = _float_spec(spec)
        a2, a3 = to_mp(a2), to_mp(a3)
    A1, A2, B2 = printed_constants(spec)
    f = normalized_series(CoefficientPair(a2, a3), order=order)
    Lf = apply_functional(spec, f)
    Lg = apply_functional(spec, s_revert(f))
    expect = {
        "f_z": A1 * a2,
        "f_z2": A2 * a3 + B2 * a2 * a2,
        "g_z": -A1 * a2,
        "g_z2": (2 * A2 + B2) * a2 * a2 - A2 * a3,
    }
    got = {"f_z": Lf[1], "f_z2": Lf[2], "g_z": Lg[1], "g_z2": Lg[2]}
    return {k: _close(got[k], expect[k], f.mode) for k in expect}


def _close(x, y, mode) -> bool:
    if mode == "exact":
        return x == y
    x, y = to_mp(x), to_mp(y)
    return abs(x - y) <= fp().ldexp(1, 12 - fp().prec) * max(1, abs(y))

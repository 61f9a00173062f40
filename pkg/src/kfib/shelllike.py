"""The shell-like generating function and its subordination expansion.

``ptilde(z) = (1 + tau^2 z^2) / (1 - kappa tau z - tau^2 z^2)`` with the
kappa-Fibonacci coefficient identity, plus the passage
Caratheodory function ``h`` -> Schwarz function ``u = (h-1)/(h+1)`` ->
``ptilde(u(z))`` that every coefficient estimate starts from.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._precision import is_exact, to_mp
from .errors import UsageError
from .fibonacci import KappaContext, lucas_like
from .quadfield import QuadNumber, qfloat
from .series import DEFAULT_ORDER, TruncatedSeries, s_compose, s_div

__all__ = [
    "CaratheodoryPrefix",
    "SchwarzPrefix",
    "ptilde_series",
    "ptilde_coeff_closed",
    "schwarz_series",
    "caratheodory_from_schwarz",
    "subordination_expand",
    "min_real_part_probe",
    "caratheodory_grid",
]


@dataclass(frozen=True)
class CaratheodoryPrefix:
    """Leading coefficients of ``h(z) = 1 + c1 z + c2 z^2 + c3 z^3 + ...``.

    Any values are allowed; ``lemma_conforming`` tells whether they respect
    ``|c_i| <= 2``.
    """

    c1: object = 0
    c2: object = 0
    c3: object = 0

    def __iter__(self):
        return iter((self.c1, self.c2, self.c3))

    @property
    def lemma_conforming(self) -> bool:
        return all(abs(c) <= 2 for c in self)

    def require_lemma(self):
        if not self.lemma_conforming:
            raise UsageError(f"Caratheodory coefficients must satisfy |c_i| <= 2, got {tuple(self)}")
        return self

    def negated_first(self, c2=None, c3=None) -> "CaratheodoryPrefix":
        """The inverse-side prefix ``(-c1, c2', c3')`` used by the proofs."""
        return CaratheodoryPrefix(-self.c1, self.c2 if c2 is None else c2, self.c3 if c3 is None else c3)


@dataclass(frozen=True)
class SchwarzPrefix:
    w1: object
    w2: object
    w3: object

    @classmethod
    def from_caratheodory(cls, c: CaratheodoryPrefix) -> "SchwarzPrefix":
        c1, c2, c3 = c
        half = _half(c1)
        return cls(
            c1 * half,
            (c2 - c1 * c1 * half) * half,
            (c3 - c1 * c2 + c1 * c1 * c1 * half * half) * half,
        )


def _half(x):
    from fractions import Fraction

    return Fraction(1, 2) if is_exact(x) else to_mp(0.5)


def ptilde_series(ctx: KappaContext, N: int = DEFAULT_ORDER, mode: str = "exact") -> TruncatedSeries:
    """Taylor coefficients of ptilde through ``z**N`` by series division."""
    if N < 1:
        raise UsageError("ptilde_series needs N >= 1")
    t = ctx.tau
    t2 = t * t
    num = TruncatedSeries.from_coeffs([1, 0, t2], order=N)
    den = TruncatedSeries.from_coeffs([1, -ctx.kappa * t, -t2], order=N)
    out = s_div(num, den)
    return out.to_float() if mode == "float" else out


def ptilde_coeff_closed(ctx: KappaContext, n: int) -> QuadNumber:
    """``(F_{n-1} + F_{n+1}) * tau**n`` for ``n >= 1``."""
    if n < 1:
        raise UsageError("the closed coefficient form holds for n >= 1")
    return lucas_like(ctx, n) * ctx.tau**n


def _mode_of(*vals) -> str:
    return "exact" if all(is_exact(v) for v in vals) else "float"


def schwarz_series(c: CaratheodoryPrefix, N: int = 3) -> TruncatedSeries:
    """``u(z) = (h(z) - 1)/(h(z) + 1)`` through ``z**N`` (N <= 3)."""
    if not 1 <= N <= 3:
        raise UsageError("schwarz_series is available through z^3")
    w = SchwarzPrefix.from_caratheodory(c)
    return TruncatedSeries.from_coeffs([0, w.w1, w.w2, w.w3], order=N, mode=_mode_of(*c))


def caratheodory_from_schwarz(u: TruncatedSeries) -> TruncatedSeries:
    """``h = (1 + u)/(1 - u)``."""
    one = TruncatedSeries.one(u.order, u.mode)
    return s_div(one + u, one - u)


def subordination_expand(ctx: KappaContext, c: CaratheodoryPrefix, N: int = 3) -> TruncatedSeries:
    """Coefficients of ``ptilde(u(z))`` through ``z**N`` from the closed forms.

    z^1: p1 c1/2
    z^2: (c2 - c1^2/2) p1/2 + c1^2 p2/4
    z^3: (c3 - c1 c2 + c1^3/4) p1/2 + c1 (c2 - c1^2/2) p2/2 + c1^3 p3/8
    """
    if not 1 <= N <= 3:
        raise UsageError("subordination_expand is available through z^3")
    c1, c2, c3 = c
    mode = _mode_of(c1, c2, c3)
    p1, p2, p3 = (ptilde_coeff_closed(ctx, n) for n in (1, 2, 3))
    if mode == "float":
        p1, p2, p3 = (to_mp(p) for p in (p1, p2, p3))
    h = _half(c1)
    e1 = p1 * c1 * h
    e2 = (c2 - c1 * c1 * h) * p1 * h + c1 * c1 * p2 * h * h
    e3 = (c3 - c1 * c2 + c1**3 * h * h) * p1 * h + c1 * (c2 - c1 * c1 * h) * p2 * h + c1**3 * p3 * h**3
    return TruncatedSeries.from_coeffs([1, e1, e2, e3], order=N, mode=mode)


def subordination_compose(ctx: KappaContext, c: CaratheodoryPrefix, N: int = 3) -> TruncatedSeries:
    """Same quantity as :func:`subordination_expand`, via series composition."""
    u = schwarz_series(c, N)
    p = ptilde_series(ctx, N, mode=u.mode)
    return s_compose(p, u)


def min_real_part_probe(ctx: KappaContext, radius: float, m: int = 1024):
    """Minimum of Re ptilde(r e^{i theta}) over ``m`` equally spaced angles.

    Evaluates the rational function itself (float64), not a truncation.
    Returns ``(minimum, theta_at_minimum)``.
    """
    if not 0 < radius < 1:
        raise UsageError("radius must lie in (0, 1)")
    if m < 8:
        raise UsageError("grid_size must be >= 8")
    t = float(qfloat(ctx.tau, 53))
    kt = float(ctx.kappa) * t
    return _kernels.min_real_part(kt, t * t, radius, m)


def caratheodory_grid(size: int = 64):
    """Caratheodory samples as arrays ``(c1, c2, c3)`` of complex128.

    Half the points are extreme functions ``(1 + x z)/(1 - x z)`` with ``x``
    on the unit circle (so ``c_n = 2 x^n``; index 0 is ``x = 1``), the other
    half are midpoints of pairs of those extreme functions.
    """
    if size < 4 or size % 2:
        raise UsageError("grid size must be an even integer >= 4")
    n_ext = size // 2
    x = np.exp(2j * np.pi * np.arange(n_ext) / n_ext)
    ext = np.stack([2 * x, 2 * x**2, 2 * x**3])
    # partner offsets sweep 1 .. n_ext-1 so every chord length shows up
    offs = 1 + (np.arange(n_ext) % (n_ext - 1))
    partner = (np.arange(n_ext) + offs) % n_ext
    mid = 0.5 * (ext + ext[:, partner])
    c = np.concatenate([ext, mid], axis=1)
    return c[0], c[1], c[2]

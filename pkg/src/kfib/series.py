"""Truncated formal power series over Q, Q(sqrt(D)) or high-precision complex.

A series holds ``c_0 .. c_N``; nothing beyond ``z**N`` is ever read or
produced.  Two modes exist:

* ``exact`` - coefficients are ``Fraction`` or ``QuadNumber`` (one radicand)
* ``float`` - coefficients are mpmath ``mpc`` at the working precision

Operations never mix modes silently; call :meth:`TruncatedSeries.to_float`
to move an exact series into float mode.
"""
from dataclasses import dataclass
from fractions import Fraction

from ._precision import fp, is_exact, to_mp
from .errors import SingularError, UsageError
from .quadfield import QuadNumber

__all__ = [
    "TruncatedSeries",
    "s_add",
    "s_sub",
    "s_scale",
    "s_mul",
    "s_div",
    "s_compose",
    "s_revert",
    "s_diff",
    "s_log",
    "s_exp",
    "s_pow_real",
    "s_div_z",
    "s_mul_z",
]

DEFAULT_ORDER = 8

EXACT = "exact"
FLOAT = "float"


def _normalize_exact(coeffs):
    D = None
    for c in coeffs:
        if isinstance(c, QuadNumber) and c.b != 0:
            if D is not None and c.D != D:
                raise UsageError("exact-mode coefficients must share one radicand")
            D = c.D
    out = []
    for c in coeffs:
        if isinstance(c, QuadNumber):
            out.append(c if D is None or c.D == D else QuadNumber(c.a, 0, D))
        else:
            c = Fraction(c)
            out.append(c if D is None else QuadNumber(c, 0, D))
    return tuple(out)


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple
    mode: str = EXACT

    def __init__(self, coeffs, mode=None):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise UsageError("a series needs at least c_0")
        if mode is None:
            mode = EXACT if all(is_exact(c) for c in coeffs) else FLOAT
        if mode == EXACT:
            if not all(is_exact(c) for c in coeffs):
                raise UsageError("exact mode accepts only int, Fraction and QuadNumber")
            coeffs = _normalize_exact(coeffs)
        elif mode == FLOAT:
            ctx = fp()
            coeffs = tuple(ctx.mpc(to_mp(c, ctx)) for c in coeffs)
        else:
            raise UsageError(f"unknown mode {mode!r}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "mode", mode)

    # construction helpers

    @classmethod
    def zero(cls, order=DEFAULT_ORDER, mode=EXACT):
        return cls([0] * (order + 1), mode)

    @classmethod
    def one(cls, order=DEFAULT_ORDER, mode=EXACT):
        return cls([1] + [0] * order, mode)

    @classmethod
    def identity(cls, order=DEFAULT_ORDER, mode=EXACT):
        """The series ``z``."""
        if order < 1:
            raise UsageError("identity series needs order >= 1")
        return cls([0, 1] + [0] * (order - 1), mode)

    @classmethod
    def from_coeffs(cls, coeffs, order=None, mode=None):
        """Pad or cut ``coeffs`` to ``order``."""
        coeffs = list(coeffs)
        if order is not None:
            coeffs = (coeffs + [0] * (order + 1))[: order + 1]
        return cls(coeffs, mode)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise UsageError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], self.mode)

    def to_float(self) -> "TruncatedSeries":
        return self if self.mode == FLOAT else TruncatedSeries(self.coeffs, FLOAT)

    def _zero(self):
        return self.coeffs[0] * 0

    def _unit(self):
        return self.coeffs[0] * 0 + 1

    # operators

    def __add__(self, other):
        return s_add(self, _lift(other, self))

    __radd__ = __add__

    def __sub__(self, other):
        return s_sub(self, _lift(other, self))

    def __rsub__(self, other):
        return s_sub(_lift(other, self), self)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return s_mul(self, other)
        return s_scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return s_div(self, other)
        return s_scale(self, 1 / _check_scalar(other, self))

    def __rtruediv__(self, other):
        return s_div(_lift(other, self), self)

    def __neg__(self):
        return s_scale(self, -1)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.mode == other.mode and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.mode, self.coeffs))

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"TruncatedSeries([{body}], mode={self.mode!r})"


def _check_scalar(x, like: TruncatedSeries):
    if like.mode == EXACT and not is_exact(x):
        raise UsageError("float scalar applied to an exact-mode series; use to_float()")
    if like.mode == FLOAT:
        return to_mp(x)
    return x


def _lift(x, like: TruncatedSeries) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    x = _check_scalar(x, like)
    return TruncatedSeries([x] + [0] * like.order, like.mode)


def _same_shape(x: TruncatedSeries, y: TruncatedSeries):
    if x.mode != y.mode:
        raise UsageError(f"mode mismatch: {x.mode} vs {y.mode}")
    if x.order != y.order:
        raise UsageError(f"order mismatch: {x.order} vs {y.order}")


def s_add(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    _same_shape(x, y)
    return TruncatedSeries([a + b for a, b in zip(x, y)], x.mode)


def s_sub(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    _same_shape(x, y)
    return TruncatedSeries([a - b for a, b in zip(x, y)], x.mode)


def s_scale(x: TruncatedSeries, k) -> TruncatedSeries:
    k = _check_scalar(k, x)
    return TruncatedSeries([k * a for a in x], x.mode)


def s_mul(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the common order."""
    _same_shape(x, y)
    N = x.order
    out = []
    for n in range(N + 1):
        acc = x[0] * y[n]
        for k in range(1, n + 1):
            acc = acc + x[k] * y[n - k]
        out.append(acc)
    return TruncatedSeries(out, x.mode)


def s_div(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    _same_shape(num, den)
    d0 = den[0]
    if d0 == 0:
        raise SingularError("denominator series has zero constant term")
    q = []
    for n in range(num.order + 1):
        acc = num[n]
        for k in range(1, n + 1):
            acc = acc - den[k] * q[n - k]
        q.append(acc / d0)
    return TruncatedSeries(q, num.mode)


def s_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(z))`` by Horner's rule; ``inner`` must vanish at 0."""
    _same_shape(outer, inner)
    if inner[0] != 0:
        raise UsageError("inner series of a composition must have zero constant term")
    N = outer.order
    result = _lift(outer[N], outer)
    for k in range(N - 1, -1, -1):
        result = s_mul(result, inner)
        result = TruncatedSeries(
            [result[0] + outer[k]] + list(result.coeffs[1:]), outer.mode
        )
    return result


def s_revert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of ``f = z + ...`` by term-by-term back-substitution.

    Each pass fixes the lowest wrong coefficient of ``f(g(z)) - z``; since
    ``f_1 = 1`` that coefficient depends on ``g_n`` with unit weight.
    """
    if f[0] != 0 or f.order < 1 or f[1] != 1:
        raise UsageError("reversion needs f(0) = 0 and f'(0) = 1")
    g = list(TruncatedSeries.identity(f.order, f.mode).coeffs)
    for n in range(2, f.order + 1):
        err = s_compose(f, TruncatedSeries(g, f.mode))[n]
        g[n] = g[n] - err
    return TruncatedSeries(g, f.mode)


def s_diff(f: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative; the top coefficient is re-padded with zero."""
    out = [k * f[k] for k in range(1, f.order + 1)] + [f._zero()]
    return TruncatedSeries(out, f.mode)


def s_div_z(f: TruncatedSeries) -> TruncatedSeries:
    """``f(z)/z``, one order shorter; requires ``f(0) = 0``."""
    if f[0] != 0:
        raise SingularError("f(z)/z needs f(0) = 0")
    if f.order < 1:
        raise UsageError("f(z)/z needs order >= 1")
    return TruncatedSeries(f.coeffs[1:], f.mode)


def s_mul_z(f: TruncatedSeries) -> TruncatedSeries:
    """``z*f(z)`` at the same order (the top coefficient drops off)."""
    return TruncatedSeries([f._zero()] + list(f.coeffs[:-1]), f.mode)


def _require_unit_constant(f: TruncatedSeries, what: str):
    if f[0] != 1:
        raise UsageError(f"{what} needs constant term 1, got {f[0]}")


def s_log(f: TruncatedSeries) -> TruncatedSeries:
    _require_unit_constant(f, "s_log")
    L = [f._zero()]
    for n in range(1, f.order + 1):
        acc = n * f[n]
        for k in range(1, n):
            acc = acc - k * L[k] * f[n - k]
        L.append(acc / n)
    return TruncatedSeries(L, f.mode)


def s_exp(f: TruncatedSeries) -> TruncatedSeries:
    if f[0] != 0:
        raise UsageError("s_exp needs constant term 0")
    E = [f._unit()]
    for n in range(1, f.order + 1):
        acc = f._zero()
        for k in range(1, n + 1):
            acc = acc + k * f[k] * E[n - k]
        E.append(acc / n)
    return TruncatedSeries(E, f.mode)


def s_pow_real(f: TruncatedSeries, e) -> TruncatedSeries:
    """``f**e`` for ``f = 1 + ...`` via the J.C.P. Miller recurrence.

    Exact mode accepts any rational exponent (the binomial coefficients stay
    rational); irrational or float exponents need a float-mode series.
    """
    _require_unit_constant(f, "s_pow_real")
    if f.mode == EXACT:
        if not isinstance(e, (int, Fraction)) or isinstance(e, bool):
            raise UsageError("exact-mode power needs an int or Fraction exponent")
        e = Fraction(e)
    else:
        e = to_mp(e)
    P = [f._unit()]
    for n in range(1, f.order + 1):
        acc = f._zero()
        for k in range(1, n + 1):
            acc = acc + ((e + 1) * k - n) * f[k] * P[n - k]
        P.append(acc / n)
    return TruncatedSeries(P, f.mode)

"""Exact arithmetic in Q(sqrt(D)).

A ``QuadNumber`` is ``a + b*sqrt(D)`` with rational ``a``, ``b`` and a rational
radicand ``D > 0``.  Values carrying different radicands refuse to combine.
Plain ``int`` and ``Fraction`` operands are promoted on the fly, so
expressions such as ``2 * tau + Fraction(1, 3)`` work as expected.
"""
from fractions import Fraction
from math import isqrt

from .errors import UsageError

__all__ = [
    "QuadNumber",
    "qadd",
    "qsub",
    "qmul",
    "qdiv",
    "qsign",
    "qfloat",
    "is_rational_square",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


def _rational_sqrt(q: Fraction):
    """Exact square root of a non-negative rational, or None."""
    if q < 0:
        return None
    p, r = q.numerator, q.denominator
    sp, sr = isqrt(p), isqrt(r)
    if sp * sp == p and sr * sr == r:
        return Fraction(sp, sr)
    return None


def is_rational_square(q) -> bool:
    return _rational_sqrt(_frac(q)) is not None


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


class QuadNumber:
    """Immutable ``a + b*sqrt(D)``."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D=5):
        a, b, D = _frac(a), _frac(b), _frac(D)
        if D <= 0:
            raise UsageError(f"radicand must be positive, got {D}")
        root = _rational_sqrt(D)
        if root is not None and b:
            # perfect-square radicand: the value is rational
            a, b = a + b * root, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):
        raise AttributeError("QuadNumber is immutable")

    def __reduce__(self):
        return (QuadNumber, (self.a, self.b, self.D))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    @classmethod
    def sqrt_of(cls, D) -> "QuadNumber":
        return cls(0, 1, D)

    # promotion

    def _coerce(self, other) -> "QuadNumber":
        if isinstance(other, QuadNumber):
            if other.D != self.D:
                raise UsageError(
                    f"cannot combine values over sqrt({self.D}) and sqrt({other.D})"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadNumber(other, 0, self.D)
        return NotImplemented

    # arithmetic

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNumber(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNumber(self.a - o.a, self.b - o.b, self.D)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNumber(
            self.a * o.a + self.b * o.b * self.D,
            self.a * o.b + o.a * self.b,
            self.D,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadNumber":
        return QuadNumber(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        """``a**2 - b**2 * D``, the product with the conjugate."""
        return self.a * self.a - self.b * self.b * self.D

    def inverse(self) -> "QuadNumber":
        n = self.norm()
        if n == 0:
            # only reachable when self == 0; perfect squares have b == 0
            raise ZeroDivisionError("division by zero in Q(sqrt(D))")
        return QuadNumber(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QuadNumber(1, 0, self.D), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self):
        return -self if qsign(self) < 0 else self

    # comparison

    def __eq__(self, other):
        if isinstance(other, QuadNumber):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.D == other.D and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadNumber with {type(other).__name__}")
        return qsign(self - o)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self):
        return float(qfloat(self, 53))

    def __repr__(self):
        return f"QuadNumber({self.a}, {self.b}, D={self.D})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt({self.D})"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.D})"


def qadd(x: QuadNumber, y: QuadNumber) -> QuadNumber:
    return x + y


def qsub(x: QuadNumber, y: QuadNumber) -> QuadNumber:
    return x - y


def qmul(x: QuadNumber, y: QuadNumber) -> QuadNumber:
    return x * y


def qdiv(x: QuadNumber, y: QuadNumber) -> QuadNumber:
    return x / y


def qsign(x) -> int:
    """Exact sign of ``a + b*sqrt(D)``, no floating point involved."""
    if not isinstance(x, QuadNumber):
        return _sign(_frac(x))
    sa, sb = _sign(x.a), _sign(x.b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger magnitude wins
    diff = x.a * x.a - x.b * x.b * x.D
    if diff > 0:
        return sa
    if diff < 0:
        return sb
    return 0


def qfloat(x, precision: int = 53):
    """``x`` as an mpmath mpf with ``precision`` bits, within one ulp.

    When ``a`` and ``b*sqrt(D)`` have opposite signs the value is evaluated as
    ``(a**2 - b**2*D) / (a - b*sqrt(D))`` so that no cancellation occurs.
    """
    from ._precision import context

    if precision < 53:
        raise UsageError("precision must be at least 53 bits")
    if not isinstance(x, QuadNumber):
        x = QuadNumber(x, 0, 5)
    out = context(precision)
    work = context(precision + 32)

    def mp(q: Fraction):
        return work.mpf(q.numerator) / q.denominator

    if x.b == 0:
        return out.mpf(mp(x.a))
    root = work.sqrt(mp(x.D))
    if x.a == 0 or _sign(x.a) == _sign(x.b):
        val = mp(x.a) + mp(x.b) * root
    else:
        val = mp(x.norm()) / (mp(x.a) - mp(x.b) * root)
    return out.mpf(val)


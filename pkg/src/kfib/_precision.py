"""Working precision for float mode.

Float-mode values live in private mpmath contexts so that nothing here
touches the global ``mpmath.mp`` state.
"""
import os
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import UsageError

DEFAULT_BITS = 128


def precision_bits() -> int:
    raw = os.environ.get("KFIB_PRECISION_BITS", "")
    if not raw:
        return DEFAULT_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise UsageError(f"KFIB_PRECISION_BITS must be an integer, got {raw!r}")
    if bits < 53:
        raise UsageError("KFIB_PRECISION_BITS must be >= 53")
    return bits


@lru_cache(maxsize=None)
def context(bits: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


def fp() -> mpmath.ctx_mp.MPContext:
    """Context at the configured working precision."""
    return context(precision_bits())


def is_exact(x) -> bool:
    from .quadfield import QuadNumber

    return isinstance(x, (int, Fraction, QuadNumber)) and not isinstance(x, bool)


def to_mp(x, ctx=None):
    """Convert any supported scalar to an mpf/mpc of ``ctx``."""
    from .quadfield import QuadNumber, qfloat

    ctx = ctx or fp()
    if isinstance(x, QuadNumber):
        return ctx.mpf(qfloat(x, ctx.prec))
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, complex) or isinstance(x, mpmath.mpc) or type(x).__name__ == "mpc":
        return ctx.mpc(x)
    return ctx.mpf(x)

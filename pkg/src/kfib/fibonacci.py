"""kappa-Fibonacci numbers by recurrence and by the Binet closed form."""
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UsageError
from .quadfield import QuadNumber

__all__ = ["KappaContext", "kfib_rec", "kfib_binet", "lucas_like"]

DEFAULT_CACHE = 64


def _as_rational(kappa) -> Fraction:
    if isinstance(kappa, bool) or not isinstance(kappa, (int, Fraction, str)):
        raise UsageError(f"kappa must be rational (int, Fraction or 'p/q'), got {kappa!r}")
    return Fraction(kappa)


@dataclass(frozen=True)
class KappaContext:
    """Everything derived from one value of kappa.

    ``tau`` is the negative root (for kappa > 0) of ``t**2 - kappa*t - 1``,
    held exactly in Q(sqrt(kappa**2 + 4)).
    """

    kappa: Fraction
    D: Fraction
    tau: QuadNumber
    fib_cache: tuple = field(repr=False)

    @classmethod
    def make(cls, kappa=1, cache: int = DEFAULT_CACHE) -> "KappaContext":
        k = _as_rational(kappa)
        if k == 0:
            raise UsageError("kappa must be nonzero")
        D = k * k + 4
        tau = QuadNumber(k / 2, Fraction(-1, 2), D)
        fibs = [QuadNumber(0, 0, D), QuadNumber(1, 0, D)]
        while len(fibs) < max(cache, 2):
            fibs.append(k * fibs[-1] + fibs[-2])
        return cls(k, D, tau, tuple(fibs))

    @property
    def sqrt_D(self) -> QuadNumber:
        return QuadNumber.sqrt_of(self.D)

    def q(self, x) -> QuadNumber:
        """Lift a rational into this context's field."""
        if isinstance(x, QuadNumber):
            if x.D != self.D and x.b != 0:
                raise UsageError(f"value over sqrt({x.D}) used in context sqrt({self.D})")
            return QuadNumber(x.a, x.b, self.D) if x.b else QuadNumber(x.a, 0, self.D)
        return QuadNumber(x, 0, self.D)


def kfib_rec(ctx: KappaContext, n: int) -> QuadNumber:
    """F_{kappa,n} from F_0 = 0, F_1 = 1 and F_{n+1} = kappa F_n + F_{n-1}."""
    if n < 0:
        raise UsageError("index must be >= 0")
    if n < len(ctx.fib_cache):
        return ctx.fib_cache[n]
    prev, cur = ctx.fib_cache[-2], ctx.fib_cache[-1]
    for _ in range(len(ctx.fib_cache) - 1, n):
        prev, cur = cur, ctx.kappa * cur + prev
    return cur


def kfib_binet(ctx: KappaContext, n: int) -> QuadNumber:
    """F_{kappa,n} = ((kappa - tau)**n - tau**n) / sqrt(kappa**2 + 4), exactly."""
    if n < 0:
        raise UsageError("index must be >= 0")
    t = ctx.tau
    return ((ctx.kappa - t) ** n - t**n) / ctx.sqrt_D


def lucas_like(ctx: KappaContext, n: int) -> QuadNumber:
    """F_{kappa,n-1} + F_{kappa,n+1}; defined for n >= 1 only."""
    if n < 1:
        raise UsageError("lucas_like needs n >= 1 (F_{kappa,-1} is not defined here)")
    return kfib_rec(ctx, n - 1) + kfib_rec(ctx, n + 1)

"""Exception hierarchy shared by every kfib module."""


class KfibError(Exception):
    pass


class UsageError(KfibError, ValueError):
    """Caller broke a precondition (mismatched radicands, wrong mode, bad index)."""


class SingularError(KfibError, ZeroDivisionError):
    """Division by a series or scalar with vanishing leading term."""


class SingularParameterError(KfibError, ValueError):
    """Family parameters make a coefficient equation degenerate."""

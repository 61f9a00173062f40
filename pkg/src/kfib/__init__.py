"""Exact and high-precision tools for coefficient bounds of bi-univalent
classes subordinate to the kappa-Fibonacci shell-like function."""
from .bounds import BoundReport, FeketeReport, bounds_for, fekete
from .errors import KfibError, SingularError, SingularParameterError, UsageError
from .fibonacci import KappaContext, kfib_binet, kfib_rec, lucas_like
from .functionals import ClassSpec, apply_functional, coefficient_equations, printed_constants
from .quadfield import QuadNumber
from .shelllike import ptilde_series, subordination_expand

__version__ = "0.1.0"

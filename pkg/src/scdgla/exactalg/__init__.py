"""Exact rationals, sparse polynomials, linear algebra and Groebner bases."""

from .rational import Q, Rational, format_rational, parse_rational
from .linalg import (CompositionNonzero, Eliminator, LinSystem, Matrix, cohomology_dims,
                     kernel, left_kernel, rank, solve_linear, solve_sparse)
from .poly import MPoly, NotDivisible
from .groebner import (DEFAULT_SPAIR_BUDGET, DegreeBudgetExceeded, PolyIdeal,
                       find_rational_point, groebner, ideal_has_solution, normal_form)

__all__ = ["Q", "Rational", "format_rational", "parse_rational", "CompositionNonzero",
           "Eliminator", "LinSystem", "Matrix", "cohomology_dims", "kernel", "left_kernel",
           "rank", "solve_linear", "solve_sparse", "MPoly", "NotDivisible",
           "DEFAULT_SPAIR_BUDGET", "DegreeBudgetExceeded", "PolyIdeal", "find_rational_point",
           "groebner", "ideal_has_solution", "normal_form"]

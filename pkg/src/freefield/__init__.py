"""Exact free-field vertex algebra calculus and its invariant theory.

Subpackages:

* ``superpoly``: the supercommutative coefficient ring over Q.
* ``vertex``: canonical normally ordered words, Wick products, all circle
  products and lambda brackets of the rank-N beta-gamma/b-c system.
* ``sections``: the eight rank-2 fields, their N=4 closure at c = 6,
  filtration symbols and the standard-word linear basis.
* ``weylring``: the graded ring with its current-algebra action, the eight
  quadratic invariants, standardness and straightening.
* ``invariants``: weight-truncated invariant computations and the
  invariance criterion operators.
* ``charts``: blow-up chart series and the quadratic transformation
  identity.
* ``textio``: plain-text formats; ``cli``: the command line front end.
"""

from .superpoly import GenVar, PolyExpr, gv
from .vertex import (
    FieldExpr, FockAlgebra, LambdaPolynomial, circle, commute_order,
    conformal_weight, generator, lambda_bracket, translate, wick,
)

__all__ = [
    "GenVar", "PolyExpr", "gv",
    "FieldExpr", "FockAlgebra", "LambdaPolynomial", "circle",
    "commute_order", "conformal_weight", "generator", "lambda_bracket",
    "translate", "wick",
]

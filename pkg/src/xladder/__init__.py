"""Exact verification engine for cubic Heisenberg-Weyl algebras of X1 Laguerre systems."""

from .algebra import ALPHA, X, AlphaPoly, AlphaRat, DegenerateParameter, Rational, XRat, alpha_specialize, xrat_normalize
from .functions import Exponent, PoleError, QTerm, SecondKindState, StateSum, differentiate, differentiate_second_kind, evaluate_numeric
from .operators import DiffOperator, NotHPolynomial, apply, as_H_polynomial, commutator, compose

__version__ = "0.1.0"

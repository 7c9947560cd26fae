"""High-precision numeric spot checks, independent of the exact calculus.

Derivatives come from mpmath's numerical differentiation and second-kind
states from numerical quadrature of 1/psi^2, so a numeric residual exercises
neither the symbolic derivative nor the canonical forms.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import mpmath

from .algebra import XRat
from .functions import SecondKindState, StateSum, evaluate_numeric
from .model import SeedType, seed_polynomial
from .operators import DiffOperator

__all__ = ["SamplePoint", "sample_points", "state_function", "apply_numeric", "relative_residual", "derivatives", "value", "TOLERANCE"]

TOLERANCE = mpmath.mpf("1e-20")
PRECISION = 128
X_REF = Fraction(3, 2)  # lower limit of the antiderivative for second-kind states


class SamplePoint(tuple):
    @property
    def x0(self) -> Fraction:
        return self[0]

    @property
    def alpha0(self) -> Fraction:
        return self[1]


def sample_points(J, n: int = 5, seed: int = 20240611) -> list[SamplePoint]:
    """n points (x0, alpha0) away from integer alpha and from the zeros of F_J."""
    rng = random.Random(f"{seed}-{SeedType.parse(J).value}")
    F = seed_polynomial(J)
    out = []
    while len(out) < n:
        alpha0 = Fraction(rng.randint(13, 377), 101)
        if alpha0.denominator == 1 or abs(alpha0 - round(alpha0)) < Fraction(1, 20):
            continue
        x0 = Fraction(rng.randint(60, 260), 100)
        if abs(F(x0, alpha0)) < Fraction(1, 4):
            continue
        out.append(SamplePoint((x0, alpha0)))
    return out


def state_function(state: StateSum, alpha0: Fraction):
    """x -> value of a first-kind state at the current mpmath precision."""

    def fun(x):
        return evaluate_numeric(state, x, alpha0, mpmath.mp.prec)

    return fun


def _mpf(v):
    return mpmath.mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else mpmath.mpf(v)


def derivatives(state, x0, alpha0, n: int) -> list:
    """[u(x0), u'(x0), ..., u^(n)(x0)] by numerical differentiation.

    For g + f I the antiderivative I(x0) comes from one quadrature from X_REF
    and its derivatives from those of 1/anchor^2 (Leibniz rule).
    """
    x0 = _mpf(x0)
    if not isinstance(state, SecondKindState):
        if state.is_zero():
            return [mpmath.mpf(0)] * (n + 1)
        return list(mpmath.diffs(state_function(state, alpha0), x0, n))
    out = derivatives(state.g, x0, alpha0, n)
    if state.f.is_zero():
        return out
    anchor = state_function(state.anchor, alpha0)
    inv2 = lambda t: 1 / anchor(t) ** 2  # noqa: E731
    I0 = mpmath.quad(inv2, [_mpf(X_REF), x0])
    Id = [I0] + (list(mpmath.diffs(inv2, x0, n - 1)) if n else [])
    fd = derivatives(state.f, x0, alpha0, n)
    for k in range(n + 1):
        out[k] += sum(comb(k, j) * fd[k - j] * Id[j] for j in range(k + 1))
    return out


def _xrat_value(r: XRat, x0, alpha0):
    return evaluate_numeric(StateSum.single(0, 0, 0, r), _mpf(x0), alpha0, mpmath.mp.prec)


def apply_numeric(op: DiffOperator, state, x0, alpha0, derivs=None) -> tuple:
    """(value, magnitude) of sum c_k(x0) u^(k)(x0) with numerical derivatives."""
    order = op.order
    if order < 0:
        return mpmath.mpf(0), mpmath.mpf(0)
    if derivs is None:
        derivs = derivatives(state, x0, alpha0, order)
    total = mpmath.mpf(0)
    mag = mpmath.mpf(0)
    for k, c in op.coeffs.items():
        term = _xrat_value(c, x0, alpha0) * derivs[k]
        total += term
        mag += abs(term)
    return total, mag


def relative_residual(lhs: tuple, rhs: tuple):
    """|L - R| / max(1, |L| magnitude, |R| magnitude) for (value, magnitude) pairs."""
    diff = abs(lhs[0] - rhs[0])
    return diff / max(mpmath.mpf(1), lhs[1], rhs[1])


def value(state, x0, alpha0, scale=1) -> tuple:
    """(value, magnitude) of scale * state at x0."""
    v = derivatives(state, x0, alpha0, 0)[0] * (_mpf(scale) if not hasattr(scale, "num") else _mpf(scale(alpha0)))
    return v, abs(v)

"""Quasi-rational functions e^{s x^2} x^{p + q a} R(x) and formal sums of them.

Second-kind states g + f*I carry a formal antiderivative symbol I with
I' = 1/psi^2 for a fixed single-term anchor psi (reduction of order).
The domain is x > 0; non-integer powers of x are formal symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

import mpmath

from .algebra import ALPHA, ONE, XRAT_ONE, XRAT_ZERO, AlphaRat, DegenerateParameter, X, XRat, xrat_integer_parts, _bivariate_str

__all__ = [
    "Exponent",
    "QTerm",
    "StateSum",
    "SecondKindState",
    "PoleError",
    "differentiate",
    "differentiate_second_kind",
    "evaluate_numeric",
    "qterm",
]


class PoleError(ZeroDivisionError):
    pass


@dataclass(frozen=True, order=True)
class Exponent:
    """Power of x: p + q*alpha."""

    p: Fraction
    q: int = 0

    def as_alpha(self) -> AlphaRat:
        return self.p + self.q * ALPHA

    def __add__(self, other: "Exponent") -> "Exponent":
        return Exponent(self.p + other.p, self.q + other.q)

    def __neg__(self):
        return Exponent(-self.p, -self.q)


@dataclass(frozen=True)
class QTerm:
    """e^{s x^2} * x^{p + q a} * r(x), with 0 <= p < 1 (integer shifts live in r)."""

    s: Fraction
    p: Fraction
    q: int
    r: XRat

    @property
    def key(self):
        return (self.s, self.p, self.q)

    @property
    def exponent(self) -> Exponent:
        return Exponent(self.p, self.q)

    def __mul__(self, other: "QTerm") -> "QTerm":
        return qterm(self.s + other.s, self.p + other.p, self.q + other.q, self.r * other.r)

    def inverse(self) -> "QTerm":
        return qterm(-self.s, -self.p, -self.q, self.r.inverse())


def qterm(s, p, q: int, r) -> QTerm:
    """Build a QTerm, moving the integer part of p into r."""
    s = Fraction(s)
    p = Fraction(p)
    if not isinstance(r, XRat):
        r = XRat.const(r)
    k = floor(p)
    if k:
        r = r.shift(k)
        p -= k
    return QTerm(s, p, int(q), r)


class StateSum:
    """Finite sum of QTerms with distinct keys, sorted by key."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        acc: dict = {}
        for t in terms:
            if t.r.is_zero():
                continue
            if t.key in acc:
                acc[t.key] = acc[t.key] + t.r
            else:
                acc[t.key] = t.r
        object.__setattr__(
            self,
            "terms",
            tuple(QTerm(k[0], k[1], k[2], r) for k, r in sorted(acc.items(), key=lambda kv: kv[0]) if not r.is_zero()),
        )

    def __setattr__(self, *_):
        raise AttributeError("StateSum is immutable")

    @classmethod
    def single(cls, s, p, q, r) -> "StateSum":
        return cls([qterm(s, p, q, r)])

    @classmethod
    def constant(cls, c) -> "StateSum":
        return cls([qterm(0, 0, 0, XRat.const(c))])

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, StateSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other):
        if not isinstance(other, StateSum):
            return NotImplemented
        return StateSum(self.terms + other.terms)

    def __neg__(self):
        return StateSum([QTerm(t.s, t.p, t.q, -t.r) for t in self.terms])

    def __sub__(self, other):
        if not isinstance(other, StateSum):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "StateSum":
        """Multiply by an alpha-constant or an XRat."""
        if isinstance(c, XRat):
            return StateSum([QTerm(t.s, t.p, t.q, t.r * c) for t in self.terms])
        return StateSum([QTerm(t.s, t.p, t.q, t.r.scale(c)) for t in self.terms])

    def __mul__(self, other):
        if isinstance(other, StateSum):
            return StateSum([u * v for u in self.terms for v in other.terms])
        return self.scale(other)

    __rmul__ = __mul__

    def is_single(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "StateSum":
        if not self.is_single():
            raise ValueError("only single-term states are invertible")
        return StateSum([self.terms[0].inverse()])

    def ratio(self, other: "StateSum"):
        """c with self = c*other for an alpha-constant c, else None."""
        if len(self.terms) != len(other.terms):
            return None
        if not self.terms:
            return None
        c = None
        for u, v in zip(self.terms, other.terms):
            if u.key != v.key:
                return None
            w = u.r / v.r
            if not w.is_alpha_constant():
                return None
            w = w.alpha_value()
            if c is None:
                c = w
            elif c != w:
                return None
        return c

    def derivative(self) -> "StateSum":
        return differentiate(self)

    def __repr__(self):
        return f"StateSum({self})"

    def __str__(self):
        return statesum_str(self)


@dataclass(frozen=True)
class SecondKindState:
    """g + f * I, with I' = 1/anchor^2."""

    g: StateSum
    f: StateSum
    anchor: StateSum

    def __post_init__(self):
        if not self.anchor.is_single():
            raise ValueError("anchor must be a single-term state")

    @classmethod
    def from_anchor(cls, psi: StateSum) -> "SecondKindState":
        """psi * I_psi, the reduction-of-order partner of psi."""
        return cls(StateSum(), psi, psi)

    def __add__(self, other):
        if isinstance(other, StateSum):
            return SecondKindState(self.g + other, self.f, self.anchor)
        self._check(other)
        return SecondKindState(self.g + other.g, self.f + other.f, self.anchor)

    def __sub__(self, other):
        if isinstance(other, StateSum):
            return SecondKindState(self.g - other, self.f, self.anchor)
        self._check(other)
        return SecondKindState(self.g - other.g, self.f - other.f, self.anchor)

    def __neg__(self):
        return SecondKindState(-self.g, -self.f, self.anchor)

    def scale(self, c) -> "SecondKindState":
        return SecondKindState(self.g.scale(c), self.f.scale(c), self.anchor)

    def is_zero(self) -> bool:
        return self.g.is_zero() and self.f.is_zero()

    def _check(self, other):
        if not isinstance(other, SecondKindState) or other.anchor != self.anchor:
            raise ValueError("second-kind states with different anchors")

    def derivative(self) -> "SecondKindState":
        return differentiate_second_kind(self)

    def __str__(self):
        return f"[{self.g}] + [{self.f}]*I[{self.anchor}]"


def _term_derivative(t: QTerm) -> XRat:
    # d/dx (e^{s x^2} x^b r) = e^{s x^2} x^b (2 s x r + (b/x) r + r')
    out = t.r.derivative()
    if t.s:
        out = out + (t.r * X).scale(AlphaRat.const(2 * t.s))
    b = t.p + t.q * ALPHA
    if b:
        out = out + t.r.shift(-1).scale(b)
    return out


def differentiate(s: StateSum) -> StateSum:
    return StateSum([QTerm(t.s, t.p, t.q, _term_derivative(t)) for t in s.terms])


def inverse_square(psi: StateSum) -> StateSum:
    t = psi.terms[0]
    return StateSum([qterm(-2 * t.s, -2 * t.p, -2 * t.q, (t.r * t.r).inverse())])


def differentiate_second_kind(t: SecondKindState) -> SecondKindState:
    # (g + f I)' = (g' + f/psi^2) + f' I
    g = differentiate(t.g)
    if not t.f.is_zero():
        g = g + t.f * inverse_square(t.anchor)
    return SecondKindState(g, differentiate(t.f), t.anchor)


# ---------------------------------------------------------------------------
# numerics


def _mp_poly(rows, x0, a0):
    acc = mpmath.mpf(0)
    for i in range(len(rows) - 1, -1, -1):
        inner = mpmath.mpf(0)
        for j in range(len(rows[i]) - 1, -1, -1):
            inner = inner * a0 + rows[i][j]
        acc = acc * x0 + inner
    return acc


def _mp_xrat(r: XRat, x0, alpha0: Fraction):
    try:
        r0 = r.specialize(alpha0)
    except DegenerateParameter as exc:
        raise PoleError(f"evaluation at pole: {exc}") from exc
    num = [c.constant_value() for c in r0.num]
    den = [c.constant_value() for c in r0.den]
    d = mpmath.mpf(0)
    for v in reversed(den):
        d = d * x0 + mpmath.mpf(v.numerator) / v.denominator
    if d == 0:
        raise PoleError(f"evaluation at pole x={x0}")
    n = mpmath.mpf(0)
    for v in reversed(num):
        n = n * x0 + mpmath.mpf(v.numerator) / v.denominator
    return n / d


def evaluate_numeric(s, x0, alpha0, precision: int = 128, antiderivative=None):
    """Value of a StateSum (or SecondKindState, given the value of I) at x0 > 0.

    ``antiderivative`` is the numeric value of I at x0; required for
    second-kind states with nonzero f.
    """
    alpha0 = Fraction(alpha0)
    with mpmath.workprec(precision + 32):
        x0 = mpmath.mpf(x0.numerator) / x0.denominator if isinstance(x0, Fraction) else mpmath.mpf(x0)
        if x0 <= 0:
            raise ValueError("x0 must be positive")
        if isinstance(s, SecondKindState):
            val = evaluate_numeric(s.g, x0, alpha0, precision)
            if not s.f.is_zero():
                if antiderivative is None:
                    raise ValueError("second-kind state needs the value of I")
                val += evaluate_numeric(s.f, x0, alpha0, precision) * antiderivative
            return +val
        a0 = mpmath.mpf(alpha0.numerator) / alpha0.denominator
        total = mpmath.mpf(0)
        lx = mpmath.log(x0)
        for t in s.terms:
            pref = mpmath.exp(mpmath.mpf(t.s.numerator) / t.s.denominator * x0 * x0)
            pref *= mpmath.exp((mpmath.mpf(t.p.numerator) / t.p.denominator + t.q * a0) * lx)
            total += pref * _mp_xrat(t.r, x0, alpha0)
        return +total


# ---------------------------------------------------------------------------
# text


def qterm_str(t: QTerm) -> str:
    c, N, D = xrat_integer_parts(t.r)
    N = [[v * c.numerator for v in row] for row in N]
    D = [[v * c.denominator for v in row] for row in D]
    return f"exp({t.s}*x^2) * x^({t.p} + {t.q}*a) * ({_bivariate_str(N)})/({_bivariate_str(D)})"


def statesum_str(s: StateSum) -> str:
    if not s.terms:
        return "0"
    return " + ".join(qterm_str(t) for t in s.terms)

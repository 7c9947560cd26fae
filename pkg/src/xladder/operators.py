"""Ordinary differential operators sum_k c_k(x) d^k with XRat coefficients."""

from __future__ import annotations

from math import comb

from .algebra import ONE, XRAT_ONE, AlphaRat, XRat, xrat_str
from .functions import SecondKindState, StateSum, differentiate, differentiate_second_kind

__all__ = ["DiffOperator", "NotHPolynomial", "apply", "compose", "commutator", "as_H_polynomial"]


class NotHPolynomial(ValueError):
    """Raised by as_H_polynomial; carries the nonzero residual operator."""

    def __init__(self, residual: "DiffOperator", partial: list):
        super().__init__("not an H-polynomial")
        self.residual = residual
        self.partial = partial


class DiffOperator:
    __slots__ = ("coeffs", "_derivs")

    def __init__(self, coeffs=None):
        clean = {}
        for k, c in (coeffs or {}).items():
            if not isinstance(c, XRat):
                c = XRat.const(c)
            if not c.is_zero():
                clean[int(k)] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))
        object.__setattr__(self, "_derivs", {})

    def __setattr__(self, *_):
        raise AttributeError("DiffOperator is immutable")

    @classmethod
    def identity(cls) -> "DiffOperator":
        return cls({0: XRAT_ONE})

    @classmethod
    def d(cls, k: int = 1) -> "DiffOperator":
        return cls({k: XRAT_ONE})

    @classmethod
    def mult(cls, c) -> "DiffOperator":
        return cls({0: c})

    @property
    def order(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __add__(self, other):
        other = _as_op(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return DiffOperator(out)

    __radd__ = __add__

    def __neg__(self):
        return DiffOperator({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_as_op(other))

    def __rsub__(self, other):
        return _as_op(other) - self

    def scale(self, c) -> "DiffOperator":
        if isinstance(c, XRat):
            return DiffOperator({k: v * c for k, v in self.coeffs.items()})
        return DiffOperator({k: v.scale(c) for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, DiffOperator):
            return compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "DiffOperator":
        out = DiffOperator.identity()
        for _ in range(n):
            out = compose(out, self)
        return out

    def __call__(self, state):
        return apply(self, state)

    def coefficient_derivative(self, k: int, i: int) -> XRat:
        """i-th x-derivative of c_k, cached."""
        key = (k, i)
        cache = self._derivs
        if key not in cache:
            cache[key] = self.coeffs[k] if i == 0 else self.coefficient_derivative(k, i - 1).derivative()
        return cache[key]

    def __repr__(self):
        return f"DiffOperator({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({xrat_str(c)}) * d^{k}" for k, c in sorted(self.coeffs.items(), reverse=True))


def _as_op(v) -> DiffOperator:
    if isinstance(v, DiffOperator):
        return v
    return DiffOperator.mult(XRat.const(v) if not isinstance(v, XRat) else v)


def compose(d1: DiffOperator, d2: DiffOperator) -> DiffOperator:
    """d1 o d2 via Leibniz: c d^k . e d^j = c sum_i C(k,i) e^(i) d^(k-i+j)."""
    out: dict = {}
    for k, c in d1.coeffs.items():
        for j in d2.coeffs:
            for i in range(k + 1):
                e = d2.coefficient_derivative(j, i)
                if e.is_zero():
                    continue
                term = c * e
                if i:
                    term = term.scale(AlphaRat.const(comb(k, i)))
                m = k - i + j
                out[m] = out[m] + term if m in out else term
    return DiffOperator(out)


def commutator(d1: DiffOperator, d2: DiffOperator) -> DiffOperator:
    return compose(d1, d2) - compose(d2, d1)


def apply(op: DiffOperator, state):
    """Apply op to a StateSum or a SecondKindState (exact)."""
    if isinstance(state, SecondKindState):
        deriv = differentiate_second_kind
        acc = SecondKindState(StateSum(), StateSum(), state.anchor)
    else:
        deriv = differentiate
        acc = StateSum()
    cur = state
    for k in range(op.order + 1):
        if k:
            cur = deriv(cur)
        c = op.coeffs.get(k)
        if c is not None:
            acc = acc + cur.scale(c)
    return acc


def as_H_polynomial(D: DiffOperator, H: DiffOperator, max_deg: int = 4) -> list:
    """Coefficients c_0..c_d (AlphaRat) with D = sum c_k H^k, else NotHPolynomial.

    H must have order 2 with an alpha-constant leading coefficient.
    """
    if H.order != 2 or not H.coeffs[2].is_alpha_constant():
        raise ValueError("H must be second order with constant leading coefficient")
    powers = [DiffOperator.identity()]
    for _ in range(max_deg):
        powers.append(compose(powers[-1], H))
    coeffs: dict = {}
    R = D
    while not R.is_zero():
        k = R.order
        d, odd = divmod(k, 2)
        if odd or d > max_deg:
            raise NotHPolynomial(R, _dense(coeffs))
        ratio = R.coeffs[k] / powers[d].coeffs[k]
        if not ratio.is_alpha_constant():
            raise NotHPolynomial(R, _dense(coeffs))
        c = ratio.alpha_value()
        coeffs[d] = c
        R = R - powers[d].scale(c)
    return _dense(coeffs)


def _dense(coeffs: dict) -> list:
    if not coeffs:
        return []
    from .algebra import ZERO

    return [coeffs.get(i, ZERO) for i in range(max(coeffs) + 1)]

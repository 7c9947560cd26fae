"""The abstract cubic Heisenberg-Weyl algebra by brute-force normal ordering.

Generators H, c, c' with

    [H, c] = -a c,   [H, c'] = a c',   [c, c'] = P(H),

and P cubic.  Elements are kept in the PBW normal form sum c'^i p_ij(H) c^j.
Rewriting only uses the three defining relations, which makes this an
independent oracle for the closed-form commutator coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

__all__ = ["CubicAlgebra", "Element"]


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def _padd(p, q):
    n = max(len(p), len(q))
    return _trim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, u in enumerate(p):
        if u:
            for j, v in enumerate(q):
                out[i + j] += u * v
    return _trim(out)


def _pshift(p, t):
    """p(H + t)."""
    out = [Fraction(0)] * len(p)
    for k, c in enumerate(p):
        if c:
            for j in range(k + 1):
                out[j] += c * comb(k, j) * t ** (k - j)
    return _trim(out)


class Element:
    """Finite sum of c'^i p(H) c^j, stored as {(i, j): coefficients of p}."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "CubicAlgebra", terms=None):
        self.alg = alg
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = _padd(out.get(k, ()), v)
        return Element(self.alg, out)

    def __neg__(self):
        return Element(self.alg, {k: tuple(-c for c in v) for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __mul__(self, other: "Element") -> "Element":
        out = Element(self.alg)
        for (i, j), p in self.terms.items():
            y = other
            for _ in range(j):
                y = self.alg.left_c(y)
            y = self.alg.left_poly(p, y)
            out = out + self.alg.left_cdag(y, i)
        return out

    def __pow__(self, n: int) -> "Element":
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        return f"Element({self.terms})"


class CubicAlgebra:
    def __init__(self, a, P):
        self.a = Fraction(a)
        self.P = _trim(Fraction(c) for c in P)

    def one(self) -> Element:
        return Element(self, {(0, 0): (Fraction(1),)})

    def H(self) -> Element:
        return Element(self, {(0, 0): (Fraction(0), Fraction(1))})

    def poly(self, p) -> Element:
        return Element(self, {(0, 0): _trim(Fraction(c) for c in p)})

    def c(self) -> Element:
        return Element(self, {(0, 1): (Fraction(1),)})

    def cdag(self) -> Element:
        return Element(self, {(1, 0): (Fraction(1),)})

    # left multiplication by generators -------------------------------------
    def left_cdag(self, y: Element, k: int = 1) -> Element:
        if not k:
            return y
        return Element(self, {(i + k, j): p for (i, j), p in y.terms.items()})

    def left_poly(self, q, y: Element) -> Element:
        # q(H) c'^i = c'^i q(H + i a)
        out = Element(self)
        for (i, j), p in y.terms.items():
            out = out + Element(self, {(i, j): _pmul(_pshift(q, i * self.a), p)})
        return out

    def left_c(self, y: Element) -> Element:
        out = Element(self)
        for (i, j), p in y.terms.items():
            out = out + self._c_times(i, p, j)
        return out

    def _c_times(self, i, p, j) -> Element:
        if i == 0:
            # c p(H) = p(H + a) c
            return Element(self, {(0, j + 1): _pshift(p, self.a)})
        # c c' Y = c' (c Y) + P(H) Y with Y = c'^{i-1} p c^j
        rest = self._c_times(i - 1, p, j)
        return self.left_cdag(rest) + self.left_poly(self.P, Element(self, {(i - 1, j): p}))

    @staticmethod
    def commutator(x: Element, y: Element) -> Element:
        return x * y - y * x

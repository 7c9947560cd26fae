"""Exact coefficient tower Q -> Q[a] -> Q(a) -> Q(a)[x] -> Q(a)(x).

The formal parameter ``a`` (alpha) is transcendental; every value has a unique
canonical representative so equality is structural.  Numeric specialization of
``a`` is a separate, guarded step (:func:`alpha_specialize`).

Low-level helpers work on plain tuples of coefficients (index = degree) and the
classes wrap them.  All values are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pure-Python fallback, same semantics, slower
    _Q = Fraction

Rational = Fraction

__all__ = [
    "Rational",
    "AlphaPoly",
    "AlphaRat",
    "XRat",
    "DegenerateParameter",
    "xrat_normalize",
    "alpha_specialize",
    "ALPHA",
    "X",
]


class DegenerateParameter(ValueError):
    """Raised when a numeric alpha hits a pole of some coefficient."""


# ---------------------------------------------------------------------------
# Q[a] on tuples of rationals (gmpy2 mpq when available)

_ZERO = _Q(0)
_ONE = _Q(1)
_RATIONALS = (int, Fraction, type(_ONE))


def _trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def _psub(a, b):
    out = list(a) + [_ZERO] * (len(b) - len(a))
    for i, v in enumerate(b):
        out[i] -= v
    return _trim(out)


def _pscale(a, c):
    if not c:
        return ()
    return tuple(v * c for v in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return _pscale(b, a[0])
    if len(b) == 1:
        return _pscale(a, b[0])
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return tuple(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("division by zero")
    if len(a) < len(b):
        return (), a
    if len(b) == 1:
        inv = 1 / b[0]
        return _pscale(a, inv), ()
    r = list(a)
    db = len(b) - 1
    inv = 1 / b[-1]
    q = [_ZERO] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if c:
            c *= inv
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] -= c * b[j]
    return _trim(q), _trim(r[:db])


def _pmonic(a):
    if not a or a[-1] == 1:
        return a
    inv = 1 / a[-1]
    return tuple(v * inv for v in a)


def _pgcd(a, b):
    """Monic gcd in Q[a]."""
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return (_ONE,)
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _pprimitive_scale(a):
    """Scalar c with c*a integral, content one and positive leading coefficient."""
    den = reduce(lcm, (v.denominator for v in a), 1)
    num = reduce(gcd, (v.numerator for v in a), 0)
    c = _Q(den, num)
    return -c if a[-1] < 0 else c


def _fraction(v) -> Fraction:
    """Plain Fraction with int parts (mpq or Fraction input)."""
    return Fraction(int(v.numerator), int(v.denominator))


def _peval(a, t):
    acc = _ZERO
    for v in reversed(a):
        acc = acc * t + v
    return acc


# ---------------------------------------------------------------------------


def _coerce_rational(v):
    if isinstance(v, Fraction):
        return _Q(int(v.numerator), int(v.denominator))
    if isinstance(v, _RATIONALS):
        return _Q(v)
    if isinstance(v, str):
        return _Q(Fraction(v))
    raise TypeError(f"cannot coerce {type(v).__name__} to Rational")


class AlphaPoly:
    """Polynomial in alpha with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _trim([_coerce_rational(c) for c in coeffs]))

    @classmethod
    def _raw(cls, coeffs):
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    def __setattr__(self, *_):
        raise AttributeError("AlphaPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, AlphaPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, _RATIONALS):
            return self.coeffs == _trim([_Q(other)])
        return NotImplemented

    def __hash__(self):
        return hash(("AlphaPoly", self.coeffs))

    def __add__(self, other):
        return AlphaPoly._raw(_padd(self.coeffs, _as_poly(other).coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        return AlphaPoly._raw(_psub(self.coeffs, _as_poly(other).coeffs))

    def __rsub__(self, other):
        return AlphaPoly._raw(_psub(_as_poly(other).coeffs, self.coeffs))

    def __neg__(self):
        return AlphaPoly._raw(tuple(-v for v in self.coeffs))

    def __mul__(self, other):
        return AlphaPoly._raw(_pmul(self.coeffs, _as_poly(other).coeffs))

    __rmul__ = __mul__

    def __divmod__(self, other):
        q, r = _pdivmod(self.coeffs, _as_poly(other).coeffs)
        return AlphaPoly._raw(q), AlphaPoly._raw(r)

    def gcd(self, other) -> "AlphaPoly":
        return AlphaPoly._raw(_pgcd(self.coeffs, _as_poly(other).coeffs))

    def __call__(self, t):
        return _peval(self.coeffs, _coerce_rational(t))

    def __repr__(self):
        return f"AlphaPoly({_poly_str(self.coeffs, 'a')})"


def _as_poly(v) -> AlphaPoly:
    if isinstance(v, AlphaPoly):
        return v
    return AlphaPoly((v,))


# ---------------------------------------------------------------------------
# Q(a)


class AlphaRat:
    """Element of Q(a): num/den with gcd 1, den integral-primitive, lc(den) > 0."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        n = _to_ptuple(num)
        d = _to_ptuple(den)
        n, d = _normalize_alpha(n, d)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, num, den=(_ONE,)):
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, *_):
        raise AttributeError("AlphaRat is immutable")

    @classmethod
    def const(cls, v) -> "AlphaRat":
        v = _coerce_rational(v)
        return cls._raw((v,) if v else ())

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_poly(self) -> bool:
        return len(self.den) == 1

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return _fraction(self.num[0] / self.den[0]) if self.num else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, AlphaRat):
            return self.num == other.num and self.den == other.den
        if isinstance(other, _RATIONALS):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _as_arat(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            if len(self.den) == 1:
                return AlphaRat._raw(_padd(self.num, o.num), self.den)
            return _arat_from(_padd(self.num, o.num), self.den)
        n = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return _arat_from(n, _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return AlphaRat._raw(tuple(-v for v in self.num), self.den)

    def __sub__(self, other):
        o = _as_arat(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _as_arat(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _as_arat(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return ZERO
        if len(self.den) == 1 and len(o.den) == 1:
            if self.den[0] == 1 and o.den[0] == 1:
                return AlphaRat._raw(_pmul(self.num, o.num), self.den)
        # cross-cancel keeps intermediate sizes small
        g1 = _pgcd(self.num, o.den)
        g2 = _pgcd(o.num, self.den)
        n1, d2 = self.num, o.den
        if len(g1) > 1:
            n1 = _pdivmod(n1, g1)[0]
            d2 = _pdivmod(d2, g1)[0]
        n2, d1 = o.num, self.den
        if len(g2) > 1:
            n2 = _pdivmod(n2, g2)[0]
            d1 = _pdivmod(d1, g2)[0]
        return _arat_scaled(_pmul(n1, n2), _pmul(d1, d2))

    __rmul__ = __mul__

    def inverse(self) -> "AlphaRat":
        if not self.num:
            raise ZeroDivisionError("division by zero")
        return _arat_scaled(self.den, self.num)

    def __truediv__(self, other):
        o = _as_arat(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _as_arat(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # evaluation -----------------------------------------------------------
    def __call__(self, t) -> Fraction:
        t = _coerce_rational(t)
        d = _peval(self.den, t)
        if not d:
            raise DegenerateParameter(
                f"degenerate parameter: a={t} is a root of {_poly_str(self.den, 'a')}"
            )
        return _fraction(_peval(self.num, t) / d)

    def __repr__(self):
        return f"AlphaRat({self})"

    def __str__(self):
        return arat_str(self)


def _to_ptuple(v):
    if isinstance(v, AlphaPoly):
        return v.coeffs
    if isinstance(v, _RATIONALS + (str,)):
        v = _coerce_rational(v)
        return (v,) if v else ()
    return _trim([_coerce_rational(c) for c in v])


def _normalize_alpha(n, d):
    if not d:
        raise ZeroDivisionError("division by zero")
    if not n:
        return (), (_ONE,)
    if len(d) > 1:
        g = _pgcd(n, d)
        if len(g) > 1:
            n = _pdivmod(n, g)[0]
            d = _pdivmod(d, g)[0]
    c = _pprimitive_scale(d)
    if c != 1:
        n = _pscale(n, c)
        d = _pscale(d, c)
    return n, d


def _arat_from(n, d):
    n, d = _normalize_alpha(n, d)
    return AlphaRat._raw(n, d)


def _arat_scaled(n, d):
    """n/d already coprime; only fix the scalar normalization."""
    if not n:
        return ZERO
    c = _pprimitive_scale(d)
    if c != 1:
        n = _pscale(n, c)
        d = _pscale(d, c)
    return AlphaRat._raw(n, d)


def _as_arat(v):
    if isinstance(v, AlphaRat):
        return v
    if isinstance(v, _RATIONALS):
        v = _Q(v)
        return AlphaRat._raw((v,) if v else ())
    if isinstance(v, AlphaPoly):
        return AlphaRat._raw(v.coeffs)
    return None


ZERO = AlphaRat._raw(())
ONE = AlphaRat._raw((_ONE,))
ALPHA = AlphaRat._raw((_ZERO, _ONE))


# ---------------------------------------------------------------------------
# Q(a)[x] on tuples of AlphaRat


def _xtrim(c):
    n = len(c)
    while n and not c[n - 1].num:
        n -= 1
    return tuple(c[:n])


def _xadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        if v.num:
            out[i] = out[i] + v
    return _xtrim(out)


def _xneg(a):
    return tuple(-v for v in a)


def _xsub(a, b):
    return _xadd(a, _xneg(b))


def _xscale(a, c):
    if not c.num:
        return ()
    if c == ONE:
        return a
    return tuple(v * c if v.num else v for v in a)


def _xmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return _xscale(b, a[0])
    if len(b) == 1:
        return _xscale(a, b[0])
    # common fast path: both polynomial in alpha with unit denominators
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u.num:
            for j, v in enumerate(b):
                if v.num:
                    out[i + j] = out[i + j] + u * v
    return _xtrim(out)


def _xshift(a, k):
    """Multiply by x**k, k >= 0."""
    if not a or not k:
        return a
    return (ZERO,) * k + a


def _xval(a):
    """Order of vanishing at x = 0."""
    for i, v in enumerate(a):
        if v.num:
            return i
    return 0


def _xderiv(a):
    return _xtrim([a[i] * i for i in range(1, len(a))])


def _xdivmod(a, b):
    if not b:
        raise ZeroDivisionError("division by zero")
    if len(a) < len(b):
        return (), a
    db = len(b) - 1
    inv = b[-1].inverse() if b[-1] != ONE else ONE
    if db == 0:
        return _xscale(a, inv), ()
    r = list(a)
    q = [ZERO] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if c.num:
            if inv is not ONE:
                c = c * inv
            q[k - db] = c
            for j in range(db):
                if b[j].num:
                    r[k - db + j] = r[k - db + j] - c * b[j]
    return _xtrim(q), _xtrim(r[:db])


def _xmonic(a):
    if not a or a[-1] == ONE:
        return a
    inv = a[-1].inverse()
    return tuple(v * inv if v.num else v for v in a)


def _clear_alpha(a):
    """Scale a Q(a)[x] polynomial to one over Q[a] (tuple of alpha-tuples), primitive."""
    dens = [v.den for v in a if v.num and len(v.den) > 1]
    if dens:
        L = reduce(lambda u, v: _pmul(u, _pdivmod(v, _pgcd(u, v))[0]), dens)
        rows = []
        for v in a:
            if v.num:
                rows.append(_pmul(v.num, _pdivmod(L, v.den)[0]) if len(v.den) > 1 else _pscale(_pmul(v.num, L), 1 / v.den[0]))
            else:
                rows.append(())
    else:
        rows = [_pscale(v.num, 1 / v.den[0]) if v.num else () for v in a]
    return _qa_primitive(rows)


def _qa_primitive(rows):
    nz = [r for r in rows if r]
    g = nz[0]
    for r in nz[1:]:
        if len(g) == 1:
            break
        g = _pgcd(g, r)
    if len(g) > 1:
        rows = [_pdivmod(r, g)[0] if r else () for r in rows]
    else:
        inv = 1 / g[0]
        if inv != 1:
            rows = [_pscale(r, inv) for r in rows]
    c = _pprimitive_scale(rows[-1])
    if c != 1:
        rows = [_pscale(r, c) for r in rows]
    return rows


def _qa_prem(a, b):
    """Pseudo-remainder of a by b in Q[a][x]."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [_pmul(v, lb) for v in r]
        for j in range(db + 1):
            r[shift + j] = _psub(r[shift + j], _pmul(lr, b[j]))
        while r and not r[-1]:
            r.pop()
    return r


def _xgcd(a, b):
    """Monic gcd over Q(a) of two nonzero polynomials."""
    m = min(_xval(a), _xval(b))
    a = a[_xval(a):]
    b = b[_xval(b):]
    if len(a) == 1 or len(b) == 1:
        return _xshift((ONE,), m)
    A = _clear_alpha(a)
    B = _clear_alpha(b)
    if len(A) < len(B):
        A, B = B, A
    while True:
        R = _qa_prem(A, B)
        if not R:
            break
        if len(R) == 1:
            return _xshift((ONE,), m)
        A, B = B, _qa_primitive(R)
    g = tuple(_arat_from(v, (_ONE,)) if v else ZERO for v in B)
    return _xshift(_xmonic(g), m)


# ---------------------------------------------------------------------------
# Q(a)(x)


class XRat:
    """Rational function of x over Q(a); den is monic and coprime to num."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        n = _to_xtuple(num)
        d = _to_xtuple(1 if den is None else den)
        n, d = _normalize_x(n, d)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, *_):
        raise AttributeError("XRat is immutable")

    @classmethod
    def const(cls, c) -> "XRat":
        c = _as_arat(c)
        return cls._raw((c,) if c.num else (), (ONE,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "XRat":
        c = _as_arat(c)
        if not c.num:
            return XRAT_ZERO
        if k >= 0:
            return cls._raw(_xshift((c,), k), (ONE,))
        return cls._raw((c,), _xshift((ONE,), -k))

    @classmethod
    def poly(cls, coeffs) -> "XRat":
        return cls._raw(_to_xtuple(coeffs), (ONE,))

    # predicates ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_alpha_constant(self) -> bool:
        """True when free of x."""
        return len(self.den) == 1 and len(self.num) <= 1

    def alpha_value(self) -> AlphaRat:
        if not self.is_alpha_constant():
            raise ValueError("depends on x")
        return self.num[0] if self.num else ZERO

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def __eq__(self, other):
        if isinstance(other, XRat):
            return self.num == other.num and self.den == other.den
        o = _as_arat(other)
        if o is not None:
            return self.is_alpha_constant() and self.alpha_value() == o
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        o = _as_xrat(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            if len(self.den) == 1:
                return XRat._raw(_xadd(self.num, o.num), self.den)
            return _xrat_from(_xadd(self.num, o.num), self.den)
        # den = lcm(d1, d2)
        g = _xgcd(self.den, o.den)
        if len(g) == 1:
            n = _xadd(_xmul(self.num, o.den), _xmul(o.num, self.den))
            d = _xmul(self.den, o.den)
            return _xrat_from(n, d, coprime_den=(self.den, o.den))
        d1 = _xdivmod(self.den, g)[0]
        d2 = _xdivmod(o.den, g)[0]
        n = _xadd(_xmul(self.num, d2), _xmul(o.num, d1))
        d = _xmul(self.den, d2)
        # common factor can only divide g
        return _xrat_cancel_by(n, d, g)

    __radd__ = __add__

    def __neg__(self):
        return XRat._raw(_xneg(self.num), self.den)

    def __sub__(self, other):
        o = _as_xrat(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _as_xrat(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _as_xrat(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return XRAT_ZERO
        if o.is_alpha_constant():
            return self.scale(o.num[0])
        if self.is_alpha_constant():
            return o.scale(self.num[0])
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if len(d2) > 1:
            g = _xgcd(n1, d2)
            if len(g) > 1:
                n1 = _xdivmod(n1, g)[0]
                d2 = _xdivmod(d2, g)[0]
        if len(d1) > 1:
            g = _xgcd(n2, d1)
            if len(g) > 1:
                n2 = _xdivmod(n2, g)[0]
                d1 = _xdivmod(d1, g)[0]
        n = _xmul(n1, n2)
        d = _xmul(d1, d2)
        return _xrat_monic(n, d)

    __rmul__ = __mul__

    def scale(self, c) -> "XRat":
        c = _as_arat(c)
        if not c.num:
            return XRAT_ZERO
        return XRat._raw(_xscale(self.num, c), self.den)

    def inverse(self) -> "XRat":
        if not self.num:
            raise ZeroDivisionError("division by zero")
        return _xrat_monic(self.den, self.num)

    def __truediv__(self, other):
        o = _as_xrat(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _as_xrat(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = XRAT_ONE
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "XRat":
        """Multiply by x**k (k may be negative)."""
        if not self.num or not k:
            return self
        if k > 0:
            v = _xval(self.den)
            c = min(v, k)
            den = self.den[c:] if c else self.den
            return XRat._raw(_xshift(self.num, k - c), den)
        k = -k
        v = _xval(self.num)
        c = min(v, k)
        num = self.num[c:] if c else self.num
        return XRat._raw(num, _xshift(self.den, k - c))

    def derivative(self) -> "XRat":
        n, d = self.num, self.den
        if not n:
            return self
        if len(d) == 1:
            return XRat._raw(_xderiv(n), d)
        # (n/d)' = (n' d - n d') / d^2; with d = x^k e the x-part is handled apart
        k = _xval(d)
        e = d[k:]
        if len(e) == 1:
            # d = x^k
            num = _xsub(_xshift(_xderiv(n), 1), _xscale(n, _as_arat(k)))
            return _xrat_from(num, _xshift(d, 1))
        # generic: gcd(d, d') handles repeated factors
        dp = _xderiv(d)
        g = _xgcd(d, dp)
        dg = _xdivmod(d, g)[0]
        dpg = _xdivmod(dp, g)[0]
        num = _xsub(_xmul(_xderiv(n), dg), _xmul(n, dpg))
        return _xrat_from(num, _xmul(d, dg))

    # evaluation ------------------------------------------------------------
    def specialize(self, alpha0) -> "XRat":
        return alpha_specialize(self, alpha0)

    def __call__(self, x0, alpha0=None):
        """Exact value at rational x0 (alpha must be free or alpha0 given)."""
        x0 = _coerce_rational(x0)
        r = self if alpha0 is None else alpha_specialize(self, alpha0)
        if alpha0 is None and any(not c.is_constant() for c in r.num + r.den):
            raise ValueError("alpha value required")
        d = _peval(tuple(c.constant_value() for c in r.den), x0)
        if not d:
            raise ZeroDivisionError("evaluation at pole")
        return _fraction(_peval(tuple(c.constant_value() for c in r.num), x0) / d)

    def __repr__(self):
        return f"XRat({self})"

    def __str__(self):
        return xrat_str(self)


def _to_xtuple(v):
    if isinstance(v, XRat):
        if len(v.den) != 1:
            raise TypeError("expected a polynomial")
        return v.num
    if isinstance(v, _RATIONALS + (AlphaRat, AlphaPoly)):
        c = _as_arat(v)
        return (c,) if c.num else ()
    return _xtrim([_as_arat(c) if not isinstance(c, AlphaRat) else c for c in v])


def _xrat_monic(n, d):
    if not n:
        return XRAT_ZERO
    lc = d[-1]
    if lc != ONE:
        inv = lc.inverse()
        n = _xscale(n, inv)
        d = _xscale(d, inv)
    return XRat._raw(n, d)


def _normalize_x(n, d):
    if not d:
        raise ZeroDivisionError("division by zero")
    if not n:
        return (), (ONE,)
    if len(d) > 1:
        g = _xgcd(n, d)
        if len(g) > 1:
            n = _xdivmod(n, g)[0]
            d = _xdivmod(d, g)[0]
    lc = d[-1]
    if lc != ONE:
        inv = lc.inverse()
        n = _xscale(n, inv)
        d = _xscale(d, inv)
    return n, d


def _xrat_from(n, d, coprime_den=None):
    if not n:
        return XRAT_ZERO
    if coprime_den is not None:
        # d = d1*d2 with gcd(d1, d2) = 1: test each factor separately (smaller gcds)
        for part in coprime_den:
            if len(part) > 1:
                g = _xgcd(n, part)
                if len(g) > 1:
                    n = _xdivmod(n, g)[0]
                    d = _xdivmod(d, g)[0]
        return _xrat_monic(n, d)
    n, d = _normalize_x(n, d)
    return XRat._raw(n, d)


def _xrat_cancel_by(n, d, g):
    if not n:
        return XRAT_ZERO
    # any common factor of n and d divides g; repeat for multiplicities
    h = _xgcd(n, g)
    while len(h) > 1:
        n = _xdivmod(n, h)[0]
        d = _xdivmod(d, h)[0]
        h = _xgcd(_xgcd(n, d), h)
    return _xrat_monic(n, d)


def _as_xrat(v):
    if isinstance(v, XRat):
        return v
    c = _as_arat(v)
    if c is None:
        return None
    return XRat._raw((c,) if c.num else (), (ONE,))


XRAT_ZERO = XRat._raw((), (ONE,))
XRAT_ONE = XRat._raw((ONE,), (ONE,))
X = XRat._raw((ZERO, ONE), (ONE,))


def xrat_normalize(num, den) -> XRat:
    """Canonical XRat for num/den, both x-polynomials over Q(a)."""
    return XRat(num, den)


def alpha_specialize(r: XRat, alpha0) -> XRat:
    """Substitute alpha = alpha0 (rational) into r; result has constant coefficients."""
    alpha0 = _coerce_rational(alpha0)
    num = [AlphaRat.const(c(alpha0)) if c.num else ZERO for c in r.num]
    den = [AlphaRat.const(c(alpha0)) if c.num else ZERO for c in r.den]
    return XRat(num, den)


# ---------------------------------------------------------------------------
# text


def _poly_str(c, var):
    if not c:
        return "0"
    parts = []
    for k in range(len(c) - 1, -1, -1):
        v = c[k]
        if not v:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(v)
        if mono:
            s = mono if mag == 1 else f"{mag}*{mono}"
        else:
            s = str(mag)
        sign = "-" if v < 0 else "+"
        parts.append((sign, s))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, s in parts[1:]:
        out += f" {sign} {s}"
    return out


def arat_str(r: AlphaRat) -> str:
    if not r.num:
        return "0"
    if len(r.den) == 1:
        d = r.den[0]
        n = tuple(v / d for v in r.num)
        return _poly_str(n, "a")
    return f"({_poly_str(r.num, 'a')})/({_poly_str(r.den, 'a')})"


def _bivariate_str(rows):
    """rows[i] is the alpha-polynomial coefficient of x^i (integer coefficients)."""
    terms = []
    for i in range(len(rows) - 1, -1, -1):
        for j in range(len(rows[i]) - 1, -1, -1):
            v = rows[i][j]
            if not v:
                continue
            mono = []
            if i:
                mono.append("x" if i == 1 else f"x^{i}")
            if j:
                mono.append("a" if j == 1 else f"a^{j}")
            terms.append((v, "*".join(mono)))
    if not terms:
        return "0"
    out = []
    for idx, (v, mono) in enumerate(terms):
        mag = abs(v)
        body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
        if idx == 0:
            out.append(("-" if v < 0 else "") + body)
        else:
            out.append((" - " if v < 0 else " + ") + body)
    return "".join(out)


def _alpha_lcm(values):
    dens = [v.den for v in values if v.num and len(v.den) > 1]
    if not dens:
        return (_ONE,)
    return reduce(lambda u, v: _pmul(u, _pdivmod(v, _pgcd(u, v))[0]), dens)


def _int_content(rows):
    den = reduce(lcm, (c.denominator for r in rows for c in r), 1)
    num = reduce(gcd, (c.numerator for r in rows for c in r), 0)
    return _Q(num, den)


def xrat_integer_parts(r: XRat):
    """(s, N, D) with r = s*N/D; N, D integer rows (N[i][j] = coeff of x^i a^j), primitive."""
    if not r.num:
        return Fraction(0), [], [[1]]
    L = _alpha_lcm(r.num + r.den)
    rows_n = [(_pdivmod(_pmul(v.num, L), v.den)[0] if v.num else ()) for v in r.num]
    rows_d = [(_pdivmod(_pmul(v.num, L), v.den)[0] if v.num else ()) for v in r.den]
    cn = _int_content(rows_n)
    cd = _int_content(rows_d)
    if rows_d[-1][-1] < 0:
        cd = -cd
    N = [[int(c / cn) for c in row] for row in rows_n]
    D = [[int(c / cd) for c in row] for row in rows_d]
    return _fraction(cn / cd), N, D


def xrat_str(r: XRat) -> str:
    if not r.num:
        return "0"
    s, N, D = xrat_integer_parts(r)
    body = _bivariate_str(N)
    ds = _bivariate_str(D)
    if ds != "1":
        body = f"({body})/({ds})"
    elif s != 1:
        body = f"({body})"
    if s == 1:
        return body
    if s == -1:
        return f"-{body}"
    return f"{s}*{body}"

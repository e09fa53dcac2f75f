"""Exact arithmetic in F = Q(i, sqrt2).

An element is a + b*i + c*r + d*i*r with r = sqrt2 and rational a, b, c, d.
Plain rationals (gmpy2.mpq, int, Fraction) mix freely with Scalar, so the
linear algebra layer can keep rational data in the fast mpq type and only
pay for the 4-component representation where i or sqrt2 actually appear.
"""

from __future__ import annotations

import re
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

__all__ = [
    "Scalar",
    "DivisionByZero",
    "ONE",
    "ZERO",
    "I",
    "R2",
    "add",
    "mul",
    "inv",
    "to_field",
    "as_rational",
    "is_rational",
    "fmt",
    "parse",
    "sqrt_rational",
]


class DivisionByZero(ZeroDivisionError):
    pass


_Q0 = mpq(0)
_Q1 = mpq(1)
_Q2 = mpq(2)


def _q(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class Scalar:
    """Immutable element of Q(i, sqrt2)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        object.__setattr__(self, "a", _q(a))
        object.__setattr__(self, "b", _q(b))
        object.__setattr__(self, "c", _q(c))
        object.__setattr__(self, "d", _q(d))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _raw(cls, a, b, c, d) -> "Scalar":
        s = object.__new__(cls)
        object.__setattr__(s, "a", a)
        object.__setattr__(s, "b", b)
        object.__setattr__(s, "c", c)
        object.__setattr__(s, "d", d)
        return s

    @property
    def parts(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, o):
        if isinstance(o, Scalar):
            return Scalar._raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
        try:
            o = _q(o)
        except TypeError:
            return NotImplemented
        return Scalar._raw(self.a + o, self.b, self.c, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b, -self.c, -self.d)

    def __pos__(self):
        return self

    def __sub__(self, o):
        if isinstance(o, Scalar):
            return Scalar._raw(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
        try:
            o = _q(o)
        except TypeError:
            return NotImplemented
        return Scalar._raw(self.a - o, self.b, self.c, self.d)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, Scalar):
            a, b, c, d = self.a, self.b, self.c, self.d
            e, f, g, h = o.a, o.b, o.c, o.d
            # basis 1, i, r, ir with i^2 = -1, r^2 = 2
            return Scalar._raw(
                a * e - b * f + 2 * (c * g - d * h),
                a * f + b * e + 2 * (c * h + d * g),
                a * g - b * h + c * e - d * f,
                a * h + b * g + c * f + d * e,
            )
        try:
            o = _q(o)
        except TypeError:
            return NotImplemented
        return Scalar._raw(self.a * o, self.b * o, self.c * o, self.d * o)

    __rmul__ = __mul__

    def mult_matrix(self) -> list:
        """Matrix of y -> self*y in the basis (1, i, r, ir), acting on columns."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return [
            [a, -b, 2 * c, -2 * d],
            [b, a, 2 * d, 2 * c],
            [c, -d, a, -b],
            [d, c, b, a],
        ]

    def inverse(self) -> "Scalar":
        if not self:
            raise DivisionByZero("inverse of zero in Q(i, sqrt2)")
        if self.is_rational():
            return Scalar._raw(1 / self.a, _Q0, _Q0, _Q0)
        sol = _solve4(self.mult_matrix(), [_Q1, _Q0, _Q0, _Q0])
        return Scalar._raw(*sol)

    def __truediv__(self, o):
        if isinstance(o, Scalar):
            return self * o.inverse()
        try:
            o = _q(o)
        except TypeError:
            return NotImplemented
        if not o:
            raise DivisionByZero("division by zero")
        return Scalar._raw(self.a / o, self.b / o, self.c / o, self.d / o)

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar._raw(_Q1, _Q0, _Q0, _Q0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj_i(self) -> "Scalar":
        """Galois conjugate i -> -i."""
        return Scalar._raw(self.a, -self.b, self.c, -self.d)

    def conj_r(self) -> "Scalar":
        """Galois conjugate sqrt2 -> -sqrt2."""
        return Scalar._raw(self.a, self.b, -self.c, -self.d)

    # -- comparisons, hashing ----------------------------------------------

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.d)

    def __eq__(self, o):
        if isinstance(o, Scalar):
            return self.a == o.a and self.b == o.b and self.c == o.c and self.d == o.d
        try:
            o = _q(o)
        except TypeError:
            return NotImplemented
        return self.is_rational() and self.a == o

    def __hash__(self):
        if self.is_rational():
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return f"Scalar({fmt(self)!r})"

    def __str__(self):
        return fmt(self)


def _solve4(m: list, rhs: list) -> list:
    """Gauss-Jordan on a 4x4 rational system; m is invertible."""
    rows = [list(m[i]) + [rhs[i]] for i in range(4)]
    for col in range(4):
        piv = next(r for r in range(col, 4) if rows[r][col])
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(4):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][4] for i in range(4)]


ZERO = Scalar()
ONE = Scalar(1)
I = Scalar(0, 1)
R2 = Scalar(0, 0, 1)


def to_field(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse(x)
    return Scalar(x)


def is_rational(x) -> bool:
    return not isinstance(x, Scalar) or x.is_rational()


def as_rational(x) -> mpq:
    """Return x as mpq; raises ValueError if x is irrational."""
    if isinstance(x, Scalar):
        if not x.is_rational():
            raise ValueError(f"{x} is not rational")
        return x.a
    return _q(x)


def add(x, y) -> Scalar:
    return to_field(x) + to_field(y)


def mul(x, y) -> Scalar:
    return to_field(x) * to_field(y)


def inv(x) -> Scalar:
    return to_field(x).inverse()


def sqrt_rational(q):
    """A square root of the rational q inside F, or None if there is none."""
    q = _q(q)
    if not q:
        return Scalar()
    for unit, f in ((Scalar(1), 1), (Scalar(0, 1), -1), (Scalar(0, 0, 1), 2), (Scalar(0, 0, 0, 1), -2)):
        t = q / f
        if t > 0:
            num, den = gmpy2.isqrt_rem(t.numerator), gmpy2.isqrt_rem(t.denominator)
            if not num[1] and not den[1]:
                return unit * mpq(num[0], den[0])
    return None


def _fmt_q(q) -> str:
    q = _q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def fmt(x) -> str:
    """Canonical text form 'a + b*I + c*R2 + d*I*R2' (zero terms dropped)."""
    if not isinstance(x, Scalar):
        return _fmt_q(x)
    terms = []
    for q, unit in zip(x.parts, ("", "I", "R2", "I*R2")):
        if not q:
            continue
        if not unit:
            terms.append(_fmt_q(q))
        else:
            terms.append(f"{_fmt_q(q)}*{unit}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


_TERM = re.compile(r"^(?P<q>\d+(?:/\d+)?)?(?:\*?(?P<u>I\*R2|R2\*I|I|R2))?$")


def parse(text: str) -> Scalar:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    parts = [0, 0, 0, 0]
    pos = 0
    for m in re.finditer(r"[+-]?[^+-]+", s):
        if m.start() != pos:
            raise ValueError(f"cannot parse scalar {text!r}")
        pos = m.end()
        tok = m.group(0)
        sign = -1 if tok[0] == "-" else 1
        tok = tok.lstrip("+-")
        t = _TERM.match(tok)
        if not t or (t.group("q") is None and t.group("u") is None):
            raise ValueError(f"cannot parse scalar {text!r}")
        q = mpq(t.group("q")) if t.group("q") else _Q1
        slot = {None: 0, "I": 1, "R2": 2, "I*R2": 3, "R2*I": 3}[t.group("u")]
        parts[slot] += sign * q
    if pos != len(s):
        raise ValueError(f"cannot parse scalar {text!r}")
    return Scalar(*parts)

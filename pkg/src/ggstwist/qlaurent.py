"""Exact Laurent polynomials in ``q`` with rational exponents.

A :class:`QScalar` is a finite sum ``sum_c a_c q**c`` with ``a_c`` and ``c``
exact rationals.  :class:`HSeries` holds the image of such an element under
``q -> exp(hbar)`` truncated modulo ``hbar**3``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "QScalar",
    "HSeries",
    "q_power",
    "hbar_expand",
    "ZERO",
    "ONE",
    "Q",
    "QINV",
    "QMINUS",
]

Number = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class QScalar:
    """Element of Q[q**r : r in Q] in canonical form.

    Terms are stored as a tuple of ``(exponent, coefficient)`` pairs sorted by
    exponent, with no zero coefficients.  Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[Fraction, Fraction] = {}
        for e, c in items:
            e = _frac(e)
            acc[e] = acc.get(e, 0) + _frac(c)
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    @classmethod
    def _from_dict(cls, acc: dict) -> "QScalar":
        # acc is already exact; skip coercion on hot paths
        obj = cls.__new__(cls)
        obj._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Number) -> "QScalar":
        return cls({Fraction(0): c})

    @classmethod
    def coerce(cls, x) -> "QScalar":
        if isinstance(x, QScalar):
            return x
        return cls.const(_frac(x))

    @property
    def terms(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def constant_value(self) -> Fraction:
        """Coefficient of ``q**0``."""
        for e, c in self._terms:
            if e == 0:
                return c
        return Fraction(0)

    def exponents(self) -> list[Fraction]:
        return [e for e, _ in self._terms]

    # ring operations -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QScalar):
            try:
                other = QScalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return QScalar._from_dict(acc)

    __radd__ = __add__

    def __neg__(self):
        obj = QScalar.__new__(QScalar)
        obj._terms = tuple((e, -c) for e, c in self._terms)
        obj._hash = None
        return obj

    def __sub__(self, other):
        if not isinstance(other, QScalar):
            try:
                other = QScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return QScalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, QScalar):
            if isinstance(other, (int, Fraction)):
                if not other:
                    return ZERO
                obj = QScalar.__new__(QScalar)
                obj._terms = tuple((e, c * other) for e, c in self._terms)
                obj._hash = None
                return obj
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) == 1 and len(b) == 1:
            (ea, ca), (eb, cb) = a[0], b[0]
            obj = QScalar.__new__(QScalar)
            obj._terms = ((ea + eb, ca * cb),)
            obj._hash = None
            return obj
        acc: dict[Fraction, Fraction] = {}
        for ea, ca in a:
            for eb, cb in b:
                e = ea + eb
                acc[e] = acc.get(e, 0) + ca * cb
        return QScalar._from_dict(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials are invertible")
            (e, c), = self._terms
            return QScalar({e * k: c ** k})
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == QScalar.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # transforms ------------------------------------------------------------
    def invert_q(self) -> "QScalar":
        """Substitute ``q -> q**-1``."""
        return QScalar._from_dict({-e: c for e, c in self._terms})

    def shift(self, r: Number) -> "QScalar":
        """Multiply by ``q**r``."""
        r = _frac(r)
        if not r:
            return self
        obj = QScalar.__new__(QScalar)
        obj._terms = tuple((e + r, c) for e, c in self._terms)
        obj._hash = None
        return obj

    # serialization ---------------------------------------------------------
    def to_quads(self) -> list[list[int]]:
        """``[[num, den, exp_num, exp_den], ...]`` in exponent order."""
        return [[c.numerator, c.denominator, e.numerator, e.denominator] for e, c in self._terms]

    @classmethod
    def from_quads(cls, quads) -> "QScalar":
        return cls((Fraction(en, ed), Fraction(cn, cd)) for cn, cd, en, ed in quads)

    def __repr__(self):
        return f"QScalar({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "q"
            else:
                mono = f"q^({e})" if e.denominator != 1 or e < 0 else f"q^{e}"
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = "-" + mono
            elif mono:
                s = f"{c}*{mono}"
            else:
                s = str(c)
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")


def q_power(r: Number) -> QScalar:
    """The monomial ``q**r``."""
    obj = QScalar.__new__(QScalar)
    obj._terms = ((_frac(r), Fraction(1)),)
    obj._hash = None
    return obj


ZERO = QScalar()
ONE = q_power(0)
Q = q_power(1)
QINV = q_power(-1)
QMINUS = Q - QINV  # q - q^{-1}


@dataclass(frozen=True)
class HSeries:
    """``c0 + c1*hbar + c2*hbar**2`` modulo ``hbar**3``."""

    c0: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("c0", "c1", "c2"):
            object.__setattr__(self, name, _frac(getattr(self, name)))

    @classmethod
    def coerce(cls, x) -> "HSeries":
        return x if isinstance(x, HSeries) else cls(_frac(x))

    def __add__(self, other):
        o = HSeries.coerce(other)
        return HSeries(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2)

    __radd__ = __add__

    def __neg__(self):
        return HSeries(-self.c0, -self.c1, -self.c2)

    def __sub__(self, other):
        return self + (-HSeries.coerce(other))

    def __rsub__(self, other):
        return HSeries.coerce(other) - self

    def __mul__(self, other):
        o = HSeries.coerce(other)
        return HSeries(
            self.c0 * o.c0,
            self.c0 * o.c1 + self.c1 * o.c0,
            self.c0 * o.c2 + self.c1 * o.c1 + self.c2 * o.c0,
        )

    __rmul__ = __mul__

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2)


def hbar_expand(s: QScalar) -> HSeries:
    """Image of ``s`` under ``q**c -> 1 + c*hbar + c**2/2 * hbar**2``."""
    c0 = c1 = c2 = Fraction(0)
    for e, c in QScalar.coerce(s).terms:
        c0 += c
        c1 += c * e
        c2 += c * e * e / 2
    return HSeries(c0, c1, c2)

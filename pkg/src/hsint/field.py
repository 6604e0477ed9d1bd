"""Exact coefficient fields: prime fields F_p (p < 2**16) and the rationals."""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError

MAX_PRIME = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Base class for coefficient fields.

    Elements are plain Python numbers: ``int`` in ``[0, p)`` for F_p and
    ``Fraction`` for Q.  Arithmetic is done with the native operators and
    canonicalised with :meth:`reduce`.
    """

    characteristic: int

    def reduce(self, c):
        raise NotImplementedError

    def inv(self, c):
        raise NotImplementedError

    def parse_coefficient(self, num: int, den: int = 1):
        if den == 0:
            raise InputError("zero denominator in coefficient")
        return self.reduce(num) if den == 1 else self.reduce(num) * self.inv(self.reduce(den))

    @property
    def zero(self):
        return self.reduce(0)

    @property
    def one(self):
        return self.reduce(1)

    def elements(self):
        raise NotImplementedError


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise InputError(f"characteristic must be 0 or prime, got {p!r}")
        if p >= MAX_PRIME:
            raise InputError(f"prime {p} too large (limit 2**16)")
        self.p = p
        self.characteristic = p

    def reduce(self, c) -> int:
        if isinstance(c, Fraction):
            return self.parse_coefficient(c.numerator, c.denominator)
        return c % self.p

    def inv(self, c) -> int:
        c %= self.p
        if c == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(c, -1, self.p)

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class Rationals(Field):
    characteristic = 0

    def reduce(self, c) -> Fraction:
        return Fraction(c)

    def inv(self, c) -> Fraction:
        if c == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(c)

    def elements(self):
        raise ValueError("QQ is infinite")

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_for(characteristic: int) -> Field:
    """Field of the given characteristic: 0 gives QQ, a prime p gives F_p."""
    if characteristic == 0:
        return QQ
    return PrimeField(characteristic)

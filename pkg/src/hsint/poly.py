"""Sparse multivariate polynomials over exact fields.

A polynomial is an immutable map ``exponent tuple -> nonzero coefficient``.
Terms are printed in descending order for the ring's monomial order, so the
string form of a polynomial is canonical.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce as _fold
from typing import Iterable, Sequence

from .errors import InputError, RingMismatch
from .field import Field, field_for

Monomial = tuple


# ---------------------------------------------------------------- orders


class MonomialOrder:
    """grevlex, lex, or an elimination block order ``elim:k``.

    ``elim:k`` compares the first ``k`` variables by grevlex first and breaks
    ties with grevlex on the remaining ones, so every monomial involving one
    of the first ``k`` variables beats every monomial that does not.
    """

    def __init__(self, kind: str = "grevlex", k: int = 0):
        if kind not in ("grevlex", "lex", "elim"):
            raise InputError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.k = k
        if kind == "grevlex":
            self.key = _grevlex_key
        elif kind == "lex":
            self.key = _lex_key
        else:
            self.key = lambda e, k=k: (_grevlex_key(e[:k]), _grevlex_key(e[k:]))

    @classmethod
    def parse(cls, spec) -> MonomialOrder:
        if isinstance(spec, MonomialOrder):
            return spec
        if spec is None:
            return GREVLEX
        if spec.startswith("elim"):
            _, _, k = spec.partition(":")
            return cls("elim", int(k or 1))
        return cls(spec)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.k) == (other.kind, other.k)

    def __hash__(self):
        return hash((self.kind, self.k))

    def __repr__(self):
        return self.kind if self.kind != "elim" else f"elim:{self.k}"


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lex_key(e):
    return e


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------- rings


class PolyRing:
    """The ambient ring k[x_1, ..., x_n] with a default monomial order."""

    def __init__(self, variables: Sequence[str], field: Field | int, order="grevlex"):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise InputError(f"duplicate variable names in {variables!r}")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise InputError(f"bad variable name {v!r}")
        if isinstance(field, int):
            field = field_for(field)
        self.variables = variables
        self.field = field
        self.order = MonomialOrder.parse(order)
        self.nvars = len(variables)
        self.zero_mono = (0,) * self.nvars

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.variables, self.field))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, {self.field!r}, {self.order!r})"

    def with_order(self, order) -> PolyRing:
        return PolyRing(self.variables, self.field, order)

    # constructors

    def __call__(self, value=0) -> Polynomial:
        if isinstance(value, Polynomial):
            self.check(value)
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.constant(value)

    def constant(self, c) -> Polynomial:
        c = self.field.reduce(c)
        return Polynomial(self, {self.zero_mono: c} if c else {})

    def monomial(self, exps: Monomial, coeff=1) -> Polynomial:
        c = self.field.reduce(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def gen(self, i) -> Polynomial:
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    @property
    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None

    def check(self, f: Polynomial):
        if f.ring != self:
            raise RingMismatch(f"polynomial from {f.ring!r} used in {self!r}")

    def parse(self, text: str) -> Polynomial:
        return _Parser(self, text).parse()

    def monomials_up_to(self, degree: int) -> list[Monomial]:
        """All monomials of total degree <= ``degree`` (ascending degree)."""
        out = []
        for d in range(degree + 1):
            for e in _exact_degree(self.nvars, d):
                out.append(e)
        return out


def _exact_degree(n, d):
    if n == 0:
        if d == 0:
            yield ()
        return
    for a in range(d, -1, -1):
        for rest in _exact_degree(n - 1, d - a):
            yield (a,) + rest


# ---------------------------------------------------------------- polynomials


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic queries

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_mono in self.terms)

    def constant_term(self):
        return self.terms.get(self.ring.zero_mono, self.ring.field.zero)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def support(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- ordering helpers

    def sorted_terms(self, order=None) -> list[tuple[Monomial, object]]:
        key = (MonomialOrder.parse(order) if order is not None else self.ring.order).key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order=None) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        key = (MonomialOrder.parse(order) if order is not None else self.ring.order).key
        return max(self.terms, key=key)

    def leading_coefficient(self, order=None):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order=None) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    # -- arithmetic

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring!r} vs {self.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        red = self.ring.field.reduce
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = red(out.get(m, 0) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.field.reduce
        return Polynomial(self.ring, {m: red(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        red = self.ring.field.reduce
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, {m: c for m, c in ((m, red(c)) for m, c in out.items()) if c})

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        red = self.ring.field.reduce
        c = red(c)
        if not c:
            return Polynomial(self.ring, {})
        return Polynomial(self.ring, {m: red(a * c) for m, a in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> Polynomial:
        red = self.ring.field.reduce
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): red(a_ * c) for m, a_ in self.terms.items()},
        )

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- calculus / evaluation

    def diff(self, j: int) -> Polynomial:
        """Formal partial derivative with respect to variable ``j``."""
        if not 0 <= j < self.ring.nvars:
            raise IndexError(f"variable index {j} out of range for {self.ring.nvars} variables")
        red = self.ring.field.reduce
        out = {}
        for m, c in self.terms.items():
            if m[j]:
                c2 = red(c * m[j])
                if c2:
                    e = list(m)
                    e[j] -= 1
                    out[tuple(e)] = c2
        return Polynomial(self.ring, out)

    def evaluate(self, images: Sequence, one=None):
        """Substitute ``images[i]`` for ``x_i``.

        ``images`` may be polynomials in another ring (a ring map) or anything
        supporting ``+``, ``*`` and integer scaling.
        """
        if len(images) != self.ring.nvars:
            raise RingMismatch("wrong number of images")
        if one is None:
            one = images[0] ** 0 if images else 1
        powers = [[one] for _ in images]
        total = None
        for m, c in self.sorted_terms():
            t = None
            for i, a in enumerate(m):
                if a:
                    while len(powers[i]) <= a:
                        powers[i].append(powers[i][-1] * images[i])
                    t = powers[i][a] if t is None else t * powers[i][a]
            if t is None:
                t = one
            t = t * _as_int_or_frac(c)
            total = t if total is None else total + t
        if total is None:
            total = one * 0
        return total

    def map_to(self, ring: PolyRing, index_map: Sequence[int]) -> Polynomial:
        """Re-embed into ``ring`` sending variable ``i`` to ``index_map[i]``."""
        out = {}
        red = ring.field.reduce
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, a in enumerate(m):
                if a:
                    e[index_map[i]] += a
            out[tuple(e)] = red(c)
        return Polynomial(ring, {m: c for m, c in out.items() if c})

    # -- printing

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def _as_int_or_frac(c):
    return c if isinstance(c, (int, Fraction)) else int(c)


def format_poly(f: Polynomial, order=None) -> str:
    if not f.terms:
        return "0"
    names = f.ring.variables
    pieces = []
    for m, c in f.sorted_terms(order):
        mono = "*".join(
            names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(m) if a
        )
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


def sum_polys(polys: Iterable[Polynomial], ring: PolyRing) -> Polynomial:
    return _fold(lambda a, b: a + b, polys, ring.constant(0))


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    """Recursive-descent parser for ``2*x^2*y - 3 y + (x+1)^2`` style input."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = self._lex(text)
        self.pos = 0

    def _lex(self, text):
        toks = []
        for num, ident, op in _TOKEN.findall(text):
            if num:
                toks.append(("num", int(num)))
            elif ident:
                for name in self._split_ident(ident):
                    toks.append(("var", name))
            elif op.strip():
                if op not in "+-*^()/":
                    raise InputError(f"unexpected character {op!r} in {text!r}")
                toks.append(("op", op))
        return toks

    def _split_ident(self, ident):
        names = self.ring.variables
        if ident in names:
            return [ident]
        # juxtaposed variables such as "xy": longest-match split
        for cut in range(len(ident) - 1, 0, -1):
            head = ident[:cut]
            if head in names:
                try:
                    return [head] + self._split_ident(ident[cut:])
                except InputError:
                    continue
        raise InputError(f"unknown variable {ident!r} in {self.text!r}")

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise InputError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise InputError("empty polynomial string")
        f = self.expr()
        if self.pos != len(self.tokens):
            raise InputError(f"trailing input in {self.text!r}")
        return f

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                k2, den = self.take()
                if k2 != "num" or den == 0:
                    raise InputError(f"division only by nonzero integer literals in {self.text!r}")
                acc = acc * self.ring.field.parse_coefficient(1, den)
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, e = self.take()
            if k2 != "num":
                raise InputError(f"exponent must be a non-negative integer in {self.text!r}")
            base = base ** e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(val)
        if kind == "var":
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "op" and val == "-":
            return -self.factor()
        raise InputError(f"unexpected token {val!r} in {self.text!r}")

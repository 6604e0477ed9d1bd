"""Finitely presented algebras A = R/I and truncated power series over them."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import RingMismatch
from .groebner import GroebnerBasis, Ideal
from .poly import Polynomial, PolyRing


class PresentedAlgebra:
    """A = R/I with a fixed list of generators of I.

    Elements of A are handled as polynomials in normal form with respect to
    the cached Groebner basis of I.  The generator list is kept as given:
    Jacobians and Fitting ideals are computed from it.
    """

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        self.ring = ring
        self.ideal = Ideal(ring, generators)
        self.generators = self.ideal.gens

    @classmethod
    def from_strings(cls, variables, characteristic: int, ideal: Sequence[str], order="grevlex"):
        R = PolyRing(variables, characteristic, order)
        return cls(R, [R.parse(s) for s in ideal])

    def __repr__(self):
        return f"PresentedAlgebra({list(self.ring.variables)}, {self.ring.field!r}, {[str(g) for g in self.generators]})"

    @property
    def basis(self) -> GroebnerBasis:
        return self.ideal.groebner()

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def field(self):
        return self.ring.field

    @property
    def characteristic(self) -> int:
        return self.ring.characteristic

    def __call__(self, value) -> Polynomial:
        return self.reduce(self.ring(value))

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.basis.reduce(f)

    def is_zero(self, f: Polynomial) -> bool:
        return self.basis.contains(f)

    def ideal_of(self, gens: Iterable) -> Ideal:
        """The preimage in R of the ideal of A generated by ``gens``."""
        return Ideal(self.ring, list(gens) + list(self.generators))

    def in_ideal(self, f, gens: Iterable) -> bool:
        return self.ideal_of(gens).contains(self.ring(f))

    def with_generators(self, generators) -> PresentedAlgebra:
        return PresentedAlgebra(self.ring, generators)

    def same_ring(self, other: PresentedAlgebra):
        if self.ring != other.ring:
            raise RingMismatch("algebras over different polynomial rings")


class TruncatedSeries:
    """An element c_0 + c_1 t + ... + c_m t^m of A[t]/(t^{m+1})."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: PresentedAlgebra, coeffs: Sequence[Polynomial]):
        self.algebra = algebra
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, algebra, value, m: int) -> TruncatedSeries:
        z = algebra.ring.constant(0)
        return cls(algebra, [algebra.reduce(algebra.ring(value))] + [z] * m)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "TruncatedSeries(" + ", ".join(str(c) for c in self.coeffs) + ")"

    def _check(self, other: TruncatedSeries):
        if other.algebra.ring != self.algebra.ring:
            raise RingMismatch("series over different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(self.algebra, other, self.order)
        self._check(other)
        m = min(self.order, other.order)
        return TruncatedSeries(self.algebra, [a + b for a, b in zip(self.coeffs[: m + 1], other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.algebra, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.algebra, [a.scale(other) for a in self.coeffs])
        self._check(other)
        m = min(self.order, other.order)
        red = self.algebra.reduce
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(m + 1):
            acc = None
            for i in range(k + 1):
                if a[i].terms and b[k - i].terms:
                    p = a[i] * b[k - i]
                    acc = p if acc is None else acc + p
            out.append(red(acc) if acc is not None else self.algebra.ring.constant(0))
        return TruncatedSeries(self.algebra, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = TruncatedSeries.constant(self.algebra, 1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def truncate(self, m: int) -> TruncatedSeries:
        return TruncatedSeries(self.algebra, self.coeffs[: m + 1])


def truncated_substitution(
    f: Polynomial, images: Sequence[TruncatedSeries], m: int | None = None
) -> TruncatedSeries:
    """Evaluate ``f`` at ``x_i -> images[i]`` in A[t]/(t^{m+1})."""
    if not images:
        raise RingMismatch("no images given")
    algebra = images[0].algebra
    if f.ring != algebra.ring:
        raise RingMismatch("polynomial and images live over different rings")
    if len(images) != f.ring.nvars:
        raise RingMismatch("need one image per variable")
    if m is None:
        m = min(s.order for s in images)
    images = [s.truncate(m) if s.order > m else s for s in images]
    if any(s.order < m for s in images):
        raise ValueError("images are shorter than the requested truncation order")
    one = TruncatedSeries.constant(algebra, 1, m)
    if f.is_zero():
        return one * 0
    return f.evaluate(images, one=one)

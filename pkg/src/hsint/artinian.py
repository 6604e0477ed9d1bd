"""Finite-dimensional (artinian) quotient algebras as vector spaces over k."""

from __future__ import annotations

from functools import cached_property

from .algebra import PresentedAlgebra
from .errors import InputError
from .poly import Polynomial, mono_divides


class NotArtinianError(InputError):
    """The staircase of the leading-term ideal is infinite."""


class ArtinianModel:
    """A = R/I with its staircase monomial basis.

    Coordinates of an element are its normal-form coefficients on the
    staircase, in the fixed order of :attr:`staircase`.
    """

    def __init__(self, algebra: PresentedAlgebra):
        self.algebra = algebra
        G = algebra.basis
        if G.is_unit():
            self.staircase = []
        else:
            lms = G.leading_monomials
            n = algebra.nvars
            caps = []
            for i in range(n):
                pure = [m[i] for m in lms if all(a == 0 for k, a in enumerate(m) if k != i) and m[i] > 0]
                if not pure:
                    raise NotArtinianError(
                        f"{algebra.ring.variables[i]} has no pure power among the leading monomials; "
                        "the algebra is not finite-dimensional"
                    )
                caps.append(min(pure))
            stair = []

            def rec(prefix, i):
                if i == n:
                    mono = tuple(prefix)
                    if not any(mono_divides(lm, mono) for lm in lms):
                        stair.append(mono)
                    return
                for a in range(caps[i]):
                    rec(prefix + [a], i + 1)

            rec([], 0)
            key = algebra.ring.order.key
            self.staircase = sorted(stair, key=key)
        self.index = {m: k for k, m in enumerate(self.staircase)}
        self.dim = len(self.staircase)

    @property
    def field(self):
        return self.algebra.field

    @property
    def nvars(self) -> int:
        return self.algebra.nvars

    def coords(self, f: Polynomial) -> list:
        f = self.algebra.reduce(f)
        v = [self.field.zero] * self.dim
        for m, c in f.terms.items():
            v[self.index[m]] = c
        return v

    def element(self, v) -> Polynomial:
        R = self.algebra.ring
        return Polynomial(R, {m: self.field.reduce(c) for m, c in zip(self.staircase, v) if c})

    def basis_elements(self) -> list[Polynomial]:
        R = self.algebra.ring
        return [R.monomial(m) for m in self.staircase]

    # derivation vectors (n elements of A) <-> flat coordinate vectors

    def vec_coords(self, xi) -> list:
        out = []
        for e in xi:
            out.extend(self.coords(self.algebra.ring(e)))
        return out

    def vec_element(self, v) -> list[Polynomial]:
        d = self.dim
        return [self.element(v[j * d:(j + 1) * d]) for j in range(self.nvars)]

    @cached_property
    def jacobian_map(self) -> list[list]:
        """Matrix of xi -> (sum_j d_j f_a xi_j)_a as a map k^{n d} -> k^{s d}."""
        A = self.algebra
        gens = A.generators
        cols = []
        for j in range(A.nvars):
            for mono in self.staircase:
                b = A.ring.monomial(mono)
                col = []
                for f in gens:
                    col.extend(self.coords(f.diff(j) * b))
                cols.append(col)
        nrows = len(gens) * self.dim
        return [[cols[c][r] for c in range(len(cols))] for r in range(nrows)]

    def is_local_at_origin(self) -> bool:
        """Every variable nilpotent, so the only maximal ideal is <x_1, ..., x_n>."""
        A = self.algebra
        if self.dim == 0:
            return False
        return all(A.is_zero(A.ring.gen(i) ** self.dim) for i in range(A.nvars))

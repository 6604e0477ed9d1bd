"""Truncated Hasse-Schmidt derivations stored by their values on the variables.

An HS-derivation D of length m of A = R/I is kept as the table
``xi[mu-1][i] = D_mu(x_i)`` (mu = 1..m).  It acts on A through the algebra
map x_i -> x_i + sum_mu xi[mu-1][i] t^mu into A[t]/(t^{m+1}).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import PresentedAlgebra, TruncatedSeries, truncated_substitution
from .errors import InputError, RingMismatch, VerificationError
from .groebner import Ideal
from .poly import Polynomial


@dataclass
class ValidationReport:
    valid: bool
    generator: int | None = None
    order: int | None = None
    residue: str | None = None

    def __bool__(self):
        return self.valid

    def to_json(self) -> dict:
        out = {"valid": self.valid}
        if not self.valid:
            out.update(generator=self.generator, order=self.order, residue=self.residue)
        return out


class HSDerivation:
    def __init__(self, algebra: PresentedAlgebra, xi: Sequence[Sequence], validate: bool = False):
        self.algebra = algebra
        n = algebra.nvars
        rows = []
        for mu, row in enumerate(xi, start=1):
            row = list(row)
            if len(row) != n:
                raise InputError(f"row {mu} has {len(row)} entries, expected {n}")
            rows.append(tuple(algebra.reduce(algebra.ring(e)) for e in row))
        if not rows:
            raise InputError("an HS-derivation needs length >= 1")
        self.xi = tuple(rows)
        self.validated = False
        if validate:
            rep = self.validate()
            if not rep:
                raise VerificationError(
                    f"not an HS-derivation: generator {rep.generator} fails at order {rep.order}"
                )

    # -- construction helpers

    @classmethod
    def identity(cls, algebra: PresentedAlgebra, m: int) -> HSDerivation:
        z = algebra.ring.constant(0)
        D = cls(algebra, [[z] * algebra.nvars for _ in range(m)])
        D.validated = True
        return D

    @classmethod
    def from_json(cls, algebra: PresentedAlgebra, rows: Sequence[dict]) -> HSDerivation:
        names = algebra.ring.variables
        table = []
        for mu, row in enumerate(rows, start=1):
            unknown = set(row) - set(names)
            if unknown:
                raise InputError(f"row {mu} mentions unknown variable(s) {sorted(unknown)}")
            table.append([algebra.ring.parse(str(row.get(v, "0"))) for v in names])
        return cls(algebra, table)

    def to_json(self) -> list[dict]:
        names = self.algebra.ring.variables
        return [{v: str(e) for v, e in zip(names, row)} for row in self.xi]

    @property
    def length(self) -> int:
        return len(self.xi)

    def __eq__(self, other):
        return (
            isinstance(other, HSDerivation)
            and self.algebra.ring == other.algebra.ring
            and self.xi == other.xi
        )

    def __hash__(self):
        return hash(self.xi)

    def __repr__(self):
        return f"HSDerivation({self.to_json()})"

    def is_identity(self) -> bool:
        return all(e.is_zero() for row in self.xi for e in row)

    # -- action

    def series(self, m: int | None = None) -> list[TruncatedSeries]:
        """phi_D(x_i) for every variable, truncated at order m (default: length)."""
        m = self.length if m is None else m
        A = self.algebra
        z = A.ring.constant(0)
        out = []
        for i in range(A.nvars):
            coeffs = [A.reduce(A.ring.gen(i))]
            for mu in range(1, m + 1):
                coeffs.append(self.xi[mu - 1][i] if mu <= self.length else z)
            out.append(TruncatedSeries(A, coeffs))
        return out

    def apply(self, f, m: int | None = None) -> TruncatedSeries:
        """phi_D(f) = sum_alpha D_alpha(f) t^alpha."""
        f = self.algebra.ring(f)
        return truncated_substitution(f, self.series(m), self.length if m is None else m)

    def component(self, alpha: int, f) -> Polynomial:
        """D_alpha(f) in normal form."""
        if alpha == 0:
            return self.algebra.reduce(self.algebra.ring(f))
        return self.apply(f, alpha)[alpha]

    def validate(self) -> ValidationReport:
        """phi_D(f_alpha) = 0 in A[t]/(t^{m+1}) for every generator f_alpha of I."""
        images = self.series()
        for k, f in enumerate(self.algebra.generators):
            s = truncated_substitution(f, images, self.length)
            for order, c in enumerate(s.coeffs):
                if not c.is_zero():
                    return ValidationReport(False, k, order, str(c))
        self.validated = True
        return ValidationReport(True)

    # -- group structure

    def _check_same(self, other: HSDerivation):
        a, b = self.algebra, other.algebra
        if a is not b and (a.ring != b.ring or not a.ideal.equals(b.ideal)):
            raise RingMismatch("HS-derivations of different algebras")
        if other.length != self.length:
            raise InputError(f"lengths differ: {self.length} vs {other.length}")

    def compose(self, other: HSDerivation) -> HSDerivation:
        """D o E, with (D o E)_a = sum_{i+j=a} D_i o E_j."""
        self._check_same(other)
        m = self.length
        images = self.series()
        n = self.algebra.nvars
        rows = [[None] * n for _ in range(m)]
        for i in range(n):
            total = images[i]
            for j in range(1, m + 1):
                e = other.xi[j - 1][i]
                if e.is_zero():
                    continue
                s = truncated_substitution(e, images, m - j)
                shifted = [self.algebra.ring.constant(0)] * j + list(s.coeffs)
                total = total + TruncatedSeries(self.algebra, shifted[: m + 1])
            for a in range(1, m + 1):
                rows[a - 1][i] = total[a]
        out = HSDerivation(self.algebra, rows)
        out.validated = self.validated and other.validated
        return out

    __matmul__ = compose

    def inverse(self) -> HSDerivation:
        """E with D o E = identity, solved order by order."""
        m = self.length
        A = self.algebra
        n = A.nvars
        images = self.series()
        E = [[A.ring.constant(0)] * n for _ in range(m)]
        for a in range(1, m + 1):
            for i in range(n):
                acc = -self.xi[a - 1][i]
                for j in range(1, a):
                    e = E[j - 1][i]
                    if e.is_zero():
                        continue
                    acc = acc - truncated_substitution(e, images, a - j)[a - j]
                E[a - 1][i] = A.reduce(acc)
        out = HSDerivation(A, E)
        out.validated = self.validated
        return out

    def truncate(self, n: int) -> HSDerivation:
        if not 1 <= n <= self.length:
            raise InputError(f"truncation order {n} out of range 1..{self.length}")
        out = HSDerivation(self.algebra, self.xi[:n])
        out.validated = self.validated
        return out

    def extend(self, row: Sequence) -> HSDerivation:
        return HSDerivation(self.algebra, list(self.xi) + [list(row)])

    def is_logarithmic(self, J: Ideal | Sequence) -> bool:
        """D_alpha(J) ⊆ J for all alpha; J given by generators in R (I is added)."""
        gens = J.gens if isinstance(J, Ideal) else [self.algebra.ring(g) for g in J]
        Jfull = self.algebra.ideal_of(gens)
        for g in gens:
            s = self.apply(g)
            if not all(Jfull.contains(c) for c in s.coeffs):
                return False
        return True

    def first_component(self) -> list[Polynomial]:
        return list(self.xi[0])


def derivation_check(A: PresentedAlgebra, xi: Sequence) -> bool:
    """sum_j d_j(f_alpha) xi_j = 0 in A for every generator f_alpha."""
    xi = [A.ring(e) for e in xi]
    if len(xi) != A.nvars:
        raise InputError(f"derivation needs {A.nvars} entries")
    for f in A.generators:
        acc = A.ring.constant(0)
        for j, e in enumerate(xi):
            if e.terms:
                acc = acc + f.diff(j) * e
        if not A.is_zero(acc):
            return False
    return True


def apply_derivation(A: PresentedAlgebra, xi: Sequence, f) -> Polynomial:
    f = A.ring(f)
    acc = A.ring.constant(0)
    for j, e in enumerate(xi):
        acc = acc + f.diff(j) * A.ring(e)
    return A.reduce(acc)


def is_logarithmic(D: HSDerivation, J, m: int | None = None) -> bool:
    if m is not None and m != D.length:
        D = D.truncate(m)
    return D.is_logarithmic(J)


def compose(D: HSDerivation, E: HSDerivation) -> HSDerivation:
    return D.compose(E)


def inverse(D: HSDerivation) -> HSDerivation:
    return D.inverse()


def truncate(D: HSDerivation, n: int) -> HSDerivation:
    return D.truncate(n)


def validate(D: HSDerivation) -> ValidationReport:
    return D.validate()

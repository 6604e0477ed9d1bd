"""Jacobian matrices, Fitting ideals J_l(A), ranks at primes and generic generators."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import PresentedAlgebra
from .errors import BudgetExceeded, HypothesisError, InputError
from .groebner import Ideal, ideal_intersection, krull_dimension
from .linalg import determinant, minors, submatrix
from .poly import Polynomial, PolyRing


@dataclass
class JacobianMatrix:
    """Rows indexed by generators, columns by variables: entry (i, j) = d f_i / d x_j."""

    ring: PolyRing
    rows: list

    @property
    def shape(self):
        return len(self.rows), self.ring.nvars

    def reduced(self, algebra: PresentedAlgebra) -> list:
        return [[algebra.reduce(e) for e in row] for row in self.rows]

    def minor(self, rows, cols) -> Polynomial:
        return determinant(submatrix(self.rows, rows, cols), self.ring.constant(0), self.ring.constant(1))

    def minors(self, size: int):
        return minors(self.rows, size, self.ring.constant(0), self.ring.constant(1))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows) + "]"


def jacobian(gens: Sequence[Polynomial], ring: PolyRing | None = None) -> JacobianMatrix:
    gens = list(gens)
    if ring is None:
        if not gens:
            raise InputError("jacobian of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        ring.check(g)
    return JacobianMatrix(ring, [[g.diff(j) for j in range(ring.nvars)] for g in gens])


@dataclass
class FittingIdeal:
    """J_l(A): images of the l-minors of the Jacobian of A's generators.

    ``lifted_generators[k]`` is the minor on ``minor_index[k] = (rows, cols)``
    taken in R; ``generators[k]`` is its normal form in A.  Minors vanishing
    in A are dropped, duplicates kept once.
    """

    level: int
    generators: list
    lifted_generators: list
    minor_index: list
    algebra: PresentedAlgebra

    def ideal(self) -> Ideal:
        """Preimage J_l^0 + I in R."""
        return self.algebra.ideal_of(self.lifted_generators)

    def contains(self, f) -> bool:
        return self.ideal().contains(self.algebra.ring(f))

    def is_unit(self) -> bool:
        return self.ideal().is_unit()

    def is_zero(self) -> bool:
        return not self.generators


def fitting_ideal(A: PresentedAlgebra, level: int) -> FittingIdeal:
    n = A.nvars
    if not 0 <= level <= n:
        raise InputError(f"Fitting level {level} out of range 0..{n}")
    one = A.ring.constant(1)
    if level == 0:
        return FittingIdeal(0, [A.reduce(one)] if not A.ideal.is_unit() else [], [one], [((), ())], A)
    gens, lifted, index, seen = [], [], [], set()
    if A.generators:
        J = jacobian(A.generators, A.ring)
        for rows, cols, d in J.minors(level):
            r = A.reduce(d)
            if r.is_zero() or r in seen:
                continue
            seen.add(r)
            gens.append(r)
            lifted.append(d)
            index.append((rows, cols))
    return FittingIdeal(level, gens, lifted, index, A)


# ---------------------------------------------------------------- primes


class PrimeWitness:
    """A prime P of R, given by generators.  Primality is trusted, not checked.

    When ``containing`` is supplied the inclusion I ⊆ P is verified.  The
    height is recomputed as n - dim(R/P); a ``claimed_height`` that disagrees
    is rejected.
    """

    assumes_primality = True

    def __init__(self, ring: PolyRing, generators, claimed_height: int | None = None,
                 containing: Ideal | PresentedAlgebra | None = None, purpose: str = "minimal"):
        self.ring = ring
        self.ideal = Ideal(ring, generators)
        self.generators = self.ideal.gens
        self.purpose = purpose
        if self.ideal.is_unit():
            raise InputError("prime witness is the unit ideal")
        self.height = ring.nvars - krull_dimension(self.ideal)
        if claimed_height is not None and claimed_height != self.height:
            raise HypothesisError(
                f"claimed height {claimed_height} of {self} disagrees with computed {self.height}"
            )
        if containing is not None:
            self.check_contains(containing)

    def check_contains(self, I):
        gens = I.generators if isinstance(I, PresentedAlgebra) else I.gens
        bad = [g for g in gens if not self.ideal.contains(g)]
        if bad:
            raise HypothesisError(f"{bad[0]} is not in the prime {self}")

    def contains(self, f) -> bool:
        return self.ideal.contains(self.ring(f))

    def __repr__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"

    def to_json(self) -> dict:
        return {"generators": [str(g) for g in self.generators], "height": self.height}


def height(P: PrimeWitness | Ideal) -> int:
    I = P.ideal if isinstance(P, PrimeWitness) else P
    d = krull_dimension(I)
    if d < 0:
        raise InputError("height of the unit ideal is undefined")
    return I.ring.nvars - d


def rank_at_prime(M: JacobianMatrix, P: PrimeWitness, ideal: Ideal | PresentedAlgebra | None = None) -> int:
    """Largest l such that some l-minor of M is not in P (the rank over Frac(R/P))."""
    if ideal is not None:
        P.check_contains(ideal)
    nrows, ncols = M.shape
    for size in range(min(nrows, ncols), 0, -1):
        for _, _, d in M.minors(size):
            if not P.contains(d):
                return size
    return 0


def _witness_minor(M: JacobianMatrix, size: int, P: PrimeWitness):
    for rows, cols, d in M.minors(size):
        if not P.contains(d):
            return rows, cols, d
    return None


@dataclass
class JHetReport:
    results: list
    assumes_primality: bool = True

    @property
    def holds(self) -> bool:
        return all(r["holds"] for r in self.results)

    def to_json(self) -> dict:
        return {"assumes_primality_of_inputs": self.assumes_primality, "holds": self.holds, "primes": self.results}


def check_jhet(A: PresentedAlgebra, primes: Sequence[PrimeWitness]) -> JHetReport:
    """J_{ht P}(A) A_P = A_P, i.e. some generator of J_{ht P} lies outside P."""
    out = []
    for P in primes:
        P.check_contains(A)
        J = fitting_ideal(A, P.height)
        hit = next((k for k, g in enumerate(J.lifted_generators) if not P.contains(g)), None)
        entry = {"prime": [str(g) for g in P.generators], "height": P.height, "holds": hit is not None}
        if hit is not None:
            entry["unit_minor"] = str(J.lifted_generators[hit])
        out.append(entry)
    return JHetReport(out)


# ---------------------------------------------------------------- generic generators


@dataclass
class GenericGenerators:
    """``S`` generates I; ``F`` (the first r entries of S) has rank ht(P) at every P."""

    S: list
    F: list
    r: int
    ranks: dict = field(default_factory=dict)
    assumes_primality: bool = True

    def to_json(self) -> dict:
        return {
            "S": [str(g) for g in self.S],
            "F": [str(g) for g in self.F],
            "r": self.r,
            "ranks": self.ranks,
            "assumes_primality_of_inputs": self.assumes_primality,
        }


def _coefficient_pool(field):
    p = field.characteristic
    top = min(p - 1, 4) if p else 4
    return list(range(top + 1))


class _GenericSearch:
    """The inductive construction of one more generic generator.

    ``extend(F, primes)`` returns g in I with
    rank J(F + [g]) = min(#F + 1, ht P) at every P in ``primes``.
    """

    def __init__(self, I: Ideal, S: list, budget: int):
        self.I = I
        self.S = S
        self.budget = budget

    def spend(self):
        self.budget -= 1
        if self.budget < 0:
            raise BudgetExceeded("generic generator search: budget exhausted")

    def good_at(self, F, g, P) -> bool:
        M = jacobian(F + [g], self.I.ring)
        return rank_at_prime(M, P) == min(len(F) + 1, P.height)

    def extend(self, F: list, primes: list) -> Polynomial:
        ell = len(F)
        Q = [P for P in primes if P.height > ell]
        if not Q:
            return self.S[0]
        if len(Q) == 1:
            P = Q[0]
            for s in self.S:
                self.spend()
                if self.good_at(F, s, P):
                    return s
            raise HypothesisError(
                f"no generator raises the Jacobian rank at {P}; J^het fails there"
            )
        P1, Pm = Q[0], Q[-1]
        h_m = self.extend(F, [P for P in primes if P is not P1])
        if self.good_at(F, h_m, P1):
            return h_m
        h_1 = self.extend(F, [P for P in primes if P is not Pm])
        if self.good_at(F, h_1, Pm):
            return h_1
        lam = self.separator(P1, Q[1:])
        g = h_m + lam * h_1
        bad = [P for P in primes if not self.good_at(F, g, P)]
        if bad:
            raise HypothesisError(f"combined generator fails at {bad[0]}")
        return g

    def separator(self, P1: PrimeWitness, rest: list) -> Polynomial:
        """Some λ in (P_2 ∩ ... ∩ P_m) \\ P_1."""
        inter = rest[0].ideal
        for P in rest[1:]:
            inter = ideal_intersection(inter, P.ideal)
        gens = list(inter.gens)
        for g in gens:
            self.spend()
            if not P1.contains(g):
                return g
        pool = _coefficient_pool(self.I.ring.field)
        for coeffs in itertools.product(pool, repeat=len(gens)):
            self.spend()
            if not any(coeffs):
                continue
            lam = self.I.ring.constant(0)
            for c, g in zip(coeffs, gens):
                lam = lam + g.scale(c)
            if not lam.is_zero() and not P1.contains(lam):
                return lam
        raise BudgetExceeded("no separating element found for the generic generator")


def generic_generators(I: Ideal | PresentedAlgebra, primes: Sequence[PrimeWitness],
                       budget: int = 10_000) -> GenericGenerators:
    """Generators S = F + gens(I) of I with #F = r = max ht(P) and rank J(F) = ht(P) at each P.

    The J^het condition is checked at every supplied prime first; a failure
    is a :class:`HypothesisError`.  I is assumed radical and the primes are
    assumed to be its minimal primes (both trusted inputs).
    """
    A = I if isinstance(I, PresentedAlgebra) else PresentedAlgebra(I.ring, I.gens)
    ideal = A.ideal
    primes = list(primes)
    if not primes:
        raise InputError("generic_generators needs at least one prime witness")
    rep = check_jhet(A, primes)
    if not rep.holds:
        bad = next(r for r in rep.results if not r["holds"])
        raise HypothesisError(f"J^het fails at prime <{', '.join(bad['prime'])}>")
    r = max(P.height for P in primes)
    S = list(ideal.gens)
    F: list = []
    search = _GenericSearch(ideal, S, budget)
    while len(F) < r:
        g = search.extend(F, primes)
        F.append(g)
        if g not in S:
            S.insert(len(F) - 1, g)
            search.S = S
    S_out = F + [g for g in ideal.gens if g not in F]
    if not Ideal(ideal.ring, S_out).equals(ideal):
        raise HypothesisError("generic generators do not generate I")
    M = jacobian(F, ideal.ring)
    ranks = {}
    for P in primes:
        rk = rank_at_prime(M, P)
        if rk != P.height:
            raise HypothesisError(f"rank {rk} of J(F) at {P} differs from height {P.height}")
        ranks[str(P)] = rk
    return GenericGenerators(S_out, F, r, ranks)

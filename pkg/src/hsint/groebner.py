"""Reduced Groebner bases and the ideal operations built on them.

Buchberger's algorithm with the Gebauer-Moeller update and the sugar
selection strategy.  Every run is bounded by a step budget; running out
raises :class:`BudgetExceeded` rather than returning a partial basis.

With ``track=True`` each basis element carries its cofactors with respect
to the input generators, which makes explicit membership certificates
(:meth:`GroebnerBasis.lift`) possible.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceeded, InputError, RingMismatch
from .poly import (
    MonomialOrder,
    Polynomial,
    PolyRing,
    mono_div,
    mono_divides,
    mono_lcm,
)

DEFAULT_BUDGET = 500_000


def default_budget() -> int:
    raw = os.environ.get("HS_BUDGET_STEPS")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise InputError(f"HS_BUDGET_STEPS must be an integer, got {raw!r}") from None
    return DEFAULT_BUDGET


class _Budget:
    def __init__(self, steps: int | None, what: str):
        self.left = default_budget() if steps is None else steps
        self.what = what

    def spend(self, n: int = 1):
        self.left -= n
        if self.left < 0:
            raise BudgetExceeded(f"{self.what}: step budget exhausted")


@dataclass(frozen=True)
class DivisionCertificate:
    """``f == sum(q * g for q, g in zip(quotients, basis)) + remainder``."""

    quotients: tuple
    remainder: Polynomial

    def check(self, f: Polynomial, basis: Sequence[Polynomial]) -> bool:
        total = self.remainder
        for q, g in zip(self.quotients, basis):
            total = total + q * g
        return total == f


# ---------------------------------------------------------------- division


def _divide(terms: dict, basis, key, red, budget, want_quotients: bool):
    """Full reduction of ``terms`` by monic ``basis`` = [(lm, terms)].

    Returns ``(remainder_terms, quotients)`` where ``quotients[i]`` is a
    term dict (or ``None`` when not requested).
    """
    p = dict(terms)
    r = {}
    quots = [dict() for _ in basis] if want_quotients else None
    while p:
        m = max(p, key=key)
        c = p.pop(m)
        for i, (lm, g) in enumerate(basis):
            if mono_divides(lm, m):
                budget.spend()
                shift = mono_div(m, lm)
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    t = tuple(a + b for a, b in zip(gm, shift))
                    v = red(p.get(t, 0) - c * gc)
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                if want_quotients:
                    q = quots[i]
                    v = red(q.get(shift, 0) + c)
                    if v:
                        q[shift] = v
                    else:
                        q.pop(shift, None)
                break
        else:
            r[m] = c
    return r, quots


# ---------------------------------------------------------------- bases


class GroebnerBasis:
    """A reduced Groebner basis (monic, interreduced, sorted by leading monomial)."""

    def __init__(self, ring, elements, order, source_gens, reps=None):
        self.ring = ring
        self.elements = list(elements)
        self.order = order
        self.source_gens = list(source_gens)
        self.reps = reps
        self._lms = [g.leading_monomial(order) for g in self.elements]
        self._basis = [(lm, g.terms) for lm, g in zip(self._lms, self.elements)]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.elements]}, order={self.order!r})"

    @property
    def leading_monomials(self) -> list:
        return list(self._lms)

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def normal_form(self, f: Polynomial, budget: int | None = None) -> DivisionCertificate:
        self.ring.check(f)
        b = _Budget(budget, "normal form")
        red = self.ring.field.reduce
        r, q = _divide(f.terms, self._basis, self.order.key, red, b, True)
        return DivisionCertificate(
            tuple(Polynomial(self.ring, d) for d in q), Polynomial(self.ring, r)
        )

    def reduce(self, f: Polynomial, budget: int | None = None) -> Polynomial:
        self.ring.check(f)
        if not self._basis or not f.terms:
            return f
        b = _Budget(budget, "normal form")
        r, _ = _divide(f.terms, self._basis, self.order.key, self.ring.field.reduce, b, False)
        return Polynomial(self.ring, r)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def lift(self, f: Polynomial) -> list[Polynomial] | None:
        """Cofactors ``c`` with ``f == sum(c_i * source_gens[i])``, or ``None``."""
        if self.reps is None:
            raise ValueError("basis was computed without cofactor tracking")
        cert = self.normal_form(f)
        if not cert.remainder.is_zero():
            return None
        zero = self.ring.constant(0)
        out = [zero] * len(self.source_gens)
        for q, rep in zip(cert.quotients, self.reps):
            if q.is_zero():
                continue
            out = [a + q * b for a, b in zip(out, rep)]
        return out


def buchberger(
    gens: Iterable[Polynomial],
    order=None,
    *,
    ring: PolyRing | None = None,
    budget: int | None = None,
    track: bool = False,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise InputError("ring must be given for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        ring.check(g)
    order = MonomialOrder.parse(order) if order is not None else ring.order
    key = order.key
    field = ring.field
    red = field.reduce
    b = _Budget(budget, "Buchberger")
    nsrc = len(gens)
    zero = ring.constant(0)

    polys: list[dict] = []
    lms: list[tuple] = []
    sugars: list[int] = []
    reps: list[list[Polynomial]] = []
    active: list[int] = []
    pairs: list[tuple] = []

    def update(h: int):
        nonlocal active, pairs
        lm_h = lms[h]
        cand = [(h, g) for g in active]
        keep = []
        while cand:
            pr = cand.pop(0)
            g1 = pr[1]
            l1 = mono_lcm(lm_h, lms[g1])
            coprime = all(not (a and c) for a, c in zip(lm_h, lms[g1]))
            if coprime or (
                not any(mono_divides(mono_lcm(lm_h, lms[g2]), l1) for _, g2 in cand)
                and not any(mono_divides(mono_lcm(lm_h, lms[g2]), l1) for _, g2 in keep)
            ):
                keep.append(pr)
        new_pairs = [
            (h, g)
            for h, g in keep
            if not all(not (a and c) for a, c in zip(lm_h, lms[g]))
        ]
        old = []
        for i, j in pairs:
            lij = mono_lcm(lms[i], lms[j])
            if (
                mono_divides(lm_h, lij)
                and mono_lcm(lms[i], lm_h) != lij
                and mono_lcm(lms[j], lm_h) != lij
            ):
                continue
            old.append((i, j))
        pairs = old + new_pairs
        active = [g for g in active if not mono_divides(lm_h, lms[g])] + [h]

    def add(terms: dict, sugar: int, rep):
        m = max(terms, key=key)
        inv = field.inv(terms[m])
        terms = {k: red(v * inv) for k, v in terms.items()}
        polys.append(terms)
        lms.append(m)
        sugars.append(sugar)
        if track:
            reps.append([r.scale(inv) for r in rep])
        update(len(polys) - 1)

    def reduce_against(terms: dict, idx: Sequence[int]):
        basis = [(lms[i], polys[i]) for i in idx]
        r, q = _divide(terms, basis, key, red, b, track)
        return r, q

    def rep_after(rep, q, idx):
        for qi, i in zip(q, idx):
            if qi:
                qp = Polynomial(ring, qi)
                rep = [a - qp * c for a, c in zip(rep, reps[i])]
        return rep

    for s, g in enumerate(gens):
        if g.is_zero():
            continue
        rep = [ring.constant(1) if k == s else zero for k in range(nsrc)] if track else None
        terms, q = reduce_against(g.terms, active)
        if not terms:
            continue
        if track:
            rep = rep_after(rep, q, list(active))
        add(terms, g.total_degree(), rep)

    while pairs:
        if any(all(a == 0 for a in lms[i]) for i in active):
            break
        pairs.sort(key=lambda p: (_pair_sugar(p, lms, sugars), key(mono_lcm(lms[p[0]], lms[p[1]])), p))
        i, j = pairs.pop(0)
        b.spend()
        L = mono_lcm(lms[i], lms[j])
        si, sj = mono_div(L, lms[i]), mono_div(L, lms[j])
        s: dict = {}
        for m, c in polys[i].items():
            s[tuple(a + d for a, d in zip(m, si))] = c
        for m, c in polys[j].items():
            t = tuple(a + d for a, d in zip(m, sj))
            v = red(s.get(t, 0) - c)
            if v:
                s[t] = v
            else:
                s.pop(t, None)
        sugar = _pair_sugar((i, j), lms, sugars)
        if not s:
            continue
        idx = list(active)
        terms, q = reduce_against(s, idx)
        if not terms:
            continue
        rep = None
        if track:
            pi, pj = ring.monomial(si), ring.monomial(sj)
            rep = [pi * a - pj * c for a, c in zip(reps[i], reps[j])]
            rep = rep_after(rep, q, idx)
        add(terms, sugar, rep)

    # constant in the basis: the unit ideal
    units = [i for i in active if all(a == 0 for a in lms[i])]
    if units:
        active = units[:1]
    # tail-reduce (leading monomials are already minimal after the update)
    final_terms = {}
    final_reps = {}
    for i in active:
        others = [k for k in active if k != i]
        head = {lms[i]: polys[i][lms[i]]}
        tail = {m: c for m, c in polys[i].items() if m != lms[i]}
        r, q = reduce_against(tail, others)
        r.update(head)
        final_terms[i] = r
        if track:
            final_reps[i] = rep_after(reps[i], q, others)
    order_idx = sorted(active, key=lambda i: key(lms[i]), reverse=True)
    elements = [Polynomial(ring, final_terms[i]) for i in order_idx]
    return GroebnerBasis(
        ring,
        elements,
        order,
        gens,
        [final_reps[i] for i in order_idx] if track else None,
    )


def _pair_sugar(p, lms, sugars):
    i, j = p
    L = mono_lcm(lms[i], lms[j])
    dL = sum(L)
    return max(sugars[i] + dL - sum(lms[i]), sugars[j] + dL - sum(lms[j]))


# ---------------------------------------------------------------- ideals


class Ideal:
    """An ideal of a polynomial ring given by generators (zeros dropped)."""

    def __init__(self, ring: PolyRing, gens: Iterable = ()):
        out = []
        for g in gens:
            g = ring(g)
            if not g.is_zero():
                out.append(g)
        self.ring = ring
        self.gens = tuple(out)
        self._gb = {}
        self._tracked = None

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.gens]})"

    def groebner(self, order=None) -> GroebnerBasis:
        order = MonomialOrder.parse(order) if order is not None else self.ring.order
        if order not in self._gb:
            self._gb[order] = buchberger(self.gens, order, ring=self.ring)
        return self._gb[order]

    def tracked_groebner(self) -> GroebnerBasis:
        if self._tracked is None:
            self._tracked = buchberger(self.gens, ring=self.ring, track=True)
        return self._tracked

    def reduce(self, f) -> Polynomial:
        return self.groebner().reduce(self.ring(f))

    def contains(self, f) -> bool:
        return self.groebner().contains(self.ring(f))

    __contains__ = contains

    def lift(self, f) -> list[Polynomial] | None:
        return self.tracked_groebner().lift(self.ring(f))

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def issubset(self, other: Ideal) -> bool:
        _same_ring(self, other)
        return all(other.contains(g) for g in self.gens)

    def equals(self, other: Ideal) -> bool:
        return self.issubset(other) and other.issubset(self)

    def __add__(self, other) -> Ideal:
        if isinstance(other, Ideal):
            _same_ring(self, other)
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + tuple(self.ring(g) for g in other))

    def __mul__(self, other: Ideal) -> Ideal:
        _same_ring(self, other)
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def power(self, k: int) -> Ideal:
        if k == 0:
            return Ideal(self.ring, [1])
        prods = {}
        for combo in itertools.combinations_with_replacement(range(len(self.gens)), k):
            p = self.ring.constant(1)
            for c in combo:
                p = p * self.gens[c]
            prods[combo] = p
        return Ideal(self.ring, prods.values())

    def intersect(self, other: Ideal) -> Ideal:
        return ideal_intersection(self, other)

    __and__ = intersect

    def quotient(self, f) -> Ideal:
        return ideal_quotient(self, f)

    def dimension(self) -> int:
        return krull_dimension(self)


def _same_ring(a: Ideal, b: Ideal):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")


def normal_form(f: Polynomial, G: GroebnerBasis) -> DivisionCertificate:
    return G.normal_form(f)


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    I.ring.check(f)
    return I.contains(f)


def _fresh_name(ring: PolyRing, stem: str) -> str:
    k = 0
    while f"{stem}{k}" in ring.variables:
        k += 1
    return f"{stem}{k}"


def eliminate(gens: Sequence[Polynomial], ring: PolyRing, k: int, target: PolyRing) -> list[Polynomial]:
    """Generators of ``<gens> ∩ k[last variables]`` mapped into ``target``.

    ``ring`` has ``k`` extra leading variables compared to ``target``.
    """
    G = buchberger(gens, MonomialOrder("elim", k), ring=ring)
    out = []
    for g in G:
        if all(not any(e[:k]) for e in g.terms):
            out.append(Polynomial(target, {m[k:]: c for m, c in g.terms.items()}))
    return out


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1 - t)*J``."""
    _same_ring(I, J)
    R = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(R, [])
    t = _fresh_name(R, "_t")
    S = PolyRing((t,) + R.variables, R.field)
    emb = list(range(1, R.nvars + 1))
    T = S.gen(0)
    gens = [T * f.map_to(S, emb) for f in I.gens] + [(1 - T) * g.map_to(S, emb) for g in J.gens]
    return Ideal(R, eliminate(gens, S, 1, R))


def ideal_quotient(I: Ideal, f) -> Ideal:
    """Generators of ``(I : f)``."""
    f = I.ring(f)
    if f.is_zero():
        raise InputError("ideal quotient by the zero polynomial")
    inter = ideal_intersection(I, Ideal(I.ring, [f]))
    fb = buchberger([f], ring=I.ring)
    out = []
    for g in inter.gens:
        cert = fb.normal_form(g)
        if not cert.remainder.is_zero():
            raise AssertionError("intersection element not divisible by f")
        # fb has the single element f/lc(f)
        out.append(cert.quotients[0].scale(I.ring.field.inv(f.leading_coefficient())))
    return Ideal(I.ring, out)


def independent_sets(leading: Sequence[tuple], nvars: int):
    """Maximal-size variable subsets on which no leading monomial is supported."""
    supports = [frozenset(i for i, a in enumerate(m) if a) for m in leading]
    for size in range(nvars, -1, -1):
        found = [
            S
            for S in itertools.combinations(range(nvars), size)
            if not any(sup <= set(S) for sup in supports)
        ]
        if found:
            return size, found
    return -1, []


def krull_dimension(I: Ideal) -> int:
    """Dimension of R/I from the staircase of the leading-term ideal; -1 for the unit ideal."""
    if I.is_zero():
        return I.ring.nvars
    G = I.groebner()
    if G.is_unit():
        return -1
    size, _ = independent_sets(G.leading_monomials, I.ring.nvars)
    return size

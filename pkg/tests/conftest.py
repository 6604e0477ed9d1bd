import random

import sympy
from hypothesis import strategies as st

from hsint.poly import PolyRing, Polynomial


def to_sympy(f: Polynomial, syms):
    expr = 0
    for mono, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else c
        for s, e in zip(syms, mono):
            term = term * s**e
        expr += term
    return expr


def from_sympy(expr, R: PolyRing, syms):
    P = sympy.Poly(expr, *syms)
    terms = {}
    for mono, c in P.terms():
        c = sympy.Rational(c) if R.characteristic == 0 else int(c) % R.characteristic
        if R.characteristic == 0:
            from fractions import Fraction
            c = Fraction(int(c.p), int(c.q))
        if c:
            terms[tuple(mono)] = c
    return Polynomial(R, terms)


@st.composite
def polynomials(draw, R: PolyRing, max_deg=3, max_terms=4, coeff=5):
    n = R.nvars
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        mono = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        if sum(mono) > max_deg:
            continue
        c = draw(st.integers(-coeff, coeff))
        terms[mono] = R.field.reduce(terms.get(mono, 0) + c)
    return Polynomial(R, {m: c for m, c in terms.items() if c})


def random_poly(rng: random.Random, R: PolyRing, max_deg=3, max_terms=4):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.randint(0, max_deg) for _ in range(R.nvars))
        if sum(mono) > max_deg:
            continue
        c = R.field.reduce(rng.randint(-4, 4))
        terms[mono] = R.field.reduce(terms.get(mono, 0) + c)
    return Polynomial(R, {m: c for m, c in terms.items() if c})


def random_hs(rng: random.Random, A, m: int, tries: int = 20):
    """A random valid HS-derivation of length m on A.

    Over a polynomial ring every table is valid.  For finite-dimensional A
    the table is grown level by level with random points of the affine
    space of extensions, keeping only prefixes that still extend to length m.
    """
    from hsint.hs import HSDerivation
    from hsint.integrator import StepContext, linear_extension_space
    from hsint.leaps import LeapLab

    R = A.ring
    if not A.generators:
        return HSDerivation(A, [[random_poly(rng, R, 2, 3) for _ in range(A.nvars)] for _ in range(m)])
    if A not in _LABS:
        _LABS[A] = LeapLab(A)
    lab = _LABS[A]
    p = R.characteristic
    W = lab.integrable_subspace(m).basis
    v = [0] * (lab.model.nvars * lab.model.dim)
    for w in W:
        c = rng.randrange(p)
        v = [(a + c * b) % p for a, b in zip(v, w)]
    D = HSDerivation(A, [lab.element(v)])
    for _ in range(2, m + 1):
        space = linear_extension_space(StepContext(A, D), lab.model)
        for _ in range(tries):
            v = list(space.particular_coords)
            for k in space.kernel_coords:
                c = rng.randrange(p)
                v = [(a + c * b) % p for a, b in zip(v, k)]
            cand = D.extend(lab.element(v))
            if lab.complete(cand, m) is not None:
                D = cand
                break
        else:
            D = lab.complete(D, m).truncate(D.length + 1)
    return D


_LABS = {}

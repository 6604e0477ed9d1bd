"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line."""

import itertools
import random
import time

import pytest
import sympy

from conftest import random_hs, random_poly, to_sympy
from hsint.algebra import PresentedAlgebra
from hsint.artinian import ArtinianModel
from hsint.geometry import PrimeWitness, fitting_ideal, generic_generators, jacobian, rank_at_prime
from hsint.groebner import Ideal, normal_form
from hsint.hs import HSDerivation, derivation_check
from hsint.integrator import StepContext, cofactor_solve, integrate_ci, obstruction
from hsint.leaps import LeapLab, is_m_integrable
from hsint.linalg import determinant, minors, solve_affine
from hsint.poly import PolyRing, mono_divides


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {n:>2}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return emit


def alg(p, vars_, gens):
    return PresentedAlgebra.from_strings(vars_, p, gens)


CORPUS = [
    (2, ["x"], ["x^2"], 8), (2, ["x"], ["x^3"], 8), (2, ["x"], ["x^4"], 8), (2, ["x"], ["x^5"], 8),
    (2, ["x"], ["x^6"], 8), (3, ["x"], ["x^2"], 9), (3, ["x"], ["x^3"], 9), (3, ["x"], ["x^4"], 9),
    (5, ["x"], ["x^5"], 5), (2, ["x", "y"], ["x^2", "y^2"], 8), (2, ["x", "y"], ["x^2", "x*y", "y^2"], 8),
    (2, ["x", "y"], ["x^3", "y^2"], 8), (2, ["x", "y"], ["x^2", "x*y", "y^3"], 8),
    (3, ["x", "y"], ["x^2", "x*y", "y^2"], 9), (3, ["x", "y"], ["x^3", "y^2"], 9), (2, ["x", "y"], ["x^4", "y^2"], 8),
]

_LABS = {}


def corpus_lab(entry):
    p, v, g, B = entry
    key = (p, tuple(v), tuple(g))
    if key not in _LABS:
        lab = LeapLab(alg(p, v, g))
        _LABS[key] = (lab, lab.leap_scan(B))
    return _LABS[key]


def is_p_power(s, p):
    while s % p == 0:
        s //= p
    return s == 1


# 1 ------------------------------------------------------------------------


def test_criterion_01_leap_census(report):
    cases = [((2, ["x"], ["x^2"]), 8, [2]), ((2, ["x"], ["x^4"]), 8, [4]), ((3, ["x"], ["x^3"]), 9, [3])]
    details, ok = [], True
    for (p, v, g), B, want in cases:
        t = time.perf_counter()
        got = LeapLab(alg(p, v, g)).leap_scan(B).leaps
        dt = time.perf_counter() - t
        ok &= got == want and dt < 60
        details.append(f"F_{p}[x]/<{g[0]}> B={B}: {got} ({dt:.2f}s)")
    report(1, ok, "; ".join(details))


# 2 ------------------------------------------------------------------------


def test_criterion_02_p_power_structure(report):
    t = time.perf_counter()
    bad, total = [], 0
    for entry in CORPUS:
        _, rep = corpus_lab(entry)
        assert rep.certification == "exact" and not rep.partial
        for s in rep.leaps:
            total += 1
            if not is_p_power(s, entry[0]):
                bad.append((entry[2], s))
    dt = time.perf_counter() - t
    ok = not bad and len(CORPUS) >= 10 and dt < 600
    report(2, ok, f"{len(CORPUS)} algebras, {total} leaps, non p-powers {bad}, {dt:.1f}s")


# 3 ------------------------------------------------------------------------


CUSP = alg(2, ["x", "y"], ["y^2 + x^3"])


def test_criterion_03_cusp_integral(report):
    t = time.perf_counter()
    res = integrate_ci(CUSP, ["0", "x^2"], 16)
    dt = time.perf_counter() - t
    D = res.derivation
    J = CUSP.ideal_of(["x^2"])
    members = all(J.contains(e) for row in D.xi for e in row)
    ok = (res.ok and D.length == 16 and D.validate().valid and members
          and D.xi[0] == (CUSP.ring(0), CUSP.ring("x^2")) and dt < 60)
    report(3, ok, f"length {D.length}, transcript {len(res.transcript)} checks all pass={res.ok}, "
                  f"all entries in <x^2>={members}, {dt:.2f}s")


# 4 ------------------------------------------------------------------------


def _random_hypersurface_contexts(n, seed=4):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        p = rng.choice([2, 3, 5])
        R = PolyRing(["x", "y"], p)
        f = random_poly(rng, R, 3, 4)
        if f.total_degree() < 2:
            continue
        A = PresentedAlgebra(R, [f])
        J = fitting_ideal(A, 1)
        if J.is_zero() or J.is_unit():
            continue
        a = random_poly(rng, R, 1, 2) or R(1)
        if a.is_zero():
            a = R(1)
        delta = [A.reduce(a * f.diff(1)), A.reduce(-a * f.diff(0))]
        if all(e.is_zero() for e in delta):
            continue
        nu = rng.randint(2, 4)
        D = integrate_ci(A, delta, nu - 1).derivation
        out.append((A, D, J.lifted_generators))
    return out


def test_criterion_04_key_point(report):
    steps = integrate_ci(CUSP, ["0", "x^2"], 16).transcript
    cusp_checks = [c for c in steps if c["check"] == "F in J_r^2"]
    ok_cusp = len(cusp_checks) == 15 and all(c["pass"] for c in cusp_checks)
    contexts = _random_hypersurface_contexts(100)
    passed = 0
    for A, D, Ma in contexts:
        ctx = StepContext(A, D, constraint=Ma)
        assert ctx.table_in_constraint()
        sys = obstruction(ctx)
        Ma2 = A.ideal_of([a * b for a in Ma for b in Ma])
        if all(Ma2.contains(F) for F in sys.obstructions):
            passed += 1
    ok = ok_cusp and passed == len(contexts) == 100
    report(4, ok, f"cusp steps {len(cusp_checks)} all in Ma^2={ok_cusp}; random contexts {passed}/{len(contexts)}")


# 5 ------------------------------------------------------------------------


def _span_member(model, x, gens):
    """x in the ideal of A generated by gens, decided by linear algebra over the staircase."""
    basis = model.basis_elements()
    cols = [model.coords(g * b) for g in gens for b in basis]
    target = model.coords(x)
    if not cols:
        return not any(target)
    mat = [[c[i] for c in cols] for i in range(model.dim)]
    return solve_affine(mat, target, model.field) is not None


def test_criterion_05_cofactor_lemma(report):
    rng = random.Random(5)
    algebras = [alg(3, ["x"], ["x^2"]), alg(2, ["x", "y"], ["x^2", "x*y", "y^2"])]
    t = time.perf_counter()
    done, good = 0, 0
    while done < 200:
        A = algebras[done % 2]
        model = ArtinianModel(A)
        R = A.ring
        s, n = rng.randint(1, 3), rng.randint(1, 3)
        rnd = lambda: model.element([rng.randrange(A.characteristic) for _ in range(model.dim)])
        M = [[rnd() for _ in range(n)] for _ in range(s)]
        v = [rnd() for _ in range(n)]
        b = [A.reduce(sum((a * c for a, c in zip(row, v)), R(0))) for row in M]
        best = ((), ())
        for size in range(min(s, n), 0, -1):
            hit = next(((r, c) for r, c, d in minors(M, size, R(0), R(1)) if not A.is_zero(d)), None)
            if hit:
                best = hit
                break
        sol = cofactor_solve(A, M, b, *best)
        Delta = A.reduce(determinant([[M[i][j] for j in best[1]] for i in best[0]], R(0), R(1)))
        system_ok = all(
            A.is_zero(sum((a * x for a, x in zip(row, sol.xi)), R(0)) - Delta * bi) for row, bi in zip(M, b)
        )
        member_ok = all(_span_member(model, x, [b[i] for i in best[0]]) for x in sol.xi)
        good += system_ok and member_ok
        done += 1
    dt = time.perf_counter() - t
    report(5, good == 200 and dt < 60, f"{good}/200 systems verified (M xi = Delta b and xi in <b>), {dt:.2f}s")


# 6 ------------------------------------------------------------------------


def test_criterion_06_generic_generators(report):
    R = PolyRing(["x", "y", "z"], 0)
    I = Ideal(R, [R("x*z"), R("y*z")])
    P1, P2 = PrimeWitness(R, ["x", "y"]), PrimeWitness(R, ["z"])
    out = generic_generators(I, [P1, P2])
    M = jacobian(out.F, R)
    r1, r2 = rank_at_prime(M, P1), rank_at_prime(M, P2)
    S = Ideal(R, out.S)
    mutual = S.issubset(I) and I.issubset(S)
    ok = len(out.F) == 2 and r1 == 2 and r2 == 1 and mutual
    report(6, ok, f"F={[str(g) for g in out.F]}, ranks {r1} and {r2}, generates I={mutual}")


# 7 ------------------------------------------------------------------------


def test_criterion_07_leap_bound(report):
    rows, ok, certified = [], True, 0
    for entry in CORPUS:
        lab, rep = corpus_lab(entry)
        M = lab.certified_power(entry[3])
        if M is None:
            continue
        certified += 1
        bound = lab.leap_bound(M)
        ok &= len(rep.leaps) <= bound
        rows.append(f"{'/'.join(entry[2])}: {len(rep.leaps)}<={bound}")
    ok &= certified > 0
    report(7, ok, f"{certified} certified algebras; " + ", ".join(rows))


# 8 ------------------------------------------------------------------------


GROUP_ALGEBRAS = [
    alg(3, ["x", "y"], []), alg(2, ["x"], []), alg(2, ["x"], ["x^4"]), alg(3, ["x"], ["x^3"]),
    alg(2, ["x", "y"], ["x^2", "y^2"]), alg(2, ["x", "y"], ["x^2", "x*y", "y^2"]), alg(3, ["x", "y"], ["x^3", "y^2"]),
]


def test_criterion_08_group_laws(report):
    rng = random.Random(8)
    counts = dict(assoc=0, ident=0, inv=0, trunc=0, closed=0)
    n = 0
    while n < 100:
        A = GROUP_ALGEBRAS[n % len(GROUP_ALGEBRAS)]
        m = rng.randint(1, 4)
        D, E, G = (random_hs(rng, A, m) for _ in range(3))
        assert D.validate() and E.validate() and G.validate()
        Id = HSDerivation.identity(A, m)
        counts["closed"] += bool(D.compose(E).validate())
        counts["assoc"] += D.compose(E).compose(G) == D.compose(E.compose(G))
        counts["ident"] += D.compose(Id) == D and Id.compose(D) == D
        inv = D.inverse()
        counts["inv"] += D.compose(inv).is_identity() and inv.compose(D).is_identity()
        counts["trunc"] += all(
            D.compose(E).truncate(k) == D.truncate(k).compose(E.truncate(k)) for k in range(1, m + 1)
        )
        n += 1
    ok = all(v == 100 for v in counts.values())
    report(8, ok, ", ".join(f"{k} {v}/100" for k, v in counts.items()))


# 9 ------------------------------------------------------------------------


def test_criterion_09_groebner_soundness(report):
    rng = random.Random(9)
    syms = sympy.symbols("x y z")
    good = 0
    for k in range(500):
        p = [0, 2, 3, 5][k % 4]
        R = PolyRing(["x", "y", "z"], p, ["grevlex", "lex"][k % 2])
        gens = [g for g in (random_poly(rng, R, 3, 3) for _ in range(rng.randint(1, 3))) if not g.is_zero()]
        if not gens:
            gens = [R("x*y - z")]
        G = Ideal(R, gens).groebner()
        f = random_poly(rng, R, 5, 6)
        cert = normal_form(f, G)
        # independent re-evaluation with sympy
        lhs = to_sympy(f, syms)
        rhs = sum(to_sympy(q, syms) * to_sympy(g, syms) for q, g in zip(cert.quotients, G)) + to_sympy(cert.remainder, syms)
        diff = sympy.expand(lhs - rhs)
        if p:
            diff = sympy.Poly(diff, *syms, modulus=p).as_expr() if diff != 0 else 0
        good += diff == 0
    # monomial ideals: membership against divisibility, every monomial of degree <= 6
    mono_ok, mono_total = 0, 0
    for k in range(40):
        n = 1 + k % 3
        R = PolyRing(["x", "y", "z"][:n], 2)
        gens = [tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if any(g)] or [(1,) * n]
        I = Ideal(R, [R.monomial(g) for g in gens])
        for mono in R.monomials_up_to(6):
            expect = any(mono_divides(g, mono) for g in gens)
            mono_total += 1
            mono_ok += I.contains(R.monomial(mono)) == expect
    ok = good == 500 and mono_ok == mono_total
    report(9, ok, f"certificates {good}/500 exact; monomial membership {mono_ok}/{mono_total} agree")


# 10 -----------------------------------------------------------------------


def test_criterion_10_oracle_equivalence(report):
    A = alg(2, ["x"], ["x^2"])
    elems = ["0", "1", "x", "x + 1"]
    t = time.perf_counter()
    lab = LeapLab(A)
    agree, total = 0, 0
    for m in range(1, 7):
        for d in elems:
            assert derivation_check(A, [d])
            oracle = any(
                HSDerivation(A, [[d]] + [[e] for e in rest]).validate().valid
                for rest in itertools.product(elems, repeat=m - 1)
            )
            fast = lab.is_integrable([d], m).answer == "yes"
            full = is_m_integrable(A, [d], m, prune=False).answer == "yes"
            total += 1
            agree += oracle == fast == full
    dt = time.perf_counter() - t
    report(10, agree == total and dt < 300, f"{agree}/{total} (derivation, m) pairs agree with enumeration, {dt:.2f}s")

"""Order-by-order extension of derivations to Hasse-Schmidt derivations.

Given a (nu-1)-integral x -> x + sum_{mu<nu} xi_mu t^mu, every generator f
of I satisfies f(x + sum xi_mu t^mu) = t^nu F(x) mod t^{nu+1}, and extending
to order nu means solving  F_a + sum_j d_j(f_a) xi_{nu,j} = 0  in A.
The constructive procedures below solve this system with adjugate
(cofactor) formulas so that the new column stays inside a prescribed ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import PresentedAlgebra, truncated_substitution
from .artinian import ArtinianModel
from .errors import HypothesisError, InputError, VerificationError
from .geometry import (
    GenericGenerators,
    PrimeWitness,
    check_jhet,
    fitting_ideal,
    generic_generators,
    jacobian,
)
from .groebner import Ideal, ideal_intersection, ideal_quotient
from .hs import HSDerivation, derivation_check
from .linalg import determinant, solve_affine
from .poly import Polynomial


# ---------------------------------------------------------------- one step


@dataclass
class StepContext:
    """A validated (nu-1)-integral together with the ideal Ma its table must live in.

    ``generators`` defaults to the algebra's generators; any generating set
    of the same ideal may be supplied.  ``constraint`` lists generators (in R)
    of Ma; ``None`` means the unit ideal.
    """

    algebra: PresentedAlgebra
    partial: HSDerivation
    constraint: Sequence[Polynomial] | None = None
    generators: Sequence[Polynomial] | None = None

    def __post_init__(self):
        if self.generators is None:
            self.generators = list(self.algebra.generators)
        if self.constraint is not None:
            self.constraint = [self.algebra.ring(g) for g in self.constraint]

    @property
    def order(self) -> int:
        return self.partial.length + 1

    def constraint_ideal(self) -> Ideal | None:
        return None if self.constraint is None else self.algebra.ideal_of(self.constraint)

    def table_in_constraint(self) -> bool:
        Ma = self.constraint_ideal()
        if Ma is None:
            return True
        return all(Ma.contains(e) for row in self.partial.xi for e in row)


@dataclass
class ObstructionSystem:
    """Augmented system (d_j f_a | -F_a) whose solutions extend the partial integral."""

    matrix: list
    rhs: list
    obstructions: list
    order: int
    generators: list

    def residual(self, algebra: PresentedAlgebra, xi: Sequence[Polynomial]) -> list[Polynomial]:
        """F_a + sum_j d_j(f_a) xi_j for each a (zero iff xi solves the system)."""
        out = []
        for row, F in zip(self.matrix, self.obstructions):
            acc = F
            for a, x in zip(row, xi):
                if a.terms and x.terms:
                    acc = acc + a * x
            out.append(algebra.reduce(acc))
        return out


def obstruction_coefficients(algebra, generators, partial: HSDerivation, order: int,
                             check_valid: bool = True) -> list[Polynomial]:
    """t^order coefficient of each f(x + sum_mu xi_mu t^mu), reduced into A.

    With ``check_valid`` the lower coefficients must vanish.
    """
    images = partial.series(order)
    out = []
    for k, f in enumerate(generators):
        s = truncated_substitution(f, images, order)
        for lower in range(order if check_valid else 0):
            if not s[lower].is_zero():
                raise VerificationError(
                    f"partial integral is not valid: generator {k} leaves {s[lower]} at order {lower}"
                )
        out.append(s[order])
    return out


def obstruction(ctx: StepContext, check_key_point: bool = True) -> ObstructionSystem:
    """The obstruction coefficients F_a and the Jacobian system at order nu.

    If the partial table lies in Ma, every F_a must lie in Ma^2; a failure
    is a hard error.
    """
    A = ctx.algebra
    nu = ctx.order
    F = obstruction_coefficients(A, ctx.generators, ctx.partial, nu)
    if check_key_point and ctx.constraint is not None and ctx.table_in_constraint():
        Ma2 = A.ideal_of([a * b for i, a in enumerate(ctx.constraint) for b in ctx.constraint[i:]])
        for k, Fa in enumerate(F):
            if not Ma2.contains(Fa):
                raise VerificationError(f"obstruction F_{k} = {Fa} is not in Ma^2")
    M = [[A.reduce(g.diff(j)) for j in range(A.nvars)] for g in ctx.generators]
    return ObstructionSystem(M, [A.reduce(-Fa) for Fa in F], F, nu, list(ctx.generators))


# ---------------------------------------------------------------- cofactor solve


@dataclass
class CofactorSolution:
    xi: list
    delta: Polynomial
    rows: tuple
    cols: tuple


def cofactor_solve(
    algebra: PresentedAlgebra,
    M: Sequence[Sequence[Polynomial]],
    b: Sequence[Polynomial],
    rows: Sequence[int],
    cols: Sequence[int],
    delta: Polynomial | None = None,
) -> CofactorSolution:
    """Solve M x = Delta b, Delta the minor on (rows, cols), with x_i in <b_rows>.

    Bordering the minor with row i of (M | b) gives an (r+1)-minor of (M | b);
    when rank (M | b) = r these all vanish, and expanding along the last row
    yields the solution x_{cols[t]} = -Cof_t, zero outside ``cols``.  The
    result is re-verified exactly; failure means the rank hypothesis is false.
    """
    R = algebra.ring
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise InputError("minor must be square")
    ncols = len(M[0]) if M else algebra.nvars
    zero, one = R.constant(0), R.constant(1)
    r = len(rows)
    top = [[M[i][c] for c in cols] for i in rows]
    D = determinant(top, zero, one)
    Dn = algebra.reduce(D)
    if delta is not None and not algebra.is_zero(algebra.ring(delta) - D):
        raise VerificationError("supplied Delta does not match the indicated minor")
    xi = [zero] * ncols
    for t in range(r):
        sub = [[top[k][c] for c in range(r) if c != t] + [b[rows[k]]] for k in range(r)]
        cof = determinant(sub, zero, one)
        # cofactor of entry (r+1, t+1) in the bordered (r+1)x(r+1) matrix
        if (r + 1 + t + 1) % 2:
            cof = -cof
        xi[cols[t]] = algebra.reduce(-cof)
    for i, row in enumerate(M):
        acc = -Dn * b[i]
        for a, x in zip(row, xi):
            if a.terms and x.terms:
                acc = acc + a * x
        if not algebra.is_zero(acc):
            raise VerificationError(f"cofactor solution fails row {i}: rank(M|b) exceeds {r}")
    bideal = algebra.ideal_of([b[i] for i in rows])
    for j, x in enumerate(xi):
        if not bideal.contains(x):
            raise VerificationError(f"solution entry {j} is not in <b>")
    return CofactorSolution(xi, Dn, rows, cols)


# ---------------------------------------------------------------- results


@dataclass
class ExtensionResult:
    outcome: str
    method: str
    derivation: HSDerivation | None = None
    transcript: list = field(default_factory=list)
    reason: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.outcome == "extended" and all(c["pass"] for c in self.transcript)

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "method": self.method}
        if self.derivation is not None:
            out["length"] = self.derivation.length
            out["hs"] = self.derivation.to_json()
        if self.reason:
            out["reason"] = self.reason
        out.update(self.details)
        out["transcript"] = self.transcript
        return out


class _Transcript(list):
    def check(self, order, what, ok, **extra):
        entry = {"order": order, "check": what, "pass": bool(ok)}
        entry.update(extra)
        self.append(entry)
        if not ok:
            raise VerificationError(f"order {order}: {what} failed")


def _require_derivation(A, delta):
    if not derivation_check(A, delta):
        raise HypothesisError("the given vector is not a derivation of A")


def _delta_vector(A, delta) -> list[Polynomial]:
    if isinstance(delta, dict):
        delta = [delta.get(v, "0") for v in A.ring.variables]
    if len(delta) != A.nvars:
        raise InputError(f"derivation needs {A.nvars} entries")
    return [A.ring(e) for e in delta]


def _solve_step(A, M_full, minors, gammas, hs):
    """Sum of -cofactor solutions over the minors: the new column xi_nu."""
    R = A.ring
    xi = [R.constant(0)] * A.nvars
    for (rows, cols, _), gam in zip(minors, gammas):
        if A.is_zero(gam):
            continue
        b = [A.reduce(gam * h) for h in hs]
        sol = cofactor_solve(A, M_full, b, rows, cols)
        xi = [x - y for x, y in zip(xi, sol.xi)]
    return [A.reduce(x) for x in xi]


def integrate_ci(A: PresentedAlgebra, delta, m: int) -> ExtensionResult:
    """Integral of delta with all table entries in J_r, for I = <f_1..f_r> and delta(A) ⊆ J_r."""
    delta = _delta_vector(A, delta)
    R = A.ring
    r = len(A.generators)
    tr = _Transcript()
    _require_derivation(A, delta)
    if r > A.nvars:
        J = None
        Jideal = A.ideal_of([])
    else:
        J = fitting_ideal(A, r)
        Jideal = J.ideal()
    for i, e in enumerate(delta):
        if not Jideal.contains(e):
            raise HypothesisError(f"delta(x_{i}) = {e} is not in J_{r}")
    D = HSDerivation(A, [delta])
    if J is None or J.is_zero() or all(A.is_zero(e) for e in delta):
        D = HSDerivation.identity(A, m)
        tr.check(m, "valid", D.validate().valid)
        return ExtensionResult("extended", "complete-intersection", D, tr, details={"J_r": []})
    tr.check(1, "valid", D.validate().valid)
    Jac = jacobian(A.generators, R)
    Mred = Jac.reduced(A)
    minors = [(rows, cols, d) for (rows, cols), d in zip(J.minor_index, J.lifted_generators)]
    deltas = [d for _, _, d in minors]
    first = Ideal(R, deltas + list(A.generators))
    products = [(l, k) for l in range(len(deltas)) for k in range(l, len(deltas))]
    second = None
    for nu in range(2, m + 1):
        ctx = StepContext(A, D, constraint=deltas)
        system = obstruction(ctx)
        tr.check(nu, "F in J_r^2", True)
        # F_a = sum_l Delta_l h_{a l} with h in J_r
        H = []
        for a, Fa in enumerate(system.obstructions):
            c = first.lift(Fa)
            hs = [A.reduce(x) for x in c[: len(deltas)]] if c is not None else None
            if hs is None or not all(Jideal.contains(h) for h in hs):
                if second is None:
                    second = Ideal(R, [deltas[l] * deltas[k] for l, k in products] + list(A.generators))
                c = second.lift(Fa)
                if c is None:
                    raise VerificationError(f"F_{a} has no representation over J_r^2")
                hs = [R.constant(0)] * len(deltas)
                for (l, k), coef in zip(products, c):
                    hs[l] = hs[l] + coef * deltas[k]
                hs = [A.reduce(h) for h in hs]
                if not all(Jideal.contains(h) for h in hs):
                    raise VerificationError(f"coefficients of F_{a} fall outside J_r")
            H.append(hs)
        xi = [R.constant(0)] * A.nvars
        for lam, (rows, cols, _) in enumerate(minors):
            b = [H[a][lam] for a in range(r)]
            if all(A.is_zero(x) for x in b):
                continue
            sol = cofactor_solve(A, Mred, b, rows, cols)
            xi = [x - y for x, y in zip(xi, sol.xi)]
        xi = [A.reduce(x) for x in xi]
        res = system.residual(A, xi)
        tr.check(nu, "system solved", all(x.is_zero() for x in res))
        tr.check(nu, "xi in J_r", all(Jideal.contains(x) for x in xi))
        D = D.extend(xi)
        tr.check(nu, "valid", D.validate().valid)
    return ExtensionResult(
        "extended", "complete-intersection", D, tr, details={"J_r": [str(g) for g in J.generators]}
    )


def _check_nonzerodivisor(A: PresentedAlgebra, Delta: Polynomial):
    if Delta.is_zero() or A.is_zero(Delta):
        raise HypothesisError("Delta is zero in A, hence a zerodivisor")
    Q = ideal_quotient(A.ideal, Delta)
    if not Q.equals(A.ideal):
        raise HypothesisError(f"Delta = {Delta} is a zerodivisor in A: (I : Delta) != I")


def integrate_equidim(
    A: PresentedAlgebra,
    delta,
    Delta,
    m: int,
    primes: Sequence[PrimeWitness],
    generic: GenericGenerators | None = None,
    log_ideal: Sequence | None = None,
) -> ExtensionResult:
    """Integral of Delta*delta with every table entry in <Delta>.

    Hypotheses (checked): the supplied minimal primes all have the same
    height r, J^het holds at each of them, Delta is a non-zerodivisor lying
    in J_r(A).  Radicality and primality are trusted.
    """
    R = A.ring
    delta = _delta_vector(A, delta)
    Delta = R(Delta)
    tr = _Transcript()
    primes = list(primes)
    if not primes:
        raise InputError("equidimensional integration needs the minimal primes")
    heights = {P.height for P in primes}
    if len(heights) != 1:
        raise HypothesisError(f"primes have different heights {sorted(heights)}: not equidimensional")
    r = heights.pop()
    jh = check_jhet(A, primes)
    if not jh.holds:
        raise HypothesisError("condition J^het fails")
    _check_nonzerodivisor(A, Delta)
    _require_derivation(A, delta)
    if log_ideal is not None:
        L = A.ideal_of(log_ideal)
        for g in L.gens:
            if not L.contains(sum((g.diff(j) * delta[j] for j in range(A.nvars)), R.constant(0))):
                raise HypothesisError("delta is not logarithmic along the given ideal")
    if generic is None:
        generic = generic_generators(A, primes)
    S = list(generic.S)
    Jac = jacobian(S, R)
    Mred = Jac.reduced(A)
    minors = []
    seen = set()
    for rows, cols, d in Jac.minors(r):
        dn = A.reduce(d)
        if dn.is_zero() or dn in seen:
            continue
        seen.add(dn)
        minors.append((rows, cols, d))
    Jr = Ideal(R, [d for _, _, d in minors] + list(A.generators))
    gam = Jr.lift(Delta)
    if gam is None:
        raise HypothesisError(f"Delta = {Delta} is not in J_{r}(A)")
    gammas = [A.reduce(g) for g in gam[: len(minors)]]
    tr.check(0, "Delta in J_r", True)
    Dideal = A.ideal_of([Delta])
    D2 = Ideal(R, [Delta * Delta] + list(A.generators))
    D = HSDerivation(A, [[Delta * e for e in delta]])
    tr.check(1, "valid", D.validate().valid)
    if log_ideal is not None:
        tr.check(1, "logarithmic", D.is_logarithmic(log_ideal))
    for nu in range(2, m + 1):
        ctx = StepContext(A, D, constraint=[Delta], generators=S)
        system = obstruction(ctx)
        tr.check(nu, "F in <Delta^2>", True)
        hs = []
        for a, Fa in enumerate(system.obstructions):
            c = D2.lift(Fa)
            if c is None:
                raise VerificationError(f"F_{a} is not in <Delta^2>")
            hs.append(A.reduce(Delta * c[0]))
        xi = _solve_step(A, Mred, minors, gammas, hs)
        res = system.residual(A, xi)
        tr.check(nu, "system solved", all(x.is_zero() for x in res))
        tr.check(nu, "xi in <Delta>", all(Dideal.contains(x) for x in xi))
        D = D.extend(xi)
        tr.check(nu, "valid", D.validate().valid)
        if log_ideal is not None:
            tr.check(nu, "logarithmic", D.is_logarithmic(log_ideal))
    return ExtensionResult(
        "extended",
        "equidimensional-Delta",
        D,
        tr,
        details={"Delta": str(Delta), "generic_generators": generic.to_json(), "assumes_primality_of_inputs": True},
    )


def integrate_reduced(
    A: PresentedAlgebra,
    delta,
    Delta,
    decomposition: Sequence[PrimeWitness],
    m: int,
) -> ExtensionResult:
    """Integral of Delta*delta for reduced A = R/I with I = P_1 ∩ ... ∩ P_k supplied.

    Only the components avoiding Delta matter: on B = R/(their intersection)
    the equidimensional procedure applies, and the resulting table, lifted to
    multiples of Delta in R, is logarithmic along every other component too.
    """
    R = A.ring
    delta = _delta_vector(A, delta)
    Delta = R(Delta)
    decomposition = list(decomposition)
    if not decomposition:
        raise InputError("reduced integration needs the minimal primes of I")
    tr = _Transcript()
    for P in decomposition:
        P.check_contains(A)
    inter = decomposition[0].ideal
    for P in decomposition[1:]:
        inter = ideal_intersection(inter, P.ideal)
    tr.check(0, "I equals the intersection of the primes", inter.equals(A.ideal))
    _require_derivation(A, delta)
    r = max(P.height for P in decomposition)
    tr.check(0, "Delta in J_r^0 + I", fitting_ideal(A, r).contains(Delta))
    avoiding = [P for P in decomposition if not P.contains(Delta)]
    if not avoiding:
        D = HSDerivation.identity(A, m)
        tr.check(m, "valid", D.validate().valid)
        return ExtensionResult("extended", "reduced-log", D, tr, reason="Delta lies in I; Delta*delta = 0")
    for P in avoiding:
        if P.height != r:
            raise HypothesisError(f"component {P} avoiding Delta has height {P.height} != {r}")
    if len(avoiding) == len(decomposition):
        B = A
    else:
        I1 = avoiding[0].ideal
        for P in avoiding[1:]:
            I1 = ideal_intersection(I1, P.ideal)
        B = PresentedAlgebra(R, I1.gens)
    inner = integrate_equidim(B, delta, Delta, m, avoiding)
    tr.extend({**c, "stage": "B"} for c in inner.transcript)
    # lift every entry to a literal multiple of Delta in R
    Bdelta = Ideal(R, [Delta] + list(B.generators))
    rows = []
    for mu, row in enumerate(inner.derivation.xi, start=1):
        out = []
        for i, e in enumerate(row):
            if mu == 1:
                out.append(Delta * delta[i])
                continue
            c = Bdelta.lift(e)
            if c is None:
                raise VerificationError("entry of the B-integral is not in <Delta>")
            out.append(Delta * c[0])
        rows.append(out)
    flat = PresentedAlgebra(R, [])
    E_R = HSDerivation(flat, rows)
    others = [P for P in decomposition if P not in avoiding]
    tr.check(m, "logarithmic along I_1", E_R.is_logarithmic(B.generators))
    for P in others:
        tr.check(m, f"logarithmic along {P}", E_R.is_logarithmic(P.generators))
    tr.check(m, "logarithmic along I", E_R.is_logarithmic(A.generators))
    E = HSDerivation(A, rows)
    for k in range(1, m + 1):
        tr.check(k, "valid on A", E.truncate(k).validate().valid)
    return ExtensionResult(
        "extended",
        "reduced-log",
        E,
        tr,
        details={
            "Delta": str(Delta),
            "components_avoiding_Delta": [str(P) for P in avoiding],
            "assumes_primality_of_inputs": True,
        },
    )


# ---------------------------------------------------------------- artinian


@dataclass
class AffineSolutionSpace:
    particular: list
    kernel: list
    particular_coords: list
    kernel_coords: list

    @property
    def dimension(self) -> int:
        return len(self.kernel)


def linear_extension_space(ctx: StepContext, model: ArtinianModel | None = None) -> AffineSolutionSpace | None:
    """All xi_nu extending the partial integral, for finite-dimensional A.

    The constraint ideal of the context is not imposed.  Returns ``None``
    when the system has no solution.
    """
    A = ctx.algebra
    if model is None:
        model = ArtinianModel(A)
    gens = list(ctx.generators)
    if gens != list(A.generators):
        raise InputError("linear_extension_space uses the algebra's own generators")
    F = obstruction_coefficients(A, gens, ctx.partial, ctx.order)
    rhs = []
    for Fa in F:
        rhs.extend(model.field.reduce(-c) for c in model.coords(Fa))
    sol = solve_affine(model.jacobian_map, rhs, model.field) if rhs else ([model.field.zero] * (A.nvars * model.dim), None)
    if sol is None:
        return None
    part, kernel = sol
    if kernel is None:
        kernel = [[model.field.one if i == k else model.field.zero for i in range(len(part))] for k in range(len(part))]
    return AffineSolutionSpace(
        model.vec_element(part), [model.vec_element(k) for k in kernel], part, kernel
    )


def integrate(A: PresentedAlgebra, delta, m: int, method: str = "auto", **kw) -> ExtensionResult:
    """Dispatch to one of the constructive procedures."""
    if method == "ci" or (method == "auto" and "Delta" not in kw and "primes" not in kw):
        return integrate_ci(A, delta, m)
    if method == "equidim" or (method == "auto" and kw.get("primes") and len({P.height for P in kw["primes"]}) == 1):
        return integrate_equidim(A, delta, kw["Delta"], m, kw["primes"], log_ideal=kw.get("log_ideal"))
    if method in ("reduced", "auto"):
        return integrate_reduced(A, delta, kw["Delta"], kw["primes"], m)
    raise InputError(f"unknown integration method {method!r}")

"""Exact m-integrability and leap census for finite-dimensional algebras over F_p.

Search space reduction.  Two level-k extensions of the same (k-1)-integral
differ by a derivation e.  Composing with the "stretched" integral
x -> x + t^k e + t^{2k} e_2 + ... shows that the two choices lead to the
same answer at order m whenever e itself is floor(m/k)-integrable.  So at
level k it suffices to branch over coset representatives of
Der / IDer(A; floor(m/k)), which for k > m/2 is a single choice.  The
unpruned search is kept for cross-checking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import PresentedAlgebra
from .artinian import ArtinianModel, NotArtinianError
from .errors import BudgetExceeded, HypothesisError, InputError
from .groebner import Ideal, default_budget
from .hs import HSDerivation, derivation_check
from .integrator import StepContext, linear_extension_space, obstruction_coefficients
from .linalg import reduce_by_echelon, solve_affine, span_basis
from .poly import Polynomial


def _is_prime_power(s: int, p: int) -> bool:
    while s % p == 0:
        s //= p
    return s == 1


# ---------------------------------------------------------------- F_p subspaces


class _Subspace:
    """Row-echelon basis of a subspace of F_p^N."""

    def __init__(self, field, vectors=()):
        self.field = field
        self.basis = span_basis(list(vectors), field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v):
        return reduce_by_echelon(v, self.basis, self.field)

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def add(self, vectors):
        self.basis = span_basis(self.basis + list(vectors), self.field)

    def complement_in(self, vectors) -> list:
        """Vectors among ``vectors`` that extend this space to their joint span."""
        cur = list(self.basis)
        out = []
        for v in vectors:
            r = reduce_by_echelon(v, span_basis(cur, self.field), self.field)
            if any(r):
                out.append(v)
                cur.append(v)
        return out

    def issubset(self, other: _Subspace) -> bool:
        return all(other.contains(v) for v in self.basis)


def _combinations(field, vectors, normalized=False):
    """All F_p-combinations of ``vectors`` (zero first), deterministic order."""
    p = field.characteristic
    n = len(vectors)
    N = len(vectors[0]) if vectors else 0
    for coeffs in itertools.product(range(p), repeat=n):
        if normalized:
            nz = next((c for c in coeffs if c), 0)
            if nz != 1:
                continue
        v = [0] * N
        for c, w in zip(coeffs, vectors):
            if c:
                v = [field.reduce(a + c * b) for a, b in zip(v, w)]
        yield v


# ---------------------------------------------------------------- results


@dataclass
class IntegrabilityResult:
    answer: str
    mode: str
    witness: HSDerivation | None = None
    certificate: dict = field(default_factory=dict)

    def __bool__(self):
        return self.answer == "yes"

    def to_json(self) -> dict:
        out = {"answer": self.answer, "mode": self.mode}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        out["certificate"] = self.certificate
        return out


@dataclass
class LeapReport:
    bound: int
    leaps: list
    certification: str
    witnesses: dict = field(default_factory=dict)
    dimensions: dict = field(default_factory=dict)
    partial: bool = False

    @property
    def all_p_powers(self) -> bool:
        return all(w.get("p_power", True) for w in self.witnesses.values())

    def to_json(self) -> dict:
        return {
            "scanned_bound": self.bound,
            "leaps": self.leaps,
            "certification": self.certification,
            "note": f"integrability is checked up to order {self.bound} only",
            "partial": self.partial,
            "dimensions": {str(k): v for k, v in sorted(self.dimensions.items())},
            "witnesses": {str(k): v for k, v in sorted(self.witnesses.items())},
        }


# ---------------------------------------------------------------- the lab


class LeapLab:
    """Integrability questions on one finite-dimensional algebra over F_p.

    Subspaces IDer(A; s) are cached, so a scan to order B and later
    queries share work.
    """

    def __init__(self, A: PresentedAlgebra | ArtinianModel, budget: int | None = None):
        self.model = A if isinstance(A, ArtinianModel) else ArtinianModel(A)
        self.algebra = self.model.algebra
        if not self.algebra.characteristic:
            raise InputError("exact integrability search needs a prime characteristic")
        self.field = self.algebra.field
        self.budget = default_budget() if budget is None else budget
        self._ider: dict[int, _Subspace] = {}
        self._nonint: dict[int, list] = {}
        self._der = None

    def _spend(self, k=1):
        self.budget -= k
        if self.budget < 0:
            raise BudgetExceeded("integrability search: budget exhausted")

    # -- derivations

    def derivation_basis(self) -> list:
        """Coordinate vectors of an F_p-basis of Der(A)."""
        if self._der is None:
            M = self.model.jacobian_map
            N = self.model.nvars * self.model.dim
            if not M:
                self._der = [[1 if i == k else 0 for i in range(N)] for k in range(N)]
            else:
                _, kernel = solve_affine(M, [0] * len(M), self.field)
                self._der = kernel
            self._der = span_basis(self._der, self.field) if self._der else []
        return self._der

    def der_space(self) -> _Subspace:
        return _Subspace(self.field, self.derivation_basis())

    def vector(self, delta) -> list:
        return self.model.vec_coords(delta)

    def element(self, v) -> list[Polynomial]:
        return self.model.vec_element(v)

    # -- search

    def is_integrable(self, delta, m: int, prune: bool = True) -> IntegrabilityResult:
        """Exact answer: is delta the first component of a length-m HS-derivation?"""
        A = self.algebra
        delta = [A.ring(e) for e in delta]
        if not derivation_check(A, delta):
            raise HypothesisError("not a derivation of A")
        D = HSDerivation(A, [delta])
        stats = {"nodes": 0, "dead_ends": []}
        found = self._dfs(D, m, prune, stats)
        cert = {"orders": m, "pruned": prune, "nodes": stats["nodes"]}
        if found is None:
            cert["exhausted"] = True
            cert["obstructions"] = stats["dead_ends"][:8]
            return IntegrabilityResult("no", "exact-artinian", None, cert)
        found.validate()
        return IntegrabilityResult("yes", "exact-artinian", found, cert)

    def complete(self, partial: HSDerivation, m: int) -> HSDerivation | None:
        """Some length-m HS-derivation extending ``partial``, or None if there is none."""
        if not partial.validate():
            raise HypothesisError("partial table is not an HS-derivation")
        return self._dfs(partial, m, True, {"nodes": 0, "dead_ends": []})

    def _choices(self, space, nu: int, m: int, prune: bool):
        if nu == m:
            return [space.particular_coords]
        kernel = space.kernel_coords
        if prune:
            W = self.integrable_subspace(m // nu)
            reps = W.complement_in(kernel)
        else:
            reps = span_basis(kernel, self.field) if kernel else []
        out = []
        for c in _combinations(self.field, reps):
            out.append([self.field.reduce(a + b) for a, b in zip(space.particular_coords, c)] if reps else space.particular_coords)
        return out

    def _dfs(self, D: HSDerivation, m: int, prune: bool, stats) -> HSDerivation | None:
        nu = D.length + 1
        if nu > m:
            return D
        stats["nodes"] += 1
        self._spend()
        space = linear_extension_space(StepContext(self.algebra, D), self.model)
        if space is None:
            if len(stats["dead_ends"]) < 8:
                F = obstruction_coefficients(self.algebra, self.algebra.generators, D, nu)
                stats["dead_ends"].append(
                    {"order": nu, "prefix": D.to_json(), "obstruction": [str(f) for f in F]}
                )
            return None
        for v in self._choices(space, nu, m, prune):
            res = self._dfs(D.extend(self.element(v)), m, prune, stats)
            if res is not None:
                return res
        return None

    # -- integrable subspaces

    def integrable_subspace(self, s: int) -> _Subspace:
        """IDer(A; s) as an F_p-subspace of coordinate space."""
        if s < 1:
            raise InputError("integrability order must be >= 1")
        if s in self._ider:
            return self._ider[s]
        if s == 1:
            self._ider[1] = self.der_space()
            return self._ider[1]
        prev = self.integrable_subspace(s - 1)
        V = _Subspace(self.field)
        bad: list = []
        while True:
            comp = V.complement_in(prev.basis)
            if not comp:
                break
            grew = False
            for v in _combinations(self.field, comp, normalized=True):
                if any(V.contains([self.field.reduce(a - b) for a, b in zip(v, w)]) for w in bad):
                    continue
                if self.is_integrable(self.element(v), s):
                    V.add(self._module_closure(v))
                    grew = True
                    break
                bad.append(v)
            if not grew:
                break
        self._ider[s] = V
        self._nonint[s] = bad
        return V

    def _module_closure(self, v) -> list:
        """F_p-spanning set of A*v."""
        xi = self.element(v)
        out = []
        for b in self.model.basis_elements():
            out.append(self.vector([b * e for e in xi]))
        return out

    def non_integrable_witness(self, s: int):
        self.integrable_subspace(s)
        bad = self._nonint.get(s, [])
        return bad[0] if bad else None

    # -- census

    def leap_scan(self, B: int) -> LeapReport:
        p = self.algebra.characteristic
        dims = {1: self.integrable_subspace(1).dim}
        leaps, wit = [], {}
        partial = False
        for s in range(2, B + 1):
            try:
                dims[s] = self.integrable_subspace(s).dim
            except BudgetExceeded:
                partial = True
                break
            if dims[s] < dims[s - 1]:
                leaps.append(s)
                v = self.non_integrable_witness(s)
                lower = self.is_integrable(self.element(v), s - 1)
                upper = self.is_integrable(self.element(v), s)
                wit[s] = {
                    "derivation": [str(e) for e in self.element(v)],
                    "integral_to_previous_order": lower.witness.to_json(),
                    "exhaustive_search": upper.certificate,
                    "p_power": _is_prime_power(s, p),
                }
        return LeapReport(B, leaps, "exact", wit, dims, partial)

    # -- bounds

    def power_of_maximal_times_der(self, M: int) -> _Subspace:
        """m^M Der(A) where m = <x_1, ..., x_n>."""
        if not self.model.is_local_at_origin():
            raise HypothesisError("algebra is not local at the origin")
        R = self.algebra.ring
        mons = [R.monomial(e) for e in R.monomials_up_to(M) if sum(e) == M]
        vecs = []
        for v in self.derivation_basis():
            xi = self.element(v)
            for u in mons:
                for w in self._module_closure(self.vector([u * e for e in xi])):
                    vecs.append(w)
        return _Subspace(self.field, vecs)

    def leap_bound(self, M: int) -> int:
        if M < 0:
            raise InputError("M must be >= 0")
        if not self.model.is_local_at_origin():
            raise HypothesisError("algebra is not local at the origin")
        d = len(self.derivation_basis())
        if M == 0:
            return 0
        return d - self.power_of_maximal_times_der(M).dim

    def certified_power(self, B: int, limit: int | None = None) -> int | None:
        """Smallest M with m^M Der ⊆ IDer(A; B), or None."""
        target = self.integrable_subspace(B)
        limit = limit or (self.model.dim + 1)
        for M in range(1, limit + 1):
            if self.power_of_maximal_times_der(M).issubset(target):
                return M
        return None


# ---------------------------------------------------------------- module API


def derivation_basis(A) -> list[list[Polynomial]]:
    lab = A if isinstance(A, LeapLab) else LeapLab(A)
    return [lab.element(v) for v in lab.derivation_basis()]


def is_m_integrable(A: PresentedAlgebra, delta, m: int, mode: str = "exact",
                    degree_bound: int | None = None, prune: bool = True,
                    lab: LeapLab | None = None) -> IntegrabilityResult:
    """yes / no / unknown for delta being m-integrable.

    ``mode="exact"`` needs A finite-dimensional over F_p and returns a
    witness or an exhaustive certificate.  ``mode="degree-bounded"`` works
    for any A and returns yes or unknown, never no.
    """
    if m < 1:
        raise InputError("m must be >= 1")
    if mode in ("exact", "exact-artinian"):
        lab = lab or LeapLab(A)
        return lab.is_integrable(delta, m, prune=prune)
    if mode == "degree-bounded":
        if degree_bound is None:
            raise InputError("degree-bounded mode needs a degree bound")
        return degree_bounded_integral(A, delta, m, degree_bound)
    raise InputError(f"unknown mode {mode!r}")


def degree_bounded_integral(A: PresentedAlgebra, delta, m: int, D: int) -> IntegrabilityResult:
    """Greedy extension with unknowns of total degree <= D, solved over the base field."""
    R = A.ring
    delta = [R(e) for e in delta]
    if not derivation_check(A, delta):
        raise HypothesisError("not a derivation of A")
    mons = R.monomials_up_to(D)
    gens = list(A.generators)
    cols = []
    for j in range(A.nvars):
        for mono in mons:
            b = R.monomial(mono)
            cols.append([A.reduce(f.diff(j) * b) for f in gens])
    H = HSDerivation(A, [delta])
    mode = f"degree-bounded({D})"
    for nu in range(2, m + 1):
        F = obstruction_coefficients(A, gens, H, nu)
        keys = {}
        for col in cols:
            for a, g in enumerate(col):
                for mono in g.terms:
                    keys.setdefault((a, mono), len(keys))
        for a, Fa in enumerate(F):
            for mono in Fa.terms:
                keys.setdefault((a, mono), len(keys))
        mat = [[A.field.zero] * len(cols) for _ in keys]
        rhs = [A.field.zero] * len(keys)
        for c, col in enumerate(cols):
            for a, g in enumerate(col):
                for mono, coef in g.terms.items():
                    mat[keys[(a, mono)]][c] = coef
        for a, Fa in enumerate(F):
            for mono, coef in Fa.terms.items():
                rhs[keys[(a, mono)]] = A.field.reduce(-coef)
        sol = solve_affine(mat, rhs, A.field) if keys else ([A.field.zero] * len(cols), [])
        if sol is None:
            return IntegrabilityResult("unknown", mode, None, {"stuck_at_order": nu, "prefix": H.to_json()})
        part = sol[0]
        row = []
        k = 0
        for j in range(A.nvars):
            acc = R.constant(0)
            for mono in mons:
                if part[k]:
                    acc = acc + R.monomial(mono).scale(part[k])
                k += 1
            row.append(acc)
        H = H.extend(row)
    rep = H.validate()
    if not rep:
        raise HypothesisError("degree-bounded witness failed validation")
    return IntegrabilityResult("yes", mode, H, {"orders": m, "degree_bound": D})


def leap_scan(A: PresentedAlgebra, B: int, mode: str = "exact", degree_bound: int | None = None,
              derivations: Sequence | None = None) -> LeapReport:
    """Leaps s <= B of A.

    Exact mode needs a finite-dimensional algebra over F_p.  Degree-bounded
    mode only certifies integrability of the given ``derivations`` (default:
    the partial derivatives, meaningful for a polynomial ring) and reports no
    leaps when all of them integrate to order B.
    """
    if B < 1:
        raise InputError("scan bound must be >= 1")
    if mode in ("exact", "exact-artinian"):
        return LeapLab(A).leap_scan(B)
    if degree_bound is None:
        raise InputError("degree-bounded scan needs a degree bound")
    R = A.ring
    if derivations is None:
        if A.generators:
            raise InputError("degree-bounded scan of a quotient needs explicit derivation generators")
        derivations = [[R.constant(1) if i == j else R.constant(0) for i in range(A.nvars)] for j in range(A.nvars)]
    wit = {}
    unknown = []
    for k, delta in enumerate(derivations):
        res = degree_bounded_integral(A, delta, B, degree_bound)
        if res.answer == "yes":
            wit[k] = {"derivation": [str(R(e)) for e in delta], "integral": res.witness.to_json()}
        else:
            unknown.append(k)
    rep = LeapReport(B, [], f"degree-bounded({degree_bound})", {}, {}, partial=bool(unknown))
    rep.witnesses = {f"generator_{k}": w for k, w in wit.items()}
    if unknown:
        rep.witnesses["undetermined"] = {"generators": unknown, "p_power": True}
    return rep


def leap_bound(A: PresentedAlgebra, M: int) -> int:
    return LeapLab(A).leap_bound(M)


def min_power_in_ideal(m_gens: Ideal | Sequence, J: Ideal | Sequence, algebra: PresentedAlgebra | None = None,
                       limit: int = 64) -> int:
    """Smallest N >= 1 with m^N ⊆ J (+ I when ``algebra`` is given)."""
    mg = m_gens.gens if isinstance(m_gens, Ideal) else list(m_gens)
    jg = J.gens if isinstance(J, Ideal) else list(J)
    if not mg:
        raise InputError("empty maximal ideal")
    ring = mg[0].ring
    target = algebra.ideal_of(jg) if algebra is not None else Ideal(ring, jg)
    if target.is_zero():
        raise InputError("J must be nonzero")
    layer = list(mg)
    for N in range(1, limit + 1):
        if all(target.contains(g) for g in layer):
            return N
        nxt = {}
        for g in layer:
            for h in mg:
                q = g * h
                nxt.setdefault(q, None)
        layer = list(nxt)
    raise BudgetExceeded(f"no power of the maximal ideal up to {limit} lies in J")


__all__ = [
    "ArtinianModel",
    "IntegrabilityResult",
    "LeapLab",
    "LeapReport",
    "NotArtinianError",
    "degree_bounded_integral",
    "derivation_basis",
    "is_m_integrable",
    "leap_bound",
    "leap_scan",
    "min_power_in_ideal",
]

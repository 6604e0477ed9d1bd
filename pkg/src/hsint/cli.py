"""Command line front end: ``hs <verb> <problem.json> [flags]``.

Exit codes: 0 success, 2 verification failure, 3 budget exhausted,
4 input error.  A report is printed in every case.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .artinian import ArtinianModel
from .errors import HSError, InputError
from .geometry import fitting_ideal, generic_generators, check_jhet
from .hs import derivation_check
from .integrator import integrate_ci, integrate_equidim, integrate_reduced
from .leaps import LeapLab, degree_bounded_integral, leap_scan
from .problem import ProblemSpec, parse_problem

VERBS = ("integrate", "leaps", "fitting", "genericgens", "check-hs", "derivations")


@dataclass
class RunReport:
    verb: str
    inputs: dict
    results: dict = field(default_factory=dict)
    transcript: list = field(default_factory=list)
    status: str = "ok"
    reason: str | None = None
    message: str | None = None
    exit_code: int = 0
    timing: float | None = None

    def to_json(self) -> dict:
        out = {
            "verb": self.verb,
            "status": self.status,
            "exit_code": self.exit_code,
            "inputs": self.inputs,
            "results": self.results,
            "transcript": self.transcript,
        }
        if self.reason:
            out["reason"] = self.reason
            out["message"] = self.message
        if self.timing is not None:
            out["timing_seconds"] = round(self.timing, 3)
        return out

    def render(self, fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2, sort_keys=True)
        lines = [f"verb: {self.verb}", f"status: {self.status} (exit {self.exit_code})"]
        if self.reason:
            lines.append(f"reason: {self.reason}: {self.message}")
        for k, v in sorted(self.results.items()):
            lines.append(f"{k}: {json.dumps(v, sort_keys=True)}")
        for c in self.transcript:
            mark = "PASS" if c.get("pass") else "FAIL"
            lines.append(f"  [{mark}] order {c.get('order')}: {c.get('check')}")
        if self.timing is not None:
            lines.append(f"time: {self.timing:.3f}s")
        return "\n".join(lines)


def _reason(exc: HSError) -> str:
    name = type(exc).__name__
    return "".join("_" + c.lower() if c.isupper() else c for c in name).lstrip("_")


# ---------------------------------------------------------------- verbs


def _integrate(spec: ProblemSpec, args, rep: RunReport):
    A = spec.algebra(args.order)
    delta = spec.derivation_vector(A)
    m = args.max_order or 8
    if args.degree_bound is not None:
        res = degree_bounded_integral(A, delta, m, args.degree_bound)
        rep.results.update(res.to_json())
        if res.answer != "yes":
            rep.status, rep.exit_code, rep.reason = "inconclusive", 2, "degree_bound_too_small"
            rep.message = "no integral found with the given degree bound"
        return
    method = args.method
    if method == "auto":
        if spec.delta is None:
            method = "ci"
        else:
            hts = {P.height for P in spec.prime_witnesses(A)}
            method = "equidim" if len(hts) == 1 else "reduced"
    if method == "ci":
        res = integrate_ci(A, delta, m)
    else:
        if spec.delta is None:
            raise InputError(f"method {method} needs 'delta'")
        primes = spec.prime_witnesses(A)
        if method == "equidim":
            res = integrate_equidim(A, delta, spec.delta, m, primes, log_ideal=spec.log_ideal)
        elif method == "reduced":
            res = integrate_reduced(A, delta, spec.delta, primes, m)
        else:
            raise InputError(f"unknown method {method!r}")
    out = res.to_json()
    rep.transcript = out.pop("transcript")
    rep.results.update(out)


def _leaps(spec: ProblemSpec, args, rep: RunReport):
    A = spec.algebra(args.order)
    B = args.max_order or 8
    if args.degree_bound is not None:
        derivs = None
        if spec.derivation is not None:
            derivs = [spec.derivation_vector(A)]
        report = leap_scan(A, B, mode="degree-bounded", degree_bound=args.degree_bound, derivations=derivs)
    else:
        report = leap_scan(A, B)
    rep.results.update(report.to_json())
    rep.results["all_leaps_are_p_powers"] = report.all_p_powers
    if report.partial:
        rep.status, rep.exit_code, rep.reason = "partial", 3, "budget_exceeded"
        rep.message = "scan stopped early"


def _fitting(spec: ProblemSpec, args, rep: RunReport):
    A = spec.algebra(args.order)
    if args.ell is None:
        raise InputError("fitting needs --ell")
    J = fitting_ideal(A, args.ell)
    rep.results["level"] = args.ell
    rep.results["generators"] = [str(g) for g in J.generators]
    rep.results["minors"] = [{"rows": list(r), "cols": list(c)} for r, c in J.minor_index]


def _genericgens(spec: ProblemSpec, args, rep: RunReport):
    A = spec.algebra(args.order)
    primes = spec.prime_witnesses(A)
    if not primes:
        raise InputError("genericgens needs 'primes'")
    rep.results["jhet"] = check_jhet(A, primes).to_json()
    rep.results.update(generic_generators(A, primes).to_json())


def _check_hs(spec: ProblemSpec, args, rep: RunReport):
    A = spec.algebra(args.order)
    D = spec.hs_derivation(A)
    v = D.validate()
    rep.results["length"] = D.length
    rep.results.update(v.to_json())
    rep.transcript.append({"order": D.length, "check": "valid", "pass": v.valid})
    if spec.log_ideal:
        ok = D.is_logarithmic(spec.log_ideal)
        rep.results["logarithmic"] = ok
        rep.transcript.append({"order": D.length, "check": "logarithmic", "pass": ok})
    if not v.valid:
        rep.status, rep.exit_code, rep.reason = "failed", 2, "not_hs_derivation"
        rep.message = f"generator {v.generator} ({A.generators[v.generator]}) fails at order {v.order}"
    elif spec.log_ideal and not rep.results["logarithmic"]:
        rep.status, rep.exit_code, rep.reason = "failed", 2, "not_logarithmic"
        rep.message = "table is not logarithmic along the given ideal"


def _derivations(spec: ProblemSpec, args, rep: RunReport):
    A = spec.algebra(args.order)
    if spec.derivation is not None:
        ok = derivation_check(A, spec.derivation_vector(A))
        rep.results["is_derivation"] = ok
        rep.transcript.append({"order": 1, "check": "derivation", "pass": ok})
        if not ok:
            rep.status, rep.exit_code, rep.reason = "failed", 2, "not_derivation"
            rep.message = "the given vector is not a derivation of A"
        return
    lab = LeapLab(ArtinianModel(A))
    basis = [lab.element(v) for v in lab.derivation_basis()]
    rep.results["dimension"] = len(basis)
    rep.results["basis"] = [{x: str(e) for x, e in zip(spec.variables, d)} for d in basis]


_DISPATCH = {
    "integrate": _integrate,
    "leaps": _leaps,
    "fitting": _fitting,
    "genericgens": _genericgens,
    "check-hs": _check_hs,
    "derivations": _derivations,
}


def dispatch(verb: str, spec: ProblemSpec, args) -> RunReport:
    rep = RunReport(verb, spec.to_json())
    try:
        _DISPATCH[verb](spec, args, rep)
    except HSError as exc:
        rep.status = "error"
        rep.exit_code = exc.exit_code
        rep.reason = _reason(exc)
        rep.message = str(exc)
    return rep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hs", description="Hasse-Schmidt integrability toolkit")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("file")
    ap.add_argument("--order", choices=("grevlex", "lex"), default=None, help="monomial order")
    ap.add_argument("--max-order", type=int, default=None, help="integration length / scan bound")
    ap.add_argument("--method", choices=("ci", "equidim", "reduced", "auto"), default="auto")
    ap.add_argument("--degree-bound", type=int, default=None)
    ap.add_argument("--ell", type=int, default=None, help="Fitting level for the fitting verb")
    ap.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    fmt = ap.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    ap.set_defaults(fmt="json")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        spec = parse_problem(args.file)
    except HSError as exc:
        rep = RunReport(args.verb, {"file": args.file}, status="error", reason=_reason(exc),
                        message=str(exc), exit_code=exc.exit_code)
    else:
        rep = dispatch(args.verb, spec, args)
    if args.timing:
        rep.timing = time.perf_counter() - start
    print(rep.render(args.fmt))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())

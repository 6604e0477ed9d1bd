"""JSON problem files: one format shared by every CLI verb."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import PresentedAlgebra
from .errors import InputError
from .field import field_for
from .geometry import PrimeWitness
from .hs import HSDerivation
from .poly import MonomialOrder, PolyRing

_KNOWN = {
    "characteristic", "variables", "ideal", "derivation", "primes", "order",
    "assertions", "delta", "hs", "log_ideal", "comment",
}


@dataclass
class ProblemSpec:
    characteristic: int
    variables: list
    ideal: list
    derivation: dict | None = None
    primes: list = field(default_factory=list)
    order: str = "grevlex"
    assertions: dict = field(default_factory=dict)
    delta: str | None = None
    hs: list | None = None
    log_ideal: list | None = None

    def ring(self, order: str | None = None) -> PolyRing:
        return PolyRing(self.variables, self.characteristic, order or self.order)

    def algebra(self, order: str | None = None) -> PresentedAlgebra:
        R = self.ring(order)
        return PresentedAlgebra(R, [R.parse(s) for s in self.ideal])

    def derivation_vector(self, A: PresentedAlgebra) -> list:
        if self.derivation is None:
            raise InputError("problem has no 'derivation'")
        return [A.ring.parse(str(self.derivation.get(v, "0"))) for v in self.variables]

    def prime_witnesses(self, A: PresentedAlgebra, purpose: str | None = None) -> list[PrimeWitness]:
        out = []
        for entry in self.primes:
            if purpose and entry.get("purpose", "minimal") != purpose:
                continue
            gens = [A.ring.parse(s) for s in entry["generators"]]
            out.append(PrimeWitness(A.ring, gens, entry.get("height"), containing=A,
                                    purpose=entry.get("purpose", "minimal")))
        return out

    def hs_derivation(self, A: PresentedAlgebra) -> HSDerivation:
        if not self.hs:
            raise InputError("problem has no 'hs' table")
        return HSDerivation.from_json(A, self.hs)

    def to_json(self) -> dict:
        out = {
            "characteristic": self.characteristic,
            "variables": list(self.variables),
            "ideal": list(self.ideal),
            "order": self.order,
        }
        for key in ("derivation", "delta", "hs", "log_ideal"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        if self.primes:
            out["primes"] = self.primes
        if self.assertions:
            out["assertions"] = self.assertions
        return out

    def canonical(self) -> ProblemSpec:
        """Same problem with every polynomial string in printed normal syntax."""
        R = self.ring()
        fmt = lambda s: str(R.parse(str(s)))
        return ProblemSpec(
            self.characteristic,
            list(self.variables),
            [fmt(s) for s in self.ideal],
            None if self.derivation is None else {v: fmt(self.derivation.get(v, "0")) for v in self.variables},
            [dict(p, generators=[fmt(g) for g in p["generators"]]) for p in self.primes],
            self.order,
            dict(self.assertions),
            None if self.delta is None else fmt(self.delta),
            None if self.hs is None else [{v: fmt(row.get(v, "0")) for v in self.variables} for row in self.hs],
            None if self.log_ideal is None else [fmt(g) for g in self.log_ideal],
        )


def _need(data, key, kind):
    if key not in data:
        raise InputError(f"missing field '{key}'")
    if not isinstance(data[key], kind):
        raise InputError(f"field '{key}' has the wrong type")
    return data[key]


def parse_problem(source) -> ProblemSpec:
    """Parse a problem from a path, a JSON string or an already-decoded dict."""
    if isinstance(source, dict):
        data = source
    else:
        text = source
        if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
            try:
                text = Path(source).read_text()
            except OSError as exc:
                raise InputError(f"cannot read problem file: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("problem must be a JSON object")
    unknown = set(data) - _KNOWN
    if unknown:
        raise InputError(f"unknown field(s) {sorted(unknown)}")
    char = _need(data, "characteristic", int)
    field_for(char)
    variables = _need(data, "variables", list)
    ideal = data.get("ideal", [])
    if not isinstance(ideal, list):
        raise InputError("field 'ideal' must be a list")
    order = data.get("order", "grevlex")
    MonomialOrder.parse(order)
    spec = ProblemSpec(
        char, [str(v) for v in variables], [str(s) for s in ideal],
        data.get("derivation"), list(data.get("primes", [])), order,
        dict(data.get("assertions", {})), data.get("delta"), data.get("hs"), data.get("log_ideal"),
    )
    # parse everything once so errors surface here
    R = spec.ring()
    for s in spec.ideal:
        R.parse(s)
    if spec.derivation is not None:
        if not isinstance(spec.derivation, dict):
            raise InputError("'derivation' maps variable names to polynomials")
        extra = set(spec.derivation) - set(spec.variables)
        if extra:
            raise InputError(f"derivation mentions undeclared variable(s) {sorted(extra)}")
        for v in spec.derivation.values():
            R.parse(str(v))
    for p in spec.primes:
        if not isinstance(p, dict) or "generators" not in p:
            raise InputError("each prime needs a 'generators' list")
        for g in p["generators"]:
            R.parse(str(g))
    if spec.delta is not None:
        R.parse(str(spec.delta))
    for g in spec.log_ideal or []:
        R.parse(str(g))
    if spec.hs is not None:
        for row in spec.hs:
            if not isinstance(row, dict):
                raise InputError("'hs' rows map variable names to polynomials")
            extra = set(row) - set(spec.variables)
            if extra:
                raise InputError(f"hs row mentions undeclared variable(s) {sorted(extra)}")
            for v in row.values():
                R.parse(str(v))
    return spec


def dump_problem(spec: ProblemSpec) -> str:
    return json.dumps(spec.to_json(), indent=2, sort_keys=True) + "\n"

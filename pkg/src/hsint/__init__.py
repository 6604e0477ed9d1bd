"""Hasse-Schmidt derivations and integrability over finitely presented algebras."""

from .algebra import PresentedAlgebra, TruncatedSeries, truncated_substitution
from .errors import BudgetExceeded, HSError, HypothesisError, InputError, RingMismatch, VerificationError
from .field import GF, QQ, PrimeField, field_for
from .geometry import (
    PrimeWitness,
    check_jhet,
    fitting_ideal,
    generic_generators,
    height,
    jacobian,
    rank_at_prime,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    ideal_intersection,
    ideal_membership,
    ideal_quotient,
    krull_dimension,
    normal_form,
)
from .hs import HSDerivation, compose, derivation_check, inverse, is_logarithmic, truncate, validate
from .integrator import (
    StepContext,
    cofactor_solve,
    integrate_ci,
    integrate_equidim,
    integrate_reduced,
    linear_extension_space,
    obstruction,
)
from .leaps import (
    ArtinianModel,
    LeapLab,
    derivation_basis,
    is_m_integrable,
    leap_bound,
    leap_scan,
    min_power_in_ideal,
)
from .poly import MonomialOrder, Polynomial, PolyRing
from .problem import ProblemSpec, parse_problem

__version__ = "0.1.0"

__all__ = [
    "ArtinianModel",
    "BudgetExceeded",
    "GF",
    "GroebnerBasis",
    "HSDerivation",
    "HSError",
    "HypothesisError",
    "Ideal",
    "InputError",
    "LeapLab",
    "MonomialOrder",
    "PolyRing",
    "Polynomial",
    "PresentedAlgebra",
    "PrimeField",
    "PrimeWitness",
    "ProblemSpec",
    "QQ",
    "RingMismatch",
    "StepContext",
    "TruncatedSeries",
    "VerificationError",
    "buchberger",
    "check_jhet",
    "cofactor_solve",
    "compose",
    "derivation_basis",
    "derivation_check",
    "field_for",
    "fitting_ideal",
    "generic_generators",
    "height",
    "ideal_intersection",
    "ideal_membership",
    "ideal_quotient",
    "integrate_ci",
    "integrate_equidim",
    "integrate_reduced",
    "inverse",
    "is_logarithmic",
    "is_m_integrable",
    "jacobian",
    "krull_dimension",
    "leap_bound",
    "leap_scan",
    "linear_extension_space",
    "min_power_in_ideal",
    "normal_form",
    "obstruction",
    "parse_problem",
    "rank_at_prime",
    "truncate",
    "truncated_substitution",
    "validate",
]

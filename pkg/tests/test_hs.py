import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_hs
from hsint.algebra import PresentedAlgebra, TruncatedSeries, truncated_substitution
from hsint.errors import InputError, VerificationError
from hsint.groebner import ideal_intersection
from hsint.hs import HSDerivation, derivation_check
from hsint.poly import PolyRing

F2x = PresentedAlgebra(PolyRing(["x"], 2), [])
DUAL = PresentedAlgebra.from_strings(["x"], 2, ["x^2"])
CUSP = PresentedAlgebra.from_strings(["x", "y"], 2, ["y^2 - x^3"])

ALGEBRAS = [
    PresentedAlgebra.from_strings(["x", "y"], 3, []),
    PresentedAlgebra.from_strings(["x"], 2, ["x^4"]),
    PresentedAlgebra.from_strings(["x"], 3, ["x^3"]),
    PresentedAlgebra.from_strings(["x", "y"], 2, ["x^2", "y^2"]),
    PresentedAlgebra.from_strings(["x", "y"], 2, ["x^2", "x*y", "y^2"]),
    PresentedAlgebra.from_strings(["x", "y"], 3, ["x^3", "y^2"]),
]


def test_truncated_substitution_examples():
    for p, expected in ((0, ["x^2", "2*x", "1"]), (2, ["x^2", "0", "1"])):
        A = PresentedAlgebra.from_strings(["x"], p, [])
        x = A.ring.gen(0)
        img = TruncatedSeries(A, [x, A.ring(1), A.ring(0)])
        s = truncated_substitution(A.ring("x^2"), [img], 2)
        assert [str(c) for c in s.coeffs] == expected
        assert truncated_substitution(x, [img], 2) == img


def test_validate_examples():
    assert HSDerivation(F2x, [["1"]] + [["0"]] * 5).validate()
    rep = HSDerivation(DUAL, [["1"], ["0"]]).validate()
    assert not rep and rep.order == 2 and rep.generator == 0
    assert HSDerivation(DUAL, [["x"]] * 1 + [["0"]] * 6).validate()
    with pytest.raises(VerificationError):
        HSDerivation(DUAL, [["1"], ["0"]], validate=True)


def test_compose_examples():
    A = PresentedAlgebra.from_strings(["x"], 0, [])
    D = HSDerivation(A, [["x^2"], ["x"]])
    E = HSDerivation(A, [["x + 1"], ["3*x^3"]])
    DE = D.compose(E)
    # (D o E)_2(x) = E_2 + D_1(E_1) + D_2 = 3x^3 + x^2 + x
    assert DE.xi[0][0] == A.ring("x^2 + x + 1")
    assert DE.xi[1][0] == A.ring("3*x^3 + x^2 + x")
    assert D.compose(HSDerivation.identity(A, 2)) == D
    assert D.compose(D.inverse()).is_identity()


def test_inverse_examples():
    A = PresentedAlgebra.from_strings(["x"], 5, [])
    I = HSDerivation.identity(A, 3)
    assert I.inverse() == I
    D = HSDerivation(A, [["1"], ["0"], ["0"]])
    assert D.inverse() == HSDerivation(A, [["-1"], ["0"], ["0"]])


def test_truncate_examples():
    D = HSDerivation(DUAL, [["x"], ["0"], ["x"]])
    assert D.truncate(1).xi == D.xi[:1]
    assert D.truncate(3) == D
    with pytest.raises(InputError):
        D.truncate(0)


def test_logarithmic_examples():
    A = PresentedAlgebra.from_strings(["x", "y"], 2, [])
    D = HSDerivation(A, [["x", "0"], ["0", "0"]])
    assert D.is_logarithmic([])
    assert D.is_logarithmic(["1"])
    assert D.is_logarithmic(["x"])
    assert not HSDerivation(A, [["1", "0"]]).is_logarithmic(["x"])


def test_derivation_check_examples():
    assert derivation_check(CUSP, ["0", "0"])
    assert derivation_check(CUSP, ["0", "x*y + 1"])
    assert not derivation_check(CUSP, ["1", "0"])


def test_logarithmic_intersection():
    A = PresentedAlgebra.from_strings(["x", "y"], 3, [])
    D = HSDerivation(A, [["x", "y^2"], ["x*y", "y"], ["0", "y^3"]])
    J1, J2 = A.ideal_of(["x"]), A.ideal_of(["y"])
    assert D.is_logarithmic(J1) and D.is_logarithmic(J2)
    assert D.is_logarithmic(ideal_intersection(J1, J2))


def test_valid_derivations_are_logarithmic_along_minimal_primes():
    from hsint.leaps import degree_bounded_integral
    from conftest import random_poly

    A = PresentedAlgebra.from_strings(["x", "y"], 3, ["x*y"])
    rng = random.Random(3)
    checked = 0
    for _ in range(12):
        a, b = random_poly(rng, A.ring, 2, 2), random_poly(rng, A.ring, 2, 2)
        delta = [A.ring("x") * a, A.ring("y") * b]
        res = degree_bounded_integral(A, delta, 3, 4)
        if res.answer != "yes":
            continue
        D = res.witness
        assert D.validate()
        assert D.is_logarithmic(["x"]) and D.is_logarithmic(["y"])
        checked += 1
    assert checked >= 5


def _triples(seed):
    rng = random.Random(seed)
    A = ALGEBRAS[seed % len(ALGEBRAS)]
    m = rng.randint(1, 4)
    return A, [random_hs(rng, A, m) for _ in range(3)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_group_laws(seed):
    A, (D, E, G) = _triples(seed)
    assert D.validate() and E.validate() and G.validate()
    m = D.length
    Id = HSDerivation.identity(A, m)
    assert D.compose(E).validate()
    assert D.compose(E).compose(G) == D.compose(E.compose(G))
    assert D.compose(Id) == D and Id.compose(D) == D
    inv = D.inverse()
    assert D.compose(inv).is_identity() and inv.compose(D).is_identity()
    for n in range(1, m + 1):
        assert D.compose(E).truncate(n) == D.truncate(n).compose(E.truncate(n))

import itertools
import random

import pytest

from hsint.algebra import PresentedAlgebra
from hsint.errors import HypothesisError, InputError
from hsint.hs import HSDerivation
from hsint.leaps import (
    LeapLab,
    degree_bounded_integral,
    derivation_basis,
    is_m_integrable,
    leap_bound,
    leap_scan,
    min_power_in_ideal,
)
from hsint.artinian import ArtinianModel, NotArtinianError
from hsint.poly import PolyRing


def alg(p, vars_, gens):
    return PresentedAlgebra.from_strings(vars_, p, gens)


DUAL = alg(2, ["x"], ["x^2"])


def test_staircase():
    M = ArtinianModel(alg(2, ["x", "y"], ["x^2", "x*y", "y^3"]))
    assert sorted(M.staircase) == [(0, 0), (0, 1), (0, 2), (1, 0)]
    with pytest.raises(NotArtinianError):
        ArtinianModel(alg(2, ["x", "y"], ["x^2"]))


def test_derivation_basis_examples():
    assert [str(d[0]) for d in derivation_basis(DUAL)] == ["1", "x"]
    assert derivation_basis(alg(2, ["x"], ["x"])) == []
    assert len(derivation_basis(alg(3, ["x"], ["x^3"]))) == 3
    # F_3[x]/<x^2>: 2x xi = 0 forces xi in <x>
    assert [str(d[0]) for d in derivation_basis(alg(3, ["x"], ["x^2"]))] == ["x"]


def test_is_m_integrable_examples():
    assert is_m_integrable(DUAL, ["1"], 1).answer == "yes"
    res = is_m_integrable(DUAL, ["1"], 2)
    assert res.answer == "no"
    assert res.certificate["exhausted"]
    assert res.certificate["obstructions"][0]["obstruction"] == ["1"]
    res = is_m_integrable(DUAL, ["x"], 8)
    assert res.answer == "yes"
    assert res.witness.length == 8 and res.witness.validate()
    with pytest.raises(HypothesisError):
        is_m_integrable(alg(3, ["x"], ["x^2"]), ["1"], 2)
    with pytest.raises(InputError):
        is_m_integrable(DUAL, ["x"], 2, mode="bogus")


def test_degree_bounded_never_says_no():
    A = alg(2, ["x", "y"], ["y^2 + x^3"])
    assert degree_bounded_integral(A, ["0", "x^2"], 6, 4).answer == "yes"
    res = is_m_integrable(DUAL, ["1"], 2, mode="degree-bounded", degree_bound=3)
    assert res.answer == "unknown"


@pytest.mark.parametrize("p,gen,B,expected", [
    (2, "x^2", 8, [2]),
    (2, "x^4", 8, [4]),
    (3, "x^3", 9, [3]),
])
def test_leap_examples(p, gen, B, expected):
    rep = leap_scan(alg(p, ["x"], [gen]), B)
    assert rep.leaps == expected
    assert rep.certification == "exact"
    for s in rep.leaps:
        assert rep.witnesses[s]["p_power"]


def test_smooth_ring_has_no_leaps():
    A = alg(2, ["x"], [])
    rep = leap_scan(A, 8, mode="degree-bounded", degree_bound=1)
    assert rep.leaps == [] and not rep.partial
    assert rep.certification == "degree-bounded(1)"


def test_leap_bound_examples():
    assert leap_bound(DUAL, 1) == 1
    assert leap_bound(alg(2, ["x"], ["x^4"]), 1) == 1
    assert leap_bound(alg(2, ["x"], ["x"]), 3) == 0
    with pytest.raises(HypothesisError):
        leap_bound(alg(3, ["x"], ["x^2 - x"]), 1)


def test_min_power_examples():
    R = PolyRing(["x", "y"], 2)
    x, y = R.gens
    assert min_power_in_ideal([x], [x**2]) == 2
    assert min_power_in_ideal([x, y], [x, y]) == 1
    assert min_power_in_ideal([x, y], [x**2, x * y, y**2]) == 2


def test_pruned_search_agrees_with_full_search():
    for A in (alg(2, ["x"], ["x^4"]), alg(2, ["x", "y"], ["x^2", "y^2"]), alg(3, ["x"], ["x^3"])):
        lab = LeapLab(A)
        for v in lab.derivation_basis():
            delta = lab.element(v)
            for m in range(1, 5):
                a = lab.is_integrable(delta, m, prune=True).answer
                b = lab.is_integrable(delta, m, prune=False).answer
                assert a == b


def test_monotonicity():
    rng = random.Random(2)
    A = alg(2, ["x", "y"], ["x^2", "y^2"])
    lab = LeapLab(A)
    basis = lab.derivation_basis()
    for _ in range(6):
        v = [0] * len(basis[0])
        for w in basis:
            c = rng.randrange(2)
            v = [(a + c * b) % 2 for a, b in zip(v, w)]
        delta = lab.element(v)
        res = lab.is_integrable(delta, 4)
        if res:
            for k in range(1, 4):
                assert res.witness.truncate(k).validate()
                assert lab.is_integrable(delta, k).answer == "yes"


def _all_tables_oracle(m):
    """delta -> is some table on F_2[x]/<x^2> with first row delta valid to length m."""
    A = DUAL
    elems = ["0", "1", "x", "x + 1"]
    ok = {}
    for first in elems:
        found = False
        for rest in itertools.product(elems, repeat=m - 1):
            D = HSDerivation(A, [[first]] + [[e] for e in rest])
            if D.validate():
                found = True
                break
        ok[first] = found
    return ok


def test_small_oracle_agreement():
    for m in (1, 2, 3):
        for d, expected in _all_tables_oracle(m).items():
            assert (is_m_integrable(DUAL, [d], m).answer == "yes") == expected


def test_leap_report_json():
    rep = leap_scan(DUAL, 4)
    js = rep.to_json()
    assert js["leaps"] == [2]
    assert js["witnesses"]["2"]["derivation"] == ["1"]
    assert js["dimensions"] == {"1": 2, "2": 1, "3": 1, "4": 1}

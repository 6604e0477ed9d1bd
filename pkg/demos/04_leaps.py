"""
Leaps of small local algebras
=============================

IDer(A; s) is the space of derivations that are first components of
length-s HS-derivations.  The chain Der = IDer(A;1) ⊇ IDer(A;2) ⊇ ... drops
at the leaps.  For finite-dimensional A over F_p everything is finite, so
the search is exact.
"""

from hsint import LeapLab, PresentedAlgebra, is_m_integrable

A = PresentedAlgebra.from_strings(["x"], 2, ["x^2"])
print(is_m_integrable(A, ["1"], 2).to_json())   # d/dx does not lift to order 2
print(is_m_integrable(A, ["x"], 8).answer)      # x d/dx does

for p, gen, B in [(2, "x^2", 8), (2, "x^4", 8), (3, "x^3", 9), (2, "x^8", 16)]:
    lab = LeapLab(PresentedAlgebra.from_strings(["x"], p, [gen]))
    rep = lab.leap_scan(B)
    dims = [rep.dimensions[s] for s in sorted(rep.dimensions)]
    print(f"F_{p}[x]/({gen}): leaps {rep.leaps}  dim IDer(A;s) = {dims}")

# two variables, and the bound from m^M Der
lab = LeapLab(PresentedAlgebra.from_strings(["x", "y"], 2, ["x^4", "y^2"]))
rep = lab.leap_scan(8)
M = lab.certified_power(8)
print("F_2[x,y]/(x^4, y^2): leaps", rep.leaps, " M =", M, " bound =", lab.leap_bound(M))

"""
A reduced, non-equidimensional example
======================================

I = (xz, yz) is the z-axis together with the plane z = 0.  Its two
components have heights 2 and 1.  Multiplying a logarithmic derivation by
a Jacobian minor that vanishes on the plane gives an integrable one.
"""

from hsint import PresentedAlgebra, PrimeWitness, check_jhet, generic_generators, integrate_reduced

A = PresentedAlgebra.from_strings(["x", "y", "z"], 5, ["x*z", "y*z"])
R = A.ring
primes = [PrimeWitness(R, ["x", "y"]), PrimeWitness(R, ["z"])]

print(check_jhet(A, primes).to_json())
gg = generic_generators(A, primes)
print("generic generators:", [str(g) for g in gg.F], gg.ranks)

# the Euler derivation x d/dx + y d/dy + z d/dz preserves I; Delta = z^2
res = integrate_reduced(A, ["x", "y", "z"], "z^2", primes, 6)
print("components avoiding Delta:", res.details["components_avoiding_Delta"])
print(res.derivation.to_json()[:2])
print("logarithmic along I at every order:", res.ok)

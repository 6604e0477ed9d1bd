"""
Integrating a derivation on the cusp in characteristic 2
========================================================

On A = F_2[x,y]/(y^2 + x^3) the Jacobian ideal is J_1 = (x^2).  The
derivation x^2 d/dy takes values in J_1, so it extends to HS-derivations
of every length, with every coefficient again a multiple of x^2.
"""

from hsint import PresentedAlgebra, PrimeWitness, fitting_ideal, integrate_ci, integrate_equidim

A = PresentedAlgebra.from_strings(["x", "y"], 2, ["y^2 + x^3"])
print("J_1 =", [str(g) for g in fitting_ideal(A, 1).generators])

res = integrate_ci(A, ["0", "x^2"], 16)
for mu, row in enumerate(res.derivation.to_json(), start=1):
    if any(v != "0" for v in row.values()):
        print(f"  order {mu:2d}: {row}")
print("every check passed:", res.ok, f"({len(res.transcript)} checks)")

# same statement through the non-zerodivisor route: Delta = x^2 times d/dy
P = PrimeWitness(A.ring, A.generators)
res2 = integrate_equidim(A, ["0", "1"], "x^2", 16, [P])
print("equidimensional route valid:", res2.derivation.validate().valid)

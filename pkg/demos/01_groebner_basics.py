"""
Groebner bases and ideal operations
===================================

Everything else sits on top of these: normal forms decide equality in
A = R/I, and intersections and quotients feed the geometric checks.
"""

from hsint import Ideal, PolyRing, buchberger, ideal_intersection, ideal_quotient, krull_dimension, normal_form

R = PolyRing(["x", "y", "z"], 0)
x, y, z = R.gens

# the ideal of the cusp, and its basis under lex
G = buchberger([y**2 - x**3, x * y], "lex", ring=R)
print("lex basis:", [str(g) for g in G])

# division with a certificate: f = sum q_i g_i + r
f = x**4 * y + y**3
cert = normal_form(f, G)
print("remainder:", cert.remainder, " certificate holds:", cert.check(f, list(G)))

# plane union line: <x, y> and <z> meet in <xz, yz>
I = ideal_intersection(Ideal(R, [x, y]), Ideal(R, [z]))
print("intersection:", I)
print("(I : z) =", ideal_quotient(I, z))   # back to <x, y>
print("dim R/I =", krull_dimension(I))     # the plane z = 0 has dimension 2

"""
Hasse-Schmidt derivations as tables
===================================

A length-m HS-derivation is stored by where it sends each variable:
x -> x + xi_1 t + ... + xi_m t^m.  It is valid when every generator of I
still vanishes after the substitution.
"""

from hsint import HSDerivation, PresentedAlgebra

A = PresentedAlgebra.from_strings(["x"], 2, ["x^2"])   # dual numbers over F_2

D = HSDerivation(A, [["1"], ["0"]])   # x -> x + t
print(D.validate())                  # (x + t)^2 = t^2 is not zero: fails at order 2

E = HSDerivation(A, [["x"], ["0"], ["0"]])   # x -> x(1 + t)
print(E.validate())

# the table set is a group under composition
E2 = E.compose(E)
print("E o E:", E2.to_json())
print("E o E^-1 is the identity:", E.compose(E.inverse()).is_identity())

# a free algebra: any table is valid, and we can watch the group law
B = PresentedAlgebra.from_strings(["x"], 0, [])
P = HSDerivation(B, [["x^2"], ["x"]])
Q = HSDerivation(B, [["1"], ["0"]])
print("P o Q:", P.compose(Q).to_json())
print("truncation commutes with composition:",
      P.compose(Q).truncate(1) == P.truncate(1).compose(Q.truncate(1)))

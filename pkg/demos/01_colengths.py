"""Colengths of monomial ideals and their Hilbert-Samuel multiplicities."""
from brim import colength, hs_multiplicity, parse_ideal_string
from brim.ideals import standard_monomials

I = parse_ideal_string("x^2, x*y, y^3", 2)
print("I =", I)
print("standard monomials:", standard_monomials(I))
print("colength:", colength(I))

# the colength of I^p grows like e(I) p^2 / 2
for p in range(1, 7):
    print(f"  colength(I^{p}) = {colength(I**p)}")
print("e(I) =", hs_multiplicity(I))

for a, b in [(1, 1), (2, 3), (4, 1)]:
    J = parse_ideal_string(f"x^{a}, y^{b}", 2)
    print(f"e({J}) = {hs_multiplicity(J)}")

"""The one- and two-variable Buchsbaum-Rim functions of R/m^2 + R/m."""
from brim import ModuleSpec, br_function, br_function2, parse_ideal_string

m = parse_ideal_string("x, y", 2)
C = ModuleSpec.of(m**2, m)
print("C =", C)

print("\n p  lambda(p)")
for p in range(7):
    print(f"{p:2d}  {br_function(C, p)}")

# Lambda(p, 0) is lambda(p); Lambda(0, q) vanishes
print("\nLambda(p, q), rows p = 0..4, columns q = 0..11")
for p in range(5):
    print(f"{p:2d} " + " ".join(f"{br_function2(C, p, q):5d}" for q in range(12)))

"""Probing the two open questions on four summands in two variables.

Nothing here is asserted; the printout is the evidence.
"""
from brim import ModuleSpec, parse_ideal_string, random_module
from brim import lab

m = parse_ideal_string("x, y", 2)
cases = [ModuleSpec(2, (m,) * 4), random_module(2, 4, 2, 1, 5)]

for C in cases:
    print(C)
    print("  e^j:", lab.associated_multiplicities(C).values)
    print("  E sums:", [lab.l_multiplicity_sum(C, i) for i in range(1, C.r + 1)])
    for k in range(1, C.r):
        rep = lab.probe_residual_degree(C, k)
        print(f"  residual k={k}: q-degree {rep.lhs}, bound {rep.rhs}")
    for j in range(1, C.r):
        rep = lab.probe_conjectural_formula(C, j)
        print(f"  formula  j={j}: e^{C.r - j} = {rep.lhs}, formula gives {rep.rhs}")

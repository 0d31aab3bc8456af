"""Associated multiplicities and the identities they satisfy, on a few modules."""
from brim import ModuleSpec, associated_multiplicities, br_multiplicity, mixed_multiplicities, parse_ideal_string
from brim import lab

m = parse_ideal_string("x, y", 2)
examples = [
    ModuleSpec.of(m**2, m),
    ModuleSpec.of(m, m, m),
    ModuleSpec.of(parse_ideal_string("x^2, y", 2), parse_ideal_string("x, y^2", 2), m**2),
]

for C in examples:
    vec = associated_multiplicities(C)
    print(C)
    print("  e^j:", vec.values)
    print("  e(C) from lambda:", br_multiplicity(C), " sum of mixed:", mixed_multiplicities(C.ideals).total())
    for rep in (lab.verify_main_theorem(C), lab.verify_last_multiplicity(C), lab.verify_kirby_rees_sum(C)):
        print(f"  {rep.identity:10s} lhs={rep.lhs} rhs={rep.rhs} {'ok' if rep.passed else 'FAILED'}")

chain = ModuleSpec.of(m**3, m**2, m)
for j in range(3):
    rep = lab.verify_nested_chain(chain, j)
    print(f"nested j={j}: e^{j} = {rep.lhs}, expected {rep.rhs}")

"""Splitting H_{p,q} into cells and comparing direct sums with closed forms."""
import itertools

from brim import RegionSpec, br_function2, br_function2_region, random_module
from brim.engine import all_D_regions, delta_sum_closed, next_stratum_closed, top_stratum_closed

C = random_module(2, 3, 3, 1, 4)
print("C =", C)
p, q = 3, 14

cells = all_D_regions(C.r, p, q)
total = 0
for reg in cells:
    v = br_function2_region(C, reg)
    total += v
    print(f"  k={reg.k} A={sorted(reg.A)}  {v}")
print("sum over cells:", total, " Lambda:", br_function2(C, p, q))

for k in range(1, C.r + 1):
    direct = br_function2_region(C, RegionSpec("Delta", p, q, k))
    print(f"Delta^({k}): direct {direct}, closed form {delta_sum_closed(C, p, q, k)}")

print("top stratum:", br_function2_region(C, RegionSpec("H_k", p, q, 3)), top_stratum_closed(C, p, q))
print("next stratum:", br_function2_region(C, RegionSpec("H_k", p, q, 2)), next_stratum_closed(C, p, q))

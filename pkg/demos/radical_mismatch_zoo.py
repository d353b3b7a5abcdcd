#!/usr/bin/env python3
"""Additive versus adjoint groups of small commutative radical rings.

For odd p, every enumerated class with Prüfer rank < p - 1 has isomorphic
additive group (N, +) and adjoint group (N, o) with x o y = x + y + xy.
At p = 2 that rank condition is vacuous, and genuine mismatches appear:
the smallest is 2Z/8Z, whose additive group is Z/4 while 1 + 2Z/8Z inside
Z/8Z is {1, 3, 5, 7} = (Z/2)^2.
"""

from fuchs import RadicalRing, check_byott, check_small_theorem

print("the canonical mismatch, by hand:")
two_z8 = RadicalRing(2, (2,), ((2,),))  # generator x of order 4, x^2 = 2x
print(f"  2Z/8Z additive: {two_z8.additive_group()}")
print(f"  2Z/8Z adjoint:  {two_z8.adjoint_group()}")

for p, k in [(3, 2), (5, 2), (3, 3), (5, 3), (2, 2), (2, 3), (2, 4)]:
    report = check_small_theorem(p, k)
    small = sum(1 for e in report.entries if e["small"])
    print(f"\norder {p}^{k}: {len(report.entries)} classes, "
          f"{small} with rank < p-1, "
          f"{len(report.mismatches)} additive/adjoint mismatches, "
          f"{len(report.violations)} theorem violations")
    for e in report.mismatches[:4]:
        print(f"  {e['additive']}  vs  {e['adjoint']}")

print("\ncyclicity transfer on 2-power radical rings (orders 8 and 16):")
from fuchs import enumerate_radical_rings
for k in (3, 4):
    holds = all(check_byott(N) for N in enumerate_radical_rings(2, k))
    print(f"  order 2^{k}: cyclic adjoint forces cyclic additive: {holds}")

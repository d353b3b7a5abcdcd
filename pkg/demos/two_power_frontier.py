#!/usr/bin/env python3
"""Which groups Z/4 x Z/2^u are unit groups?

TN rings stop at u = 3.  Beyond that the only escape is a finite factor
F_p with p = 2^u + 1 prime, so the realisable exponents are exactly
u <= 3 together with the Fermat-prime exponents 4, 8, 16 (no others are
known, and none exist up to the search bound here).
"""

from fuchs import FgAbGroup, FinAbGroup, decide_any, decide_tn, is_fermat_prime

print(f"{'u':>3} {'group':<18}{'TN rings':<18}{'all rings':<18}{'2^u + 1'}")
for u in range(0, 21):
    orders = [4] if u == 0 else [4, 2 ** u]
    G = FgAbGroup(FinAbGroup.from_orders(orders), 0)
    tn = decide_tn(G)
    anyv = decide_any(G)
    q = 2 ** u + 1
    note = f"{q} prime" if is_fermat_prime(q) else f"{q}"
    print(f"{u:>3} {str(G):<18}{tn.kind:<18}{anyv.kind:<18}{note}")

print("\nwitnesses on the frontier:")
v = decide_any(FgAbGroup(FinAbGroup.from_orders([4, 16]), 0))
print(f"  u=4: {v.certificate}")
v = decide_any(FgAbGroup(FinAbGroup.from_orders([4, 8]), 0))
print(f"  u=3: {v.certificate}")

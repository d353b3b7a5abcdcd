#!/usr/bin/env python3
"""The story of Z/328Z: a cyclic group that is not a unit group on its own
but becomes one after adjoining a single free unit.

328 = 8 * 41.  No finite ring works: 328 has no decomposition into pairwise
coprime factors of the admissible shapes p^lam - 1 and (p-1)p^k.  A
torsion-free ring needs 79 free units.  A TN ring needs exactly one.
"""

from fuchs import (FinAbGroup, build_construction_model, decide_any,
                   decide_finite, decide_tn, g_value, ge_classify,
                   parse_group, pearson_schneider_covers, r_value,
                   sequence_splits, torsion_units, verdict_to_json)

T = FinAbGroup.from_orders([328])
print(f"torsion part: {T} of order {T.order()}")

print("\n-- finite rings --")
covers = pearson_schneider_covers(328)
print(f"admissible coprime covers of 328: {covers!r}")
print(f"verdict: {decide_finite(T).kind}")

print("\n-- torsion-free rings need g(T) free units --")
print(f"g(Z/328Z) = {g_value(T)}")

print("\n-- TN rings need only r(T) --")
ge = ge_classify(T)
need, case = r_value(ge)
print(f"epsilon = {ge.eps}, 41 = 1 mod 8 so the odd part is 'good'")
print(f"r(Z/328Z) = {need} (case {case}) = g(Z/8Z) = {g_value(FinAbGroup.from_orders([8]))}")

for r in (0, 1, 2):
    v = decide_tn(parse_group(f"Z/328Z x Z^{r}"))
    print(f"Z/328Z x Z^{r} over TN rings: {v.kind}")

print("\n-- and over all rings with identity --")
v = decide_any(parse_group("Z/328Z x Z"))
print(verdict_to_json(v))

print("\n-- an explicit witness at the minimum rank --")
model = build_construction_model(8, FinAbGroup.from_orders([41]))
print(f"torsion units of the conductor-8 witness: {torsion_units(model)}")
print(f"its unit sequence splits: {sequence_splits(model)}")
print("(the free rank 1 then comes from one Laurent variable)")

#!/usr/bin/env python3
"""Walk through the shipped TN models.

The first model has torsion ideal (Z/2)^4 yet 1 + N = Z/2 x Z/2 x Z/4, a
ring where the additive and adjoint structures of the nilpotent part truly
differ and the unit sequence 1 -> 1+N -> A* -> (A/N)* -> 1 does not split.
The second family realises Z/4 x Z/2v, settling Z/4 x Z/8 in particular.
"""

from fuchs import (adjoint_of_nil_torsion, load_example, nil_torsion,
                   quotient_torsion_units, sequence_splits, torsion_units)

for name in ("paper-7-1", "paper-7-2-v2", "paper-7-2-v4"):
    model = load_example(name)
    ideal = nil_torsion(model)
    print(f"model {name} (base conductor {model.conductor}, "
          f"free basis {model.free_names}, torsion {model.tors_names})")
    print(f"  N_tors            = {ideal.additive_group()}")
    print(f"  1 + N_tors        = {adjoint_of_nil_torsion(model)}")
    print(f"  (A/N_tors)*_tors  = {quotient_torsion_units(model)}")
    print(f"  A*_tors           = {torsion_units(model)}")
    print(f"  |A*_tors| = |1+N| * |(A/N)*|: "
          f"{torsion_units(model).order()} = {ideal.order()} * "
          f"{quotient_torsion_units(model).order()}")
    print(f"  sequence splits   = {sequence_splits(model)}")
    print()

print("note: the middle group Z/4 x Z/4 (v=2) shows the minimal 2-power "
      "layer of A* can differ from that of (A/N)*.")

#!/usr/bin/env python3
"""Complement homotopy models: S^2 with 4-cells attached.

For H_1(N) = 0 the complement of an embedded N in the 7-sphere is,
up to homotopy, a 2-sphere with b_2(N) 4-cells glued along the
invariant's coordinates.  Its pi_3 is Z/d where d is the divisibility
of the invariant; d = 1 kills pi_3 (the primitivity criterion's
hypothesis), d = 0 means the invariant vanishes and the embedding
compresses into R^6 after a knot correction.
"""

from embed47.complement import ComplementModel, homology_of, pi3_of, wedge_form
from embed47.lattice import H2Class, divisibility

cases = [
    ("CP2 standard embedding", (1,)),
    ("S2xS2, invariant (2,0)", (2, 0)),
    ("S2xS2, invariant 0", (0, 0)),
    ("a rank-3 example", (6, 10, 15)),
    ("the 4-sphere (b2 = 0)", ()),
]

for label, attaching in cases:
    model = ComplementModel.from_attaching(attaching)
    print(f"-- {label}: attaching {list(attaching)} --")
    print(f"  H_0..H_4 = {[str(g) for g in homology_of(model)]}")
    d = divisibility(H2Class(attaching))
    print(f"  pi_3 = {pi3_of(model)}   (divisibility {d})")
    shape = wedge_form(model)
    print(f"  wedge form: {shape if shape else 'none, the attaching twists the cells'}")
    if d == 1:
        print("  primitive: the knot action fixes this class")
    if attaching and d == 0:
        print("  zero invariant: PL compressible into R^6")
    print()

#!/usr/bin/env python3
"""Enumerating the invariant image: characteristic vectors of square sigma.

Definite forms give certified finite answers independent of the search
box; indefinite forms are searched inside the box and flagged.  Either
way, van der Blij's congruence x.x = sigma (mod 8) is a hard wall:
targets off the congruence class enumerate to nothing.
"""

from embed47.lattice import (
    IntegralLattice,
    enumerate_characteristic,
    hyperbolic_plane,
    signature,
)

print("-- CP^2: gram [1], a positive definite form --")
cp2 = IntegralLattice.from_rows([[1]])
for bound in (1, 10):
    classes, finiteness = enumerate_characteristic(cp2, 1, bound)
    print(f"  bound {bound:>2}: {[c.coords for c in classes]}  [{finiteness.value}]")
print("  the two classes are the two embeddings of CP^2 in R^7, up to isotopy")
print()

print("-- a skewed definite form: the certificate ignores the box --")
skew = IntegralLattice.from_rows([[1, 3], [3, 10]])
classes, finiteness = enumerate_characteristic(skew, signature(skew), 2)
print(f"  sigma = {signature(skew)}; classes found: {[c.coords for c in classes]}")
print(f"  note coordinates beyond the box bound 2: completeness is certified")
print()

print("-- S^2 x S^2: the hyperbolic plane, indefinite --")
h = hyperbolic_plane()
classes, finiteness = enumerate_characteristic(h, 0, 4)
print(f"  box bound 4: {[c.coords for c in classes]}  [{finiteness.value}]")
print("  the family (2k, 2l) with kl = 0 continues beyond any box")
print()

print("-- van der Blij in action --")
for target in range(-3, 6):
    classes, _ = enumerate_characteristic(cp2, target, 10)
    tag = "" if classes else "   (forced empty: target != 1 mod 8)"
    print(f"  target {target:>2}: {len(classes)} classes{tag}")

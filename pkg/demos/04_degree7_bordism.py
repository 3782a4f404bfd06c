#!/usr/bin/env python3
"""The degree-7 bordism computations behind the injectivity arguments.

Over S^2 the coefficient row Omega_*(BO<5>) = (Z, Z/2, Z/2, Z/24, 0, 0,
Z/2, 0) leaves nothing in total degree 7, so the bordism group of
S^2 x BO<5> vanishes there.  Over CP^infinity two entries survive to
the E^2 page; the tabulated differential (mod-2 reduction followed by
the dual Steenrod square, nonzero since Sq^2 a^3 = 3 a^4 = a^4) kills
the Z/2, leaving a Z/24 upper bound.
"""

from embed47.ahss import (
    CoefficientRow,
    SpaceDescriptor,
    degree7_after_known_differentials,
    sq2_dual_cp,
)
from embed47.tables import default_tables

row = CoefficientRow(default_tables().bordism_row(), name="Omega_*(BO<5>)")
print(f"coefficient row: {[str(g) for g in row.groups]}")
print()

print("dual Sq^2 coefficients on CP^inf (parity of k):")
for k in range(1, 6):
    arrow = f"H_{2 * k + 2} -> H_{2 * k}"
    print(f"  k = {k} ({arrow}): {sq2_dual_cp(k)}")
print()

for space in (SpaceDescriptor.sphere(2), SpaceDescriptor.complex_projective()):
    report = degree7_after_known_differentials(space, row)
    print(f"-- base {space.label()} --")
    line = [(pos, str(g)) for pos, g in report.e2_line.nonzero()]
    print(f"  E^2 degree-7 line: {line if line else 'all trivial'}")
    if report.killed:
        print(f"  killed by the differential: {list(report.killed)}")
    print(f"  conclusion: {report.conclusion}")
    for note in report.notes:
        print(f"  note: {note}")
    print()

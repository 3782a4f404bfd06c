#!/usr/bin/env python3
"""Walk the shipped catalog and narrate each classification.

The punchline pair:

* CP^2 has square-free signature, so connected sum with knotted
  4-spheres does nothing and the invariant counts isotopy classes
  exactly: there are two embeddings CP^2 -> R^7, mirror images of each
  other.
* S^2 x S^2 has signature 0, the gate closes, and instead the
  effectiveness criterion applies: all twelve knots act freely.
"""

from embed47.classify import action_effective, action_trivial, classify_r7
from embed47.cli import load_catalog, record_to_manifold

for record in load_catalog():
    m = record_to_manifold(record)
    report = classify_r7(m, bound=4)
    print(f"=== {m.name} (rank {m.b2}, sigma {report.sigma}) ===")
    print(f"  embeds in R^7? {report.embeds_r7}")
    print(f"  embeds in R^6? {report.embeds_r6.verdict}")
    print(f"  triviality gate: {report.triviality}")
    if report.bh is not None:
        print(
            f"  invariant image within the box (bound {report.bound}):"
            f" {[c.coords for c in report.bh.classes]} [{report.bh.finiteness.value}]"
        )
    else:
        print(f"  invariant image: {report.bh_skipped_reason}")
    kind = report.isotopy_classes.kind
    if kind == "exact":
        print(f"  -> exactly {report.isotopy_classes.value} isotopy classes in R^7")
    elif kind == "lower-bound":
        print(f"  -> at least {report.isotopy_classes.value} isotopy classes in R^7")
    else:
        print(f"  -> count not determined: {report.isotopy_classes.note}")
    print(f"  knot action trivial?   {action_trivial(m)}")
    print(f"  knot action effective? {action_effective(m)}")
    print()

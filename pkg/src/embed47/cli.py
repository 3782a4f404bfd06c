"""Command-line front end.

Subcommands: ``classify``, ``bh-image``, ``pi3``, ``embed6``,
``tables``, ``ahss``.  Two renderings of the same content are
available through ``--format``: a human-readable text report and a
stable machine format (JSON, schema ``embed47.report/1``, sorted keys,
deterministic ordering of enumerated classes).

Exit codes: 0 success; 2 input validation failed (also used by
argument parsing); 3 unsupported or out-of-scope query; 4 internal
assertion failure.
"""

from __future__ import annotations

import argparse
import importlib.resources
import json
import sys
from pathlib import Path

from . import ahss as ahss_mod
from . import classify as classify_mod
from . import tables as tables_mod
from .complement import ComplementModel, homology_of, pi3_of, wedge_form
from .errors import InvalidInputError, UnsupportedQueryError
from .exactalg import IntMatrix
from .lattice import (
    H2Class,
    IntegralLattice,
    divisibility,
    enumerate_characteristic,
    is_characteristic,
    is_even,
    signature,
)
from .verdict import Verdict

MACHINE_SCHEMA = "embed47.report/1"

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_UNSUPPORTED = 3
EXIT_INTERNAL = 4

RECORD_FIELDS = (
    "name",
    "gram",
    "h1_rank",
    "h1_torsion",
    "h1_mod2_rank",
    "orientable",
    "spin",
    "simply_connected",
    "suspension_retracts",
    "provenance",
)


# --- record (de)serialization -------------------------------------------


def record_to_manifold(rec: dict) -> classify_mod.Manifold4Data:
    if not isinstance(rec, dict):
        raise InvalidInputError("a manifold record must be an object")
    unknown = set(rec) - set(RECORD_FIELDS)
    if unknown:
        raise InvalidInputError(f"unknown record fields: {sorted(unknown)}")
    for required in ("name", "gram"):
        if required not in rec:
            raise InvalidInputError(f"record is missing the {required!r} field")
    gram = rec["gram"]
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise InvalidInputError("gram must be a list of integer rows")
    lattice = IntegralLattice.from_rows(gram)
    return classify_mod.Manifold4Data(
        name=str(rec["name"]),
        lattice=lattice,
        h1_rank=int(rec.get("h1_rank", 0)),
        h1_torsion=tuple(int(d) for d in rec.get("h1_torsion", [])),
        h1_mod2_rank=int(rec.get("h1_mod2_rank", 0)),
        orientable=bool(rec.get("orientable", True)),
        spin=bool(rec.get("spin", False)),
        simply_connected=bool(rec.get("simply_connected", False)),
        suspension_retracts=rec.get("suspension_retracts", None),
    )


def manifold_to_record(m: classify_mod.Manifold4Data, provenance: str = "") -> dict:
    return {
        "name": m.name,
        "gram": m.lattice.gram.to_rows(),
        "h1_rank": m.h1_rank,
        "h1_torsion": list(m.h1_torsion),
        "h1_mod2_rank": m.h1_mod2_rank,
        "orientable": m.orientable,
        "spin": m.spin,
        "simply_connected": m.simply_connected,
        "suspension_retracts": m.suspension_retracts,
        "provenance": provenance,
    }


def load_catalog(path: str | Path | None = None) -> list[dict]:
    """Raw records from a catalog file (the packaged one by default)."""
    if path is None:
        text = (
            importlib.resources.files("embed47")
            .joinpath("data/catalog.json")
            .read_text(encoding="utf-8")
        )
    else:
        text = Path(path).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"catalog is not valid JSON: {exc}") from exc
    records = payload.get("records") if isinstance(payload, dict) else payload
    if not isinstance(records, list):
        raise InvalidInputError("catalog must contain a list of records")
    return records


def select_records(args) -> list[tuple[classify_mod.Manifold4Data, dict]]:
    records = load_catalog(getattr(args, "catalog", None))
    chosen = []
    for rec in records:
        manifold = record_to_manifold(rec)
        chosen.append((manifold, rec))
    name = getattr(args, "name", None)
    if name is not None:
        chosen = [(m, r) for (m, r) in chosen if m.name == name]
        if not chosen:
            raise InvalidInputError(f"no record named {name!r} in the catalog")
    return chosen


# --- shared rendering helpers -------------------------------------------


def verdict_payload(v: Verdict) -> dict:
    return {"value": v.value, "reason": v.reason, "source": v.source}


def classes_payload(classes) -> list[list[int]]:
    return [list(c.coords) for c in classes]


def matrix_payload(m: IntMatrix | None):
    return None if m is None else m.to_rows()


def emit(payload: dict, text: str, fmt: str) -> None:
    if fmt == "machine":
        payload = {"schema": MACHINE_SCHEMA, **payload}
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


# --- classify -------------------------------------------------------------


def bh_payload(report: classify_mod.ClassificationReport) -> dict:
    if report.bh is None:
        return {"computed": False, "note": report.bh_skipped_reason}
    return {
        "computed": True,
        "target": report.bh.target,
        "bound": report.bh.bound,
        "finiteness": report.bh.finiteness.value,
        "classes": classes_payload(report.bh.classes),
        "count_in_box": len(report.bh.classes),
        "primitive_count": report.primitive_count,
    }


def r6_payload(r6: classify_mod.R6Report) -> dict:
    return {
        "verdict": verdict_payload(r6.verdict),
        "conditions": dict(sorted(r6.conditions.items())),
        "hyperbolic_blocks": r6.hyperbolic_blocks,
        "certificate": matrix_payload(r6.certificate),
    }


def per_class_payload(m: classify_mod.Manifold4Data, x: H2Class) -> dict:
    pi3 = pi3_of(ComplementModel.from_attaching(x.coords))
    payload = {
        "class": list(x.coords),
        "characteristic": is_characteristic(m.lattice, x),
        "square": m.lattice.product(x, x),
        "divisibility": divisibility(x),
        "pi3_of_complement": str(pi3),
        "action_trivial": verdict_payload(classify_mod.action_trivial(m, x)),
    }
    if m.h1_trivial:
        payload["compressible"] = classify_mod.compressible(m, x)
    else:
        payload["compressible"] = None
    return payload


def classify_record_payload(
    m: classify_mod.Manifold4Data, raw: dict, bound: int, per_class: H2Class | None
) -> dict:
    if not m.orientable:
        # graceful partial report instead of the library-level rejection
        return {
            "name": m.name,
            "input": {k: raw.get(k) for k in RECORD_FIELDS},
            "rank": m.b2,
            "orientable": False,
            "embeds_r7": verdict_payload(classify_mod.embeds_in_r7(m)),
            "skipped": (
                "the R^7 classification, the R^6 criterion and the invariant "
                "enumeration all assume an orientable manifold"
            ),
        }
    report = classify_mod.classify_r7(m, bound=bound)
    payload = {
        "name": m.name,
        "input": {k: raw.get(k) for k in RECORD_FIELDS},
        "rank": m.b2,
        "sigma": report.sigma,
        "even_form": is_even(m.lattice),
        "unimodular": m.lattice.is_unimodular(),
        "embeds_r7": verdict_payload(report.embeds_r7),
        "embeds_r6": r6_payload(report.embeds_r6),
        "triviality_gate": verdict_payload(report.triviality),
        "bh_image": bh_payload(report),
        "isotopy_classes": {
            "kind": report.isotopy_classes.kind,
            "count": report.isotopy_classes.value,
            "note": report.isotopy_classes.note,
        },
        "action_trivial": verdict_payload(classify_mod.action_trivial(m)),
        "action_effective": verdict_payload(classify_mod.action_effective(m)),
        "per_class": per_class_payload(m, per_class) if per_class is not None else None,
        "notes": list(report.notes),
    }
    return payload


def classify_record_text(payload: dict) -> str:
    lines = [f"== {payload['name']} =="]
    if payload.get("skipped"):
        v = payload["embeds_r7"]
        word = {True: "yes", False: "no", None: "not determined"}[v["value"]]
        lines.append(f"  embeds in R^7: {word} ({v['reason']})")
        lines.append(f"  {payload['skipped']}")
        return "\n".join(lines) + "\n"
    lines.append(
        f"  rank {payload['rank']}, sigma {payload['sigma']}, "
        f"{'even' if payload['even_form'] else 'odd'} form, "
        f"{'unimodular' if payload['unimodular'] else 'not unimodular'}"
    )
    for label, key in (
        ("embeds in R^7", "embeds_r7"),
        ("triviality gate", "triviality_gate"),
        ("action trivial", "action_trivial"),
        ("action effective", "action_effective"),
    ):
        v = payload[key]
        word = {True: "yes", False: "no", None: "not determined"}[v["value"]]
        lines.append(f"  {label}: {word} ({v['reason']})")
    r6 = payload["embeds_r6"]
    word = {True: "yes", False: "no", None: "not determined"}[r6["verdict"]["value"]]
    lines.append(f"  embeds in R^6: {word} ({r6['verdict']['reason']})")
    if r6["hyperbolic_blocks"] is not None:
        lines.append(
            f"    certificate: {r6['hyperbolic_blocks']} hyperbolic block(s), "
            f"transform {r6['certificate']}"
        )
    bh = payload["bh_image"]
    if bh["computed"]:
        lines.append(
            f"  invariant image (target {bh['target']}, bound {bh['bound']}, "
            f"{bh['finiteness']}): {bh['count_in_box']} class(es), "
            f"{bh['primitive_count']} primitive"
        )
        lines.append(f"    classes: {bh['classes']}")
    else:
        lines.append(f"  invariant image: {bh['note']}")
    iso = payload["isotopy_classes"]
    if iso["kind"] == "exact":
        lines.append(f"  isotopy classes in R^7: exactly {iso['count']}")
    elif iso["kind"] == "lower-bound":
        lines.append(f"  isotopy classes in R^7: at least {iso['count']} ({iso['note']})")
    else:
        lines.append(f"  isotopy classes in R^7: not determined ({iso['note']})")
    if payload["per_class"] is not None:
        pc = payload["per_class"]
        lines.append(
            f"  class {pc['class']}: characteristic={pc['characteristic']}, "
            f"square={pc['square']}, divisibility={pc['divisibility']}, "
            f"pi_3(C) = {pc['pi3_of_complement']}, compressible={pc['compressible']}"
        )
        av = pc["action_trivial"]
        word = {True: "yes", False: "no", None: "not determined"}[av["value"]]
        lines.append(f"    action trivial on this class: {word} ({av['reason']})")
    for note in payload["notes"]:
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> int:
    per_class = parse_class(args.per_class) if args.per_class is not None else None
    records = []
    for manifold, raw in select_records(args):
        records.append(classify_record_payload(manifold, raw, args.bound, per_class))
    payload = {"command": "classify", "bound": args.bound, "records": records}
    text = "".join(classify_record_text(r) for r in records)
    emit(payload, text, args.format)
    return EXIT_OK


# --- bh-image -------------------------------------------------------------


def cmd_bh_image(args) -> int:
    if args.gram is not None:
        try:
            rows = json.loads(args.gram)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"--gram is not valid JSON: {exc}") from exc
        lattice = IntegralLattice.from_rows(rows)
        name = "ad-hoc"
        sigma = signature(lattice)
    else:
        chosen = select_records(args)
        if len(chosen) != 1:
            raise InvalidInputError("bh-image needs --name (one record) or --gram")
        manifold, _ = chosen[0]
        lattice, name = manifold.lattice, manifold.name
        sigma = manifold.sigma()
    target = args.target if args.target is not None else sigma
    classes, finiteness = enumerate_characteristic(lattice, target, args.bound)
    primitive = sum(1 for c in classes if divisibility(c) == 1)
    payload = {
        "command": "bh-image",
        "name": name,
        "sigma": sigma,
        "target": target,
        "bound": args.bound,
        "finiteness": finiteness.value,
        "classes": classes_payload(classes),
        "count_in_box": len(classes),
        "primitive_count": primitive,
        "note": (
            "reversing the orientation of N negates both the signature and "
            "every invariant value; rerun with --target to match"
        ),
    }
    text = (
        f"invariant image for {name}: target square {target} "
        f"(sigma = {sigma}), bound {args.bound}, {finiteness.value}\n"
        f"  {len(classes)} class(es), {primitive} primitive: "
        f"{classes_payload(classes)}\n"
    )
    emit(payload, text, args.format)
    return EXIT_OK


# --- pi3 -------------------------------------------------------------------


def parse_class(text: str) -> H2Class:
    text = text.strip()
    if text in ("", "-"):
        return H2Class(())
    try:
        coords = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise InvalidInputError(f"cannot parse class {text!r}: {exc}") from exc
    return H2Class(coords)


def cmd_pi3(args) -> int:
    x = parse_class(args.attaching)
    model = ComplementModel.from_attaching(x.coords)
    pi3 = pi3_of(model)
    homology = homology_of(model)
    payload = {
        "command": "pi3",
        "attaching": list(x.coords),
        "b2": model.b2,
        "pi3": str(pi3),
        "divisibility": divisibility(x),
        "wedge": wedge_form(model),
        "homology_degrees_0_to_4": [str(g) for g in homology],
        "euler_characteristic": 2 + model.b2,
    }
    text = (
        f"complement model for attaching {list(x.coords)}:\n"
        f"  pi_3 = {pi3} (divisibility {divisibility(x)})\n"
        f"  homology H_0..H_4 = {[str(g) for g in homology]}\n"
        f"  wedge form: {wedge_form(model) or 'none (twisted attaching)'}\n"
    )
    emit(payload, text, args.format)
    return EXIT_OK


# --- embed6 ----------------------------------------------------------------


def cmd_embed6(args) -> int:
    reports = []
    texts = []
    for manifold, _raw in select_records(args):
        r6 = classify_mod.embeds_in_r6(manifold)
        reports.append({"name": manifold.name, **r6_payload(r6)})
        word = {True: "yes", False: "no", None: "not determined"}[r6.verdict.value]
        line = f"{manifold.name}: embeds in R^6: {word} ({r6.verdict.reason})\n"
        if r6.hyperbolic_blocks is not None:
            line += f"  certificate: {r6.hyperbolic_blocks} hyperbolic block(s)\n"
        texts.append(line)
    payload = {"command": "embed6", "records": reports}
    emit(payload, "".join(texts), args.format)
    return EXIT_OK


# --- tables ----------------------------------------------------------------


def cmd_tables(args) -> int:
    table_set = tables_mod.load_tables(args.tables) if args.tables else tables_mod.default_tables()
    query = list(args.query)
    if query and query[0].lower() in ("t35", "action"):
        if len(query) != 2:
            raise InvalidInputError("usage: tables t35 <n>")
        try:
            n = int(query[1])
        except ValueError as exc:
            raise InvalidInputError(f"not an integer: {query[1]!r}") from exc
        verdict = tables_mod.homology_sphere_action_nontrivial(n, table_set)
        payload = {
            "command": "tables",
            "query": f"t35 {n}",
            "nontrivial_action": verdict_payload(verdict),
        }
        text = f"nontrivial knot action on homology {n}-spheres in R^{n + 3}: {verdict}\n"
        emit(payload, text, args.format)
        return EXIT_OK
    key = " ".join(query)
    entry = table_set.lookup(key)
    payload = {
        "command": "tables",
        "query": entry.key,
        "group": str(entry.value),
        "free_rank": entry.value.free_rank,
        "torsion": list(entry.value.torsion),
        "source": entry.source,
    }
    text = f"{entry.key} = {entry.value}\n  source: {entry.source}\n"
    emit(payload, text, args.format)
    return EXIT_OK


# --- ahss ------------------------------------------------------------------


def cmd_ahss(args) -> int:
    table_set = tables_mod.load_tables(args.tables) if args.tables else tables_mod.default_tables()
    space = {
        "S2": ahss_mod.SpaceDescriptor.sphere(2),
        "CPinf": ahss_mod.SpaceDescriptor.complex_projective(None),
    }[args.space]
    row = ahss_mod.CoefficientRow(
        table_set.bordism_row(), name="Omega_*(BO<5>)",
        source=table_set.lookup("Omega0(BO<5>)").source,
    )
    page = ahss_mod.e2_page(space, row, args.degree)
    line = [
        {"i": i, "j": j, "group": str(g)}
        for (i, j), g in page.nonzero()
        if i + j == args.degree
    ]
    payload = {
        "command": "ahss",
        "space": space.label(),
        "degree": args.degree,
        "e2_line": line,
    }
    text = f"E^2 line in total degree {args.degree} over {space.label()}:\n"
    text += f"  nonzero entries: {line or 'none'}\n"
    if args.degree == 7:
        report = ahss_mod.degree7_after_known_differentials(space, row)
        payload["killed"] = [list(k) for k in report.killed]
        payload["surviving"] = [
            {"i": i, "j": j, "group": str(g)} for (i, j), g in report.surviving.nonzero()
        ]
        payload["conclusion"] = report.conclusion
        payload["notes"] = list(report.notes)
        text += f"  killed by the tabulated differential: {payload['killed'] or 'nothing'}\n"
        text += f"  conclusion: {report.conclusion}\n"
        for note in report.notes:
            text += f"  note: {note}\n"
    emit(payload, text, args.format)
    return EXIT_OK


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embed47",
        description=(
            "classification of smooth embeddings of closed 4-manifolds in "
            "7-space from intersection-form data"
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, catalog=True):
        p.add_argument(
            "--format", choices=("text", "machine"), default="text",
            help="text report or stable machine JSON",
        )
        if catalog:
            p.add_argument("--catalog", default=None, help="catalog file (default: shipped)")
            p.add_argument("--name", default=None, help="select one catalog record")

    p = sub.add_parser("classify", help="full classification report")
    add_common(p)
    p.add_argument("--bound", type=int, default=10, help="box bound for the enumeration")
    p.add_argument("--per-class", default=None, help="invariant value, e.g. '1,0'")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bh-image", help="enumerate the invariant image")
    add_common(p)
    p.add_argument("--bound", type=int, default=10)
    p.add_argument("--gram", default=None, help="inline Gram matrix as JSON rows")
    p.add_argument(
        "--target", type=int, default=None,
        help="target square (default: the signature; negate for the reversed orientation)",
    )
    p.set_defaults(func=cmd_bh_image)

    p = sub.add_parser("pi3", help="complement model and its pi_3")
    add_common(p, catalog=False)
    p.add_argument("--attaching", required=True, help="comma list, e.g. '2,0' ('-' for empty)")
    p.set_defaults(func=cmd_pi3)

    p = sub.add_parser("embed6", help="R^6 embeddability with certificate")
    add_common(p)
    p.set_defaults(func=cmd_embed6)

    p = sub.add_parser("tables", help="curated homotopy/bordism table lookups")
    add_common(p, catalog=False)
    p.add_argument("--tables", default=None, help="alternate table data file")
    p.add_argument("query", nargs="+", help="a key like 'E7(S4)', or: t35 <n>")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("ahss", help="spectral-sequence line and degree-7 conclusion")
    add_common(p, catalog=False)
    p.add_argument("--tables", default=None, help="alternate table data file")
    p.add_argument("space", choices=("S2", "CPinf"))
    p.add_argument("degree", type=int)
    p.set_defaults(func=cmd_ahss)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except UnsupportedQueryError as exc:
        print(f"error: unsupported query: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except AssertionError as exc:
        print(f"error: internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

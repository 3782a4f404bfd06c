"""Curated homotopy-group and bordism tables, loaded from a data file.

No group value is hardcoded in Python: everything a lookup can return
lives in ``data/homotopy_tables.txt`` next to its literature anchor.
Users can load an alternate file with the same format (for example a
framed-bordism coefficient row) through :func:`load_tables`.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidInputError, UnsupportedQueryError
from .exactalg import FgAbGroup
from .verdict import Verdict

BORDISM_ROW_KEYS = tuple(f"Omega{j}(BO<5>)" for j in range(8))
FIBER_ROW_KEYS = tuple(f"pi{j}(F)" for j in range(8))


@dataclass(frozen=True)
class GroupTableEntry:
    key: str
    value: FgAbGroup
    source: str


@dataclass(frozen=True)
class TableSet:
    version: str
    groups: dict[str, GroupTableEntry]
    facts: dict[str, tuple[str, str]]  # key -> (value, source)

    def lookup(self, key: str) -> GroupTableEntry:
        """The tabulated entry for ``key``, never a default.

        Raises :class:`UnsupportedQueryError` for absent keys.
        """
        key = normalize_key(key)
        if key not in self.groups:
            raise UnsupportedQueryError(f"not tabulated: {key}")
        return self.groups[key]

    def row(self, keys) -> tuple[FgAbGroup, ...]:
        return tuple(self.lookup(k).value for k in keys)

    def bordism_row(self) -> tuple[FgAbGroup, ...]:
        """Omega_j(BO<5>) for j = 0..7."""
        return self.row(BORDISM_ROW_KEYS)

    def fiber_row(self) -> tuple[FgAbGroup, ...]:
        """pi_j of the fiber of BO<5> -> BO, for j = 0..7."""
        return self.row(FIBER_ROW_KEYS)

    def fact(self, key: str) -> tuple[str, str]:
        if key not in self.facts:
            raise UnsupportedQueryError(f"not tabulated: {key}")
        return self.facts[key]

    def dump_lines(self) -> list[str]:
        """Re-serialize in the data-file format (used for round-trip tests)."""
        lines = [f"version {self.version}"]
        for entry in self.groups.values():
            tor = ",".join(str(d) for d in entry.value.torsion) or "-"
            lines.append(
                f"group {entry.key} | {entry.value.free_rank} | {tor} | {entry.source}"
            )
        for key, (value, source) in self.facts.items():
            lines.append(f"fact {key} | {value} | {source}")
        return lines


def normalize_key(key: str) -> str:
    """Canonical key spelling: no internal spaces, 'E7 S4' -> 'E7(S4)'."""
    key = key.strip()
    parts = key.split()
    if len(parts) == 2 and "(" not in key:
        key = f"{parts[0]}({parts[1]})"
    return key.replace(" ", "")


def _parse_group_line(body: str, lineno: int) -> GroupTableEntry:
    pieces = [p.strip() for p in body.split("|")]
    if len(pieces) != 4:
        raise InvalidInputError(f"line {lineno}: expected 4 fields, got {len(pieces)}")
    key, free_s, tor_s, source = pieces
    if not source:
        raise InvalidInputError(f"line {lineno}: entry {key} has an empty source")
    torsion = [] if tor_s == "-" else [int(t) for t in tor_s.split(",")]
    return GroupTableEntry(
        key=normalize_key(key),
        value=FgAbGroup.from_divisors(torsion, int(free_s)),
        source=source,
    )


def load_tables(path: str | Path | None = None) -> TableSet:
    """Parse a table file; with no path, the packaged default."""
    if path is None:
        text = (
            importlib.resources.files("embed47")
            .joinpath("data/homotopy_tables.txt")
            .read_text(encoding="utf-8")
        )
    else:
        text = Path(path).read_text(encoding="utf-8")
    version = ""
    groups: dict[str, GroupTableEntry] = {}
    facts: dict[str, tuple[str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kind, _, body = line.partition(" ")
        if kind == "version":
            version = body.strip()
        elif kind == "group":
            entry = _parse_group_line(body, lineno)
            if entry.key in groups:
                raise InvalidInputError(f"line {lineno}: duplicate key {entry.key}")
            groups[entry.key] = entry
        elif kind == "fact":
            pieces = [p.strip() for p in body.split("|")]
            if len(pieces) != 3:
                raise InvalidInputError(f"line {lineno}: fact needs 3 fields")
            facts[pieces[0]] = (pieces[1], pieces[2])
        else:
            raise InvalidInputError(f"line {lineno}: unknown record kind {kind!r}")
    if not version:
        raise InvalidInputError("table file has no version line")
    return TableSet(version=version, groups=groups, facts=facts)


_DEFAULT: TableSet | None = None


def default_tables() -> TableSet:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_tables()
    return _DEFAULT


def lookup(key: str) -> GroupTableEntry:
    return default_tables().lookup(key)


def homology_sphere_action_nontrivial(n: int, tables: TableSet | None = None) -> Verdict:
    """Is the connected-sum action of knotted n-spheres on embeddings of a
    homology n-sphere in (n+3)-space provably nontrivial?

    Decided by whether the suspension pi_{n+2}(S^2) -> pi_n^S fails to be
    injective; the classical tables settle n <= 19, with exceptions read
    from the data file.  Beyond that range the answer is not determined.
    """
    if n < 3:
        raise InvalidInputError("n must be at least 3")
    tables = tables or default_tables()
    exceptions_s, source = tables.fact("nontrivial_action_exceptions")
    max_n = int(tables.fact("nontrivial_action_max_n")[0])
    exceptions = {int(x) for x in exceptions_s.split(",")}
    if n > max_n:
        return Verdict(
            None,
            f"n = {n} is beyond the tabulated range (n <= {max_n})",
            source,
        )
    if n in exceptions:
        return Verdict(
            False,
            f"the suspension pi_{n + 2}(S^2) -> pi_{n}^S is injective here",
            source,
        )
    return Verdict(
        True,
        f"the suspension pi_{n + 2}(S^2) -> pi_{n}^S is not injective",
        source,
    )

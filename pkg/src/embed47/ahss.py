"""A low-degree Atiyah-Hirzebruch spectral-sequence engine.

Scope is deliberately narrow: torsion-free base spaces (spheres,
complex projective spaces, the point), coefficient rows tabulated up to
degree 7, the second page on a three-diagonal window, and the single
tabulated differential E^2_{8,0} -> E^2_{6,1} on the infinite complex
projective space, which is mod-2 reduction followed by the dual of the
Steenrod square Sq^2 (Teichner 1993).  Anything past that is labelled
an upper bound, not a computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InvalidInputError, UnsupportedQueryError
from .exactalg import FgAbGroup, group_sum

TRIVIAL = FgAbGroup.trivial()


@dataclass(frozen=True)
class SpaceDescriptor:
    """A supported base space with torsion-free integral homology."""

    kind: str  # "sphere" | "complex_projective" | "point"
    param: int | None = None  # sphere dimension; CP^n dimension, None = infinite

    def __post_init__(self) -> None:
        if self.kind == "sphere":
            if self.param is None or self.param < 1:
                raise UnsupportedQueryError("supported spheres are S^k with k >= 1")
        elif self.kind == "complex_projective":
            if self.param is not None and self.param < 1:
                raise UnsupportedQueryError("CP^n needs n >= 1 (or None for CP^infinity)")
        elif self.kind != "point":
            raise UnsupportedQueryError(f"unsupported space kind: {self.kind}")

    @classmethod
    def sphere(cls, k: int) -> "SpaceDescriptor":
        return cls("sphere", k)

    @classmethod
    def complex_projective(cls, n: int | None = None) -> "SpaceDescriptor":
        return cls("complex_projective", n)

    @classmethod
    def point(cls) -> "SpaceDescriptor":
        return cls("point")

    def homology_rank(self, i: int) -> int:
        """rank of H_i; all supported spaces have torsion-free homology."""
        if i < 0:
            return 0
        if self.kind == "point":
            return 1 if i == 0 else 0
        if self.kind == "sphere":
            return 1 if i in (0, self.param) else 0
        if i % 2 != 0:
            return 0
        return 1 if self.param is None or i <= 2 * self.param else 0

    def label(self) -> str:
        if self.kind == "point":
            return "pt"
        if self.kind == "sphere":
            return f"S^{self.param}"
        return "CP^inf" if self.param is None else f"CP^{self.param}"


@dataclass(frozen=True)
class CoefficientRow:
    """Coefficient groups Omega_j for j = 0..7, with their provenance.

    Rows are immutable tabulated data; build a new row to change one.
    """

    groups: tuple[FgAbGroup, ...]
    name: str = "coefficients"
    source: str = ""

    def __post_init__(self) -> None:
        if len(self.groups) != 8:
            raise InvalidInputError("a coefficient row tabulates degrees 0..7")

    def __getitem__(self, j: int) -> FgAbGroup:
        return self.groups[j]


@dataclass(frozen=True)
class AHSSPage:
    """A sparse (i, j) -> group map; absent entries are trivial."""

    entries: tuple[tuple[tuple[int, int], FgAbGroup], ...]

    @classmethod
    def from_dict(cls, d: Mapping[tuple[int, int], FgAbGroup]) -> "AHSSPage":
        items = tuple(sorted((pos, grp) for pos, grp in d.items() if not grp.is_trivial))
        return cls(items)

    def group(self, i: int, j: int) -> FgAbGroup:
        for pos, grp in self.entries:
            if pos == (i, j):
                return grp
        return TRIVIAL

    def nonzero(self) -> tuple[tuple[tuple[int, int], FgAbGroup], ...]:
        return self.entries

    def is_trivial(self) -> bool:
        return not self.entries


def e2_page(x: SpaceDescriptor, row: CoefficientRow, total_degree: int) -> AHSSPage:
    """E^2_{i,j} = H_i(X; Omega_j) on the window i + j in {d-1, d, d+1}.

    Because the base homology is free, universal coefficients has no Tor
    term: the entry is a direct sum of rank(H_i) copies of Omega_j.
    """
    if total_degree > 8:
        raise UnsupportedQueryError("degree window exceeded: total degree must be <= 8")
    if total_degree < 0:
        raise InvalidInputError("total degree must be non-negative")
    entries: dict[tuple[int, int], FgAbGroup] = {}
    for total in (total_degree - 1, total_degree, total_degree + 1):
        for j in range(0, 8):
            i = total - j
            if i < 0:
                continue
            r = x.homology_rank(i)
            if r == 0:
                continue
            grp = TRIVIAL
            for _ in range(r):
                grp = group_sum(grp, row[j])
            entries[(i, j)] = grp
    return AHSSPage.from_dict(entries)


def sq2_dual_cp(k: int) -> int:
    """Coefficient (mod 2) of the dual Steenrod square
    H_{2k+2}(CP^inf; Z/2) -> H_{2k}(CP^inf; Z/2).

    Evaluated through the Cartan formula: the total square of the
    degree-2 generator a is a + a^2, so Sq(a^k) = (a + a^2)^k and the
    Sq^2 component of a^k is the coefficient of a^{k+1}.
    """
    if k < 1:
        raise InvalidInputError("k must be at least 1")
    # multiply out (a + a^2)^k over Z/2, exponents tracked explicitly
    poly = {0: 1}
    for _ in range(k):
        nxt: dict[int, int] = {}
        for e, c in poly.items():
            for shift in (1, 2):
                nxt[e + shift] = (nxt.get(e + shift, 0) + c) % 2
        poly = {e: c for e, c in nxt.items() if c}
    return poly.get(k + 1, 0)


@dataclass(frozen=True)
class Degree7Report:
    space: SpaceDescriptor
    e2_line: AHSSPage
    surviving: AHSSPage
    killed: tuple[tuple[int, int], ...]
    conclusion: str
    notes: tuple[str, ...] = ()


def degree7_after_known_differentials(
    x: SpaceDescriptor, row: CoefficientRow
) -> Degree7Report:
    """The total-degree-7 line at E^2 and after the one tabulated
    differential.

    For S^2 with the BO<5> bordism row the line is empty already at E^2.
    For CP^infinity the differential E^2_{8,0} = Z -> E^2_{6,1} = Z/2 is
    mod-2 reduction followed by the Sq^2 dual on H_8 -> H_6, which is
    onto exactly when sq2_dual_cp(3) = 1; the survivor at (4, 3) is an
    upper bound only.
    """
    if not (
        (x.kind == "sphere" and x.param == 2)
        or (x.kind == "complex_projective" and x.param is None)
    ):
        raise UnsupportedQueryError(
            "degree-7 conclusions are tabulated for S^2 and CP^inf only"
        )
    line: dict[tuple[int, int], FgAbGroup] = {}
    for j in range(0, 8):
        i = 7 - j
        if i < 0:
            continue
        if x.homology_rank(i) and not row[j].is_trivial:
            line[(i, j)] = row[j]
    e2_line = AHSSPage.from_dict(line)

    killed: list[tuple[int, int]] = []
    notes: list[str] = []
    surviving = dict(line)
    source_rank = x.homology_rank(8) * row[0].free_rank
    target = line.get((6, 1))
    if (
        x.kind == "complex_projective"
        and source_rank > 0
        and target is not None
        and target == FgAbGroup.cyclic(2)
    ):
        coeff = sq2_dual_cp(3)
        if coeff == 1:
            killed.append((6, 1))
            del surviving[(6, 1)]
            notes.append(
                "the differential E2_{8,0} -> E2_{6,1} is mod-2 reduction "
                "followed by the dual Steenrod square H_8(CP^inf;Z/2) -> "
                "H_6(CP^inf;Z/2), which is nonzero (Teichner 1993), so the "
                "(6,1) entry dies"
            )
    surviving_page = AHSSPage.from_dict(surviving)

    if surviving_page.is_trivial():
        conclusion = f"Omega_7({x.label()} x BO<5>) = 0"
    else:
        parts = ", ".join(
            f"{grp} at ({i},{j})" for (i, j), grp in surviving_page.nonzero()
        )
        conclusion = (
            f"upper bound after known differentials: Omega_7({x.label()} x BO<5>) "
            f"is a quotient of a group built from {parts}"
        )
        notes.append(
            "upper bound only: the remaining quotient is identified "
            "geometrically (a framed 3-sphere crossed with CP^2 maps onto "
            "the degree-7 bordism modulo homotopy spheres); that step is "
            "recorded, not recomputed here"
        )
    return Degree7Report(
        space=x,
        e2_line=e2_line,
        surviving=surviving_page,
        killed=tuple(killed),
        conclusion=conclusion,
        notes=tuple(notes),
    )


def obstruction_groups(
    base_homology: Sequence[FgAbGroup], fiber_row: CoefficientRow
) -> tuple[FgAbGroup, ...]:
    """Obstructions to extending a lift across the complement live in
    H_{4-i}(N; pi_i(F)); with free base homology this is a direct sum of
    rank(H_{4-i}) copies of pi_i(F).

    Torsion coefficient pairings (Tor terms) are out of scope and
    reported as unsupported when they would matter.
    """
    out: list[FgAbGroup] = []
    for i in range(8):
        deg = 4 - i
        if 0 <= deg < len(base_homology):
            base = base_homology[deg]
            if base.torsion and not fiber_row[i].is_trivial:
                raise UnsupportedQueryError(
                    f"H_{deg} of the base has torsion; torsion coefficient "
                    "pairings are not modelled"
                )
            grp = TRIVIAL
            for _ in range(base.free_rank):
                grp = group_sum(grp, fiber_row[i])
            out.append(grp)
        else:
            out.append(TRIVIAL)
    return tuple(out)

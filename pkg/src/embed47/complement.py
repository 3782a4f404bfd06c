"""CW homotopy models of embedding complements.

When H_1(N) = 0, the complement of an embedded 4-manifold in the
7-sphere is homotopy equivalent to a 2-sphere with b_2(N) 4-cells
attached, the attaching data being the coordinates of the invariant of
the embedding.  This module computes the homology of that cell complex
from its chain complex (not from a lookup), the third homotopy group
through the degree map to the infinite complex-projective space, and
the wedge shape of the untwisted case.

``pi3_of`` is deliberately an independent computation path from the
gcd-based divisibility of a class: the two must agree, and the test
suite drives that agreement hard.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInputError
from .exactalg import FgAbGroup, IntMatrix, cokernel, invariant_factors, rank


@dataclass(frozen=True)
class ComplementModel:
    """S^2 with b2 4-cells attached along the classes in ``attaching``."""

    b2: int
    attaching: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.b2 < 0:
            raise InvalidInputError("b2 must be non-negative")
        if len(self.attaching) != self.b2:
            raise InvalidInputError("attaching vector length must equal b2")
        if not all(isinstance(a, int) for a in self.attaching):
            raise InvalidInputError("attaching coordinates must be integers")

    @classmethod
    def from_attaching(cls, attaching: Sequence[int]) -> "ComplementModel":
        return cls(len(attaching), tuple(int(a) for a in attaching))


def _cell_counts(model: ComplementModel) -> tuple[int, ...]:
    # one 0-cell, one 2-cell, b2 4-cells
    return (1, 0, 1, 0, model.b2)


def homology_of(model: ComplementModel) -> tuple[FgAbGroup, ...]:
    """Integral homology in degrees 0..4, from the cellular chain complex.

    The complex has cells only in even degrees 0, 2, 4, so every
    boundary map is zero; the computation still runs through the
    generic rank / invariant-factor machinery.

    >>> [str(g) for g in homology_of(ComplementModel.from_attaching([1]))]
    ['Z', '0', 'Z', '0', 'Z']
    """
    dims = _cell_counts(model)
    # boundary[k]: C_k -> C_{k-1}; there are no odd cells, so all zero
    boundary = [IntMatrix.zero(dims[k - 1] if k > 0 else 0, dims[k]) for k in range(5)]
    boundary.append(IntMatrix.zero(dims[4], 0))  # nothing above degree 4
    groups = []
    for k in range(5):
        rank_in = rank(boundary[k]) if k > 0 else 0
        rank_out = rank(boundary[k + 1])
        free = dims[k] - rank_in - rank_out
        torsion = [d for d in invariant_factors(boundary[k + 1]) if d > 1]
        groups.append(FgAbGroup.from_divisors(torsion, free))
    return tuple(groups)


def euler_characteristic(model: ComplementModel) -> int:
    dims = _cell_counts(model)
    return sum((-1) ** k * d for k, d in enumerate(dims))


def pi3_of(model: ComplementModel) -> FgAbGroup:
    """pi_3 of the model: Z for zero attaching, Z/d otherwise.

    Computed through the degree map to the infinite complex-projective
    space: the i-th 4-cell hits ``attaching[i]`` times the degree-4
    generator, so pi_3 is the cokernel of that 1 x b2 integer matrix.
    This never looks at gcds directly.

    >>> str(pi3_of(ComplementModel.from_attaching([2, 0])))
    'Z/2'
    >>> str(pi3_of(ComplementModel.from_attaching([0, 0])))
    'Z'
    """
    degree_map = IntMatrix(1, model.b2, model.attaching)
    return cokernel(degree_map)


def wedge_form(model: ComplementModel) -> str | None:
    """The wedge S^2 v b2 * S^4 when the attaching vector vanishes.

    Twisted models are not wedges of this shape; None says "report the
    cell structure verbatim instead".
    """
    if any(a != 0 for a in model.attaching):
        return None
    if model.b2 == 0:
        return "S^2"
    return f"S^2 v {model.b2}*S^4"

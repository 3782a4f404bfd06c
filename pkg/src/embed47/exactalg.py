"""Exact integer linear algebra and finitely generated abelian groups.

Everything here runs on arbitrary-precision Python integers, or exact
``fractions.Fraction`` values for the congruence diagonalization.  No
floating point is used anywhere: determinants, Smith normal forms and
inertia counts are certificates, not approximations.

The two data types, :class:`IntMatrix` and :class:`FgAbGroup`, are the
substrate for the lattice, complement and spectral-sequence layers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InvalidInputError


@dataclass(frozen=True)
class IntMatrix:
    """An immutable integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise InvalidInputError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise InvalidInputError(
                f"entry list has length {len(self.entries)}, "
                f"expected {self.rows * self.cols}"
            )
        if not all(isinstance(e, int) for e in self.entries):
            raise InvalidInputError("matrix entries must be integers")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise InvalidInputError("ragged rows")
        return cls(nrows, ncols, tuple(int(e) for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvalidInputError("matrix shapes do not compose")
        rows = []
        ocols = [tuple(other[k, j] for k in range(other.rows)) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            rows.append([sum(a * b for a, b in zip(r, c)) for c in ocols])
        return IntMatrix(self.rows, other.cols, tuple(e for r in rows for e in r))

    def mat_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise InvalidInputError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )


def determinant(m: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise InvalidInputError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntMatrix) -> bool:
    return m.is_square and abs(determinant(m)) == 1


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(diagonal, left, right)`` with ``left @ m @ right == diagonal``.

    The diagonal entries are non-negative and form a divisibility chain
    d1 | d2 | ...; ``left`` and ``right`` are unimodular (det = +-1).

    >>> d, l, r = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    >>> [d[0, 0], d[1, 1]]
    [1, 6]
    """
    nr, nc = m.rows, m.cols
    a = m.to_rows()
    left = IntMatrix.identity(nr).to_rows()
    right = IntMatrix.identity(nc).to_rows()

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def add_row(i: int, j: int, q: int) -> None:
        # row_i += q * row_j
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        left[i] = [x + q * y for x, y in zip(left[i], left[j])]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_col(i: int, j: int, q: int) -> None:
        # col_i += q * col_j
        for row in a:
            row[i] += q * row[j]
        for row in right:
            row[i] += q * row[j]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    t = 0
    while t < min(nr, nc):
        # Pick the nonzero entry of smallest magnitude as pivot.
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])

        while True:
            # Clear column t; a remainder smaller than the pivot becomes
            # the new pivot, so this terminates.
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t] != 0:
                        swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(j, t)
                        dirty = True
            if dirty:
                continue
            # Divisibility pass: the pivot must divide the rest of the
            # submatrix for the chain d1 | d2 | ... to hold.
            offender = None
            for i in range(t + 1, nr):
                for j in range(t + 1, nc):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    return (
        IntMatrix.from_rows(a) if nr else IntMatrix.zero(nr, nc),
        IntMatrix.from_rows(left) if nr else IntMatrix.identity(0),
        IntMatrix.from_rows(right) if nc else IntMatrix.identity(0),
    )


def rank(m: IntMatrix) -> int:
    d, _, _ = smith_normal_form(m)
    return sum(1 for i in range(min(m.rows, m.cols)) if d[i, i] != 0)


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith form, in chain order."""
    d, _, _ = smith_normal_form(m)
    return tuple(d[i, i] for i in range(min(m.rows, m.cols)) if d[i, i] != 0)


def _normalize_chain(divisors: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Split cyclic orders into (extra free rank, invariant-factor chain).

    Zeros count toward free rank, units are dropped, and the remaining
    orders are merged with gcd/lcm swaps until d_i | d_{i+1}.  The
    multiset of prime powers is preserved, so the result is the unique
    normal form.
    """
    free = 0
    tor: list[int] = []
    for d in divisors:
        d = abs(int(d))
        if d == 0:
            free += 1
        elif d > 1:
            tor.append(d)
    changed = True
    while changed:
        changed = False
        for i in range(len(tor)):
            for j in range(i + 1, len(tor)):
                if tor[j] % tor[i] != 0:
                    g = gcd(tor[i], tor[j])
                    tor[i], tor[j] = g, lcm(tor[i], tor[j])
                    changed = True
    tor = [d for d in tor if d > 1]
    tor.sort()
    return free, tuple(tor)


@dataclass(frozen=True)
class FgAbGroup:
    """A finitely generated abelian group in invariant-factor normal form.

    ``free_rank`` copies of Z plus Z/d1 + ... + Z/dk with
    2 <= d1 | d2 | ... | dk.  The representation is unique, so equality
    of values is isomorphism of groups.

    >>> FgAbGroup.from_divisors([2, 3])
    FgAbGroup(free_rank=0, torsion=(6,))
    >>> str(FgAbGroup(1, (12,)))
    'Z + Z/12'
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise InvalidInputError("free rank must be non-negative")
        for d in self.torsion:
            if not isinstance(d, int) or d < 2:
                raise InvalidInputError("torsion entries must be integers >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise InvalidInputError(
                    f"torsion {self.torsion} is not a divisibility chain; "
                    "use FgAbGroup.from_divisors to normalize"
                )

    @classmethod
    def from_divisors(cls, divisors: Iterable[int], free_rank: int = 0) -> "FgAbGroup":
        extra, tor = _normalize_chain(divisors)
        return cls(free_rank + extra, tor)

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank_: int) -> "FgAbGroup":
        return cls(rank_, ())

    @classmethod
    def cyclic(cls, d: int) -> "FgAbGroup":
        """Z/d, with Z/0 = Z and Z/1 = 0."""
        return cls.from_divisors([d])

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __str__(self) -> str:
        parts: list[str] = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def group_sum(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    """Direct sum, renormalized.

    >>> str(group_sum(FgAbGroup.cyclic(2), FgAbGroup.cyclic(3)))
    'Z/6'
    """
    return FgAbGroup.from_divisors(a.torsion + b.torsion, a.free_rank + b.free_rank)


def cokernel(m: IntMatrix) -> FgAbGroup:
    """The group presented by the columns of ``m`` as relations on Z^rows."""
    factors = invariant_factors(m)
    free = m.rows - len(factors)
    return FgAbGroup.from_divisors(factors, free)


FracRows = tuple[tuple[Fraction, ...], ...]


def congruence_diagonalize(g: IntMatrix) -> tuple[tuple[Fraction, ...], FracRows]:
    """Diagonalize a symmetric form over Q: transform^T * g * transform is diagonal.

    Returns ``(diagonal, transform)`` where ``transform`` is given as rows
    of exact rationals.  Symmetric Gaussian elimination with symmetric
    pivoting; when every remaining diagonal entry vanishes but some
    off-diagonal entry a_ij does not, the basis change u_i -> u_i + u_j
    makes the diagonal entry 2*a_ij != 0 (the hyperbolic-block split,
    contributing inertia (1, 1)).
    """
    if not g.is_symmetric():
        raise InvalidInputError("congruence diagonalization needs a symmetric matrix")
    n = g.rows
    a = [[Fraction(g[i, j]) for j in range(n)] for i in range(n)]
    t = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]

    def sym_swap(i: int, j: int) -> None:
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]
            t[r][i], t[r][j] = t[r][j], t[r][i]
        a[i], a[j] = a[j], a[i]

    def sym_add(i: int, j: int, f: Fraction) -> None:
        # basis change u_i += f * u_j
        for r in range(n):
            a[r][i] += f * a[r][j]
            t[r][i] += f * t[r][j]
        a[i] = [x + f * y for x, y in zip(a[i], a[j])]

    for k in range(n):
        if a[k][k] == 0:
            swapped = False
            for i in range(k + 1, n):
                if a[i][i] != 0:
                    sym_swap(k, i)
                    swapped = True
                    break
            if not swapped:
                hit = None
                for i in range(k, n):
                    for j in range(i + 1, n):
                        if a[i][j] != 0:
                            hit = (i, j)
                            break
                    if hit:
                        break
                if hit is None:
                    break  # remaining block is zero
                i, j = hit
                sym_add(i, j, Fraction(1))  # now a[i][i] = 2*a_ij != 0
                if i != k:
                    sym_swap(k, i)
        for i in range(k + 1, n):
            if a[k][i] != 0:
                sym_add(i, k, -a[k][i] / a[k][k])

    diag = tuple(a[i][i] for i in range(n))
    for i in range(n):
        for j in range(n):
            if i != j:
                assert a[i][j] == 0, "diagonalization left an off-diagonal entry"
    return diag, tuple(tuple(row) for row in t)


def inertia(g: IntMatrix) -> tuple[int, int, int]:
    """Counts of (positive, negative, zero) diagonal entries after
    congruence diagonalization (Sylvester's law makes these invariants)."""
    diag, _ = congruence_diagonalize(g)
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    return pos, neg, len(diag) - pos - neg

"""Integral intersection forms on the middle homology of a 4-manifold.

An :class:`IntegralLattice` is a symmetric integer Gram matrix.  The
operations here are the form-theoretic half of the classification:
signature and parity, the characteristic (Wu) condition, complete
enumeration of characteristic vectors of a prescribed square,
divisibility of a class, and splitting even signature-zero unimodular
forms into hyperbolic planes.

Enumeration is certified for definite forms: a Fincke-Pohst style
backtracking search over the exact rational diagonalization visits
every solution regardless of the caller's box bound.  Indefinite forms
are searched inside the box only and flagged ``POSSIBLY_INFINITE``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor, gcd, isqrt

from .errors import DegenerateFormError, InvalidInputError
from .exactalg import IntMatrix, determinant, inertia, smith_normal_form


@dataclass(frozen=True)
class IntegralLattice:
    """A symmetric bilinear form on Z^rank given by its Gram matrix."""

    gram: IntMatrix

    def __post_init__(self) -> None:
        if not self.gram.is_square:
            raise InvalidInputError("Gram matrix not square")
        if not self.gram.is_symmetric():
            raise InvalidInputError("Gram matrix not symmetric")

    @classmethod
    def from_rows(cls, rows) -> "IntegralLattice":
        if len(rows) == 0:
            return cls(IntMatrix.zero(0, 0))
        return cls(IntMatrix.from_rows(rows))

    @property
    def rank(self) -> int:
        return self.gram.rows

    def determinant(self) -> int:
        return determinant(self.gram)

    def is_unimodular(self) -> bool:
        return abs(self.determinant()) == 1

    def is_nondegenerate(self) -> bool:
        return self.determinant() != 0

    def product(self, x: "H2Class", y: "H2Class") -> int:
        """The pairing x . y."""
        gx = self.gram.mat_vec(x.coords)
        return sum(a * b for a, b in zip(y.coords, gx))


@dataclass(frozen=True, order=True)
class H2Class:
    """A middle-homology class in the coordinates of the chosen basis."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if not all(isinstance(c, int) for c in self.coords):
            raise InvalidInputError("class coordinates must be integers")

    @classmethod
    def of(cls, *coords: int) -> "H2Class":
        return cls(tuple(coords))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


class Finiteness(enum.Enum):
    FINITE = "finite"
    POSSIBLY_INFINITE = "possibly-infinite"


HYPERBOLIC_ROWS = ((0, 1), (1, 0))


def hyperbolic_plane() -> IntegralLattice:
    return IntegralLattice.from_rows(HYPERBOLIC_ROWS)


def signature(l: IntegralLattice) -> int:
    """Positive minus negative inertia indices; sign fixed by sigma([1]) = +1."""
    pos, neg, zero = inertia(l.gram)
    if zero:
        raise DegenerateFormError(
            "intersection form is degenerate (det = 0); a closed oriented "
            "4-manifold has a nondegenerate form"
        )
    return pos - neg


def is_even(l: IntegralLattice) -> bool:
    """True iff x.x is even for every x, i.e. every diagonal entry is even."""
    return all(l.gram[i, i] % 2 == 0 for i in range(l.rank))


def is_characteristic(l: IntegralLattice, x: H2Class) -> bool:
    """The Wu condition: x.y = y.y (mod 2) for all y.

    On a basis this reads (gram @ x)_i = gram_ii (mod 2) for every i.
    Characteristic vectors represent the Poincare dual of w_2.
    """
    if len(x.coords) != l.rank:
        raise InvalidInputError("class length does not match lattice rank")
    gx = l.gram.mat_vec(x.coords)
    return all((gx[i] - l.gram[i, i]) % 2 == 0 for i in range(l.rank))


def divisibility(x: H2Class) -> int:
    """gcd of the coordinates; 0 for the zero class.

    Since the ambient group is free this equals the largest k such that
    x = k*y has a solution y.
    """
    return gcd(*x.coords) if x.coords else 0


def is_primitive(x: H2Class) -> bool:
    """True iff no d >= 2 divides x (so the zero class is not primitive)."""
    return divisibility(x) == 1


# --- characteristic-vector enumeration ---------------------------------


def _definiteness(l: IntegralLattice) -> int:
    """+1 positive definite, -1 negative definite, 0 indefinite.

    Rank 0 counts as definite.  Raises on degenerate forms.
    """
    pos, neg, zero = inertia(l.gram)
    if zero:
        raise DegenerateFormError("cannot enumerate on a degenerate form")
    if neg == 0:
        return 1
    if pos == 0:
        return -1
    return 0


def _fp_decompose(g: IntMatrix) -> list[list[Fraction]]:
    """Write a positive definite form as sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.

    Rational and exact; no pivoting is needed because every leading
    principal minor of a positive definite matrix is positive.
    """
    n = g.rows
    q = [[Fraction(g[i, j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for k in range(i):
            q[i][i] -= q[k][k] * q[k][i] * q[k][i]
        assert q[i][i] > 0, "form is not positive definite"
        for j in range(i + 1, n):
            for k in range(i):
                q[i][j] -= q[k][k] * q[k][i] * q[k][j]
            q[i][j] /= q[i][i]
    return q


def _interval(c: Fraction, s: Fraction) -> range:
    """All integers x with (x + c)^2 <= s, computed exactly."""
    if s < 0:
        return range(0)
    # sqrt(s) = sqrt(num*den)/den; isqrt gives a floor we then widen by 1
    # and shrink back with exact comparisons.
    approx = Fraction(isqrt(s.numerator * s.denominator) + 1, s.denominator)
    lo = ceil(-c - approx)
    hi = floor(-c + approx)
    while lo <= hi and (lo + c) * (lo + c) > s:
        lo += 1
    while hi >= lo and (hi + c) * (hi + c) > s:
        hi -= 1
    return range(lo, hi + 1)


def _definite_square_solutions(g: IntMatrix, target: int) -> list[tuple[int, ...]]:
    """All integer vectors of square exactly ``target`` on a positive
    definite form.  Complete by Fincke-Pohst backtracking."""
    if target < 0:
        return []
    n = g.rows
    if n == 0:
        return [()] if target == 0 else []
    q = _fp_decompose(g)
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def descend(i: int, remaining: Fraction) -> None:
        if i < 0:
            if remaining == 0:
                out.append(tuple(x))
            return
        c = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        for xi in _interval(c, remaining / q[i][i]):
            x[i] = xi
            descend(i - 1, remaining - q[i][i] * (xi + c) * (xi + c))
        x[i] = 0

    descend(n - 1, Fraction(target))
    return out


def _mod2_characteristic_coset(g: IntMatrix) -> tuple[int, ...] | None:
    """Solve gram * x = diag(gram) (mod 2); unique when det is odd.

    Returns the coset representative in {0,1}^n, or None when the mod-2
    system is not uniquely solvable (even determinant).
    """
    n = g.rows
    a = [[g[i, j] % 2 for j in range(n)] + [g[i, i] % 2] for i in range(n)]
    row = 0
    pivots = []
    for col in range(n):
        piv = next((r for r in range(row, n) if a[r][col]), None)
        if piv is None:
            return None
        a[row], a[piv] = a[piv], a[row]
        for r in range(n):
            if r != row and a[r][col]:
                a[r] = [(u + v) % 2 for u, v in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
    sol = [0] * n
    for r, col in enumerate(pivots):
        sol[col] = a[r][n]
    return tuple(sol)


def enumerate_characteristic(
    l: IntegralLattice, target_square: int, bound: int
) -> tuple[tuple[H2Class, ...], Finiteness]:
    """All characteristic classes x with x.x = target_square.

    For definite forms the answer is complete whatever the box bound
    (the rational diagonalization bounds every coordinate), and the
    flag is ``FINITE``.  For indefinite forms the search is restricted
    to max|x_i| <= bound and flagged ``POSSIBLY_INFINITE``: complete
    within the box, with no claim beyond it.

    Output is sorted lexicographically.
    """
    if bound < 1:
        raise InvalidInputError("bound must be a positive count")
    g = l.gram
    n = l.rank
    kind = _definiteness(l)

    if kind != 0:
        sign_fix = kind
        gg = g if sign_fix > 0 else IntMatrix(n, n, tuple(-e for e in g.entries))
        raw = _definite_square_solutions(gg, sign_fix * target_square)
        classes = [H2Class(v) for v in raw]
        finiteness = Finiteness.FINITE
    else:
        coset = _mod2_characteristic_coset(g)
        if coset is not None:
            axes = [
                [v for v in range(-bound, bound + 1) if (v - c) % 2 == 0]
                for c in coset
            ]
        else:
            axes = [list(range(-bound, bound + 1))] * n
        rows = [g.row(i) for i in range(n)]
        classes = []
        for v in product(*axes):
            gx = [sum(a * b for a, b in zip(r, v)) for r in rows]
            if sum(a * b for a, b in zip(v, gx)) != target_square:
                continue
            if all((gx[i] - rows[i][i]) % 2 == 0 for i in range(n)):
                classes.append(H2Class(tuple(v)))
        finiteness = Finiteness.POSSIBLY_INFINITE

    result = tuple(sorted(c for c in classes if is_characteristic(l, c)))
    for c in result:
        assert l.product(c, c) == target_square
    if result and l.is_unimodular():
        # van der Blij: characteristic squares are = signature (mod 8)
        assert (target_square - signature(l)) % 8 == 0, (
            "characteristic class found at a square not congruent to the "
            "signature mod 8; this contradicts van der Blij's congruence"
        )
    return result, finiteness


# --- hyperbolic splitting ----------------------------------------------


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, u, v = _extended_gcd(b, a % b)
    return g, v, u - (a // b) * v


def _solve_dot_one(a: tuple[int, ...]) -> list[int]:
    """An integer vector w with <a, w> = 1; requires gcd(a) = 1."""
    n = len(a)
    w = [0] * n
    g = 0
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        if g == 0:
            g = abs(ai)
            w = [0] * n
            w[i] = 1 if ai > 0 else -1
        else:
            d, u, v = _extended_gcd(g, ai)
            w = [u * c for c in w]
            w[i] += v
            g = d
        if g == 1:
            break
    assert g == 1, "vector is not primitive"
    return w


def _isotropic_primitive(g: IntMatrix, search_bound: int) -> tuple[int, ...] | None:
    """First primitive x != 0 with x.x = 0, by increasing sup-norm then
    lexicographic order inside each shell."""
    n = g.rows
    rows = [g.row(i) for i in range(n)]
    for shell in range(1, search_bound + 1):
        for v in product(range(-shell, shell + 1), repeat=n):
            if max(abs(c) for c in v) != shell:
                continue
            if gcd(*v) != 1:
                continue
            if sum(v[i] * sum(a * b for a, b in zip(rows[i], v)) for i in range(n)) == 0:
                return v
    return None


def _integer_kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel lattice {x : m @ x = 0}."""
    d, _, right = smith_normal_form(m)
    rk = sum(1 for i in range(min(m.rows, m.cols)) if d[i, i] != 0)
    return [tuple(right[i, j] for i in range(m.cols)) for j in range(rk, m.cols)]


def hyperbolic_split(l: IntegralLattice, search_bound: int = 10) -> IntMatrix | None:
    """Exhibit l as an orthogonal sum of hyperbolic planes, if possible.

    Returns a unimodular U with U^T * gram * U block diagonal with
    [[0,1],[1,0]] blocks (the rank-0 case succeeds with zero blocks), or
    None when no primitive isotropic vector shows up within
    ``search_bound`` (inconclusive, not a property of the form).

    Preconditions, all checked: the form is unimodular, even, of
    signature 0 (odd rank is impossible and rejected outright).
    """
    g = l.gram
    n = l.rank
    if n % 2 != 0:
        raise InvalidInputError("odd rank: a sum of hyperbolic planes has even rank")
    if not l.is_unimodular():
        raise InvalidInputError("hyperbolic splitting needs a unimodular form")
    if not is_even(l):
        raise InvalidInputError("hyperbolic splitting needs an even form")
    if signature(l) != 0:
        raise InvalidInputError("hyperbolic splitting needs signature 0")
    if search_bound < 1:
        raise InvalidInputError("search_bound must be a positive count")

    def split(gram: IntMatrix) -> list[tuple[int, ...]] | None:
        size = gram.rows
        if size == 0:
            return []
        v = _isotropic_primitive(gram, search_bound)
        if v is None:
            return None
        a = gram.mat_vec(v)
        w = _solve_dot_one(a)
        # make w isotropic: Q(w) is even, w -> w - (Q(w)/2) v keeps <v,w> = 1
        qw = sum(w[i] * c for i, c in enumerate(gram.mat_vec(w)))
        w = [w[i] - (qw // 2) * v[i] for i in range(size)]
        lead = next(c for c in v if c != 0)
        if lead < 0:
            # sign canonicalization; negating both keeps <v, w> = 1
            v = tuple(-c for c in v)
            w = [-c for c in w]
            a = tuple(-c for c in a)
        b = gram.mat_vec(w)
        pairing = IntMatrix.from_rows([list(a), list(b)])
        kernel = _integer_kernel_basis(pairing)
        assert len(kernel) == size - 2
        comp = IntMatrix(size, size - 2, tuple(
            kernel[j][i] for i in range(size) for j in range(size - 2)
        ))
        sub = comp.transpose() @ gram @ comp
        tail = split(IntegralLattice(sub).gram)
        if tail is None:
            return None
        columns = [tuple(v), tuple(w)]
        for t in tail:
            columns.append(tuple(
                sum(comp[i, j] * t[j] for j in range(size - 2)) for i in range(size)
            ))
        return columns

    columns = split(g)
    if columns is None:
        return None
    u = IntMatrix(n, n, tuple(columns[j][i] for i in range(n) for j in range(n)))
    check = u.transpose() @ g @ u
    for i in range(n):
        for j in range(n):
            block = i // 2 == j // 2 and i != j
            assert check[i, j] == (1 if block else 0), "splitting produced a bad basis"
    assert abs(determinant(u)) == 1
    return u


def hyperbolic_block_count(u: IntMatrix) -> int:
    return u.rows // 2

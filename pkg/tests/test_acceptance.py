"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they happen; without ``-s`` pytest shows them for failing criteria only.
"""

import io
import json
import random
import time
from contextlib import redirect_stdout
from itertools import product
from math import gcd

import pytest

from embed47.ahss import (
    CoefficientRow,
    SpaceDescriptor,
    degree7_after_known_differentials,
    e2_page,
    sq2_dual_cp,
)
from embed47.classify import Manifold4Data, classify_r7, embeds_in_r6, triviality_applicable
from embed47.cli import load_catalog, main, record_to_manifold
from embed47.complement import ComplementModel, pi3_of
from embed47.exactalg import FgAbGroup
from embed47.lattice import (
    Finiteness,
    H2Class,
    IntegralLattice,
    divisibility,
    enumerate_characteristic,
    is_characteristic,
    signature,
)
from embed47.tables import default_tables, homology_sphere_action_nontrivial


def report(number, description):
    """Decorator printing the criterion's PASS/FAIL line."""

    def wrap(fn):
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"[criterion {number:02d}] FAIL  {description}")
                raise
            print(f"[criterion {number:02d}] PASS  {description}")

        run.__name__ = fn.__name__
        return run

    return wrap


def catalog_manifolds():
    return [record_to_manifold(rec) for rec in load_catalog()]


def run_cli_machine(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        rc = main([*argv, "--format", "machine"])
    assert rc == 0
    return buf.getvalue()


CP2 = Manifold4Data(
    name="CP2", lattice=IntegralLattice.from_rows([[1]]), simply_connected=True
)


@report(1, "CP2: exactly 2 isotopy classes {+1,-1}, finite certificate, any bound")
def test_criterion_01_cp2_classification():
    start = time.perf_counter()
    for bound in (1, 2, 3, 7, 10, 100):
        rep = classify_r7(CP2, bound=bound)
        assert rep.isotopy_classes.kind == "exact"
        assert rep.isotopy_classes.value == 2
        assert rep.bh.finiteness is Finiteness.FINITE
        assert set(rep.bh.classes) == {H2Class.of(1), H2Class.of(-1)}
    assert time.perf_counter() - start < 1.0


@report(2, "S2xS2: the 9 box elements of {(2k,2l): kl=0}, possibly-infinite")
def test_criterion_02_s2xs2_image():
    start = time.perf_counter()
    out = run_cli_machine("bh-image", "--name", "S2xS2", "--bound", "4")
    payload = json.loads(out)
    expected = sorted(
        [[0, 0], [2, 0], [-2, 0], [0, 2], [0, -2], [4, 0], [-4, 0], [0, 4], [0, -4]]
    )
    assert payload["classes"] == expected
    assert payload["count_in_box"] == 9
    assert payload["finiteness"] == "possibly-infinite"
    assert time.perf_counter() - start < 1.0


@report(3, "pi_3 oracle: complement model equals Z/gcd on 1000 random vectors")
def test_criterion_03_pi3_oracle():
    start = time.perf_counter()
    rng = random.Random(474747)
    samples = [(), (0, 0, 0), (1,), (5, 3)]  # forced edge cases
    while len(samples) < 1000:
        b2 = rng.randint(0, 6)
        samples.append(tuple(rng.randint(-20, 20) for _ in range(b2)))
    for attaching in samples:
        got = pi3_of(ComplementModel.from_attaching(attaching))
        d = gcd(*attaching) if attaching else 0
        assert got == FgAbGroup.cyclic(d), attaching
        if attaching and all(a == 0 for a in attaching):
            assert got == FgAbGroup.free(1)
        if divisibility(H2Class(attaching)) == 1:
            assert got.is_trivial
    assert time.perf_counter() - start < 5.0


def _random_unimodular_symmetric(rng, max_rank=4, spread=3):
    while True:
        n = rng.randint(1, max_rank)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = rng.randint(-spread, spread)
        l = IntegralLattice.from_rows(rows)
        if l.is_unimodular():
            return l


@report(4, "characteristic solver set-equals the exhaustive box oracle (200 forms)")
def test_criterion_04_solver_vs_brute_force():
    np = pytest.importorskip("numpy")
    start = time.perf_counter()
    rng = random.Random(31337)
    bound = 5
    box = {
        n: np.array(list(product(range(-bound, bound + 1), repeat=n)), dtype=np.int64)
        for n in range(1, 5)
    }
    for _ in range(200):
        l = _random_unimodular_symmetric(rng)
        target = rng.randint(-8, 8)
        got, finiteness = enumerate_characteristic(l, target, bound)

        # Independent, vectorized oracle.  Entries <= 3 and |x_i| <= 5 keep
        # every intermediate far below the int64 range.
        g = np.array(l.gram.to_rows(), dtype=np.int64)
        x = box[l.rank]
        gx = x @ g
        squares = np.einsum("ij,ij->i", x, gx)
        char = ((gx - np.diag(g)) % 2 == 0).all(axis=1)
        oracle = sorted(map(tuple, x[(squares == target) & char].tolist()))

        in_box = [
            c.coords for c in got if max((abs(v) for v in c.coords), default=0) <= bound
        ]
        assert in_box == oracle, (l.gram.to_rows(), target)
        if finiteness is Finiteness.POSSIBLY_INFINITE:
            assert len(in_box) == len(got)
    assert time.perf_counter() - start < 30.0


@report(5, "van der Blij: enumerated characteristic squares are sigma mod 8")
def test_criterion_05_van_der_blij():
    for m in catalog_manifolds():
        if m.b2 > 6:
            continue  # the K3 box search is budget-barred; nothing enumerates
        l = m.lattice
        assert l.is_unimodular()
        sigma = signature(l)
        for t in (sigma - 8, sigma, sigma + 8):
            classes, _ = enumerate_characteristic(l, t, 4)
            for c in classes:
                assert is_characteristic(l, c)
                assert (l.product(c, c) - sigma) % 8 == 0
        # the contrapositive: off-congruence targets admit no
        # characteristic vectors at all
        for t in range(sigma - 4, sigma + 4):
            if (t - sigma) % 8 != 0:
                classes, _ = enumerate_characteristic(l, t, 4)
                assert classes == ()


@report(6, "R^6 criteria agree; S2xS2 true w/ 1 block, CP2/CP2#CP2/K3 false")
def test_criterion_06_r6_equivalences():
    verdicts = {}
    for m in catalog_manifolds():
        rep = embeds_in_r6(m)
        verdicts[m.name] = rep
        c2 = rep.conditions["w2_zero_and_sigma_zero"]
        c4 = rep.conditions.get("form_is_sum_of_hyperbolic_planes")
        if c4 is not None:
            assert c2 == c4, m.name
    assert verdicts["S2xS2"].verdict.value is True
    assert verdicts["S2xS2"].hyperbolic_blocks == 1
    for name in ("CP2", "CP2#CP2", "K3"):
        assert verdicts[name].verdict.value is False, name


@report(7, "spectral sequence: S^2 line trivial; CP^inf line Z/2 + Z/24, Z/2 killed")
def test_criterion_07_ahss():
    start = time.perf_counter()
    row = CoefficientRow(default_tables().bordism_row(), name="Omega_*(BO<5>)")
    s2 = degree7_after_known_differentials(SpaceDescriptor.sphere(2), row)
    assert s2.e2_line.is_trivial()
    assert s2.conclusion == "Omega_7(S^2 x BO<5>) = 0"
    page = e2_page(SpaceDescriptor.sphere(2), row, 7)
    assert all(i + j != 7 for (i, j), _ in page.nonzero())

    cp = degree7_after_known_differentials(SpaceDescriptor.complex_projective(), row)
    line = {(i, j): str(g) for (i, j), g in cp.e2_line.nonzero()}
    assert line == {(6, 1): "Z/2", (4, 3): "Z/24"}
    assert cp.killed == ((6, 1),)
    assert [str(g) for _, g in cp.surviving.nonzero()] == ["Z/24"]
    assert sq2_dual_cp(3) == 1
    assert sq2_dual_cp(2) == 0
    assert time.perf_counter() - start < 1.0


@report(8, "table fidelity: shipped groups and the n<=19 action truth table")
def test_criterion_08_tables():
    tables = default_tables()
    assert str(tables.lookup("pi4(G3,SO3)").value) == "Z/12"
    assert str(tables.lookup("E7(S4)").value) == "Z/12"
    assert str(tables.lookup("E8(S5)").value) == "Z/2"
    assert str(tables.lookup("pi4(G,SO)").value) == "Z"
    assert str(tables.lookup("pi5(G,SO)").value) == "0"
    assert [str(g) for g in tables.bordism_row()] == [
        "Z", "Z/2", "Z/2", "Z/24", "0", "0", "Z/2", "0",
    ]
    for n in range(3, 20):
        expected = n not in {6, 7, 9, 15}
        assert homology_sphere_action_nontrivial(n).value is expected, n


@report(9, "gate logic: sigma = 0, 4 inapplicable; 1,2,3,5,6 applicable; R^6 => closed gate")
def test_criterion_09_gates():
    def diag_ones(k):
        rows = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        return Manifold4Data(
            name=f"#_{k} CP2",
            lattice=IntegralLattice.from_rows(rows),
            simply_connected=True,
        )

    assert triviality_applicable(diag_ones(4)).value is False  # sigma = 4
    for m in catalog_manifolds():
        if m.sigma() == 0:
            assert triviality_applicable(m).value is False, m.name
    for k in (1, 2, 3, 5, 6):
        assert triviality_applicable(diag_ones(k)).value is True, k
    for m in catalog_manifolds():
        if embeds_in_r6(m).verdict.value:
            assert triviality_applicable(m).value is False, m.name


@report(10, "determinism: two catalog classify runs are byte-identical")
def test_criterion_10_determinism():
    first = run_cli_machine("classify")
    second = run_cli_machine("classify")
    assert first == second
    assert first.encode() == second.encode()

import pytest

from embed47.classify import (
    ClassificationReport,
    Manifold4Data,
    action_effective,
    action_trivial,
    classify_r7,
    compressible,
    embeds_in_r6,
    embeds_in_r7,
    knot_table,
    triviality_applicable,
)
from embed47.errors import InvalidInputError, UnsupportedQueryError
from embed47.exactalg import FgAbGroup
from embed47.lattice import Finiteness, H2Class, IntegralLattice


def manifold(name, rows, *, spin=None, sc=True, **kw):
    lattice = IntegralLattice.from_rows(rows)
    if spin is None:
        spin = all(r[i] % 2 == 0 for i, r in enumerate(rows))
    return Manifold4Data(name=name, lattice=lattice, spin=spin, simply_connected=sc, **kw)


CP2 = manifold("CP2", [[1]])
S2XS2 = manifold("S2xS2", [[0, 1], [1, 0]])
CP2_CP2 = manifold("CP2#CP2", [[1, 0], [0, 1]])
CP2_MCP2 = manifold("CP2#-CP2", [[1, 0], [0, -1]])
S4 = manifold("S4", [])
S1XS3 = Manifold4Data(
    name="S1xS3",
    lattice=IntegralLattice.from_rows([]),
    h1_rank=1,
    h1_mod2_rank=1,
    spin=True,
    simply_connected=False,
)


class TestManifoldValidation:
    def test_simply_connected_forces_h1(self):
        with pytest.raises(InvalidInputError, match="simply connected"):
            Manifold4Data(
                name="bad",
                lattice=IntegralLattice.from_rows([[1]]),
                h1_rank=1,
                h1_mod2_rank=1,
                simply_connected=True,
            )

    def test_spin_parity_checked(self):
        with pytest.raises(InvalidInputError, match="spin"):
            manifold("bad", [[1]], spin=True)

    def test_orientable_needs_unimodular(self):
        with pytest.raises(InvalidInputError, match="unimodular"):
            manifold("bad", [[2]], spin=True)

    def test_mod2_rank_consistency(self):
        with pytest.raises(InvalidInputError, match="h1_mod2_rank"):
            Manifold4Data(
                name="bad",
                lattice=IntegralLattice.from_rows([]),
                h1_rank=1,
                h1_mod2_rank=0,
                spin=True,
            )
        # torsion Z/2 contributes to H_1(N;Z/2)
        Manifold4Data(
            name="ok",
            lattice=IntegralLattice.from_rows([]),
            h1_torsion=(2,),
            h1_mod2_rank=1,
            spin=True,
        )


class TestEmbeddability:
    def test_r7(self):
        assert embeds_in_r7(CP2).value is True
        assert embeds_in_r7(S2XS2).value is True
        nonor = Manifold4Data(
            name="nonor",
            lattice=IntegralLattice.from_rows([[2]]),
            h1_mod2_rank=1,
            h1_torsion=(2,),
            orientable=False,
            spin=False,
        )
        assert embeds_in_r7(nonor).value is None

    def test_r6_s2xs2(self):
        report = embeds_in_r6(S2XS2)
        assert report.verdict.value is True
        assert report.hyperbolic_blocks == 1
        assert report.certificate is not None
        assert report.conditions["form_is_sum_of_hyperbolic_planes"] is True

    def test_r6_cp2(self):
        report = embeds_in_r6(CP2)
        assert report.verdict.value is False
        assert "w_2" in report.verdict.reason
        assert report.conditions["form_is_sum_of_hyperbolic_planes"] is False

    def test_r6_odd_form_sigma_zero(self):
        report = embeds_in_r6(CP2_MCP2)
        assert report.verdict.value is False  # odd form despite sigma = 0
        assert report.conditions["w2_zero_and_sigma_zero"] is False

    def test_r6_s4_zero_blocks(self):
        report = embeds_in_r6(S4)
        assert report.verdict.value is True
        assert report.hyperbolic_blocks == 0

    def test_conditions_agree_on_catalog(self):
        for m in (CP2, S2XS2, CP2_CP2, CP2_MCP2, S4):
            report = embeds_in_r6(m)
            c4 = report.conditions["form_is_sum_of_hyperbolic_planes"]
            if c4 is not None:
                assert c4 == report.conditions["w2_zero_and_sigma_zero"]


class TestTrivialityGate:
    def test_examples(self):
        assert triviality_applicable(CP2).value is True
        assert triviality_applicable(S2XS2).value is False  # sigma = 0
        sigma4 = manifold("4CP2", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        assert triviality_applicable(sigma4).value is False  # 4 = 2^2

    def test_square_free_values(self):
        diag = lambda entries: manifold(
            "d", [[e if i == j else 0 for j, e in enumerate(entries)] for i in range(len(entries))]
        )
        for sigma, expected in [(1, True), (2, True), (3, True), (5, True), (6, True)]:
            m = diag([1] * sigma)
            assert triviality_applicable(m).value is expected, sigma

    def test_h1_blocks_gate(self):
        m = Manifold4Data(
            name="h1",
            lattice=IntegralLattice.from_rows([[1]]),
            h1_rank=1,
            h1_mod2_rank=1,
            spin=False,
        )
        verdict = triviality_applicable(m)
        assert verdict.value is False
        assert "H_1" in verdict.reason


class TestClassify:
    def test_cp2_exact_two_classes(self):
        for bound in (1, 5, 20):
            report = classify_r7(CP2, bound=bound)
            assert report.isotopy_classes.kind == "exact"
            assert report.isotopy_classes.value == 2
            assert report.bh.finiteness is Finiteness.FINITE
            assert set(report.bh.classes) == {H2Class.of(1), H2Class.of(-1)}
            assert report.primitive_count == 2

    def test_s2xs2_family(self):
        report = classify_r7(S2XS2, bound=4)
        assert report.triviality.value is False
        assert report.isotopy_classes.kind == "not-determined"
        got = {c.coords for c in report.bh.classes}
        assert got == {
            (0, 0), (2, 0), (-2, 0), (0, 2), (0, -2), (4, 0), (-4, 0), (0, 4), (0, -4)
        }
        assert report.bh.finiteness is Finiteness.POSSIBLY_INFINITE

    def test_connected_sum_cp2(self):
        report = classify_r7(CP2_CP2, bound=3)
        assert report.triviality.value is True  # sigma = 2 is square-free
        assert report.isotopy_classes.kind == "exact"
        assert report.isotopy_classes.value == 4
        assert {c.coords for c in report.bh.classes} == {
            (1, 1), (1, -1), (-1, 1), (-1, -1)
        }

    def test_s4_single_value(self):
        report = classify_r7(S4)
        assert report.bh.classes == (H2Class.of(),)
        assert report.triviality.value is False
        assert report.isotopy_classes.kind == "not-determined"

    def test_budget_guard(self):
        big = manifold("big", [[0, 1], [1, 0]])
        report = classify_r7(big, bound=10, box_budget=10)
        assert report.bh is None
        assert "budget" in report.bh_skipped_reason
        assert report.isotopy_classes.kind == "not-determined"

    def test_nonorientable_rejected(self):
        nonor = Manifold4Data(
            name="nonor",
            lattice=IntegralLattice.from_rows([[2]]),
            h1_mod2_rank=1,
            h1_torsion=(2,),
            orientable=False,
            spin=False,
        )
        with pytest.raises(InvalidInputError):
            classify_r7(nonor)

    def test_r6_implies_gate_closed(self):
        for m in (CP2, S2XS2, CP2_CP2, CP2_MCP2, S4):
            report = classify_r7(m, bound=3)
            if report.embeds_r6.verdict.value:
                assert report.triviality.value is False


class TestActions:
    def test_trivial_for_cp2(self):
        assert action_trivial(CP2).value is True

    def test_per_class_primitive(self):
        verdict = action_trivial(CP2_CP2, H2Class.of(1, 0))
        assert verdict.value is True
        assert "primitive" in verdict.reason

    def test_per_class_imprimitive(self):
        verdict = action_trivial(S2XS2, H2Class.of(2, 0))
        assert verdict.value is None
        assert "divisibility 2" in verdict.reason

    def test_effective_s2xs2(self):
        verdict = action_effective(S2XS2)
        assert verdict.value is True

    def test_effective_cp2_false(self):
        verdict = action_effective(CP2)
        assert verdict.value is False
        assert "trivial" in verdict.reason

    def test_s1xs3_name_rule(self):
        verdict = action_effective(S1XS3)
        assert verdict.value is True

    def test_unknown_suspension_blocks(self):
        k3ish = manifold("mystery", [[1, 0], [0, 1]])
        # sigma = 2 is square-free, so triviality wins first
        assert action_effective(k3ish).value is False
        odd_sig = manifold("sig4", [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        verdict = action_effective(odd_sig)
        assert verdict.value is None  # not spin, no name rule, nothing asserted


class TestCompressible:
    def test_zero_class(self):
        assert compressible(S2XS2, H2Class.of(0, 0)) is True

    def test_nonzero(self):
        assert compressible(CP2, H2Class.of(1)) is False
        assert compressible(S2XS2, H2Class.of(2, 0)) is False

    def test_needs_h1_trivial(self):
        with pytest.raises(InvalidInputError):
            compressible(S1XS3, H2Class.of())


class TestKnotTable:
    def test_high_codimension(self):
        result = knot_table(9, 4)
        assert result.kind == "cardinality" and result.cardinality == 1
        assert knot_table(11, 4).cardinality == 1

    def test_sphere_tables(self):
        assert knot_table(7, 4).group == FgAbGroup.cyclic(12)
        assert knot_table(7, 4, data=S4).group == FgAbGroup.cyclic(12)
        assert knot_table(8, 5).group == FgAbGroup.cyclic(2)

    def test_r8_orientable(self):
        m = Manifold4Data(
            name="T-ish",
            lattice=IntegralLattice.from_rows([]),
            h1_torsion=(2, 2),
            h1_mod2_rank=2,
            spin=True,
        )
        result = knot_table(8, 4, data=m)
        assert result.group == FgAbGroup(0, (2, 2))

    def test_r8_nonorientable(self):
        m = Manifold4Data(
            name="N",
            lattice=IntegralLattice.from_rows([[2]]),
            h1_torsion=(2,),
            h1_mod2_rank=1,
            orientable=False,
            spin=False,
        )
        result = knot_table(8, 4, data=m)
        assert result.group == FgAbGroup(1, ())  # Z + Z/2^0

    def test_unsupported(self):
        with pytest.raises(UnsupportedQueryError):
            knot_table(6, 4)
        with pytest.raises(UnsupportedQueryError):
            knot_table(8, 4)  # needs data
        with pytest.raises(UnsupportedQueryError):
            knot_table(7, 4, data=CP2)  # not a sphere

import random
from math import gcd

import pytest

from embed47.complement import (
    ComplementModel,
    euler_characteristic,
    homology_of,
    pi3_of,
    wedge_form,
)
from embed47.errors import InvalidInputError
from embed47.exactalg import FgAbGroup
from embed47.lattice import H2Class, divisibility


class TestHomology:
    def test_cp2_complement(self):
        h = homology_of(ComplementModel.from_attaching([1]))
        assert [str(g) for g in h] == ["Z", "0", "Z", "0", "Z"]

    def test_sphere_only(self):
        h = homology_of(ComplementModel.from_attaching([]))
        assert [str(g) for g in h] == ["Z", "0", "Z", "0", "0"]

    def test_two_cells(self):
        h = homology_of(ComplementModel.from_attaching([2, 0]))
        assert [str(g) for g in h] == ["Z", "0", "Z", "0", "Z^2"]

    def test_independent_of_attaching(self):
        rng = random.Random(5)
        for b2 in range(5):
            reference = homology_of(ComplementModel.from_attaching([0] * b2))
            for _ in range(5):
                attaching = [rng.randint(-20, 20) for _ in range(b2)]
                assert homology_of(ComplementModel.from_attaching(attaching)) == reference

    def test_euler_characteristic(self):
        rng = random.Random(6)
        for b2 in range(6):
            model = ComplementModel.from_attaching([rng.randint(-9, 9) for _ in range(b2)])
            chi = euler_characteristic(model)
            assert chi == 2 + b2
            ranks = [g.free_rank for g in homology_of(model)]
            assert chi == sum((-1) ** k * r for k, r in enumerate(ranks))


class TestPi3:
    def test_zero_attaching(self):
        assert pi3_of(ComplementModel.from_attaching([0, 0])) == FgAbGroup(1, ())

    def test_imprimitive(self):
        assert pi3_of(ComplementModel.from_attaching([2, 0])) == FgAbGroup(0, (2,))

    def test_primitive_kills_pi3(self):
        assert pi3_of(ComplementModel.from_attaching([1])).is_trivial

    def test_agrees_with_divisibility(self):
        rng = random.Random(515)
        for _ in range(300):
            b2 = rng.randint(0, 6)
            attaching = tuple(rng.randint(-20, 20) for _ in range(b2))
            d = divisibility(H2Class(attaching))
            assert d == (gcd(*attaching) if attaching else 0)
            assert pi3_of(ComplementModel.from_attaching(attaching)) == FgAbGroup.cyclic(d)


class TestWedge:
    def test_untwisted(self):
        assert wedge_form(ComplementModel.from_attaching([0, 0])) == "S^2 v 2*S^4"

    def test_twisted(self):
        assert wedge_form(ComplementModel.from_attaching([1])) is None

    def test_empty(self):
        assert wedge_form(ComplementModel.from_attaching([])) == "S^2"


class TestValidation:
    def test_bad_length(self):
        with pytest.raises(InvalidInputError):
            ComplementModel(2, (1,))

    def test_negative_b2(self):
        with pytest.raises(InvalidInputError):
            ComplementModel(-1, ())

"""Change of p: centrality, the induced map, fractions, factorization."""

import random
from fractions import Fraction

import pytest

from trilocal.errors import UnsupportedFamilyError
from trilocal.families import DoubleFamily, RegularFamily, ScaledFamily, TensorFreeFamily
from trilocal.fracloc import (
    CentralPair,
    check_central,
    factor_inverting_hom,
    fraction_form,
    phi,
    rational_value_hom,
    two_order_agreement,
)
from trilocal.rings import KadicFraction
from trilocal.tring import (
    EqResult,
    Gen,
    Mul,
    TElement,
    family_iso,
    t_eq,
    t_generator,
    t_mul,
)
from trilocal.verify import random_telement


class TestCentralPair:
    def test_regular_pair(self):
        pair = CentralPair(RegularFamily("Z"), 2, 2)
        assert pair.certification == "basis+samples"
        assert check_central(pair, samples=200).passed

    def test_scaled_pair(self):
        pair = CentralPair(ScaledFamily(2), 3, 3)
        assert check_central(pair, samples=200).passed

    def test_violating_pair_rejected(self):
        fam = TensorFreeFamily("Q", ("s",), ("u",))
        s = fam.a_ring.generator(0)
        u = fam.b_ring.generator(0)
        with pytest.raises(ValueError):
            CentralPair(fam, s, u)

    def test_scalar_pair_on_free_family_is_sampled_only(self):
        fam = TensorFreeFamily("Q", ("s",), ("u",))
        two_a = fam.a_ring.from_int(2)
        two_b = fam.b_ring.from_int(2)
        pair = CentralPair(fam, two_a, two_b)
        assert pair.certification == "samples-only"
        assert check_central(pair, samples=100).passed


class TestInducedMap:
    def test_regular_to_dyadic_inclusion(self):
        fam = RegularFamily("Z")
        pair = CentralPair(fam, 2, 2)
        target = pair.target_family()
        assert target == ScaledFamily(2)
        # x_m goes to x_(2m), whose value is 2m/2 = m
        for m in range(-9, 10):
            image = phi(t_generator(fam, m), pair)
            assert family_iso(image) == KadicFraction(2, m, 0)

    def test_unital(self):
        pair = CentralPair(ScaledFamily(2), 3, 3)
        assert phi(TElement.one(pair.family), pair).is_one()

    def test_inverse_identity_exact(self):
        for pair in (CentralPair(RegularFamily("Z"), 2, 2), CentralPair(ScaledFamily(2), 3, 3)):
            image = pair.induced(pair.x_a0p())
            inv = pair.old_p_in_target()
            one = TElement.one(pair.target_family())
            assert t_eq(t_mul(image, inv), one) is EqResult.EQUAL
            assert t_eq(t_mul(inv, image), one) is EqResult.EQUAL

    def test_ring_morphism_random(self):
        pair = CentralPair(ScaledFamily(2), 3, 3)
        rng = random.Random(3)
        for _ in range(150):
            e1 = random_telement(pair.family, rng)
            e2 = random_telement(pair.family, rng)
            assert t_eq(phi(t_mul(e1, e2), pair), t_mul(phi(e1, pair), phi(e2, pair))) is EqResult.EQUAL
            assert t_eq(phi(e1 + e2, pair), phi(e1, pair) + phi(e2, pair)) is EqResult.EQUAL

    def test_unsupported_families(self):
        with pytest.raises(UnsupportedFamilyError):
            CentralPair(DoubleFamily("Q"), 2, 2).target_family()

    def test_trivial_pair_is_identity(self):
        pair = CentralPair(RegularFamily("Z"), 1, 1)
        assert pair.target_family() == RegularFamily("Z")
        e = t_generator(pair.family, 7)
        assert t_eq(phi(e, pair), e) is EqResult.EQUAL
        form = pair.fraction_form(e)
        assert form.exponent == 0 and t_eq(form.numerator, e) is EqResult.EQUAL


class TestFractionForm:
    def setup_method(self):
        self.pair = CentralPair(RegularFamily("Z"), 2, 2)
        self.target = self.pair.target_family()

    def element(self, num, r):
        if r == 0:
            return TElement.from_scalar(self.target, num)
        return TElement(self.target, {(self.target._G,) * r: num})

    def test_five_eighths(self):
        form = self.pair.fraction_form(self.element(5, 3))
        assert family_iso(form.numerator) == 5 and form.exponent == 3

    def test_one(self):
        form = fraction_form(TElement.one(self.target), self.pair)
        assert form.numerator.is_one() and form.exponent == 0

    def test_integer_needs_no_denominator(self):
        form = self.pair.fraction_form(self.element(6, 0))
        assert family_iso(form.numerator) == 6 and form.exponent == 0

    def test_round_trip_random(self):
        rng = random.Random(4)
        for _ in range(200):
            e = random_telement(self.target, rng)
            form = self.pair.fraction_form(e)
            rebuilt = t_mul(
                self.pair.induced(form.numerator), self.pair.old_p_in_target() ** form.exponent
            )
            assert t_eq(rebuilt, e) is EqResult.EQUAL

    def test_minimality_against_rational_oracle(self):
        rng = random.Random(5)
        for _ in range(200):
            e = random_telement(self.target, rng)
            form = self.pair.fraction_form(e)
            value = family_iso(e).as_fraction()
            r = 0
            while (value * Fraction(2) ** r).denominator != 1:
                r += 1
            assert form.exponent == r

    def test_scaled_source_membership(self):
        pair = CentralPair(ScaledFamily(2), 3, 3)
        target = pair.target_family()
        assert target == ScaledFamily(6)
        e = t_generator(target, 5)  # value 5/6
        form = pair.fraction_form(e)
        # 5/6 * 3 = 5/2 lies in Z[1/2]: minimal exponent 1
        assert form.exponent == 1
        assert family_iso(form.numerator) == KadicFraction(2, 5, 1)


class TestFactorization:
    def setup_method(self):
        self.fam = RegularFamily("Z")
        self.pair = CentralPair(self.fam, 2, 2)
        self.hom = rational_value_hom(self.fam)
        self.f_inv = Fraction(1, 2)

    def test_hom_respects_relations(self):
        assert self.hom.respects_relations(samples=100)

    def test_letterwise_value(self):
        target = self.pair.target_family()
        e = t_generator(target, 3)  # value 3/2 in the target
        assert factor_inverting_hom(self.pair, self.hom, self.f_inv, e) == Fraction(3, 2)

    def test_one_maps_to_one(self):
        target = self.pair.target_family()
        assert factor_inverting_hom(self.pair, self.hom, self.f_inv, TElement.one(target)) == 1

    def test_factorization_identity_random(self):
        rng = random.Random(6)
        for _ in range(200):
            e = random_telement(self.fam, rng)
            lhs = factor_inverting_hom(self.pair, self.hom, self.f_inv, phi(e, self.pair))
            assert lhs == self.hom.apply(e)

    def test_wrong_inverse_rejected(self):
        target = self.pair.target_family()
        with pytest.raises(ValueError):
            factor_inverting_hom(self.pair, self.hom, Fraction(1, 3), TElement.one(target))

    def test_two_evaluation_orders_random(self):
        rng = random.Random(7)
        target = self.pair.target_family()
        for _ in range(100):
            expr = Mul(tuple(Gen(rng.randint(-6, 6)) for _ in range(rng.randint(1, 3))))
            ok, lhs, rhs = two_order_agreement(self.pair, self.hom, self.f_inv, expr)
            assert ok and lhs == rhs

    def test_factor_through_target_itself(self):
        # with hom = the induced map itself, the factored map fixes letters
        pair = self.pair
        target = pair.target_family()

        class TargetRing:
            name = "T(M,a0*p)"

            def zero(self):
                return TElement.zero(target)

            def one(self):
                return TElement.one(target)

            def add(self, a, b):
                return a + b

            def mul(self, a, b):
                return t_mul(a, b)

            def eq(self, a, b):
                return t_eq(a, b) is EqResult.EQUAL

        from trilocal.fracloc import LetterHom

        hom = LetterHom(
            pair.family,
            TargetRing(),
            lambda m: pair.induced(t_generator(pair.family, m)),
            lambda c: TElement.from_scalar(target, c),
        )
        f_inv = pair.old_p_in_target()
        e = t_generator(target, 3)
        out = factor_inverting_hom(pair, hom, f_inv, e)
        assert t_eq(out, e) is EqResult.EQUAL

"""Normal forms in T(M,p): generator collapse, relations, oracle maps."""

import random
from fractions import Fraction

import pytest

from trilocal.errors import BudgetExceededError, FamilyMismatchError
from trilocal.families import DoubleFamily, HnnFreeFamily, RegularFamily, ScaledFamily, TensorFreeFamily
from trilocal.rings import KadicFraction, Polynomial
from trilocal.tring import (
    Add,
    Const,
    EqResult,
    Gen,
    Mul,
    Pow,
    TElement,
    family_iso,
    rho,
    t_add,
    t_eq,
    t_generator,
    t_mul,
    t_normalize,
    t_scale,
)
from trilocal.verify import random_telement, shipped_families


class TestGeneratorCollapse:
    def test_p_maps_to_one(self):
        for fam in shipped_families():
            assert t_generator(fam, fam.p).is_one()

    def test_scaled_irreducible_letter(self):
        fam = ScaledFamily(2)
        e = t_generator(fam, 3)
        assert family_iso(e) == KadicFraction(2, 3, 1)  # value 3/2

    def test_regular_collapses_to_scalar(self):
        fam = RegularFamily("Z")
        e = t_generator(fam, 5)
        assert e == TElement.from_scalar(fam, 5)

    def test_scaled_multiple_of_p_collapses(self):
        fam = ScaledFamily(2)
        assert t_generator(fam, 4) == TElement.from_scalar(fam, 2)


class TestArithmetic:
    def test_regular_product_of_letters(self):
        fam = RegularFamily("Z")
        prod = t_mul(t_generator(fam, 2), t_generator(fam, 3))
        assert family_iso(prod) == 6

    def test_double_product_against_polynomial_oracle(self):
        fam = DoubleFamily("Q")
        prod = t_mul(t_generator(fam, (2, 3)), t_generator(fam, (0, 1)))
        assert family_iso(prod) == Polynomial("Q", [0, 2, 3])

    def test_unit(self):
        for fam in shipped_families():
            e = random_telement(fam, random.Random(5))
            assert t_eq(t_mul(e, TElement.one(fam)), e) is EqResult.EQUAL

    def test_family_mismatch(self):
        with pytest.raises(FamilyMismatchError):
            t_mul(TElement.one(ScaledFamily(2)), TElement.one(ScaledFamily(3)))


class TestNormalization:
    def test_rule_a_merges(self):
        # x_(a*p) x_m = x_(a*m) for every family
        rng = random.Random(7)
        for fam in shipped_families():
            for _ in range(50):
                a = fam.random_a(rng)
                m = fam.random_m(rng)
                lhs = t_mul(t_generator(fam, fam.apply(a, fam.p, fam.b_one)), t_generator(fam, m))
                rhs = t_generator(fam, fam.apply(a, m, fam.b_one))
                assert t_eq(lhs, rhs) is EqResult.EQUAL

    def test_rule_b_merges(self):
        rng = random.Random(8)
        for fam in shipped_families():
            for _ in range(50):
                b = fam.random_b(rng)
                m = fam.random_m(rng)
                lhs = t_mul(t_generator(fam, m), t_generator(fam, fam.apply(fam.a_one, fam.p, b)))
                rhs = t_generator(fam, fam.apply(fam.a_one, m, b))
                assert t_eq(lhs, rhs) is EqResult.EQUAL

    def test_scaled_power_collapse(self):
        fam = ScaledFamily(2)
        # 4 = 2*p, so the letter at 4 is the scalar 2
        e = t_normalize(fam, Gen(4))
        assert e == TElement.from_scalar(fam, 2)

    def test_idempotent(self):
        rng = random.Random(9)
        for fam in shipped_families():
            for _ in range(100):
                e = random_telement(fam, rng)
                again = t_normalize(fam, e)
                assert t_eq(e, again) is EqResult.EQUAL

    def test_expression_tree(self):
        fam = ScaledFamily(2)
        tree = Add((Mul((Gen(3), Gen(5))), Const(1)))
        e = t_normalize(fam, tree)
        assert family_iso(e) == KadicFraction(2, 19, 2)  # 15/4 + 1

    def test_budget_exhaustion_raises(self):
        fam = ScaledFamily(2)
        tree = Mul(tuple(Gen(3) for _ in range(10)))
        with pytest.raises(BudgetExceededError):
            t_normalize(fam, tree, budget=2)

    def test_expr_equality_unknown_on_budget(self):
        from trilocal.tring import t_eq_exprs

        fam = ScaledFamily(2)
        tree = Mul(tuple(Gen(3) for _ in range(10)))
        assert t_eq_exprs(fam, tree, tree, budget=2) is EqResult.UNKNOWN
        assert t_eq_exprs(fam, Gen(3), Gen(3)) is EqResult.EQUAL
        assert t_eq_exprs(fam, Gen(3), Gen(5)) is EqResult.DISTINCT

    def test_pow_node(self):
        fam = DoubleFamily("Q")
        e = t_normalize(fam, Pow(Gen((0, 1)), 3))
        assert family_iso(e) == Polynomial("Q", [0, 0, 0, 1])


class TestRho:
    def test_rho_m_at_p_is_one(self):
        for fam in shipped_families():
            assert rho(fam, "M", fam.p).is_one()

    def test_scaled_rho_a_is_inclusion(self):
        fam = ScaledFamily(2)
        assert family_iso(rho(fam, "A", 3)) == KadicFraction(2, 3, 0)

    def test_tensor_rho_m_is_product_of_images(self):
        fam = TensorFreeFamily("Q", ("s",), ("u",))
        rng = random.Random(10)
        for _ in range(100):
            a = fam.random_a(rng)
            b = fam.random_b(rng)
            lhs = rho(fam, "M", fam.apply(a, fam.p, b))
            rhs = t_mul(rho(fam, "A", a), rho(fam, "B", b))
            assert t_eq(lhs, rhs) is EqResult.EQUAL

    def test_rho_morphism_laws(self):
        rng = random.Random(11)
        for fam in shipped_families():
            for _ in range(100):
                a1, a2 = fam.random_a(rng), fam.random_a(rng)
                lhs = rho(fam, "A", fam.a_ring.mul(a1, a2))
                rhs = t_mul(rho(fam, "A", a1), rho(fam, "A", a2))
                assert t_eq(lhs, rhs) is EqResult.EQUAL
                b1, b2 = fam.random_b(rng), fam.random_b(rng)
                lhs = rho(fam, "B", fam.b_ring.mul(b1, b2))
                rhs = t_mul(rho(fam, "B", b1), rho(fam, "B", b2))
                assert t_eq(lhs, rhs) is EqResult.EQUAL
                m = fam.random_m(rng)
                lhs = rho(fam, "M", fam.apply(a1, m, b1))
                rhs = t_mul(t_mul(rho(fam, "A", a1), rho(fam, "M", m)), rho(fam, "B", b1))
                assert t_eq(lhs, rhs) is EqResult.EQUAL

    def test_rho_unital(self):
        for fam in shipped_families():
            assert rho(fam, "A", fam.a_one).is_one()
            assert rho(fam, "B", fam.b_one).is_one()


class TestEquality:
    def test_reflexive(self):
        for fam in shipped_families():
            e = random_telement(fam, random.Random(12))
            assert t_eq(e, e) is EqResult.EQUAL

    def test_scaled_cross_products_equal(self):
        fam = ScaledFamily(2)
        lhs = t_mul(t_generator(fam, 3), t_generator(fam, 3))
        rhs = t_mul(t_generator(fam, 9), t_generator(fam, 1))
        assert t_eq(lhs, rhs) is EqResult.EQUAL
        assert family_iso(lhs) == KadicFraction(2, 9, 2)

    def test_double_x_is_not_one(self):
        fam = DoubleFamily("Q")
        assert t_eq(t_generator(fam, (0, 1)), TElement.one(fam)) is EqResult.DISTINCT

    def test_hnn_shifted_words_equal(self):
        fam = HnnFreeFamily("Q", ("s",), "x")
        zero = fam.a_ring.zero()
        lhs = t_mul(
            t_generator(fam, (zero, {((), (0,)): 1})),
            t_generator(fam, (zero, {((), ()): 1})),
        )
        rhs = t_mul(
            t_generator(fam, (zero, {((), ()): 1})),
            t_generator(fam, (zero, {((0,), ()): 1})),
        )
        assert t_eq(lhs, rhs) is EqResult.EQUAL


class TestRingVariants:
    """The non-default base rings stay faithful to their oracles."""

    def test_regular_q(self):
        fam = RegularFamily("Q")
        rng = random.Random(21)
        for _ in range(300):
            e1 = random_telement(fam, rng)
            e2 = random_telement(fam, rng)
            assert family_iso(t_mul(e1, e2)) == fam.oracle.mul(family_iso(e1), family_iso(e2))
            assert (t_eq(e1, e2) is EqResult.EQUAL) == (family_iso(e1) == family_iso(e2))

    def test_double_z(self):
        fam = DoubleFamily("Z")
        rng = random.Random(22)
        for _ in range(300):
            e1 = random_telement(fam, rng)
            e2 = random_telement(fam, rng)
            assert family_iso(t_mul(e1, e2)) == family_iso(e1) * family_iso(e2)
            assert (t_eq(e1, e2) is EqResult.EQUAL) == (family_iso(e1) == family_iso(e2))

    def test_scaled_composite_base(self):
        fam = ScaledFamily(6)
        rng = random.Random(23)
        for _ in range(300):
            e1 = random_telement(fam, rng)
            e2 = random_telement(fam, rng)
            assert family_iso(t_mul(e1, e2)) == family_iso(e1) * family_iso(e2)
            assert family_iso(t_add(e1, e2)) == family_iso(e1) + family_iso(e2)
            assert (t_eq(e1, e2) is EqResult.EQUAL) == (family_iso(e1) == family_iso(e2))


class TestCoefficients:
    def test_integer_families_reject_rationals(self):
        fam = ScaledFamily(2)
        with pytest.raises(ValueError):
            t_scale(TElement.one(fam), Fraction(1, 2))

    def test_rational_families_accept_fractions(self):
        fam = DoubleFamily("Q")
        e = t_scale(t_generator(fam, (0, 1)), Fraction(1, 2))
        assert family_iso(e) == Polynomial("Q", [0, Fraction(1, 2)])

    def test_scaled_sum_across_exponents(self):
        fam = ScaledFamily(2)
        total = t_add(t_generator(fam, 4), t_generator(fam, 3))  # 2 + 3/2
        assert t_eq(total, t_generator(fam, 7)) is EqResult.EQUAL
        assert len(total.terms) == 1

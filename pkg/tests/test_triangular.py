"""Triangular ring arithmetic, columns, and module triples."""

import random

import pytest

from trilocal.errors import SchemaError, UnsupportedFamilyError
from trilocal.families import DoubleFamily, RegularFamily, ScaledFamily, TensorFreeFamily
from trilocal.triangular import (
    FPModule,
    SigmaMorphism,
    TriElement,
    TripleModule,
    act_p,
    act_q,
    column_join,
    column_split,
    module_roundtrip,
    random_tri,
    sigma_apply,
    tri_mul,
    triple_from_json,
    triple_to_json,
)
from trilocal.verify import shipped_families


def direct_formula(fam, r1, r2):
    """Independent evaluation of the triangular product formula."""
    return (
        fam.a_ring.mul(r1.a, r2.a),
        fam.add_m(fam.apply(r1.a, r2.m, fam.b_one), fam.apply(fam.a_one, r1.m, r2.b)),
        fam.b_ring.mul(r1.b, r2.b),
    )


class TestTriMul:
    def test_integer_example(self):
        fam = RegularFamily("Z")
        r1 = TriElement(fam, 1, 2, 3)
        r2 = TriElement(fam, 4, 5, 6)
        prod = tri_mul(r1, r2)
        # direct formula: (1*4, 1*5 + 2*6, 3*6)
        assert (prod.a, prod.m, prod.b) == (4, 17, 18)

    def test_unit(self):
        rng = random.Random(1)
        for fam in shipped_families():
            r = random_tri(fam, rng)
            assert tri_mul(r, TriElement.one(fam)) == r
            assert tri_mul(TriElement.one(fam), r) == r

    def test_strictly_upper_squares_to_zero(self):
        rng = random.Random(2)
        for fam in shipped_families():
            m1, m2 = fam.random_m(rng), fam.random_m(rng)
            n1 = TriElement(fam, fam.a_ring.zero(), m1, fam.b_ring.zero())
            n2 = TriElement(fam, fam.a_ring.zero(), m2, fam.b_ring.zero())
            assert tri_mul(n1, n2) == TriElement.zero(fam)

    def test_associative_random(self):
        rng = random.Random(3)
        for fam in shipped_families():
            for _ in range(1000):
                r1, r2, r3 = (random_tri(fam, rng, 4) for _ in range(3))
                assert tri_mul(tri_mul(r1, r2), r3) == tri_mul(r1, tri_mul(r2, r3))
                assert tri_mul(r1, r2) == TriElement(fam, *direct_formula(fam, r1, r2))


class TestColumns:
    def test_split_join_round_trip(self):
        rng = random.Random(4)
        for fam in shipped_families():
            r = random_tri(fam, rng)
            a, q = column_split(r)
            assert column_join(fam, a, q) == r

    def test_split_respects_left_multiplication(self):
        rng = random.Random(5)
        for fam in shipped_families():
            for _ in range(100):
                r = random_tri(fam, rng, 4)
                s = random_tri(fam, rng, 4)
                a, q = column_split(s)
                prod = tri_mul(r, s)
                pa, pq = column_split(prod)
                assert fam.a_ring.eq(pa, act_p(r, a))
                mq = act_q(r, q)
                assert fam.eq_m(pq[0], mq[0]) and fam.b_ring.eq(pq[1], mq[1])

    def test_sigma_image(self):
        for fam in shipped_families():
            m, b = sigma_apply(fam, fam.a_one)
            assert fam.eq_m(m, fam.p)
            assert fam.b_ring.eq(b, fam.b_ring.zero())
            m0, _ = sigma_apply(fam, fam.a_ring.zero())
            assert fam.eq_m(m0, fam.zero_m())

    def test_sigma_scaled_example(self):
        fam = ScaledFamily(2)
        m, b = SigmaMorphism(fam).apply(3)
        assert (m, b) == (6, 0)


class TestTripleModules:
    def test_action_formula(self):
        fam = RegularFamily("Z")
        # N_A = N_B = Z with f = multiplication by d
        d = 5
        mod = TripleModule(fam, FPModule("Z", 1), FPModule("Z", 1), [[[d]]])
        rng = random.Random(6)
        for _ in range(100):
            a, m, b = rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9)
            x, y = rng.randint(-9, 9), rng.randint(-9, 9)
            out = mod.action(TriElement(fam, a, m, b), ([x], [y]))
            assert out == ([a * x + d * m * y], [b * y])

    def test_identity_acts_as_identity(self):
        fam = DoubleFamily("Q")
        mod = TripleModule(fam, FPModule("Q", 2), FPModule("Q", 1), [[[1, 0]], [[0, 1]]])
        rng = random.Random(7)
        n = mod.random_element(rng)
        assert mod.action(TriElement.one(fam), n) == n

    def test_corner_action(self):
        fam = RegularFamily("Z")
        mod = TripleModule(fam, FPModule("Z", 1), FPModule("Z", 1), [[[3]]])
        out = mod.action(TriElement(fam, 0, 2, 0), ([9], [4]))
        assert out == ([3 * 2 * 4], [0])

    def test_action_is_module_action(self):
        fam = ScaledFamily(2)
        mod = TripleModule(fam, FPModule("Z", 2, [[2, 0]]), FPModule("Z", 1), [[[1, 1]]])
        rng = random.Random(8)
        for _ in range(200):
            r1 = random_tri(fam, rng, 4)
            r2 = random_tri(fam, rng, 4)
            n = mod.random_element(rng)
            lhs = mod.action(tri_mul(r1, r2), n)
            rhs = mod.action(r1, mod.action(r2, n))
            assert lhs == rhs

    def test_well_definedness_enforced(self):
        fam = RegularFamily("Z")
        # N_B = Z/2 but f sends the generator to an odd multiple: 3 * (2 n) = 6 n
        # must land in the span of N_A relations; with no relations it cannot.
        with pytest.raises(SchemaError):
            TripleModule(fam, FPModule("Z", 1), FPModule("Z", 1, [[2]]), [[[3]]])
        # with the matching relation 6 in N_A it is fine
        TripleModule(fam, FPModule("Z", 1, [[6]]), FPModule("Z", 1, [[2]]), [[[3]]])

    def test_families_without_basis_rejected(self):
        fam = TensorFreeFamily("Q", ("s",), ("u",))
        with pytest.raises(UnsupportedFamilyError):
            TripleModule(fam, FPModule("Q", 1), FPModule("Q", 1), [[[1]]])


class TestRoundTrip:
    def test_zero_sides(self):
        fam = RegularFamily("Z")
        only_a = TripleModule(fam, FPModule("Z", 2, [[2, 0]]), FPModule("Z", 0), [[]])
        back, wa, wb = module_roundtrip(only_a)
        assert back.NA.rels == only_a.NA.rels and back.NB.gens == 0
        only_b = TripleModule(fam, FPModule("Z", 0), FPModule("Z", 1), [[[]]])
        back, _, _ = module_roundtrip(only_b)
        assert back.NA.gens == 0 and back.NB.gens == 1

    def test_multiplication_triple(self):
        fam = RegularFamily("Z")
        mod = TripleModule(fam, FPModule("Z", 1), FPModule("Z", 1), [[[4]]])
        back, wa, wb = module_roundtrip(mod, rng=random.Random(9))
        assert back.f == mod.f
        assert wa.rows == [[1]] and wb.rows == [[1]]

    def test_lift_independence_checked(self):
        fam = ScaledFamily(2)
        mod = TripleModule(fam, FPModule("Z", 2), FPModule("Z", 2), [[[1, 2], [3, 4]]])
        back, _, _ = module_roundtrip(mod, rng=random.Random(10))
        assert back.f == mod.f


class TestJson:
    def test_round_trip(self):
        fam = DoubleFamily("Q")
        mod = TripleModule(
            fam,
            FPModule("Q", 2, [[1, 2]]),
            FPModule("Q", 1),
            [[[1, 0]], [[0, 1]]],
        )
        doc = triple_to_json(mod)
        again = triple_from_json(fam, doc)
        assert triple_to_json(again) == doc

    def test_schema_errors(self):
        fam = RegularFamily("Z")
        with pytest.raises(SchemaError):
            triple_from_json(fam, {"NA": {"gens": 1}})
        with pytest.raises(SchemaError):
            triple_from_json(fam, {"NA": {"gens": 1}, "NB": {"gens": 1}, "f": {"oops": [[1]]}})
        with pytest.raises(SchemaError):
            triple_from_json(fam, {"NA": {"gens": "x"}, "NB": {"gens": 1}})

    def test_rational_entries(self):
        fam = DoubleFamily("Q")
        doc = {
            "NA": {"gens": 1, "rels": [["1/2"]]},
            "NB": {"gens": 0, "rels": []},
            "f": {},
        }
        mod = triple_from_json(fam, doc)
        from fractions import Fraction

        assert mod.NA.rels == [[Fraction(1, 2)]]

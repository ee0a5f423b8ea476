"""Hypothesis law tests for the T-ring and the exact kernels."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from trilocal.families import DoubleFamily, ScaledFamily
from trilocal.linalg import int_matrix, smith_normal_form
from trilocal.rings import KadicFraction
from trilocal.tring import EqResult, TElement, family_iso, t_add, t_eq, t_generator, t_mul

S2 = ScaledFamily(2)
DQ = DoubleFamily("Q")

small_ints = st.integers(min_value=-30, max_value=30)


@st.composite
def scaled_elements(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    out = TElement.zero(S2)
    for _ in range(n):
        out = t_add(out, t_generator(S2, draw(small_ints)))
    return out


@st.composite
def double_elements(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    out = TElement.zero(DQ)
    for _ in range(n):
        m = (draw(small_ints), draw(small_ints))
        piece = t_generator(DQ, m)
        if draw(st.booleans()):
            piece = t_mul(piece, t_generator(DQ, (0, 1)))
        out = t_add(out, piece)
    return out


class TestScaledLaws:
    @given(scaled_elements(), scaled_elements(), scaled_elements())
    @settings(max_examples=200)
    def test_associativity(self, a, b, c):
        assert t_eq(t_mul(t_mul(a, b), c), t_mul(a, t_mul(b, c))) is EqResult.EQUAL

    @given(scaled_elements(), scaled_elements(), scaled_elements())
    @settings(max_examples=200)
    def test_distributivity(self, a, b, c):
        lhs = t_mul(a, t_add(b, c))
        rhs = t_add(t_mul(a, b), t_mul(a, c))
        assert t_eq(lhs, rhs) is EqResult.EQUAL

    @given(scaled_elements())
    def test_oracle_injective_on_canonical_forms(self, a):
        value = family_iso(a)
        assert isinstance(value, KadicFraction)
        if a.is_zero():
            assert value.is_zero()
        else:
            ((word, coeff),) = a.terms.items()
            assert value.as_fraction() == Fraction(coeff, 2 ** len(word))


class TestDoubleLaws:
    @given(double_elements(), double_elements(), double_elements())
    @settings(max_examples=150)
    def test_associativity(self, a, b, c):
        assert t_eq(t_mul(t_mul(a, b), c), t_mul(a, t_mul(b, c))) is EqResult.EQUAL

    @given(double_elements(), double_elements())
    @settings(max_examples=150)
    def test_oracle_homomorphism(self, a, b):
        assert family_iso(t_mul(a, b)) == family_iso(a) * family_iso(b)
        assert family_iso(t_add(a, b)) == family_iso(a) + family_iso(b)


class TestSmithProperties:
    @given(st.lists(st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=4),
                    min_size=1, max_size=4).filter(lambda rows: len({len(r) for r in rows}) == 1))
    @settings(max_examples=150, deadline=None)
    def test_snf_certificate(self, rows):
        mat = int_matrix(rows)
        snf = smith_normal_form(mat)
        assert snf.U * mat * snf.V == snf.D
        diag = snf.diagonal()
        for i in range(len(diag) - 1):
            if diag[i] == 0:
                assert diag[i + 1] == 0
            else:
                assert diag[i + 1] % diag[i] == 0

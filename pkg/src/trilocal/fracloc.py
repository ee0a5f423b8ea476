"""Replacing p by a0*p: centrality, the induced map, and fraction forms.

For a0 in A and b0 in B with a0*m = m*b0 for every m, the generator
indexed by a0*p is central, and the bimodule map m -> a0*m induces a
ring morphism from T(M,p) to T(M,a0*p) that inverts that generator.
Every element of the target then carries a fraction form: a numerator
from T(M,p) over a power of the inverted generator.

Shipped instances keep the image-membership problem decidable:
regular-Z (target = scaled(a0)) and scaled(k) (target = scaled(a0*k)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedFamilyError
from .families import RegularFamily, ScaledFamily
from .report import Report
from .tring import (
    Add,
    Const,
    EqResult,
    Gen,
    Mul,
    TElement,
    family_iso,
    t_eq,
    t_generator,
    t_mul,
    t_normalize,
    t_scale,
)


class CentralPair:
    """A pair (a0, b0) with a0*m = m*b0 throughout M.

    The condition is verified at construction: exactly on the basis when
    one exists, and on seeded random samples either way; families
    without a basis are flagged as sample-certified only.
    """

    __slots__ = ("family", "a0", "b0", "certification")

    def __init__(self, family, a0, b0, samples=200, seed=1729):
        self.family = family
        self.a0 = a0
        self.b0 = b0
        basis = family.basis()
        rng = random.Random(seed)
        probes = list(basis or [])
        probes += [family.random_m(rng) for _ in range(samples)]
        for m in probes:
            left = family.apply(a0, m, family.b_one)
            right = family.apply(family.a_one, m, b0)
            if not family.eq_m(left, right):
                raise ValueError(
                    f"not a central pair: a0*m != m*b0 for m = {family.fmt_m(m)}"
                )
        self.certification = "basis+samples" if basis is not None else "samples-only"

    # -- derived data --------------------------------------------------------
    def a0p(self):
        """The bimodule element a0*p."""
        return self.family.apply(self.a0, self.family.p, self.family.b_one)

    def x_a0p(self):
        """The element of T(M,p) indexed by a0*p."""
        return t_generator(self.family, self.a0p())

    def target_family(self):
        """The family presenting T(M,a0*p)."""
        return self.family.scaled_p_variant(self.a0)

    # -- the induced morphism --------------------------------------------------
    def induced(self, e):
        """Image of e under the letterwise map x_m -> x_{a0*m}."""
        self.family.check_same(e.family)
        target = self.target_family()
        out = TElement.zero(target)
        for word, coeff in e.terms.items():
            piece = TElement.one(target)
            for letter in word:
                m = self.family.letter_bim(letter)
                piece = t_mul(piece, t_generator(target, self.family.apply(self.a0, m, self.family.b_one)))
            out = out + t_scale(piece, coeff)
        return out

    def old_p_in_target(self):
        """x_p viewed inside T(M,a0*p); the inverse of the image of x_{a0*p}."""
        return t_generator(self.target_family(), self.family.p)

    # -- fraction forms ----------------------------------------------------------
    def fraction_form(self, e):
        """Write e in T(M,a0*p) as numerator / x_{a0*p}**r with minimal r.

        Minimality comes from repeated exact division in the oracle
        ring; the reassembled product is checked against e exactly.
        """
        target = self.target_family()
        target.check_same(e.family)
        source_oracle = self.family.oracle
        value = family_iso(e)
        frac = _as_fraction(value)
        r = 0
        while True:
            candidate = frac * Fraction(_a0_int(self.a0)) ** r
            alpha = _element_with_value(self.family, source_oracle, candidate)
            if alpha is not None:
                break
            r += 1
        reassembled = t_mul(self.induced(alpha), self.old_p_in_target() ** r)
        if t_eq(reassembled, e) is not EqResult.EQUAL:
            raise AssertionError("fraction reassembly failed")
        return FractionForm(alpha, r)


@dataclass(frozen=True)
class FractionForm:
    """numerator in T(M,p), denominator exponent r for x_{a0*p}**r."""

    numerator: TElement
    exponent: int


def phi(e, pair):
    return pair.induced(e)


def fraction_form(e, pair):
    return pair.fraction_form(e)


def check_central(pair, samples=1000, seed=1729):
    """Verify the generator of a0*p commutes with basis and random letters."""
    fam = pair.family
    rep = Report(
        f"centrality of x_(a0*p) [{fam.describe()}]",
        seed=seed,
        meta={"samples": samples, "certification": pair.certification},
    )
    x0 = pair.x_a0p()
    rng = random.Random(seed)
    probes = [("basis", m) for m in (fam.basis() or [])]
    probes += [("random", fam.random_m(rng)) for _ in range(samples)]
    bad = None
    for tag, m in probes:
        xm = t_generator(fam, m)
        if t_eq(t_mul(x0, xm), t_mul(xm, x0)) is not EqResult.EQUAL:
            bad = (tag, m)
            break
    rep.add(
        "x_(a0*p) commutes with every probe generator",
        bad is None,
        "" if bad is None else f"fails on {bad[0]} element {fam.fmt_m(bad[1])}",
    )
    try:
        target = pair.target_family()
    except UnsupportedFamilyError:
        # centrality is still certifiable when no computable target exists
        return rep
    inv = pair.old_p_in_target()
    image = pair.induced(x0)
    one = TElement.one(target)
    rep.add("image of x_(a0*p) times x_p is 1", t_eq(t_mul(image, inv), one) is EqResult.EQUAL)
    rep.add("x_p times image of x_(a0*p) is 1", t_eq(t_mul(inv, image), one) is EqResult.EQUAL)
    return rep


# ---------------------------------------------------------------------------
# Homomorphisms out of T(M,p) given on letters, and the factorization
# through T(M,a0*p).
# ---------------------------------------------------------------------------

class LetterHom:
    """Ring morphism T(M,p) -> S determined by generator images.

    generator_image(m) must give the S-image of x_m for a canonical
    bimodule element m; scalar_image embeds the coefficients.
    """

    __slots__ = ("family", "s_ring", "generator_image", "scalar_image")

    def __init__(self, family, s_ring, generator_image, scalar_image):
        self.family = family
        self.s_ring = s_ring
        self.generator_image = generator_image
        self.scalar_image = scalar_image

    def apply(self, e):
        self.family.check_same(e.family)
        rg = self.s_ring
        total = rg.zero()
        for word, coeff in e.terms.items():
            val = self.scalar_image(coeff)
            for letter in word:
                val = rg.mul(val, self.generator_image(self.family.letter_bim(letter)))
            total = rg.add(total, val)
        return total

    def respects_relations(self, samples=100, seed=1729):
        """Sampled check that the letter images satisfy the presentation."""
        fam = self.family
        rg = self.s_ring
        rng = random.Random(seed)
        gen = lambda m: self.apply(t_generator(fam, m))
        if not rg.eq(gen(fam.p), rg.one()):
            return False
        for _ in range(samples):
            m1 = fam.random_m(rng)
            m2 = fam.random_m(rng)
            a = fam.random_a(rng)
            b = fam.random_b(rng)
            if not rg.eq(rg.add(gen(m1), gen(m2)), gen(fam.add_m(m1, m2))):
                return False
            ap = fam.apply(a, fam.p, fam.b_one)
            if not rg.eq(rg.mul(gen(ap), gen(m1)), gen(fam.apply(a, m1, fam.b_one))):
                return False
            pb = fam.apply(fam.a_one, fam.p, b)
            if not rg.eq(rg.mul(gen(m1), gen(pb)), gen(fam.apply(fam.a_one, m1, b))):
                return False
        return True


def factor_inverting_hom(pair, hom, f_inv, e):
    """Evaluate the unique factorization of hom through T(M,a0*p) on e.

    hom must invert the image of x_{a0*p} with the supplied f_inv; the
    factored map sends a target generator x_m to f_inv * hom(x_m) and
    extends multiplicatively and additively.
    """
    rg = hom.s_ring
    f_x0 = hom.apply(pair.x_a0p())
    if not (rg.eq(rg.mul(f_inv, f_x0), rg.one()) and rg.eq(rg.mul(f_x0, f_inv), rg.one())):
        raise ValueError("f_inv is not a two-sided inverse of the image of x_(a0*p)")
    target = pair.target_family()
    target.check_same(e.family)
    total = rg.zero()
    for word, coeff in e.terms.items():
        val = hom.scalar_image(coeff)
        for letter in word:
            m = target.letter_bim(letter)
            val = rg.mul(val, rg.mul(f_inv, hom.generator_image(m)))
        total = rg.add(total, val)
    return total


def rational_value_hom(family):
    """The evaluation morphism into Q for the Z-based shipped families."""
    if isinstance(family, RegularFamily) and family.ring == "Z":
        return LetterHom(family, _QRing(), lambda m: Fraction(m), lambda c: Fraction(c))
    if isinstance(family, ScaledFamily):
        k = family.k
        return LetterHom(family, _QRing(), lambda m: Fraction(m, k), lambda c: Fraction(c))
    raise UnsupportedFamilyError(f"no rational evaluation for {family.kind}")


class _QRing:
    """Q as a plain ring object over Fraction values."""

    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b


# -- helpers -----------------------------------------------------------------

def _as_fraction(value):
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return value.as_fraction()


def _a0_int(a0):
    if not isinstance(a0, int):
        raise UnsupportedFamilyError("fraction forms need an integer a0")
    return a0


def _element_with_value(family, oracle, frac):
    """Source element with the given oracle value, or None if outside."""
    if isinstance(family, RegularFamily):
        if frac.denominator != 1:
            return None
        return TElement.from_scalar(family, int(frac))
    if isinstance(family, ScaledFamily):
        value = oracle.from_fraction(frac)
        if value is None:
            return None
        if value.num == 0:
            return TElement.zero(family)
        word = (family._G,) * value.exp
        return TElement(family, {word: value.num})
    raise UnsupportedFamilyError(f"fraction forms are not supported for {family.kind}")


def two_order_agreement(pair, hom, f_inv, expr, budget=10 ** 6):
    """Evaluate the factored map on a raw expression two independent ways.

    Order one normalizes in T(M,a0*p) first and then maps letterwise;
    order two evaluates the expression tree directly in S.  Agreement
    on random expressions mirrors the uniqueness of the factorization.
    """
    target = pair.target_family()
    normalized = t_normalize(target, expr, budget)
    via_normal = factor_inverting_hom(pair, hom, f_inv, normalized)
    via_tree = _eval_expr_in_s(pair, hom, f_inv, expr)
    return hom.s_ring.eq(via_normal, via_tree), via_normal, via_tree


def _eval_expr_in_s(pair, hom, f_inv, expr):
    rg = hom.s_ring
    if isinstance(expr, Const):
        return hom.scalar_image(expr.value)
    if isinstance(expr, Gen):
        return rg.mul(f_inv, hom.generator_image(pair.target_family().canon_m(expr.element)))
    if isinstance(expr, Add):
        total = rg.zero()
        for item in expr.items:
            total = rg.add(total, _eval_expr_in_s(pair, hom, f_inv, item))
        return total
    if isinstance(expr, Mul):
        total = rg.one()
        for item in expr.items:
            total = rg.mul(total, _eval_expr_in_s(pair, hom, f_inv, item))
        return total
    from .tring import Neg, Pow

    if isinstance(expr, Neg):
        inner = _eval_expr_in_s(pair, hom, f_inv, expr.item)
        return rg.mul(hom.scalar_image(-1), inner)
    if isinstance(expr, Pow):
        base = _eval_expr_in_s(pair, hom, f_inv, expr.base)
        total = rg.one()
        for _ in range(expr.exponent):
            total = rg.mul(total, base)
        return total
    raise TypeError(f"not an expression node: {expr!r}")

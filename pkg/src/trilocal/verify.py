"""Reproducible verification suites shared by the CLI and the test bed.

Two suite flavors exist: the fixed worked-example fixtures (one per
shipped family plus the change-of-p and module-localization fixtures)
and seeded random property suites.  Identical inputs and seed produce
byte-identical reports.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exprs import format_element
from .families import (
    DoubleFamily,
    HnnFreeFamily,
    RegularFamily,
    ScaledFamily,
    TensorFreeFamily,
)
from .fracloc import (
    CentralPair,
    check_central,
    factor_inverting_hom,
    phi,
    rational_value_hom,
    two_order_agreement,
)
from .matrixloc import verify_sigma_inverting
from .modloc import (
    invariant_factors,
    localize_module,
    localized_presentation,
    verify_comparison_maps,
)
from .report import Report
from .rings import Polynomial
from .tring import (
    Add,
    Const,
    EqResult,
    Gen,
    Mul,
    TElement,
    family_iso,
    rho,
    t_add,
    t_eq,
    t_generator,
    t_mul,
    t_scale,
)
from .triangular import FPModule, TripleModule

DEFAULT_SEED = 1729


def shipped_families():
    """The five acceptance instances, in a fixed order."""
    return [
        RegularFamily("Z"),
        DoubleFamily("Q"),
        TensorFreeFamily("Q", ("s",), ("u",)),
        HnnFreeFamily("Q", ("s",), "x"),
        ScaledFamily(2),
    ]


def random_telement(family, rng, max_terms=2, max_len=2, size=3):
    """Small random normal-form element, built from generator products."""
    out = TElement.zero(family)
    for _ in range(rng.randint(1, max_terms)):
        piece = TElement.one(family)
        for _ in range(rng.randint(0, max_len)):
            piece = t_mul(piece, t_generator(family, family.random_m(rng, size)))
        coeff = rng.randint(-size, size)
        if family.coeff == "Q" and rng.random() < 0.3:
            coeff = Fraction(coeff, rng.choice([2, 3]))
        out = t_add(out, t_scale(piece, coeff))
    return out


def random_expression(family, rng, depth=2, size=3):
    """Random raw expression tree over the family."""
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.4:
            return Const(rng.randint(-size, size))
        return Gen(family.random_m(rng, size))
    children = tuple(random_expression(family, rng, depth - 1, size) for _ in range(rng.randint(2, 3)))
    return Mul(children) if rng.random() < 0.5 else Add(children)


def presentation_soundness(family, n=1000, seed=DEFAULT_SEED):
    """The defining relations hold after normalization, on random data."""
    rng = random.Random(seed)
    rep = Report(f"presentation soundness [{family.describe()}]", seed=seed, meta={"instances": n})
    one = TElement.one(family)
    failures = []
    for i in range(n):
        m1 = family.random_m(rng)
        m2 = family.random_m(rng)
        a = family.random_a(rng)
        b = family.random_b(rng)
        add_ok = t_eq(
            t_add(t_generator(family, m1), t_generator(family, m2)),
            t_generator(family, family.add_m(m1, m2)),
        ) is EqResult.EQUAL
        ap = family.apply(a, family.p, family.b_one)
        rule_a_ok = t_eq(
            t_mul(t_generator(family, ap), t_generator(family, m1)),
            t_generator(family, family.apply(a, m1, family.b_one)),
        ) is EqResult.EQUAL
        pb = family.apply(family.a_one, family.p, b)
        rule_b_ok = t_eq(
            t_mul(t_generator(family, m1), t_generator(family, pb)),
            t_generator(family, family.apply(family.a_one, m1, b)),
        ) is EqResult.EQUAL
        id_ok = t_eq(t_generator(family, family.p), one) is EqResult.EQUAL
        if not (add_ok and rule_a_ok and rule_b_ok and id_ok):
            failures.append((i, family.fmt_m(m1), family.fmt_m(m2)))
            break
    rep.add(
        "relations (+), (a), (b), (id) normalize to equalities",
        not failures,
        "" if not failures else f"instance {failures[0][0]}: m={failures[0][1]} m'={failures[0][2]}",
    )
    return rep


def oracle_faithfulness(family, n=1000, seed=DEFAULT_SEED):
    """family_iso is a ring isomorphism onto the oracle on random pairs."""
    rng = random.Random(seed)
    rep = Report(f"oracle faithfulness [{family.describe()}]", seed=seed, meta={"pairs": n})
    oracle = family.oracle
    hom_fail = eq_fail = None
    equal_branch = 0
    for i in range(n):
        e1 = random_telement(family, rng)
        if i % 10 == 0:
            # a deliberately equal pair reached through different syntax
            probe = t_generator(family, family.random_m(rng))
            e2 = t_add(t_add(e1, probe), t_scale(probe, -1))
        else:
            e2 = random_telement(family, rng)
        v1, v2 = family_iso(e1), family_iso(e2)
        if not oracle.eq(family_iso(t_mul(e1, e2)), oracle.mul(v1, v2)):
            hom_fail = (i, "product")
            break
        if not oracle.eq(family_iso(t_add(e1, e2)), oracle.add(v1, v2)):
            hom_fail = (i, "sum")
            break
        same_t = t_eq(e1, e2) is EqResult.EQUAL
        same_o = oracle.eq(v1, v2)
        if same_t != same_o:
            eq_fail = (i, format_element(e1), format_element(e2))
            break
        if same_t:
            equal_branch += 1
    rep.add(
        "homomorphism identities exact on all pairs",
        hom_fail is None,
        "" if hom_fail is None else f"pair {hom_fail[0]} fails on the {hom_fail[1]}",
    )
    rep.add(
        "t_eq agrees with oracle equality on all pairs",
        eq_fail is None,
        f"equal-branch hits: {equal_branch}" if eq_fail is None else f"pair {eq_fail[0]}: {eq_fail[1]} vs {eq_fail[2]}",
    )
    return rep


def change_of_p_configs():
    return [
        (RegularFamily("Z"), 2, 2),
        (ScaledFamily(2), 3, 3),
    ]


def change_of_p_suite(family, a0, b0, centrality_samples=1000, fraction_samples=500,
                      factor_samples=500, seed=DEFAULT_SEED):
    """Centrality, inverse identity, fraction forms, and factorization."""
    pair = CentralPair(family, a0, b0, seed=seed)
    rep = Report(
        f"change of p [{family.describe()}, a0={a0}]",
        seed=seed,
        meta={"centrality_samples": centrality_samples, "fraction_samples": fraction_samples},
    )
    rep.extend(check_central(pair, samples=centrality_samples, seed=seed))

    target = pair.target_family()
    rng = random.Random(seed + 1)
    k_src = family.k if isinstance(family, ScaledFamily) else 1
    bad = None
    for i in range(fraction_samples):
        e = random_telement(target, rng, max_terms=2, max_len=2, size=5)
        form = pair.fraction_form(e)
        # independent minimal-exponent oracle over plain rationals
        value = _rational_value(family_iso(e))
        r_oracle = 0
        while not _denominator_only(value * Fraction(a0) ** r_oracle, k_src):
            r_oracle += 1
        if form.exponent != r_oracle:
            bad = (i, format_element(e), form.exponent, r_oracle)
            break
    rep.add(
        "fraction form round-trips with the minimal exponent",
        bad is None,
        "" if bad is None else f"sample {bad[0]}: {bad[1]} got r={bad[2]} expected {bad[3]}",
    )

    hom = rational_value_hom(family)
    rep.add("letter images satisfy the presentation", hom.respects_relations(samples=100, seed=seed))
    f_inv = Fraction(1, a0)
    rng = random.Random(seed + 2)
    bad = None
    for i in range(factor_samples):
        e = random_telement(family, rng, max_terms=2, max_len=2, size=5)
        lhs = factor_inverting_hom(pair, hom, f_inv, phi(e, pair))
        rhs = hom.apply(e)
        if lhs != rhs:
            bad = (i, format_element(e))
            break
    rep.add(
        "factorization composed with the induced map recovers the original",
        bad is None,
        "" if bad is None else f"sample {bad[0]}: {bad[1]}",
    )
    rng = random.Random(seed + 3)
    bad = None
    for i in range(factor_samples):
        expr = random_expression(target, rng, depth=2, size=3)
        ok, _, _ = two_order_agreement(pair, hom, f_inv, expr)
        if not ok:
            bad = i
            break
    rep.add("two evaluation orders agree", bad is None, "" if bad is None else f"sample {bad}")
    return rep


def _rational_value(value):
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return value.as_fraction()


def _denominator_only(frac, k):
    """True when the denominator's primes all divide k (k=1: denominator 1)."""
    den = frac.denominator
    if k == 1:
        return den == 1
    from math import gcd

    while den != 1:
        g = gcd(den, k)
        if g == 1:
            return False
        while den % g == 0:
            den //= g
    return True


def module_families():
    return [RegularFamily("Z"), ScaledFamily(2), DoubleFamily("Q")]


def random_triple(family, rng, max_gens=4, size=10):
    """Random well-formed triple; ill-posed f is repaired by extra relations."""
    tag = "Z" if family.coeff == "Z" else "Q"
    gA = rng.randint(0, max_gens)
    gB = rng.randint(0, max_gens)
    relsA = [[rng.randint(-size, size) for _ in range(gA)] for _ in range(rng.randint(0, 2))] if gA else []
    relsB = [[rng.randint(-size, size) for _ in range(gB)] for _ in range(rng.randint(0, 2))] if gB else []
    nbasis = len(family.basis())
    f = [[[rng.randint(-size, size) for _ in range(gA)] for _ in range(gB)] for _ in range(nbasis)]
    NA = FPModule(tag, gA, relsA)
    NB = FPModule(tag, gB, relsB)
    # f composed with an N_B relation may escape the N_A relation span;
    # absorb the image vectors as additional N_A relations.
    extra = []
    for srow in relsB:
        for i in range(nbasis):
            vec = [0] * gA
            for j, s in enumerate(srow):
                if s:
                    vec = [x + s * y for x, y in zip(vec, f[i][j])]
            extra.append(vec)
    if extra:
        NA = FPModule(tag, gA, relsA + extra)
    return TripleModule(family, NA, NB, f)


def module_localization_suite(family, modules=20, samples=100, seed=DEFAULT_SEED):
    rep = Report(
        f"module localization [{family.describe()}]",
        seed=seed,
        meta={"modules": modules, "samples": samples},
    )
    rng = random.Random(seed)
    bad = None
    for i in range(modules):
        triple = random_triple(family, rng)
        sub = verify_comparison_maps(triple, samples=samples, seed=seed + i)
        if not sub.passed:
            bad = (i, sub)
            break
    rep.add(
        "comparison maps verified on random triples",
        bad is None,
        "" if bad is None else f"module {bad[0]}",
    )

    # additivity: the localization of a direct sum matches the direct sum
    # of the localizations, compared through canonical forms
    rng = random.Random(seed + 99)
    bad = None
    for i in range(5):
        t1 = random_triple(family, rng, max_gens=2, size=5)
        t2 = random_triple(family, rng, max_gens=2, size=5)
        both = t1.direct_sum(t2)
        f_sum, r_sum = invariant_factors(localized_presentation(both))
        f1, r1 = invariant_factors(localized_presentation(t1))
        f2, r2 = invariant_factors(localized_presentation(t2))
        merged = _canonical_chain(localized_presentation(both).ring, f1 + f2)
        ours = _canonical_chain(localized_presentation(both).ring, f_sum)
        if ours != merged or r_sum != r1 + r2:
            bad = i
            break
    rep.add("localization is additive across direct sums", bad is None,
            "" if bad is None else f"pair {bad}")
    return rep


def _canonical_chain(ring, factors):
    """Canonical invariant chain of a diagonal with the given entries."""
    if not factors:
        return ()
    from .linalg import Matrix, diagonal_form

    n = len(factors)
    rows = [[factors[i] if i == j else ring.zero() for j in range(n)] for i in range(n)]
    form = diagonal_form(Matrix(ring, rows))
    return tuple(ring.fmt(d) for d in form.invariant_factors())


# ---------------------------------------------------------------------------
# Fixed worked-example fixtures.
# ---------------------------------------------------------------------------

def example_suite(seed=DEFAULT_SEED, negative_control=False, samples=60):
    rep = Report("worked examples", seed=seed, meta={"samples": samples})
    rng = random.Random(seed)

    # identity-bimodule family: T is the base ring and every map is identity
    rz = RegularFamily("Z")
    ok = all(
        family_iso(rho(rz, comp, v)) == v
        for comp in ("A", "M", "B")
        for v in (rng.randint(-9, 9) for _ in range(samples))
    )
    rep.add("regular-Z: structure maps act as the identity on the base ring", ok)
    rep.add("regular-Z: generator at p collapses to 1", t_generator(rz, 1).is_one())

    # doubled bimodule: T is the polynomial ring
    dq = DoubleFamily("Q")
    px = Polynomial("Q", [0, 1])
    rep.add("double-Q: generator at (1,0) is 1", t_generator(dq, (1, 0)).is_one())
    rep.add("double-Q: generator at (0,1) maps to x", dq.oracle.eq(family_iso(t_generator(dq, (0, 1))), px))
    rep.add(
        "double-Q: x_(2,3) maps to 2+3x",
        dq.oracle.eq(family_iso(t_generator(dq, (2, 3))), Polynomial("Q", [2, 3])),
    )
    rep.add(
        "double-Q: x_(2,3)*x_(0,1) maps to 2x+3x^2",
        dq.oracle.eq(
            family_iso(t_mul(t_generator(dq, (2, 3)), t_generator(dq, (0, 1)))),
            Polynomial("Q", [0, 2, 3]),
        ),
    )

    # free product: the generator of a pure tensor is the product of images
    tf = TensorFreeFamily("Q", ("s",), ("u",))
    ok = True
    for _ in range(samples):
        a = tf.random_a(rng)
        b = tf.random_b(rng)
        lhs = t_generator(tf, tf.apply(a, tf.p, b))
        rhs = t_mul(rho(tf, "A", a), rho(tf, "B", b))
        if t_eq(lhs, rhs) is not EqResult.EQUAL:
            ok = False
            break
    rep.add("tensor-free-Q: image of a (x) b equals image(a) * image(b)", ok)
    rep.add("tensor-free-Q: generator at 1 (x) 1 collapses to 1", t_generator(tf, tf.p).is_one())

    # stable-letter family: second summand tensors surround the new letter
    hf = HnnFreeFamily("Q", ("s",), "x")
    rep.add("hnn-free-Q: generator at (1, 0) collapses to 1", t_generator(hf, hf.p).is_one())
    ok = True
    for _ in range(samples):
        u = tuple(rng.randrange(1) for _ in range(rng.randint(0, 2)))
        v = tuple(rng.randrange(1) for _ in range(rng.randint(0, 2)))
        image = family_iso(t_generator(hf, (hf.a_ring.zero(), {(u, v): 1})))
        expected = hf.oracle.word(u + (hf._x_index,) + v)
        if not hf.oracle.eq(image, expected):
            ok = False
            break
    rep.add("hnn-free-Q: tensor letters map to u x v words", ok)
    ok = all(
        t_eq(rho(hf, "A", a), rho(hf, "B", a)) is EqResult.EQUAL
        for a in (hf.random_a(rng) for _ in range(samples // 2))
    )
    rep.add("hnn-free-Q: both base maps agree on A = B", ok)

    # halving family: T is the 2-adic fraction ring
    s2 = ScaledFamily(2)
    ok = all(
        str(family_iso(t_generator(s2, n))) == str(Fraction(n, 2))
        for n in range(-12, 13)
    )
    rep.add("scaled-2: generator at n has value n/2", ok)
    nine_quarters = t_mul(t_generator(s2, 3), t_generator(s2, 3))
    alt = t_mul(t_generator(s2, 9), t_generator(s2, 1))
    rep.add("scaled-2: x_3*x_3 equals x_9*x_1 (both 9/4)", t_eq(nine_quarters, alt) is EqResult.EQUAL)
    rep.add("scaled-2: generator at p collapses to 1", t_generator(s2, 2).is_one())

    # matrix localization certificates for every family
    corrupt = None
    if negative_control:
        corrupt = {
            "A": lambda fam, v: rho(fam, "A", v),
            "M": lambda fam, v: t_add(rho(fam, "M", v), TElement.one(fam)),
            "B": lambda fam, v: rho(fam, "B", v),
        }
    for family in shipped_families():
        sub = verify_sigma_inverting(family, samples=samples, seed=seed, rho_maps=corrupt)
        rep.add(
            f"matrix localization certificate [{family.kind}]",
            sub.passed,
            "" if sub.passed else next(c.name for c in sub.checks if not c.passed),
        )

    # change-of-p fixtures
    for family, a0, b0 in change_of_p_configs():
        pair = CentralPair(family, a0, b0, seed=seed)
        sub = check_central(pair, samples=samples, seed=seed)
        rep.add(f"central pair certified [{family.kind}, a0={a0}]", sub.passed)
    rzpair = CentralPair(rz, 2, 2, seed=seed)
    tgt = rzpair.target_family()
    five_eighths = TElement(tgt, {(tgt._G,) * 3: 5})
    form = rzpair.fraction_form(five_eighths)
    rep.add(
        "fraction form of 5/8 is 5 over the cube",
        format_element(form.numerator) == "5" and form.exponent == 3,
    )
    form1 = rzpair.fraction_form(TElement.one(tgt))
    rep.add("fraction form of 1 is (1, 0)", form1.numerator.is_one() and form1.exponent == 0)
    form6 = rzpair.fraction_form(TElement.from_scalar(tgt, 6))
    rep.add(
        "fraction form of 6 needs no denominator",
        format_element(form6.numerator) == "6" and form6.exponent == 0,
    )

    # module localization fixtures over the three supported rings
    d2 = TripleModule(rz, FPModule("Z", 1), FPModule("Z", 1), [[[2]]])
    loc = localize_module(d2, samples=40, seed=seed)
    rep.add(
        "doubling module localizes to a free rank-1 module",
        loc.rank == 1 and not loc.factors and loc.report.passed,
    )
    torsion = TripleModule(rz, FPModule("Z", 1, [[3]]), FPModule("Z", 0), [[]])
    loct = localize_module(torsion, samples=40, seed=seed)
    rep.add("three-torsion module keeps invariant factor 3", loct.factors_fmt() == ["3"] and loct.report.passed)
    only_a = TripleModule(rz, FPModule("Z", 2, [[2, 0]]), FPModule("Z", 0), [[]])
    loca = localize_module(only_a, samples=40, seed=seed)
    base_factors, base_rank = only_a.NA.invariants()
    rep.add(
        "module with trivial N_B base-changes its presentation unchanged",
        loca.factors_fmt() == [str(d) for d in base_factors] and loca.rank == base_rank,
    )
    kill = TripleModule(rz, FPModule("Z", 0), FPModule("Z", 1), [[[]]])
    lock = localize_module(kill, samples=40, seed=seed)
    rep.add("module with zero N_A localizes to zero", lock.rank == 0 and not lock.factors)
    column_q = TripleModule(rz, FPModule("Z", 1), FPModule("Z", 1), [[[1]]])
    locq = localize_module(column_q, samples=40, seed=seed)
    rep.add("the Q-column triple localizes to free rank 1", locq.rank == 1 and not locq.factors)
    flipped = verify_comparison_maps(d2, samples=20, seed=seed, g_sign=-1)
    rep.add("sign-flipped defining map is detected", not flipped.passed)
    return rep


def random_suite(seed=DEFAULT_SEED, instances=200, pairs=200, sigma_samples=100,
                 modules=4, module_samples=25):
    """Seeded random property run across every family; CLI `verify --suite random`."""
    rep = Report("random property suites", seed=seed, meta={
        "instances": instances,
        "pairs": pairs,
        "sigma_samples": sigma_samples,
        "modules": modules,
    })
    for family in shipped_families():
        rep.extend(presentation_soundness(family, n=instances, seed=seed))
        rep.extend(oracle_faithfulness(family, n=pairs, seed=seed))
        sub = verify_sigma_inverting(family, samples=sigma_samples, seed=seed)
        rep.add(f"sigma-inverting [{family.kind}]", sub.passed)
    for family, a0, b0 in change_of_p_configs():
        sub = change_of_p_suite(
            family, a0, b0,
            centrality_samples=instances,
            fraction_samples=pairs // 2,
            factor_samples=pairs // 2,
            seed=seed,
        )
        rep.add(f"change of p [{family.kind}, a0={a0}]", sub.passed)
    for family in module_families():
        sub = module_localization_suite(family, modules=modules, samples=module_samples, seed=seed)
        rep.add(f"module localization [{family.kind}]", sub.passed)
    return rep

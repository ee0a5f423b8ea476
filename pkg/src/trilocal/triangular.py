"""The triangular matrix ring R, its column modules, and module triples.

R has elements (a, m, b) standing for the matrix with diagonal a, b and
upper corner m; multiplication is (a, m, b)(a', m', b') =
(aa', am' + mb', bb').  The two columns P = (A; 0) and Q = (M; B)
decompose R, and the morphism P -> Q determined by p sends (1; 0) to
(p; 0).

A left module over R is equivalently a triple (N_A, N_B, f) where f
maps M (x) N_B into N_A; the triple is stored with finitely presented
N_A, N_B and f given per bimodule basis element, so the family must
expose a finite free basis for M.
"""

from __future__ import annotations

from .errors import SchemaError, UnsupportedFamilyError
from .linalg import Matrix, diagonal_form, in_row_span
from .rings import QQ, ZZ, norm_scalar, scalar_add, scalar_mul


class TriElement:
    """Element (a, m, b) of R = (A M; 0 B)."""

    __slots__ = ("family", "a", "m", "b")

    def __init__(self, family, a, m, b):
        self.family = family
        self.a = a
        self.m = family.canon_m(m)
        self.b = b

    @classmethod
    def one(cls, family):
        return cls(family, family.a_ring.one(), family.zero_m(), family.b_ring.one())

    @classmethod
    def zero(cls, family):
        return cls(family, family.a_ring.zero(), family.zero_m(), family.b_ring.zero())

    def __mul__(self, other):
        return tri_mul(self, other)

    def __add__(self, other):
        return tri_add(self, other)

    def __neg__(self):
        fam = self.family
        return TriElement(fam, fam.a_ring.neg(self.a), fam.neg_m(self.m), fam.b_ring.neg(self.b))

    def __eq__(self, other):
        if not isinstance(other, TriElement):
            return NotImplemented
        fam = self.family
        return (
            fam == other.family
            and fam.a_ring.eq(self.a, other.a)
            and fam.eq_m(self.m, other.m)
            and fam.b_ring.eq(self.b, other.b)
        )

    def fmt(self):
        fam = self.family
        return f"({fam.a_ring.fmt(self.a)}, {fam.fmt_m(self.m)}, {fam.b_ring.fmt(self.b)})"

    def __repr__(self):
        return f"TriElement{self.fmt()}"


def tri_mul(r1, r2):
    r1.family.check_same(r2.family)
    fam = r1.family
    a = fam.a_ring.mul(r1.a, r2.a)
    m = fam.add_m(fam.apply(r1.a, r2.m, fam.b_one), fam.apply(fam.a_one, r1.m, r2.b))
    b = fam.b_ring.mul(r1.b, r2.b)
    return TriElement(fam, a, m, b)


def tri_add(r1, r2):
    r1.family.check_same(r2.family)
    fam = r1.family
    return TriElement(
        fam,
        fam.a_ring.add(r1.a, r2.a),
        fam.add_m(r1.m, r2.m),
        fam.b_ring.add(r1.b, r2.b),
    )


def random_tri(family, rng, size=5):
    return TriElement(family, family.random_a(rng, size), family.random_m(rng, size), family.random_b(rng, size))


# ---------------------------------------------------------------------------
# Columns: P = (A; 0) and Q = (M; B), with P + Q = R elementwise.
# ---------------------------------------------------------------------------

class SigmaMorphism:
    """The left-module morphism P -> Q sending (1; 0) to (p; 0)."""

    __slots__ = ("family",)

    def __init__(self, family):
        self.family = family

    def apply(self, a):
        """Image of the P-column element (a; 0): the Q-column (a*p, 0)."""
        fam = self.family
        return (fam.apply(a, fam.p, fam.b_one), fam.b_ring.zero())


def sigma_apply(family, a):
    return SigmaMorphism(family).apply(a)


def column_split(r):
    """Decompose (a, m, b) into its P-part a and Q-part (m, b)."""
    return r.a, (r.m, r.b)


def column_join(family, a, q):
    return TriElement(family, a, q[0], q[1])


def act_p(r, a):
    """Left action of R on the P-column: r * (a; 0) = (r.a * a; 0)."""
    return r.family.a_ring.mul(r.a, a)


def act_q(r, q):
    """Left action of R on the Q-column (m; b)."""
    fam = r.family
    m, b = q
    m_new = fam.add_m(fam.apply(r.a, m, fam.b_one), fam.apply(fam.a_one, r.m, b))
    return (m_new, fam.b_ring.mul(r.b, b))


# ---------------------------------------------------------------------------
# Finitely presented modules over Z or Q and module triples.
# ---------------------------------------------------------------------------

class FPModule:
    """Finitely presented module over Z or Q: generators and relation rows."""

    __slots__ = ("ring_tag", "gens", "rels", "_span_form")

    def __init__(self, ring_tag, gens, rels=()):
        if ring_tag not in ("Z", "Q"):
            raise SchemaError(f"module base ring must be Z or Q, got {ring_tag!r}")
        if gens < 0:
            raise SchemaError("generator count must be non-negative")
        self.ring_tag = ring_tag
        self.gens = gens
        rows = []
        for row in rels:
            row = [norm_scalar(c) for c in row]
            if len(row) != gens:
                raise SchemaError(f"relation length {len(row)} != generator count {gens}")
            if ring_tag == "Z" and any(not isinstance(c, int) for c in row):
                raise SchemaError("relations over Z must have integer entries")
            rows.append(row)
        self.rels = rows
        self._span_form = None

    @property
    def ring(self):
        return ZZ if self.ring_tag == "Z" else QQ

    @classmethod
    def free(cls, ring_tag, gens):
        return cls(ring_tag, gens)

    @classmethod
    def zero(cls, ring_tag):
        return cls(ring_tag, 0)

    def span_form(self):
        """Cached diagonal form of the relation matrix, for membership tests."""
        if self._span_form is None:
            rows = self.rels if self.rels else [[self.ring.zero()] * self.gens]
            self._span_form = diagonal_form(Matrix(self.ring, rows))
        return self._span_form

    def contains_in_span(self, vector):
        """Is the vector a combination of relation rows over the base ring?"""
        if self.gens == 0:
            return True
        return in_row_span(self.span_form(), [norm_scalar(c) for c in vector])

    def invariants(self):
        form = self.span_form()
        return form.invariant_factors(), self.gens - form.rank()

    def random_element(self, rng, size=5):
        return [self.ring.random(rng, size) for _ in range(self.gens)]

    def direct_sum(self, other):
        if other.ring_tag != self.ring_tag:
            raise SchemaError("direct sum needs a common base ring")
        gens = self.gens + other.gens
        rows = [row + [0] * other.gens for row in self.rels]
        rows += [[0] * self.gens + row for row in other.rels]
        return FPModule(self.ring_tag, gens, rows)

    def fmt(self):
        return f"<{self.ring_tag}^{self.gens} / {len(self.rels)} relations>"


def _zip_add(u, v):
    return [scalar_add(x, y) for x, y in zip(u, v)]


def _vec_scale(c, u):
    return [scalar_mul(c, x) for x in u]


class TripleModule:
    """Left R-module as a triple (N_A, N_B, f).

    f is stored per bimodule basis element and per N_B generator as a
    coordinate vector in N_A; well-definedness against the N_B
    relations is checked eagerly at construction.
    """

    __slots__ = ("family", "NA", "NB", "f")

    def __init__(self, family, NA, NB, f):
        basis = family.basis()
        if basis is None:
            raise UnsupportedFamilyError(f"{family.kind} exposes no finite free bimodule basis")
        expected_tag = "Z" if family.a_ring is ZZ else "Q"
        if NA.ring_tag != expected_tag or NB.ring_tag != expected_tag:
            raise SchemaError(f"module base ring must match the family base ({expected_tag})")
        f = [[[norm_scalar(c) for c in vec] for vec in block] for block in f]
        if len(f) != len(basis):
            raise SchemaError(f"f must have one block per basis element ({len(basis)}), got {len(f)}")
        for block in f:
            if len(block) != NB.gens:
                raise SchemaError(f"each f block needs {NB.gens} rows (one per N_B generator)")
            for vec in block:
                if len(vec) != NA.gens:
                    raise SchemaError(f"f values must be N_A coordinate vectors of length {NA.gens}")
        self.family = family
        self.NA = NA
        self.NB = NB
        self.f = f
        self._check_well_defined()

    def _check_well_defined(self):
        # f composed with each N_B relation must land in the N_A relation span
        for srow in self.NB.rels:
            for i in range(len(self.f)):
                vec = [0] * self.NA.gens
                for j, s in enumerate(srow):
                    if s != 0:
                        vec = _zip_add(vec, _vec_scale(s, self.f[i][j]))
                if not self.NA.contains_in_span(vec):
                    raise SchemaError(
                        f"f is not well defined: basis element {i} composed with relation {srow} "
                        "does not land in the N_A relation span"
                    )

    def f_apply(self, m, vecB):
        """Coordinates of f(m (x) n_B) in N_A for n_B with coordinates vecB."""
        coords = self.family.basis_coords(m)
        out = [0] * self.NA.gens
        for i, c in enumerate(coords):
            if c == 0:
                continue
            for j, y in enumerate(vecB):
                if y == 0:
                    continue
                out = _zip_add(out, _vec_scale(scalar_mul(c, y), self.f[i][j]))
        return out

    def action(self, r, n):
        """(a, m, b) . (n_A, n_B) = (a n_A + f(m (x) n_B), b n_B)."""
        vecA, vecB = n
        fam = self.family
        out_a = _zip_add(_vec_scale(r.a, vecA), self.f_apply(r.m, vecB))
        out_b = _vec_scale(r.b, vecB)
        return ([norm_scalar(c) for c in out_a], [norm_scalar(c) for c in out_b])

    def eq_elements(self, n1, n2):
        """Equality in the module: componentwise difference in relation span."""
        diff_a = _zip_add(n1[0], _vec_scale(-1, n2[0]))
        diff_b = _zip_add(n1[1], _vec_scale(-1, n2[1]))
        return self.NA.contains_in_span(diff_a) and self.NB.contains_in_span(diff_b)

    def random_element(self, rng, size=5):
        return (self.NA.random_element(rng, size), self.NB.random_element(rng, size))

    def direct_sum(self, other):
        if other.family != self.family:
            raise SchemaError("direct sum needs a common family")
        NA = self.NA.direct_sum(other.NA)
        NB = self.NB.direct_sum(other.NB)
        f = []
        for i in range(len(self.f)):
            block = []
            for j in range(self.NB.gens):
                block.append(self.f[i][j] + [0] * other.NA.gens)
            for j in range(other.NB.gens):
                block.append([0] * self.NA.gens + other.f[i][j])
            f.append(block)
        return TripleModule(self.family, NA, NB, f)

    def fmt(self):
        return f"TripleModule(NA={self.NA.fmt()}, NB={self.NB.fmt()})"


def triple_action(r, module, n):
    return module.action(r, n)


def module_roundtrip(module, rng=None):
    """Convert the triple to a column module and re-extract the triple.

    The corner action (0, mu, 0) applied to a lift (z, e_j) of the j-th
    N_B generator recovers f; the result carries identity witnesses on
    both generator sets.  The a = b = 0 corner kills the lift z exactly,
    which is asserted against random lifts when an rng is supplied.
    """
    fam = module.family
    basis = fam.basis()
    extracted = []
    for i, mu in enumerate(basis):
        corner = TriElement(fam, fam.a_ring.zero(), mu, fam.b_ring.zero())
        block = []
        for j in range(module.NB.gens):
            unit_b = [1 if t == j else 0 for t in range(module.NB.gens)]
            lift = ([0] * module.NA.gens, unit_b)
            image = module.action(corner, lift)
            if any(c != 0 for c in image[1]):
                raise AssertionError("corner action must land in the N_A part")
            if rng is not None:
                other_lift = (module.NA.random_element(rng), unit_b)
                other = module.action(corner, other_lift)
                if other[0] != image[0]:
                    raise AssertionError("extracted f depends on the lift")
            block.append(image[0])
        extracted.append(block)
    rebuilt = TripleModule(fam, module.NA, module.NB, extracted)
    witness_a = Matrix.identity(module.NA.ring, module.NA.gens)
    witness_b = Matrix.identity(module.NB.ring, module.NB.gens)
    # the witnesses must carry relations into relations of the rebuilt triple
    for row in module.NA.rels:
        image = [sum(scalar_mul(row[i], witness_a.rows[i][j]) for i in range(module.NA.gens))
                 for j in range(module.NA.gens)]
        if not rebuilt.NA.contains_in_span(image):
            raise AssertionError("round-trip witness breaks an N_A relation")
    for row in module.NB.rels:
        image = [sum(scalar_mul(row[j], witness_b.rows[j][t]) for j in range(module.NB.gens))
                 for t in range(module.NB.gens)]
        if not rebuilt.NB.contains_in_span(image):
            raise AssertionError("round-trip witness breaks an N_B relation")
    return rebuilt, witness_a, witness_b


def triple_from_json(family, data):
    """TripleModule from the JSON wire format.

    Schema: {"family": ..., "NA": {"gens": n, "rels": [[..]]},
    "NB": {...}, "f": {"<basis-elt>": [[..], ...]}}.
    """
    if not isinstance(data, dict):
        raise SchemaError("module spec must be a JSON object")
    try:
        na = data["NA"]
        nb = data["NB"]
    except KeyError as exc:
        raise SchemaError(f"module spec is missing {exc.args[0]!r}") from exc

    def parse_entry(c):
        if isinstance(c, int):
            return c
        if isinstance(c, str) and "/" in c:
            from fractions import Fraction

            num, den = c.split("/", 1)
            return norm_scalar(Fraction(int(num), int(den)))
        raise SchemaError(f"matrix entries must be integers or 'p/q' strings, got {c!r}")

    def parse_module(obj, name):
        if not isinstance(obj, dict) or "gens" not in obj:
            raise SchemaError(f"{name} must be an object with 'gens' and optional 'rels'")
        gens = obj["gens"]
        if not isinstance(gens, int):
            raise SchemaError(f"{name}.gens must be an integer")
        rels = [[parse_entry(c) for c in row] for row in obj.get("rels", [])]
        tag = "Z" if family.a_ring is ZZ else "Q"
        return FPModule(tag, gens, rels)

    NA = parse_module(na, "NA")
    NB = parse_module(nb, "NB")
    basis = family.basis()
    if basis is None:
        raise UnsupportedFamilyError(f"{family.kind} exposes no finite free bimodule basis")
    f_in = data.get("f", {})
    if not isinstance(f_in, dict):
        raise SchemaError("f must be an object keyed by basis elements")
    f = []
    for mu in basis:
        key = family.fmt_m(mu)
        block = f_in.get(key)
        if block is None:
            block = [[0] * NA.gens for _ in range(NB.gens)]
        else:
            block = [[parse_entry(c) for c in row] for row in block]
        f.append(block)
    known = {family.fmt_m(mu) for mu in basis}
    for key in f_in:
        if key not in known:
            raise SchemaError(f"unknown basis element {key!r} in f (expected {sorted(known)})")
    return TripleModule(family, NA, NB, f)


def triple_to_json(module):
    fam = module.family
    out = {
        "family": fam.to_json(),
        "NA": {"gens": module.NA.gens, "rels": [[_entry_json(c) for c in r] for r in module.NA.rels]},
        "NB": {"gens": module.NB.gens, "rels": [[_entry_json(c) for c in r] for r in module.NB.rels]},
        "f": {
            fam.fmt_m(mu): [[_entry_json(c) for c in vec] for vec in module.f[i]]
            for i, mu in enumerate(fam.basis())
        },
    }
    return out


def _entry_json(c):
    c = norm_scalar(c)
    if isinstance(c, int):
        return c
    return f"{c.numerator}/{c.denominator}"

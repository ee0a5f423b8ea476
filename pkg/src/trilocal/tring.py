"""The ring T(M,p): canonical linear combinations of generator words.

Elements of T(M,p) are stored as maps from words (tuples of canonical
generator letters) to nonzero coefficients.  Construction and every
arithmetic operation keep the rewriting normal form:

* single letters are expanded through the family's additive
  canonicalization (identity letters vanish, letters in A*p collapse
  to scalars, sums of generators split into separate letters);
* an adjacent pair merges when the left letter lies in A*p or the
  right letter lies in p*B, the left rule winning at the leftmost
  position;
* family-specific moves (a letter-pair shift, coefficient folding)
  finish the canonical form where the two merge rules are not enough.

All rules strictly shrink a termination measure, and a configurable
step budget guards normalization of raw expression trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import BudgetExceededError
from .rings import norm_scalar, scalar_add, scalar_mul


class Budget:
    """Mutable rewrite-step counter; raises once the limit is crossed."""

    __slots__ = ("limit", "used")

    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceededError(self.limit)


def _tick(budget, n=1):
    if budget is not None:
        budget.tick(n)


DEFAULT_BUDGET = 10 ** 6


class TElement:
    """Normal-form element of T(M,p) for a fixed family."""

    __slots__ = ("family", "terms")

    def __init__(self, family, terms):
        self.family = family
        self.terms = terms  # canonical: built by the module constructors only

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, family):
        return cls(family, {})

    @classmethod
    def one(cls, family):
        return cls(family, {(): 1})

    @classmethod
    def from_scalar(cls, family, c):
        c = family.validate_coeff(c)
        return cls(family, {(): c} if c != 0 else {})

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        return t_add(self, other)

    def __sub__(self, other):
        return t_add(self, t_neg(other))

    def __neg__(self):
        return t_neg(self)

    def __mul__(self, other):
        return t_mul(self, other)

    def __pow__(self, n):
        out = TElement.one(self.family)
        for _ in range(n):
            out = t_mul(out, self)
        return out

    def scale(self, c):
        return t_scale(self, c)

    def __eq__(self, other):
        if not isinstance(other, TElement):
            return NotImplemented
        return self.family == other.family and self.terms == other.terms

    def __hash__(self):
        return hash((self.family, tuple(sorted(self.terms.items(), key=lambda kv: word_key(self.family, kv[0])))))

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(): 1}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: word_key(self.family, kv[0]))

    def to_oracle(self):
        return family_iso(self)

    def __repr__(self):
        from .exprs import format_element

        return f"<T {format_element(self)}>"


def word_key(family, word):
    return (len(word), tuple(family.letter_key(letter) for letter in word))


def _merge_term(family, terms, word, coeff, budget=None):
    """Fold one (coeff, word) pair into a term map, canonically."""
    coeff, word = family.fold_term(coeff, word)
    if coeff == 0:
        return
    s = scalar_add(terms.get(word, 0), coeff)
    if s == 0:
        terms.pop(word, None)
    else:
        terms[word] = norm_scalar(s)


def _refold(family, terms):
    """Re-canonicalize a merged term map (sums can create new folds)."""
    out = {}
    for word, coeff in terms.items():
        _merge_term(family, out, word, coeff)
    return family.fold_element(out)


def t_generator(family, m, budget=None):
    """Normal form of the single-letter word x_m; may collapse to a scalar."""
    terms = {}
    for coeff, letter in family.letter_terms(m):
        _tick(budget)
        coeff = family.validate_coeff(coeff)
        word = () if letter is None else (letter,)
        _merge_term(family, terms, word, coeff)
    return TElement(family, _refold(family, terms))


def t_add(e1, e2):
    e1.family.check_same(e2.family)
    terms = dict(e1.terms)
    for word, coeff in e2.terms.items():
        s = scalar_add(terms.get(word, 0), coeff)
        if s == 0:
            terms.pop(word, None)
        else:
            terms[word] = norm_scalar(s)
    return TElement(e1.family, _refold(e1.family, terms))


def t_neg(e):
    return TElement(e.family, {w: -c for w, c in e.terms.items()})


def t_scale(e, c):
    c = e.family.validate_coeff(c)
    if c == 0:
        return TElement.zero(e.family)
    terms = {}
    for word, coeff in e.terms.items():
        _merge_term(e.family, terms, word, scalar_mul(c, coeff))
    return TElement(e.family, e.family.fold_element(terms))


def _word_mul(family, w1, w2, budget):
    """Product of two normal words as a normal TElement."""
    if not w1 or not w2:
        terms = {}
        _merge_term(family, terms, w1 + w2, 1)
        return TElement(family, terms)
    left, right = w1[-1], w2[0]
    fac = family.factor_p(family.letter_bim(left))
    if fac.left is not None:
        _tick(budget)
        merged = t_generator(family, family.apply(fac.left, family.letter_bim(right), family.b_one), budget)
        head = TElement(family, {w1[:-1]: 1})
        tail = TElement(family, {w2[1:]: 1})
        return t_mul(t_mul(head, merged, budget), tail, budget)
    fac2 = family.factor_p(family.letter_bim(right))
    if fac2.right is not None:
        _tick(budget)
        merged = t_generator(family, family.apply(family.a_one, family.letter_bim(left), fac2.right), budget)
        head = TElement(family, {w1[:-1]: 1})
        tail = TElement(family, {w2[1:]: 1})
        return t_mul(t_mul(head, merged, budget), tail, budget)
    shifted = family.shift_pair(left, right)
    if shifted is not None:
        _tick(budget)
        l1, l2 = shifted
        head = TElement(family, {w1[:-1] + (l1,): 1})
        tail = TElement(family, {(l2,) + w2[1:]: 1})
        return t_mul(head, tail, budget)
    terms = {}
    _merge_term(family, terms, w1 + w2, 1)
    return TElement(family, terms)


def t_mul(e1, e2, budget=None):
    e1.family.check_same(e2.family)
    family = e1.family
    terms = {}
    for w1, c1 in e1.terms.items():
        for w2, c2 in e2.terms.items():
            piece = _word_mul(family, w1, w2, budget)
            c = scalar_mul(c1, c2)
            for word, coeff in piece.terms.items():
                _merge_term(family, terms, word, scalar_mul(c, coeff))
    return TElement(family, _refold(family, terms))


def rho(family, component, value, budget=None):
    """Structure maps into T: A and B land via a*p and p*b, M via x_m."""
    if component == "A":
        return t_generator(family, family.apply(value, family.p, family.b_one), budget)
    if component == "B":
        return t_generator(family, family.apply(family.a_one, family.p, value), budget)
    if component == "M":
        return t_generator(family, value, budget)
    raise ValueError(f"component must be A, M or B, got {component!r}")


class EqResult(Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


def t_eq(e1, e2):
    """Decide equality by comparing normal forms."""
    e1.family.check_same(e2.family)
    return EqResult.EQUAL if e1.terms == e2.terms else EqResult.DISTINCT


def t_eq_exprs(family, expr1, expr2, budget=DEFAULT_BUDGET):
    """Equality of raw expressions; UNKNOWN when the budget runs out."""
    try:
        return t_eq(t_normalize(family, expr1, budget), t_normalize(family, expr2, budget))
    except BudgetExceededError:
        return EqResult.UNKNOWN


def family_iso(e):
    """Image under the family's closed-form isomorphism onto its oracle ring."""
    family = e.family
    oracle = family.oracle
    total = None
    for word, coeff in e.terms.items():
        val = family.oracle_scalar(coeff)
        for letter in word:
            val = oracle.mul(val, family.oracle_letter(letter))
        total = val if total is None else oracle.add(total, val)
    return oracle.zero() if total is None else total


# ---------------------------------------------------------------------------
# Raw expression trees, the input of t_normalize.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: object


@dataclass(frozen=True)
class Gen:
    element: object  # bimodule element, canonicalized by the family


@dataclass(frozen=True)
class Add:
    items: tuple


@dataclass(frozen=True)
class Mul:
    items: tuple


@dataclass(frozen=True)
class Neg:
    item: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


def t_normalize(family, expr, budget=DEFAULT_BUDGET):
    """Evaluate a raw expression tree to the rewriting fixpoint.

    budget bounds the number of rewrite events; exceeding it raises
    BudgetExceededError (reported distinctly by the CLI).
    """
    b = Budget(budget) if isinstance(budget, int) else budget
    return _eval(family, expr, b)


def _eval(family, expr, budget):
    if isinstance(expr, TElement):
        family.check_same(expr.family)
        return expr
    if isinstance(expr, Const):
        _tick(budget)
        return TElement.from_scalar(family, expr.value)
    if isinstance(expr, Gen):
        return t_generator(family, expr.element, budget)
    if isinstance(expr, Add):
        out = TElement.zero(family)
        for item in expr.items:
            _tick(budget)
            out = t_add(out, _eval(family, item, budget))
        return out
    if isinstance(expr, Mul):
        out = TElement.one(family)
        for item in expr.items:
            out = t_mul(out, _eval(family, item, budget), budget)
        return out
    if isinstance(expr, Neg):
        return t_neg(_eval(family, expr.item, budget))
    if isinstance(expr, Pow):
        if expr.exponent < 0:
            raise ValueError("exponents must be non-negative")
        base = _eval(family, expr.base, budget)
        out = TElement.one(family)
        for _ in range(expr.exponent):
            out = t_mul(out, base, budget)
        return out
    raise TypeError(f"not an expression node: {expr!r}")

"""Exact coefficient and oracle rings.

Every ring here is exact: scalars are arbitrary-precision ``int`` or
``fractions.Fraction``, k-adic fractions keep a canonical (numerator,
exponent) pair, polynomials and free-algebra elements store canonical
term maps with no zero coefficients.  Elements are immutable by
convention and safe to share between threads.

The classes double as the independent oracle rings against which the
rewriting route is cross-validated, so none of them may be replaced by
the rewriting machinery they certify.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import AlphabetMismatchError, UnsupportedRingError

Scalar = "int | Fraction"  # documentation alias; helpers below normalize


def norm_scalar(x):
    """Canonical scalar: int, or Fraction with denominator > 1."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return x
    if isinstance(x, int):
        return x
    raise TypeError(f"not an exact scalar: {x!r}")


def scalar_add(a, b):
    return norm_scalar(Fraction(a) + Fraction(b)) if not (isinstance(a, int) and isinstance(b, int)) else a + b


def scalar_mul(a, b):
    return norm_scalar(Fraction(a) * Fraction(b)) if not (isinstance(a, int) and isinstance(b, int)) else a * b


def scalar_neg(a):
    return -a


def scalar_arith(op, a, b=None):
    """Dispatch add/mul/neg with canonical results."""
    if op == "add":
        return scalar_add(a, b)
    if op == "mul":
        return scalar_mul(a, b)
    if op == "neg":
        return scalar_neg(a)
    raise ValueError(f"op must be add, mul or neg, got {op!r}")


def scalar_str(x):
    x = norm_scalar(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def strip_factors_of(n, k):
    """Remove from n every prime factor shared with k; sign is kept.

    strip_factors_of(12, 2) == 3, strip_factors_of(-45, 6) == -5.
    """
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    g = gcd(n, k)
    while g > 1:
        while n % g == 0:
            n //= g
        g = gcd(n, k)
    return sign * n


class KadicFraction:
    """Element of Z[1/k]: value numerator / k**exponent, canonical.

    Canonical means exponent == 0 or k does not divide numerator; zero
    is stored as (0, 0).
    """

    __slots__ = ("k", "num", "exp")

    def __init__(self, k, num, exp=0):
        if k < 2:
            raise ValueError(f"k-adic base must be >= 2, got {k}")
        if exp < 0:
            raise ValueError(f"exponent must be >= 0, got {exp}")
        if num == 0:
            exp = 0
        else:
            while exp > 0 and num % k == 0:
                num //= k
                exp -= 1
        self.k = k
        self.num = num
        self.exp = exp

    def __eq__(self, other):
        if not isinstance(other, KadicFraction):
            return NotImplemented
        return (self.k, self.num, self.exp) == (other.k, other.num, other.exp)

    def __hash__(self):
        return hash((self.k, self.num, self.exp))

    def __add__(self, other):
        self._check(other)
        r = max(self.exp, other.exp)
        num = self.num * self.k ** (r - self.exp) + other.num * self.k ** (r - other.exp)
        return KadicFraction(self.k, num, r)

    def __neg__(self):
        return KadicFraction(self.k, -self.num, self.exp)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        return KadicFraction(self.k, self.num * other.num, self.exp + other.exp)

    def __pow__(self, n):
        return KadicFraction(self.k, self.num ** n, self.exp * n)

    def _check(self, other):
        if not isinstance(other, KadicFraction) or other.k != self.k:
            raise UnsupportedRingError(f"mixed k-adic bases: {self!r} vs {other!r}")

    def is_zero(self):
        return self.num == 0

    def is_unit(self):
        """Units of Z[1/k] are +-(products of primes dividing k)."""
        return self.num != 0 and abs(strip_factors_of(self.num, self.k)) == 1

    def as_fraction(self):
        return Fraction(self.num, self.k ** self.exp)

    def __repr__(self):
        return f"KadicFraction(k={self.k}, {self.num}, r={self.exp})"

    def __str__(self):
        f = self.as_fraction()
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def kadic_normalize(k, numerator, r):
    """Canonical k-adic form of numerator / k**r."""
    return KadicFraction(k, numerator, r)


class Polynomial:
    """Dense polynomial in one central variable over Z or Q.

    Coefficients are canonical scalars; the trailing (leading) entry is
    nonzero unless the polynomial is zero, in which case coeffs == ().
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        if ring not in ("Z", "Q"):
            raise UnsupportedRingError(f"polynomial coefficients must be Z or Q, got {ring}")
        cs = [norm_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, [c])

    @classmethod
    def variable(cls, ring):
        return cls(ring, [0, 1])

    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def _check(self, other):
        if not isinstance(other, Polynomial) or other.ring != self.ring:
            raise UnsupportedRingError(f"mixed polynomial rings: {self!r} vs {other!r}")

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __add__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        cs = [0] * n
        for i, c in enumerate(self.coeffs):
            cs[i] = c
        for i, c in enumerate(other.coeffs):
            cs[i] = scalar_add(cs[i], c)
        return Polynomial(self.ring, cs)

    def __neg__(self):
        return Polynomial(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(self.ring, [])
        cs = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                cs[i + j] = scalar_add(cs[i + j], scalar_mul(a, b))
        return Polynomial(self.ring, cs)

    def __pow__(self, n):
        out = Polynomial.constant(self.ring, 1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c):
        return Polynomial(self.ring, [scalar_mul(c, a) for a in self.coeffs])

    def divmod(self, other):
        """Polynomial division; requires Q coefficients and other != 0."""
        self._check(other)
        if self.ring != "Q":
            raise UnsupportedRingError("polynomial division needs field coefficients")
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [0] * max(0, len(rem) - len(other.coeffs) + 1)
        lead = Fraction(other.leading())
        while len(rem) >= len(other.coeffs):
            c = Fraction(rem[-1]) / lead
            d = len(rem) - len(other.coeffs)
            q[d] = norm_scalar(c)
            for i, b in enumerate(other.coeffs):
                rem[d + i] = scalar_add(rem[d + i], scalar_mul(-c, b))
            while rem and rem[-1] == 0:
                rem.pop()
            if not rem:
                break
        return Polynomial(self.ring, q), Polynomial(self.ring, rem)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if d == 0:
                body = scalar_str(c)
            else:
                xpow = "x" if d == 1 else f"x^{d}"
                if c == 1:
                    body = xpow
                elif c == -1:
                    body = f"-{xpow}"
                else:
                    body = f"{scalar_str(c)}{xpow}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"Polynomial({self.ring!r}, {list(self.coeffs)!r})"


def poly_mul(e1, e2):
    return e1 * e2


def word_key(word):
    """Length-then-lexicographic sort key for free-algebra words."""
    return (len(word), word)


class FreeAlgebraElement:
    """Element of the free algebra over Z or Q on a named alphabet.

    Terms map words (tuples of generator indices) to nonzero canonical
    scalars; the empty word is the identity.
    """

    __slots__ = ("ring", "gens", "terms")

    def __init__(self, ring, gens, terms):
        if ring not in ("Z", "Q"):
            raise UnsupportedRingError(f"free-algebra coefficients must be Z or Q, got {ring}")
        self.ring = ring
        self.gens = tuple(gens)
        clean = {}
        for w, c in terms.items():
            c = norm_scalar(c)
            if c != 0:
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def zero(cls, ring, gens):
        return cls(ring, gens, {})

    @classmethod
    def constant(cls, ring, gens, c):
        return cls(ring, gens, {(): c})

    @classmethod
    def generator(cls, ring, gens, i):
        return cls(ring, gens, {(i,): 1})

    @classmethod
    def word(cls, ring, gens, letters, c=1):
        return cls(ring, gens, {tuple(letters): c})

    def _check(self, other):
        if not isinstance(other, FreeAlgebraElement):
            raise AlphabetMismatchError(f"not a free-algebra element: {other!r}")
        if other.ring != self.ring or other.gens != self.gens:
            raise AlphabetMismatchError(
                f"mismatched free algebras: ({self.ring}, {self.gens}) vs ({other.ring}, {other.gens})"
            )

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FreeAlgebraElement):
            return NotImplemented
        return (self.ring, self.gens, self.terms) == (other.ring, other.gens, other.terms)

    def __hash__(self):
        return hash((self.ring, self.gens, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = scalar_add(terms.get(w, 0), c)
            if s == 0:
                terms.pop(w, None)
            else:
                terms[w] = s
        return FreeAlgebraElement(self.ring, self.gens, terms)

    def __neg__(self):
        return FreeAlgebraElement(self.ring, self.gens, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = scalar_add(terms.get(w, 0), scalar_mul(c1, c2))
                if s == 0:
                    terms.pop(w, None)
                else:
                    terms[w] = s
        return FreeAlgebraElement(self.ring, self.gens, terms)

    def scale(self, c):
        return FreeAlgebraElement(self.ring, self.gens, {w: scalar_mul(c, a) for w, a in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=word_key):
            c = self.terms[w]
            if not w:
                parts.append(scalar_str(c))
                continue
            wstr = "*".join(self.gens[i] for i in w)
            if c == 1:
                parts.append(wstr)
            elif c == -1:
                parts.append(f"-{wstr}")
            else:
                parts.append(f"{scalar_str(c)}*{wstr}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"FreeAlgebraElement({self.ring!r}, {self.gens!r}, {self.terms!r})"


def free_mul(e1, e2):
    return e1 * e2


# ---------------------------------------------------------------------------
# Ring protocol objects.  A ring object bundles the operations the linear
# algebra and localization layers need, with plain elements (int, Fraction,
# KadicFraction, Polynomial) as data.
# ---------------------------------------------------------------------------

class IntegerRing:
    name = "Z"
    is_field = False

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a in (1, -1)

    def exact_div(self, a, b):
        """a / b if it lies in the ring, else None."""
        if b == 0:
            return None
        q, r = divmod(a, b)
        return q if r == 0 else None

    def unit_normal(self, a):
        """(canonical representative, unit u) with a == u * representative."""
        if a < 0:
            return -a, -1
        return a, 1

    def random(self, rng, size=9):
        return rng.randint(-size, size)

    def fmt(self, a):
        return str(a)


class RationalField:
    name = "Q"
    is_field = True

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n

    def add(self, a, b):
        return scalar_add(a, b)

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return scalar_add(a, -b)

    def mul(self, a, b):
        return scalar_mul(a, b)

    def eq(self, a, b):
        return norm_scalar(Fraction(a)) == norm_scalar(Fraction(b))

    def is_zero(self, a):
        return a == 0

    def is_unit(self, a):
        return a != 0

    def exact_div(self, a, b):
        if b == 0:
            return None
        return norm_scalar(Fraction(a) / Fraction(b))

    def unit_normal(self, a):
        if a == 0:
            return 0, 1
        return 1, norm_scalar(Fraction(a))

    def random(self, rng, size=9):
        n = rng.randint(-size, size)
        d = rng.choice([1, 1, 2, 3])
        return norm_scalar(Fraction(n, d))

    def fmt(self, a):
        return scalar_str(norm_scalar(Fraction(a)))


class KadicRing:
    """Z[1/k], a PID between Z and Q."""

    is_field = False

    def __init__(self, k):
        if k < 2:
            raise ValueError(f"k-adic base must be >= 2, got {k}")
        self.k = k
        self.name = f"Z[1/{k}]"

    def zero(self):
        return KadicFraction(self.k, 0)

    def one(self):
        return KadicFraction(self.k, 1)

    def from_int(self, n):
        return KadicFraction(self.k, n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a.is_zero()

    def is_unit(self, a):
        return a.is_unit()

    def from_fraction(self, frac):
        """KadicFraction with the value of frac, or None if not in Z[1/k]."""
        frac = Fraction(frac)
        den = frac.denominator
        e = 0
        while den != 1:
            g = gcd(den, self.k)
            if g == 1:
                return None
            while den % g == 0:
                den //= g
            e += 1
        # denominator divides k**e for the e just counted? Not necessarily:
        # grow e until it does.
        while (self.k ** e) % frac.denominator != 0:
            e += 1
        num = frac.numerator * ((self.k ** e) // frac.denominator)
        return KadicFraction(self.k, num, e)

    def exact_div(self, a, b):
        if b.is_zero():
            return None
        if a.is_zero():
            return self.zero()
        return self.from_fraction(a.as_fraction() / b.as_fraction())

    def unit_normal(self, a):
        """Canonical: the positive k-free part of the numerator, as an element."""
        if a.is_zero():
            return self.zero(), self.one()
        d = strip_factors_of(a.num, self.k)
        rep = KadicFraction(self.k, abs(d), 0)
        u = self.exact_div(a, rep)
        return rep, u

    def random(self, rng, size=9):
        return KadicFraction(self.k, rng.randint(-size, size), rng.randint(0, 2))

    def fmt(self, a):
        return str(a)


class PolynomialRing:
    """Q[x] (or Z[x] for display-only purposes); Euclidean when the base is Q."""

    is_field = False

    def __init__(self, base="Q"):
        self.base = base
        self.name = f"{base}[x]"

    def zero(self):
        return Polynomial(self.base, [])

    def one(self):
        return Polynomial(self.base, [1])

    def from_int(self, n):
        return Polynomial(self.base, [n])

    def variable(self):
        return Polynomial.variable(self.base)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a.is_zero()

    def is_unit(self, a):
        if self.base == "Q":
            return a.degree() == 0
        return a.coeffs in ((1,), (-1,))

    def exact_div(self, a, b):
        if b.is_zero():
            return None
        if self.base != "Q":
            raise UnsupportedRingError("exact division needs Q coefficients")
        q, r = a.divmod(b)
        return q if r.is_zero() else None

    def unit_normal(self, a):
        """Monic representative (over Q)."""
        if a.is_zero():
            return self.zero(), self.one()
        lead = a.leading()
        rep = a.scale(norm_scalar(Fraction(1, 1) / Fraction(lead)))
        return rep, Polynomial.constant(self.base, lead)

    def random(self, rng, size=4, degree=2):
        return Polynomial(self.base, [rng.randint(-size, size) for _ in range(rng.randint(0, degree) + 1)])

    def fmt(self, a):
        return str(a)


class FreeAlgebra:
    """C<gens>: the free associative algebra on named generators."""

    is_field = False

    def __init__(self, base, gens):
        self.base = base
        self.gens = tuple(gens)
        self.name = f"{base}<{','.join(gens)}>"

    def zero(self):
        return FreeAlgebraElement.zero(self.base, self.gens)

    def one(self):
        return FreeAlgebraElement.constant(self.base, self.gens, 1)

    def from_int(self, n):
        return FreeAlgebraElement.constant(self.base, self.gens, n)

    def generator(self, i):
        return FreeAlgebraElement.generator(self.base, self.gens, i)

    def word(self, letters, c=1):
        return FreeAlgebraElement.word(self.base, self.gens, letters, c)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a.is_zero()

    def random(self, rng, size=3, terms=2, length=2):
        out = self.zero()
        for _ in range(rng.randint(1, terms)):
            w = tuple(rng.randrange(len(self.gens)) for _ in range(rng.randint(0, length))) if self.gens else ()
            c = rng.randint(-size, size)
            out = out + FreeAlgebraElement.word(self.base, self.gens, w, c)
        return out

    def fmt(self, a):
        return str(a)


ZZ = IntegerRing()
QQ = RationalField()

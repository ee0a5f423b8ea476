"""Expression grammar: parsing and canonical printing.

Grammar (whitespace is insignificant)::

    expr   := ["-"] term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" nat)*
    atom   := lit | "x[" melem "]" | "(" expr ")"
    lit    := nat | nat "/" nat          (rationals only over Q coefficients)

The melem literal is family specific::

    regular / scaled   integer (lit)
    double             "(" lit "," lit ")"
    tensor-free        "t(" word "," word ")"
    hnn-free           "h(" word ")"  or  "h(" word "," word ")"
    word               "1" | ident ("*" ident)*

Printing a normal form and re-parsing it yields an equal element.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .families import DoubleFamily, HnnFreeFamily, RegularFamily, ScaledFamily, TensorFreeFamily
from .rings import FreeAlgebraElement, norm_scalar, scalar_str
from .rings import scalar_add, scalar_mul
from .tring import Add, Const, Gen, Mul, Neg, Pow, t_normalize, word_key


class _Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos

    def __repr__(self):
        return f"Token({self.kind}, {self.value!r}, {self.pos})"


_SYMBOLS = "+-*^()[],/"


def _tokenize(text):
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(_Token("int", int(text[i:j]), i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(_Token("ident", text[i:j], i))
            i = j
            continue
        if c in _SYMBOLS:
            out.append(_Token(c, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    out.append(_Token("eof", None, n))
    return out


class _Parser:
    def __init__(self, family, text):
        self.family = family
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    # -- token plumbing -----------------------------------------------------
    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok.kind != kind:
            what = "end of input" if tok.kind == "eof" else repr(tok.value)
            raise ParseError(f"expected {kind!r}, found {what}", tok.pos)
        return tok

    def fail(self, message):
        raise ParseError(message, self.peek().pos)

    # -- grammar -------------------------------------------------------------
    def parse_expr(self):
        negate = False
        if self.peek().kind == "-":
            self.next()
            negate = True
        node = self.parse_term()
        if negate:
            node = Neg(node)
        items = [node]
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            term = self.parse_term()
            items.append(Neg(term) if op == "-" else term)
        return items[0] if len(items) == 1 else Add(tuple(items))

    def parse_term(self):
        items = [self.parse_factor()]
        while self.peek().kind == "*":
            self.next()
            items.append(self.parse_factor())
        return items[0] if len(items) == 1 else Mul(tuple(items))

    def parse_factor(self):
        node = self.parse_atom()
        while self.peek().kind == "^":
            self.next()
            tok = self.expect("int")
            node = Pow(node, tok.value)
        return node

    def parse_atom(self):
        tok = self.peek()
        if tok.kind == "int":
            return Const(self.parse_lit())
        if tok.kind == "ident" and tok.value == "x" and self.tokens[self.i + 1].kind == "[":
            self.next()
            self.next()
            m = self.parse_melem()
            self.expect("]")
            return Gen(m)
        if tok.kind == "(":
            self.next()
            node = self.parse_expr()
            self.expect(")")
            return node
        self.fail(f"expected a literal, x[...] or parenthesized expression, found {tok.value!r}")

    def parse_lit(self):
        tok = self.expect("int")
        value = tok.value
        if self.peek().kind == "/":
            if self.family.coeff != "Q":
                raise ParseError("rational literal not allowed over integer coefficients", self.peek().pos)
            self.next()
            den = self.expect("int")
            if den.value == 0:
                raise ParseError("zero denominator", den.pos)
            return norm_scalar(Fraction(value, den.value))
        return value

    def parse_signed_lit(self):
        if self.peek().kind == "-":
            self.next()
            return -self.parse_lit()
        return self.parse_lit()

    # -- melem literals -------------------------------------------------------
    def parse_melem(self):
        fam = self.family
        if isinstance(fam, (RegularFamily, ScaledFamily)):
            return fam.canon_m(self.parse_signed_lit())
        if isinstance(fam, DoubleFamily):
            self.expect("(")
            m1 = self.parse_signed_lit()
            self.expect(",")
            m2 = self.parse_signed_lit()
            self.expect(")")
            return fam.canon_m((m1, m2))
        if isinstance(fam, TensorFreeFamily):
            tok = self.next()
            if tok.kind != "ident" or tok.value != "t":
                raise ParseError("tensor-free melem must be t(aword,bword)", tok.pos)
            self.expect("(")
            wa = self.parse_word(fam.a_gens, "A")
            self.expect(",")
            wb = self.parse_word(fam.b_gens, "B")
            self.expect(")")
            return {(wa, wb): 1}
        if isinstance(fam, HnnFreeFamily):
            tok = self.next()
            if tok.kind != "ident" or tok.value != "h":
                raise ParseError("hnn-free melem must be h(word) or h(word,word)", tok.pos)
            self.expect("(")
            w1 = self.parse_word(fam.a_gens, "A")
            if self.peek().kind == ",":
                self.next()
                w2 = self.parse_word(fam.a_gens, "A")
                self.expect(")")
                return (fam.a_ring.zero(), {(w1, w2): 1})
            self.expect(")")
            return (fam.a_ring.word(w1), {})
        self.fail(f"no melem syntax for family {fam.kind}")

    def parse_word(self, gens, side):
        tok = self.peek()
        if tok.kind == "int" and tok.value == 1:
            self.next()
            return ()
        letters = []
        while True:
            tok = self.expect("ident")
            if tok.value not in gens:
                raise ParseError(f"unknown {side}-generator {tok.value!r}", tok.pos)
            letters.append(gens.index(tok.value))
            if self.peek().kind == "*":
                # lookahead: a word continues only with another ident
                if self.tokens[self.i + 1].kind == "ident":
                    self.next()
                    continue
            break
        return tuple(letters)

    def finished(self):
        return self.peek().kind == "eof"


def parse_element(family, text):
    """Parse text into a raw expression tree over the family."""
    p = _Parser(family, text)
    node = p.parse_expr()
    if not p.finished():
        p.fail(f"unexpected trailing input {p.peek().value!r}")
    return node


def parse_normal(family, text, budget=None):
    """Parse and normalize in one step."""
    from .tring import DEFAULT_BUDGET

    node = parse_element(family, text)
    return t_normalize(family, node, DEFAULT_BUDGET if budget is None else budget)


def format_element(e):
    """Canonical grammar rendering of a normal form; round-trips by parse."""
    family = e.family
    if not e.terms:
        return "0"
    parts = []
    for word, coeff in e.sorted_terms():
        if not word:
            parts.append(scalar_str(coeff))
            continue
        runs = []
        for letter in word:
            if runs and runs[-1][0] == letter:
                runs[-1][1] += 1
            else:
                runs.append([letter, 1])
        body = "*".join(
            f"x[{family.letter_fmt(letter)}]" + (f"^{n}" if n > 1 else "") for letter, n in runs
        )
        if coeff == 1:
            parts.append(body)
        elif coeff == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{scalar_str(coeff)}*{body}")
    out = parts[0]
    for piece in parts[1:]:
        if piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


def format_oracle(family, value):
    """Display an oracle-ring value."""
    if isinstance(value, (int, Fraction)):
        return scalar_str(value)
    return str(value)


def parse_ring_element(family, component, text):
    """Parse an element of A or B (scalar or free-algebra expression)."""
    ring = family.a_ring if component == "A" else family.b_ring
    if isinstance(family, (RegularFamily, DoubleFamily, ScaledFamily)):
        return _parse_scalar_expr(family, text)
    return _parse_free_expr(family, ring, text)


def _parse_scalar_expr(family, text):
    p = _Parser(family, text)
    value = _eval_scalar(p, family, p.parse_expr())
    if not p.finished():
        p.fail(f"unexpected trailing input {p.peek().value!r}")
    return value


def _eval_scalar(p, family, node):
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Neg):
        return -_eval_scalar(p, family, node.item)
    if isinstance(node, Add):
        total = 0
        for item in node.items:
            total = scalar_add(total, _eval_scalar(p, family, item))
        return total
    if isinstance(node, Mul):
        total = 1
        for item in node.items:
            total = scalar_mul(total, _eval_scalar(p, family, item))
        return total
    if isinstance(node, Pow):
        return _eval_scalar(p, family, node.base) ** node.exponent
    raise ParseError("generator letters are not scalars", 0)


def _parse_free_expr(family, ring, text):
    """Free-algebra expression: idents are generators, lits are constants."""
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]]

    def advance():
        tok = tokens[pos[0]]
        pos[0] += 1
        return tok

    def expect(kind):
        tok = advance()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.value!r}", tok.pos)
        return tok

    def atom():
        tok = peek()
        if tok.kind == "int":
            advance()
            value = tok.value
            if peek().kind == "/":
                if family.coeff != "Q":
                    raise ParseError("rational literal not allowed over integer coefficients", peek().pos)
                advance()
                den = expect("int")
                value = norm_scalar(Fraction(value, den.value))
            return FreeAlgebraElement.constant(ring.base, ring.gens, value)
        if tok.kind == "ident":
            advance()
            if tok.value not in ring.gens:
                raise ParseError(f"unknown generator {tok.value!r}", tok.pos)
            return ring.generator(ring.gens.index(tok.value))
        if tok.kind == "(":
            advance()
            node = expr()
            expect(")")
            return node
        raise ParseError(f"expected a literal, generator or parenthesized expression, found {tok.value!r}", tok.pos)

    def factor():
        node = atom()
        while peek().kind == "^":
            advance()
            tok = expect("int")
            out = ring.one()
            for _ in range(tok.value):
                out = out * node
            node = out
        return node

    def term():
        node = factor()
        while peek().kind == "*":
            advance()
            node = node * factor()
        return node

    def expr():
        negate = peek().kind == "-"
        if negate:
            advance()
        node = term()
        if negate:
            node = -node
        while peek().kind in ("+", "-"):
            op = advance().kind
            rhs = term()
            node = node - rhs if op == "-" else node + rhs
        return node

    out = expr()
    if peek().kind != "eof":
        raise ParseError(f"unexpected trailing input {peek().value!r}", peek().pos)
    return out


def parse_bim_element(family, text):
    """Parse a bimodule element: a signed sum of (coefficient *) melems."""
    p = _Parser(family, text)
    total = family.zero_m()

    def melem_term():
        tok = p.peek()
        if tok.kind == "int" and isinstance(family, (RegularFamily, ScaledFamily)):
            return family.canon_m(p.parse_lit())
        coeff = 1
        if tok.kind == "int":
            coeff = p.parse_lit()
            p.expect("*")
        m = p.parse_melem()
        return family.scale_m(coeff, m) if coeff != 1 else m

    negate = p.peek().kind == "-"
    if negate:
        p.next()
    m = melem_term()
    total = family.add_m(total, family.neg_m(m) if negate else m)
    while p.peek().kind in ("+", "-"):
        op = p.next().kind
        m = melem_term()
        total = family.add_m(total, family.neg_m(m) if op == "-" else m)
    if not p.finished():
        p.fail(f"unexpected trailing input {p.peek().value!r}")
    return total


def sort_words(family, words):
    return sorted(words, key=lambda w: word_key(family, w))

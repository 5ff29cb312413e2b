"""Text format for elements: scalar-weighted sums of s-expression words.

Grammar::

    element := "0" | term (("+" | "-") term)*
    term    := [coef] word
    coef    := ["-"] INT ["/" INT] | "[" scalar-expression "]" | "-"
    word    := "(g" INT ")" | "(*" word word ")" | "(b" word word ")" | "(e)"

``(* L R)`` is the variety product, ``(b L R)`` the Poisson bracket (Poisson
only) and ``(e)`` the adjoined unit (special Jordan only).  Each word stands
for its image in the free algebra, so the printer emits basis preimages.
"""

from __future__ import annotations

import re

from .field import Field, FieldError
from .varieties import (
    FreeElement,
    Variety,
    evaluate_poisson_term,
    key_preimage,
    normal_form,
    special_jordan_coordinates,
)
from .words import to_sexpr


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        self.text = text
        caret = " " * pos + "^"
        super().__init__(f"{message} at position {pos}\n  {text}\n  {caret}")


_TOKENS = re.compile(
    r"\s*(?:(?P<bracket>\[[^\]]*\])|(?P<int>\d+)|(?P<sym>[()/+\-*])|(?P<name>[A-Za-z]+))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKENS.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", text, pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, variety: Variety, n: int, field: Field):
        self.text = text
        self.variety = variety
        self.n = n
        self.field = field
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, pos=None):
        raise ParseError(msg, self.text, self.peek()[2] if pos is None else pos)

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}", self.text, pos)

    def parse(self) -> FreeElement:
        total = FreeElement(self.variety, self.n, self.field)
        kind, val, _ = self.peek()
        if kind == "int" and val == "0" and self.tokens[self.i + 1][0] == "end":
            return total
        sign = 1
        while True:
            coef, word = self.term()
            value = self.word_value(word).scale(coef if sign > 0 else -coef)
            total = total + value
            kind, val, pos = self.peek()
            if kind == "end":
                return total
            if val == "+":
                sign = 1
            elif val == "-":
                sign = -1
            else:
                self.error("expected '+', '-' or end of input")
            self.take()

    def term(self):
        f = self.field
        kind, val, pos = self.peek()
        coef = f.one
        neg = False
        if val == "-":
            self.take()
            neg = True
            kind, val, pos = self.peek()
        if kind == "bracket":
            self.take()
            try:
                coef = f(val[1:-1])
            except FieldError as exc:
                raise ParseError(f"malformed scalar ({exc})", self.text, pos) from None
        elif kind == "int":
            self.take()
            num = int(val)
            den = 1
            if self.peek()[1] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "int":
                    raise ParseError("malformed scalar: expected denominator", self.text, p2)
                den = int(v2)
                if den == 0:
                    raise ParseError("malformed scalar: zero denominator", self.text, p2)
            coef = f(num) / f(den)
        if neg:
            coef = -coef
        if self.peek()[1] != "(":
            self.error("expected a word '('")
        return coef, self.word()

    def open_word(self):
        kind, val, _ = self.peek()
        if kind == "end":
            self.error("unbalanced parenthesis: input ends inside a word")
        if val != "(":
            self.error("expected a word '('")

    def word(self):
        _, _, start = self.take()  # "("
        kind, val, pos = self.take()
        if val == "g":
            k2, v2, p2 = self.take()
            if k2 != "int":
                raise ParseError("expected generator index", self.text, p2)
            idx = int(v2)
            if not 1 <= idx <= self.n:
                raise ParseError(f"unknown generator index {idx} (n={self.n})", self.text, p2)
            self.expect(")")
            return idx
        if val == "e":
            if self.variety is not Variety.SPECIAL_JORDAN:
                raise ParseError("the unit (e) exists only for special Jordan", self.text, pos)
            self.expect(")")
            return ()
        if val in ("*", "b"):
            if val == "b" and self.variety is not Variety.POISSON:
                raise ParseError("bracket (b ...) is only available for Poisson", self.text, pos)
            self.open_word()
            left = self.word()
            self.open_word()
            right = self.word()
            kind, v3, p3 = self.take()
            if v3 != ")":
                raise ParseError("unbalanced parenthesis: expected ')'", self.text, p3)
            return (val, left, right) if self.variety is Variety.POISSON else (left, right)
        raise ParseError("expected 'g', '*', 'b' or 'e' after '('", self.text, pos)

    def word_value(self, w) -> FreeElement:
        if w == ():
            return FreeElement(self.variety, self.n, self.field, {(): self.field.one})
        if self.variety is Variety.POISSON:
            gens = FreeElement.generators(self.variety, self.n, self.field)
            return evaluate_poisson_term(w, gens)
        return normal_form(w, self.variety, self.field, self.n)


def parse_element(text: str, variety, n: int, field: Field) -> FreeElement:
    """Parse the element text format into an exact element."""
    return _Parser(text, Variety(variety), n, field).parse()


def format_scalar(c, field: Field) -> str:
    if field.is_prime_field:
        return field.to_str(c)
    if c.is_constant():
        return field.base_field.to_str(c.constant_value())
    return f"[{field.to_str(c)}]"


def format_term_word(variety: Variety, w) -> str:
    if w == () and variety is Variety.SPECIAL_JORDAN:
        return "(e)"
    if variety is Variety.POISSON:
        return _poisson_sexpr(w)
    return to_sexpr(w)


def _poisson_sexpr(term) -> str:
    if isinstance(term, int):
        return f"(g {term})"
    op, left, right = term
    return f"({op} {_poisson_sexpr(left)} {_poisson_sexpr(right)})"


def format_element(elem: FreeElement) -> str:
    if not elem:
        return "0"
    v = elem.variety
    if v is Variety.SPECIAL_JORDAN:
        pairs = special_jordan_coordinates(elem)
    else:
        pairs = [(key_preimage(v, k), c) for k, c in elem.sorted_terms()]
    return " + ".join(
        f"{format_scalar(c, elem.field)} {format_term_word(v, w)}" for w, c in pairs
    )


def format_monomial(bm) -> str:
    if bm.degree == 0:
        return "(e)"
    return format_term_word(bm.variety, bm.preimage)


def parse_elements(text: str, variety, n: int, field: Field) -> list[FreeElement]:
    """One element per nonblank line; ``#`` starts a comment."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_element(line, variety, n, field))
    return out

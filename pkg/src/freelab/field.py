"""Exact scalars: prime fields and purely transcendental extensions of them.

A field is described by a :class:`FieldSpec` (characteristic plus an ordered
tuple of transcendental variable names).  Elements of a prime field are the
native sympy domain elements (``mpq`` for Q, modular integers for GF(p)).
Elements of ``K(t1, ..., tk)`` are :class:`RationalFunction` instances kept in
a canonical reduced form with a monic denominator under graded-lex order, so
equality is a syntactic comparison.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing


class FieldError(ValueError):
    """Invalid field description or scalar literal."""


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int = 0
    variables: tuple[str, ...] = ()

    def __post_init__(self):
        p = self.characteristic
        if p == 2:
            raise FieldError("characteristic 2 is not supported (1/2 must exist)")
        if p != 0 and not (p > 2 and isprime(p)):
            raise FieldError(f"characteristic must be 0 or an odd prime, got {p}")
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise FieldError(f"duplicate variable names in {self.variables}")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise FieldError(f"bad variable name {v!r}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``Q``, ``GF(p)``, ``Q(t1,t2)`` or ``GF(p)(t)``."""
        m = re.fullmatch(r"\s*(Q|GF\(\s*(\d+)\s*\))\s*(?:\(([^()]*)\))?\s*", text)
        if not m:
            raise FieldError(f"cannot parse field spec {text!r}")
        char = int(m.group(2)) if m.group(2) else 0
        names = ()
        if m.group(3) is not None:
            names = tuple(v.strip() for v in m.group(3).split(","))
            if not all(names):
                raise FieldError(f"empty variable name in {text!r}")
        return cls(char, names)

    def __str__(self):
        base = "Q" if self.characteristic == 0 else f"GF({self.characteristic})"
        if self.variables:
            return f"{base}({','.join(self.variables)})"
        return base

    def base(self) -> "FieldSpec":
        return FieldSpec(self.characteristic, ())


class Field:
    """Handle for an exact field; call it to convert literals into scalars."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.characteristic = spec.characteristic
        self.variables = spec.variables
        if spec.characteristic == 0:
            self.domain = QQ
        else:
            self.domain = GF(spec.characteristic, symmetric=False)
        if spec.variables:
            self.ring = PolyRing(spec.variables, self.domain, grlex)
            self.zero = RationalFunction(self, self.ring.zero, self.ring.one)
            self.one = RationalFunction(self, self.ring.one, self.ring.one)
        else:
            self.ring = None
            self.zero = self.domain.zero
            self.one = self.domain.one
        self.half = self(Fraction(1, 2))

    def __repr__(self):
        return f"Field({self.spec})"

    def __str__(self):
        return str(self.spec)

    def __eq__(self, other):
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    @property
    def is_prime_field(self) -> bool:
        return not self.variables

    @property
    def base_field(self) -> "Field":
        return field_make(self.spec.base())

    # -- conversion ---------------------------------------------------------

    def base_element(self, value):
        """Convert an int/Fraction/base element into the prime field domain."""
        dom = self.domain
        if isinstance(value, Fraction):
            return dom(value.numerator) / dom(value.denominator)
        if isinstance(value, int):
            return dom(value)
        if self.characteristic == 0:
            return dom.convert(value)
        if isinstance(value, dom.dtype):
            return value
        return dom(int(value))

    def __call__(self, value):
        if isinstance(value, RationalFunction):
            if value.field == self:
                return value
            if value.field.characteristic == self.characteristic and self.ring is not None:
                # embed a subtower element by re-reading its polynomials
                return RationalFunction.make(
                    self, _repoly(value.num, self.ring), _repoly(value.den, self.ring)
                )
            if value.is_constant():
                return self(value.constant_value())
            raise FieldError(f"cannot convert {value} into {self}")
        if isinstance(value, str):
            return parse_scalar(value, self)
        if isinstance(value, PolyElement):
            if self.ring is None:
                raise FieldError("polynomial literal in a prime field")
            return RationalFunction.make(self, _repoly(value, self.ring), self.ring.one)
        c = self.base_element(value)
        if self.ring is None:
            return c
        return RationalFunction(self, self.ring.ground_new(c), self.ring.one)

    def var(self, name: str):
        if name not in self.variables:
            raise FieldError(f"{name!r} is not a variable of {self}")
        g = self.ring.gens[self.variables.index(name)]
        return RationalFunction(self, g, self.ring.one)

    def from_fraction(self, num: PolyElement, den: PolyElement):
        return RationalFunction.make(self, num, den)

    # -- inspection ---------------------------------------------------------

    def numer_denom(self, x) -> tuple[PolyElement, PolyElement]:
        if self.ring is None:
            raise FieldError("prime field scalars have no polynomial parts")
        x = self(x)
        return x.num, x.den

    def is_constant(self, x) -> bool:
        return self.ring is None or x.is_constant()

    def constant_value(self, x):
        return x if self.ring is None else x.constant_value()

    def specialize(self, x, point):
        """Evaluate ``x`` at ``point`` (one base element per variable)."""
        if self.ring is None:
            return x
        pt = [self.base_element(c) for c in point]
        den = x.den.evaluate(list(zip(self.ring.gens, pt))) if len(pt) else x.den
        if not den:
            raise ZeroDivisionError(f"denominator of {self.to_str(x)} vanishes at {point}")
        num = x.num.evaluate(list(zip(self.ring.gens, pt)))
        return self.domain.convert(num) / self.domain.convert(den)

    def to_int_mod(self, c, p: int) -> int:
        """Reduce a prime-field element modulo ``p`` (``None`` if undefined)."""
        if self.characteristic:
            return int(c) % p
        d = int(c.denominator) % p
        if d == 0:
            return None
        return int(c.numerator) * pow(d, -1, p) % p

    def to_str(self, x) -> str:
        if self.ring is None:
            return _base_str(x, self.characteristic)
        return str(x)


@lru_cache(maxsize=None)
def field_make(spec: FieldSpec | str) -> Field:
    """Return the (cached) field handle for ``spec``."""
    if isinstance(spec, str):
        spec = FieldSpec.parse(spec)
    return Field(spec)


def _repoly(p: PolyElement, ring: PolyRing) -> PolyElement:
    if p.ring == ring:
        return p
    src = p.ring.symbols
    idx = [ring.symbols.index(s) for s in src]
    terms = {}
    for monom, c in p.terms():
        e = [0] * ring.ngens
        for i, k in zip(idx, monom):
            e[i] = k
        terms[tuple(e)] = ring.domain.convert(c) if ring.domain.characteristic() == 0 else ring.domain(int(c))
    return ring.from_dict(terms)


def _base_str(c, char: int) -> str:
    if char:
        return str(int(c) % char)
    return str(c)


def _poly_str(p: PolyElement, char: int) -> str:
    if not p:
        return "0"
    names = p.ring.symbols
    out = []
    for monom, c in p.terms():
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(str(name))
            elif e > 1:
                factors.append(f"{name}^{e}")
        coeff = _base_str(c, char)
        if factors:
            if coeff == "1":
                term = "*".join(factors)
            elif coeff == "-1":
                term = "-" + "*".join(factors)
            else:
                term = coeff + "*" + "*".join(factors)
        else:
            term = coeff
        out.append(term)
    s = " + ".join(out)
    return s.replace("+ -", "- ")


class RationalFunction:
    """Reduced fraction of polynomials with a monic (grlex) denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: Field, num: PolyElement, den: PolyElement):
        self.field = field
        self.num = num
        self.den = den

    @classmethod
    def make(cls, field: Field, num: PolyElement, den: PolyElement) -> "RationalFunction":
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return field.zero
        if not den.is_one:
            if not den.is_ground:
                _, num, den = num.cofactors(den)
            lc = den.LC
            if lc != 1:
                num = num.quo_ground(lc)
                den = den.quo_ground(lc)
        return cls(field, num, den)

    def _coerce(self, other):
        if isinstance(other, RationalFunction) and other.field is self.field:
            return other
        try:
            return self.field(other)
        except (FieldError, TypeError):
            return None

    def is_constant(self) -> bool:
        return self.den.is_one and self.num.is_ground

    def is_polynomial(self) -> bool:
        return self.den.is_one

    def constant_value(self):
        if not self.is_constant():
            raise FieldError(f"{self} is not a constant")
        return self.field.domain.convert(self.num.LC) if self.num else self.field.domain.zero

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one and o.den.is_one:
            return RationalFunction(self.field, self.num + o.num, self.den)
        if self.den == o.den:
            return RationalFunction.make(self.field, self.num + o.num, self.den)
        return RationalFunction.make(
            self.field, self.num * o.den + o.num * self.den, self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one and o.den.is_one:
            return RationalFunction(self.field, self.num * o.num, self.den)
        return RationalFunction.make(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction.make(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.field, self.num**k, self.den**k)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        char = self.field.characteristic
        n = _poly_str(self.num, char)
        if self.den.is_one:
            return n
        d = _poly_str(self.den, char)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1 or not self.den.is_monomial:
            d = f"({d})"
        return f"{n}/{d}"

    __repr__ = __str__


def scalar_arith(op: str, a, b=None):
    """Dispatch ``add``/``mul``/``neg``/``inv``/``eq`` on field scalars."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if not isinstance(a, RationalFunction) else a.inverse()
    if op == "eq":
        return a == b
    raise ValueError(f"unknown scalar op {op!r}")


# -- scalar literal parser ----------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def parse_scalar(text: str, field: Field):
    """Parse an arithmetic expression in integers and the field's variables."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FieldError(f"bad character in scalar {text!r} at position {pos}")
        if m.group(1):
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            tokens.append(("var", m.group(2), m.start(2)))
        else:
            tok = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", tok, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def expr():
        val = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek()[0] == "op" and peek()[1] in "*/":
            op = take()[1]
            rhs = unary()
            if op == "*":
                val = val * rhs
            else:
                if not rhs:
                    raise FieldError(f"division by zero in scalar {text!r}")
                val = val / rhs
        return val

    def unary():
        if peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            val = unary()
            return -val if op == "-" else val
        return power()

    def power():
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            kind, val, p = take()
            if kind != "int":
                raise FieldError(f"exponent must be a non-negative integer at position {p}")
            return base**val
        return base

    def atom():
        kind, val, p = take()
        if kind == "int":
            return field(val)
        if kind == "var":
            if val not in field.variables:
                raise FieldError(f"unknown variable {val!r} at position {p} in {text!r}")
            return field.var(val)
        if kind == "op" and val == "(":
            inner = expr()
            k2, v2, p2 = take()
            if v2 != ")":
                raise FieldError(f"expected ')' at position {p2} in {text!r}")
            return inner
        raise FieldError(f"unexpected token at position {p} in {text!r}")

    value = expr()
    if peek()[0] != "end":
        raise FieldError(f"trailing input at position {peek()[2]} in {text!r}")
    return value

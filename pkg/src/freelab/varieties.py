"""Free algebras of the supported varieties and their arithmetic.

Storage conventions for :class:`FreeElement` keys, by variety:

``all``              magma words
``associative``      associative words (tuples)
``commutative``      commutative regular words
``anticommutative``  anticommutative regular words
``lie``              Lyndon words (coordinates in the Lyndon bracketing basis)
``special-jordan``   associative words; the element is its image in K<Y>
``poisson``          tuples of Lyndon words (words in the Lyndon letters)
``trivial``          generator indices only
"""

from __future__ import annotations

import enum
import heapq
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .field import Field, field_make
from .linalg import RowReducer
from .words import (
    degree as word_degree,
    enumerate_words,
    is_lyndon,
    left_normed,
    leaves,
    lyndon_words,
    regular_words,
    standard_bracketing,
    word_key,
)


class Variety(str, enum.Enum):
    ALL = "all"
    ASSOCIATIVE = "associative"
    COMMUTATIVE = "commutative"
    ANTICOMMUTATIVE = "anticommutative"
    LIE = "lie"
    SPECIAL_JORDAN = "special-jordan"
    POISSON = "poisson"
    TRIVIAL = "trivial"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, name: str) -> "Variety":
        name = name.strip().lower()
        try:
            return cls(_ALIASES.get(name, name))
        except ValueError:
            names = ", ".join(v.value for v in cls)
            raise ValueError(f"unknown variety {name!r} (choose from {names})") from None


_ALIASES = {
    "assoc": "associative",
    "comm": "commutative",
    "anticomm": "anticommutative",
    "sj": "special-jordan",
    "jordan": "special-jordan",
    "triv": "trivial",
    "trivial-mult": "trivial",
    "ncp": "poisson",
}

MAGMA_VARIETIES = tuple(v for v in Variety if v is not Variety.POISSON)
ASSOC_KEYED = (Variety.ASSOCIATIVE, Variety.LIE, Variety.SPECIAL_JORDAN)


class VarietyError(ValueError):
    pass


def key_degree(variety: Variety, key) -> int:
    if variety in ASSOC_KEYED:
        return len(key)
    if variety is Variety.POISSON:
        return sum(len(letter) for letter in key)
    return word_degree(key)


def key_sort(variety: Variety, key):
    if variety in ASSOC_KEYED:
        return (len(key), key)
    if variety is Variety.POISSON:
        return (key_degree(variety, key), len(key), key)
    return word_key(key)


class FreeElement:
    """Finite combination of basis keys of a free algebra ``K_M{x1..xn}``."""

    __slots__ = ("variety", "n", "field", "terms")

    def __init__(self, variety: Variety, n: int, field: Field, terms=None):
        self.variety = Variety(variety)
        self.n = n
        self.field = field
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def generator(cls, variety, n: int, field: Field, i: int) -> "FreeElement":
        if not 1 <= i <= n:
            raise IndexError(f"generator index {i} outside 1..{n}")
        variety = Variety(variety)
        if variety in ASSOC_KEYED:
            key = (i,)
        elif variety is Variety.POISSON:
            key = ((i,),)
        else:
            key = i
        return cls(variety, n, field, {key: field.one})

    @classmethod
    def generators(cls, variety, n: int, field: Field) -> list["FreeElement"]:
        return [cls.generator(variety, n, field, i) for i in range(1, n + 1)]

    def _new(self, terms) -> "FreeElement":
        return FreeElement(self.variety, self.n, self.field, terms)

    def zero(self) -> "FreeElement":
        return self._new({})

    def _check(self, other: "FreeElement"):
        if not isinstance(other, FreeElement):
            raise TypeError(f"expected FreeElement, got {type(other).__name__}")
        if other.variety is not self.variety or other.field != self.field:
            raise VarietyError(
                f"mismatched operands: {self.variety}/{self.field} vs {other.variety}/{other.field}"
            )

    def __add__(self, other):
        self._check(other)
        return self._new(_add_terms(self.terms, other.terms, self.field.one))

    def __sub__(self, other):
        self._check(other)
        return self._new(_add_terms(self.terms, other.terms, -self.field.one))

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def scale(self, c) -> "FreeElement":
        c = self.field(c)
        if not c:
            return self.zero()
        return self._new({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return (
            self.variety is other.variety
            and self.field == other.field
            and self.terms == other.terms
        )

    __hash__ = None

    @property
    def degree(self) -> int:
        return max((key_degree(self.variety, k) for k in self.terms), default=0)

    @property
    def min_degree(self) -> int:
        return min((key_degree(self.variety, k) for k in self.terms), default=0)

    def homogeneous_part(self, d: int) -> "FreeElement":
        return self._new(
            {k: v for k, v in self.terms.items() if key_degree(self.variety, k) == d}
        )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: key_sort(self.variety, kv[0]))

    def change_field(self, field: Field) -> "FreeElement":
        return FreeElement(
            self.variety, self.n, field, {k: field(v) for k, v in self.terms.items()}
        )

    def __repr__(self):
        from .parsing import format_element

        return f"FreeElement<{self.variety}, n={self.n}, {self.field}>[{format_element(self)}]"


def _add_terms(a: dict, b: dict, sign) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        nv = sign * v if w is None else w + sign * v
        if nv:
            out[k] = nv
        elif w is not None:
            del out[k]
    return out


def _accumulate(out: dict, key, value):
    w = out.get(key)
    nv = value if w is None else w + value
    if nv:
        out[key] = nv
    elif w is not None:
        del out[key]


# -- associative polynomial helpers ---------------------------------------------


def assoc_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            _accumulate(out, u + v, a * b)
    return out


def assoc_commutator(p: dict, q: dict) -> dict:
    out = assoc_mul(p, q)
    for k, v in assoc_mul(q, p).items():
        _accumulate(out, k, -v)
    return out


# -- Lie: Lyndon coordinates anchored to the commutator embedding --------------------


@lru_cache(maxsize=None)
def commutator_expansion(w) -> dict:
    """Integer associative expansion of a bracketing read as nested commutators."""
    if isinstance(w, int):
        return {(w,): 1}
    return assoc_commutator(commutator_expansion(w[0]), commutator_expansion(w[1]))


@lru_cache(maxsize=None)
def lyndon_polynomial(word: tuple) -> dict:
    """Associative expansion of the standard bracketing of a Lyndon word.

    Its lexicographically smallest word is ``word`` itself, with coefficient 1.
    """
    return commutator_expansion(standard_bracketing(word))


def lie_coordinates(poly: dict, one=1) -> dict:
    """Express an associative Lie polynomial in Lyndon coordinates.

    Triangular elimination: the smallest word in the support must be Lyndon,
    and subtracting the matching bracketing only touches larger words.
    """
    poly = {k: v for k, v in poly.items() if v}
    heap = list(poly)
    heapq.heapify(heap)
    coords = {}
    seen = set(poly)
    while heap:
        w = heapq.heappop(heap)
        c = poly.pop(w, None)
        seen.discard(w)
        if not c:
            continue
        if not is_lyndon(w):
            raise VarietyError(f"not a Lie element: leading word {w} is not Lyndon")
        coords[w] = c
        for u, k in lyndon_polynomial(w).items():
            if u == w:
                continue
            _accumulate(poly, u, -(c * k))
            if u not in seen and u in poly:
                seen.add(u)
                heapq.heappush(heap, u)
    return coords


@lru_cache(maxsize=None)
def _lie_normal_int(w) -> dict:
    return lie_coordinates(commutator_expansion(w))


def lie_to_assoc(elem: FreeElement) -> dict:
    out: dict = {}
    for word, c in elem.terms.items():
        for u, k in lyndon_polynomial(word).items():
            _accumulate(out, u, c * k)
    return out


def lie_bracket(a: FreeElement, b: FreeElement) -> FreeElement:
    prod = assoc_commutator(lie_to_assoc(a), lie_to_assoc(b))
    return a._new(lie_coordinates(prod))


@lru_cache(maxsize=None)
def _lyndon_bracket_int(u: tuple, v: tuple) -> dict:
    return lie_coordinates(assoc_commutator(lyndon_polynomial(u), lyndon_polynomial(v)))


# -- special Jordan -------------------------------------------------------------


@lru_cache(maxsize=None)
def circ_expansion(w) -> dict:
    """Associative image of a magma word under ``x o y = (xy + yx)/2``."""
    if isinstance(w, int):
        return {(w,): Fraction(1)}
    p, q = circ_expansion(w[0]), circ_expansion(w[1])
    out: dict = {}
    for k, v in assoc_mul(p, q).items():
        _accumulate(out, k, v / 2)
    for k, v in assoc_mul(q, p).items():
        _accumulate(out, k, v / 2)
    return out


def jordan_circ(p: FreeElement, q: FreeElement) -> FreeElement:
    """``(pq + qp)/2`` on associative representatives."""
    if p.field.characteristic == 2:
        raise VarietyError("the circle product needs characteristic != 2")
    half = p.field.half
    out = assoc_mul(p.terms, q.terms)
    for k, v in assoc_mul(q.terms, p.terms).items():
        _accumulate(out, k, v)
    return p._new({k: half * v for k, v in out.items()})


# -- Poisson ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _poisson_word_bracket(u: tuple, v: tuple) -> dict:
    """Biderivation extension of the Lyndon-letter bracket to words."""
    out: dict = {}
    for i, a in enumerate(u):
        for j, b in enumerate(v):
            for letter, c in _lyndon_bracket_int(a, b).items():
                key = u[:i] + v[:j] + (letter,) + v[j + 1 :] + u[i + 1 :]
                _accumulate(out, key, c)
    return out


def poisson_bracket(p: FreeElement, q: FreeElement) -> FreeElement:
    p._check(q)
    if p.variety is not Variety.POISSON:
        raise VarietyError("poisson_bracket needs Poisson operands")
    out: dict = {}
    for u, a in p.terms.items():
        for v, b in q.terms.items():
            ab = a * b
            for key, k in _poisson_word_bracket(u, v).items():
                _accumulate(out, key, ab * k)
    return p._new(out)


def poisson_multiply(p: FreeElement, q: FreeElement) -> FreeElement:
    p._check(q)
    if p.variety is not Variety.POISSON:
        raise VarietyError("poisson_multiply needs Poisson operands")
    return p._new(assoc_mul(p.terms, q.terms))


def poisson_letter(p_elem_field: Field, n: int, letter: tuple) -> FreeElement:
    return FreeElement(Variety.POISSON, n, p_elem_field, {(letter,): p_elem_field.one})


# -- products and normal forms --------------------------------------------------------


def multiply(a: FreeElement, b: FreeElement) -> FreeElement:
    """Bilinear extension of the variety product (``o`` for special Jordan)."""
    a._check(b)
    v = a.variety
    if v is Variety.LIE:
        return lie_bracket(a, b)
    if v is Variety.SPECIAL_JORDAN:
        return jordan_circ(a, b)
    if v in (Variety.ASSOCIATIVE, Variety.POISSON):
        return a._new(assoc_mul(a.terms, b.terms))
    if v is Variety.TRIVIAL:
        return a.zero()
    out: dict = {}
    for u, x in a.terms.items():
        for w, y in b.terms.items():
            c = x * y
            if v is Variety.ALL:
                _accumulate(out, (u, w), c)
            elif v is Variety.COMMUTATIVE:
                key = (u, w) if word_key(u) >= word_key(w) else (w, u)
                _accumulate(out, key, c)
            else:
                ku, kw = word_key(u), word_key(w)
                if ku > kw:
                    _accumulate(out, (u, w), c)
                elif ku < kw:
                    _accumulate(out, (w, u), -c)
    return a._new(out)


def _regular_form(w, anti: bool):
    """Return ``(sign, regular word)`` or ``(0, None)``."""
    if isinstance(w, int):
        return 1, w
    s1, u = _regular_form(w[0], anti)
    if not s1:
        return 0, None
    s2, v = _regular_form(w[1], anti)
    if not s2:
        return 0, None
    ku, kv = word_key(u), word_key(v)
    if ku > kv:
        return s1 * s2, (u, v)
    if ku < kv:
        return (-s1 * s2 if anti else s1 * s2), (v, u)
    return (0, None) if anti else (s1 * s2, (u, v))


def normal_form(w, variety, field: Field, n: int | None = None) -> FreeElement:
    """Image of the magma word ``w`` in the free algebra of ``variety``."""
    variety = Variety(variety)
    n = max(leaves(w)) if n is None else n
    if max(leaves(w)) > n:
        raise IndexError(f"word {w} uses a generator outside 1..{n}")
    one = field.one
    if variety is Variety.POISSON:
        raise VarietyError("Poisson terms use the two-operation evaluator, not normal_form")
    if variety is Variety.ALL:
        terms = {w: one}
    elif variety is Variety.ASSOCIATIVE:
        terms = {leaves(w): one}
    elif variety in (Variety.COMMUTATIVE, Variety.ANTICOMMUTATIVE):
        sign, r = _regular_form(w, variety is Variety.ANTICOMMUTATIVE)
        terms = {r: field(sign)} if sign else {}
    elif variety is Variety.LIE:
        terms = {k: field(c) for k, c in _lie_normal_int(w).items()}
    elif variety is Variety.SPECIAL_JORDAN:
        if field.characteristic == 2:
            raise VarietyError("special Jordan needs characteristic != 2")
        terms = {k: field(c) for k, c in circ_expansion(w).items()}
    else:
        terms = {w: one} if isinstance(w, int) else {}
    return FreeElement(variety, n, field, terms)


# -- bases ------------------------------------------------------------------------


@dataclass(frozen=True)
class BasisMonomial:
    variety: Variety
    degree: int
    payload: object
    preimage: object  # magma word, or a Poisson term for the Poisson variety

    def evaluate(self, assignment, cache=None) -> FreeElement:
        if self.variety is Variety.POISSON:
            return evaluate_poisson_term(self.preimage, assignment, cache)
        return evaluate_monomial(self.preimage, assignment, cache)


def poisson_letter_term(word: tuple):
    """Two-operation term ``('b', L, R)`` for a Lyndon letter."""

    def conv(w):
        if isinstance(w, int):
            return w
        return ("b", conv(w[0]), conv(w[1]))

    return conv(standard_bracketing(word))


def poisson_word_term(key: tuple):
    term = poisson_letter_term(key[0])
    for letter in key[1:]:
        term = ("*", term, poisson_letter_term(letter))
    return term


def poisson_words(n: int, d: int) -> list[tuple]:
    """Words in the Lyndon letters of total degree ``d``, in a fixed order."""
    out = []

    def rec(remaining, prefix):
        if remaining == 0:
            out.append(prefix)
            return
        for k in range(1, remaining + 1):
            for letter in lyndon_words(n, k):
                rec(remaining - k, prefix + (letter,))

    rec(d, ())
    out.sort(key=lambda key: key_sort(Variety.POISSON, key))
    return out


_SJ_CACHE: dict = {}


def _special_jordan_basis(n: int, d: int, field: Field) -> list[BasisMonomial]:
    base = field.base_field
    ck = (n, d, base.characteristic)
    if ck not in _SJ_CACHE:
        red = RowReducer(base)
        index: dict = {}
        chosen = []
        for w in enumerate_words(n, d):
            img = circ_expansion(w)
            row = {index.setdefault(k, len(index)): base(c) for k, c in img.items()}
            if red.add(row) is None:
                chosen.append(w)
        _SJ_CACHE[ck] = tuple(chosen)
    out = []
    for w in _SJ_CACHE[ck]:
        payload = tuple(sorted(circ_expansion(w).items()))
        out.append(BasisMonomial(Variety.SPECIAL_JORDAN, d, payload, w))
    return out


@lru_cache(maxsize=None)
def _basis_cached(variety: Variety, n: int, d: int, field: Field) -> tuple:
    V = Variety
    if variety is V.ALL:
        return tuple(BasisMonomial(variety, d, w, w) for w in enumerate_words(n, d))
    if variety is V.ASSOCIATIVE:
        from itertools import product

        return tuple(
            BasisMonomial(variety, d, w, left_normed(w))
            for w in product(range(1, n + 1), repeat=d)
        )
    if variety is V.COMMUTATIVE:
        return tuple(BasisMonomial(variety, d, w, w) for w in regular_words(n, d, "commutative"))
    if variety is V.ANTICOMMUTATIVE:
        return tuple(
            BasisMonomial(variety, d, w, w) for w in regular_words(n, d, "anticommutative")
        )
    if variety is V.LIE:
        return tuple(
            BasisMonomial(variety, d, w, standard_bracketing(w)) for w in lyndon_words(n, d)
        )
    if variety is V.SPECIAL_JORDAN:
        if field.characteristic == 2:
            raise VarietyError("special Jordan needs characteristic != 2")
        return tuple(_special_jordan_basis(n, d, field))
    if variety is V.POISSON:
        return tuple(
            BasisMonomial(variety, d, key, poisson_word_term(key)) for key in poisson_words(n, d)
        )
    return tuple(BasisMonomial(variety, 1, i, i) for i in range(1, n + 1)) if d == 1 else ()


def variety_basis(variety, n: int, d: int, field: Field | None = None) -> list[BasisMonomial]:
    """Basis of the degree-``d`` component of the free algebra on ``n`` generators."""
    if d < 1 or n < 1:
        raise ValueError("need n >= 1 and d >= 1")
    field = field_make("Q") if field is None else field.base_field
    return list(_basis_cached(Variety(variety), n, d, field))


def basis_element(bm: BasisMonomial, n: int, field: Field) -> FreeElement:
    """The basis monomial as an element of the free algebra."""
    if bm.variety is Variety.POISSON:
        return FreeElement(bm.variety, n, field, {bm.payload: field.one})
    return normal_form(bm.preimage, bm.variety, field, n)


# -- evaluation ---------------------------------------------------------------------


def _lookup(assignment, i):
    try:
        return assignment[i] if isinstance(assignment, dict) else assignment[i - 1]
    except (KeyError, IndexError):
        raise KeyError(f"no assignment for generator index {i}") from None


def evaluate_monomial(m, assignment, cache: dict | None = None) -> FreeElement:
    """Substitute elements for generators in the magma word ``m``.

    ``assignment`` is a dict ``index -> FreeElement`` or a list indexed from 1.
    ``cache`` may be shared across calls with the same assignment.
    """
    if cache is None:
        cache = {}
    if m in cache:
        return cache[m]
    if isinstance(m, int):
        res = _lookup(assignment, m)
    else:
        res = multiply(
            evaluate_monomial(m[0], assignment, cache), evaluate_monomial(m[1], assignment, cache)
        )
    cache[m] = res
    return res


def evaluate_poisson_term(term, assignment, cache: dict | None = None) -> FreeElement:
    if cache is None:
        cache = {}
    if term in cache:
        return cache[term]
    if isinstance(term, int):
        res = _lookup(assignment, term)
    else:
        op, left, right = term
        a = evaluate_poisson_term(left, assignment, cache)
        b = evaluate_poisson_term(right, assignment, cache)
        res = poisson_bracket(a, b) if op == "b" else poisson_multiply(a, b)
    cache[term] = res
    return res


def substitute(elem: FreeElement, assignment) -> FreeElement:
    """Apply the homomorphism ``x_i -> assignment[i]`` to ``elem``."""
    if elem.variety is Variety.SPECIAL_JORDAN:
        raise VarietyError("substitution into special Jordan elements is not supported")
    cache: dict = {}
    target = None
    for key, c in elem.terms.items():
        if elem.variety is Variety.POISSON:
            val = evaluate_poisson_term(poisson_word_term(key), assignment, cache)
        else:
            val = evaluate_monomial(key_preimage(elem.variety, key), assignment, cache)
        val = val.scale(val.field(c))
        target = val if target is None else target + val
    if target is None:
        first = _lookup(assignment, 1) if assignment else None
        if first is None:
            raise VarietyError("cannot substitute into zero without a target")
        return first.zero()
    return target


def key_preimage(variety: Variety, key):
    if variety is Variety.ASSOCIATIVE:
        return left_normed(key)
    if variety is Variety.LIE:
        return standard_bracketing(key)
    if variety is Variety.POISSON:
        return poisson_word_term(key)
    if variety is Variety.SPECIAL_JORDAN:
        raise VarietyError("special Jordan keys are associative words without a magma preimage")
    return key


def special_jordan_coordinates(elem: FreeElement) -> list[tuple]:
    """Write a special Jordan element over the greedy basis preimages."""
    out = []
    for d in sorted({len(k) for k in elem.terms}):
        part = elem.homogeneous_part(d)
        if d == 0:
            out.append(((), part.terms[()]))
            continue
        basis = variety_basis(Variety.SPECIAL_JORDAN, elem.n, d, elem.field)
        red = RowReducer(elem.field)
        index: dict = {}
        for bm in basis:
            row = {index.setdefault(k, len(index)): elem.field(c) for k, c in bm.payload}
            red.add(row)
        row = {}
        for k, c in part.terms.items():
            if k not in index:
                raise VarietyError(f"associative word {k} is outside the Jordan span")
            row[index[k]] = c
        dep = red.add(row)
        if dep is None:
            raise VarietyError("element is not in the special Jordan subalgebra")
        last = len(basis)
        scale = -(elem.field.one / dep[last])
        for i, bm in enumerate(basis):
            if i in dep:
                out.append((bm.preimage, dep[i] * scale))
    return out


# -- identities --------------------------------------------------------------------


@dataclass
class IdentityReport:
    variety: Variety
    checked: int
    passed: bool
    violation: str | None = None

    def __str__(self):
        status = "pass" if self.passed else f"FAIL ({self.violation})"
        return f"{self.variety}: {self.checked} substitutions, {status}"


def _identities(variety: Variety):
    """Defining identities as ``(name, arity, f)`` with ``f(*xs)`` that must vanish."""
    m = multiply
    V = Variety
    if variety is V.ALL:
        return []
    if variety is V.ASSOCIATIVE:
        return [("associativity", 3, lambda x, y, z: m(m(x, y), z) - m(x, m(y, z)))]
    if variety is V.COMMUTATIVE:
        return [("commutativity", 2, lambda x, y: m(x, y) - m(y, x))]
    if variety is V.ANTICOMMUTATIVE:
        return [
            ("anticommutativity", 2, lambda x, y: m(x, y) + m(y, x)),
            ("x^2=0", 1, lambda x: m(x, x)),
        ]
    if variety is V.LIE:
        return [
            ("x^2=0", 1, lambda x: m(x, x)),
            ("jacobi", 3, lambda x, y, z: m(m(x, y), z) + m(m(y, z), x) + m(m(z, x), y)),
        ]
    if variety is V.SPECIAL_JORDAN:
        return [
            ("commutativity", 2, lambda x, y: m(x, y) - m(y, x)),
            ("jordan", 2, lambda x, y: m(m(m(x, x), y), x) - m(m(x, x), m(y, x))),
        ]
    if variety is V.POISSON:
        b, pm = poisson_bracket, poisson_multiply
        return [
            ("associativity", 3, lambda x, y, z: pm(pm(x, y), z) - pm(x, pm(y, z))),
            ("bracket x^2=0", 1, lambda x: b(x, x)),
            ("jacobi", 3, lambda x, y, z: b(b(x, y), z) + b(b(y, z), x) + b(b(z, x), y)),
            ("leibniz", 3, lambda x, y, z: b(pm(x, y), z) - pm(b(x, z), y) - pm(x, b(y, z))),
        ]
    return [("x1x2=0", 2, lambda x, y: m(x, y))]


def identity_check(variety, sample: list[FreeElement], trials: int = 50, seed: int = 0):
    """Evaluate every defining identity on substitutions drawn from ``sample``.

    All tuples are used when there are at most ``trials`` of them; otherwise
    ``trials`` tuples are drawn with a seeded generator.
    """
    variety = Variety(variety)
    rng = random.Random(seed)
    checked = 0
    for name, arity, f in _identities(variety):
        if len(sample) ** arity <= trials:
            from itertools import product

            tuples = list(product(sample, repeat=arity))
        else:
            tuples = [tuple(rng.choice(sample) for _ in range(arity)) for _ in range(trials)]
        for args in tuples:
            checked += 1
            if f(*args):
                return IdentityReport(variety, checked, False, f"{name} fails on {args!r}")
    return IdentityReport(variety, checked, True)


# -- random elements ----------------------------------------------------------------


def random_scalar(field: Field, rng: random.Random, bound: int = 3, poly_degree: int = 0):
    """Nonzero small scalar; with ``poly_degree`` > 0 a random polynomial in the
    field's variables."""
    while True:
        c = field(rng.randint(-bound, bound))
        if poly_degree and field.variables:
            for _ in range(rng.randint(1, 2)):
                mono = field.one
                for _ in range(rng.randint(1, poly_degree)):
                    mono = mono * field.var(rng.choice(field.variables))
                c = c + field(rng.randint(-bound, bound)) * mono
        if c:
            return c


def random_element(
    variety,
    n: int,
    field: Field,
    rng: random.Random,
    max_degree: int = 3,
    terms: int = 3,
    poly_degree: int = 0,
    min_degree: int = 1,
) -> FreeElement:
    """Nonzero random element with at most ``terms`` basis monomials."""
    variety = Variety(variety)
    top = 1 if variety is Variety.TRIVIAL else max_degree
    while True:
        elem = FreeElement(variety, n, field)
        for _ in range(rng.randint(1, terms)):
            d = rng.randint(min(min_degree, top), top)
            basis = variety_basis(variety, n, d, field)
            if not basis:
                continue
            bm = rng.choice(basis)
            elem = elem + basis_element(bm, n, field).scale(
                random_scalar(field, rng, poly_degree=poly_degree)
            )
        if elem:
            return elem

"""Nonassociative words, Shirshov regular words and Lyndon words.

A magma word is either a generator index (``int``, 1-based) or a pair
``(left, right)`` of magma words.  Associative words are plain tuples of
generator indices and are always distinguished from magma words by context.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

MagmaWord = "int | tuple"


class WordOrderTag(enum.Enum):
    PLAIN = "plain"
    REGULAR_COMMUTATIVE = "regular-commutative"
    REGULAR_ANTICOMMUTATIVE = "regular-anticommutative"


def is_leaf(w) -> bool:
    return isinstance(w, int)


@lru_cache(maxsize=None)
def degree(w) -> int:
    if isinstance(w, int):
        return 1
    return degree(w[0]) + degree(w[1])


@lru_cache(maxsize=None)
def word_key(w):
    """Sort key realizing the degree-then-(left, right) order on magma words.

    Equal degree implies both keys are leaves ``(1, i)`` or both are pairs,
    so tuple comparison never mixes incomparable types.
    """
    if isinstance(w, int):
        return (1, w)
    return (degree(w), word_key(w[0]), word_key(w[1]))


def compare_words(w1, w2, tag: WordOrderTag = WordOrderTag.PLAIN) -> int:
    """Return -1, 0 or 1.  All flavors share the recursive rule; only the
    set of admissible (regular) words differs between them."""
    k1, k2 = word_key(w1), word_key(w2)
    return (k1 > k2) - (k1 < k2)


def leaves(w) -> tuple:
    if isinstance(w, int):
        return (w,)
    return leaves(w[0]) + leaves(w[1])


def max_generator(w) -> int:
    return max(leaves(w))


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


@lru_cache(maxsize=None)
def enumerate_words(n: int, d: int) -> tuple:
    """All magma words of degree ``d`` in ``n`` generators, in increasing order."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if d == 1:
        return tuple(range(1, n + 1))
    out = []
    for a in range(1, d):
        out.extend(product(enumerate_words(n, a), enumerate_words(n, d - a)))
    out.sort(key=word_key)
    return tuple(out)


def is_regular(w, anticommutative: bool = False) -> bool:
    if isinstance(w, int):
        return True
    u, v = w
    if not (is_regular(u, anticommutative) and is_regular(v, anticommutative)):
        return False
    ku, kv = word_key(u), word_key(v)
    return ku > kv if anticommutative else ku >= kv


@lru_cache(maxsize=None)
def regular_words(n: int, d: int, flavor: str = "commutative") -> tuple:
    """Regular words of degree ``d``; ``flavor`` is ``commutative`` or
    ``anticommutative`` (strict inequality between the factors)."""
    if flavor not in ("commutative", "anticommutative"):
        raise ValueError(f"unknown regular-word flavor {flavor!r}")
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if d == 1:
        return tuple(range(1, n + 1))
    strict = flavor == "anticommutative"
    out = []
    for a in range(d - 1, (d - 1) // 2, -1):
        b = d - a
        for u in regular_words(n, a, flavor):
            ku = word_key(u)
            for v in regular_words(n, b, flavor):
                kv = word_key(v)
                if ku > kv or (ku == kv and not strict):
                    out.append((u, v))
    out.sort(key=word_key)
    return tuple(out)


# -- Lyndon words -------------------------------------------------------------


def is_lyndon(word: tuple) -> bool:
    """Strictly smaller than every proper rotation."""
    k = len(word)
    return k > 0 and all(word < word[i:] + word[:i] for i in range(1, k))


@lru_cache(maxsize=None)
def lyndon_words(n: int, d: int) -> tuple:
    """Lyndon words of length exactly ``d`` over ``1..n`` (Duval's generator)."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    out = []
    w = [0]
    while w:
        if len(w) == d:
            out.append(tuple(c + 1 for c in w))
        m = len(w)
        while len(w) < d:
            w.append(w[len(w) - m])
        while w and w[-1] == n - 1:
            w.pop()
        if w:
            w[-1] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def standard_factorization(word: tuple) -> tuple:
    """Split a Lyndon word of length >= 2 as ``u v`` with ``v`` its longest
    proper Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"{word} has no standard factorization")


@lru_cache(maxsize=None)
def standard_bracketing(word: tuple):
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (standard_bracketing(u), standard_bracketing(v))


@dataclass(frozen=True)
class LyndonBracketing:
    word: tuple
    bracketing: object


def lyndon_basis(n: int, d: int) -> list[LyndonBracketing]:
    return [LyndonBracketing(w, standard_bracketing(w)) for w in lyndon_words(n, d)]


def necklace_count(n: int, d: int) -> int:
    """Witt's formula for the number of Lyndon words."""
    total = 0
    for k in range(1, d + 1):
        if d % k == 0:
            total += _mobius(d // k) * n**k
    return total // d


def _mobius(m: int) -> int:
    res, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


def left_normed(word: tuple):
    """Magma word ``((w1 w2) w3) ...`` for an associative word."""
    w = word[0]
    for c in word[1:]:
        w = (w, c)
    return w


# -- s-expressions --------------------------------------------------------------


def to_sexpr(w) -> str:
    if isinstance(w, int):
        return f"(g {w})"
    return f"(* {to_sexpr(w[0])} {to_sexpr(w[1])})"


def pretty(w, names: str = "x") -> str:
    if isinstance(w, int):
        return f"{names}{w}"
    left = pretty(w[0], names)
    right = pretty(w[1], names)
    if not isinstance(w[0], int):
        left = f"({left})"
    if not isinstance(w[1], int):
        right = f"({right})"
    return left + right

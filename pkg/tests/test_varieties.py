import random
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from freelab.field import field_make
from freelab.linalg import MODULUS, rank_mod_p
from freelab.parsing import parse_element
from freelab.varieties import (
    MAGMA_VARIETIES,
    FreeElement,
    Variety,
    VarietyError,
    basis_element,
    evaluate_monomial,
    identity_check,
    jordan_circ,
    multiply,
    normal_form,
    poisson_bracket,
    poisson_letter,
    poisson_multiply,
    random_element,
    variety_basis,
)
from freelab.words import catalan, enumerate_words, necklace_count

Q = field_make("Q")
QT = field_make("Q(t)")


def gens(v, n=2, field=Q):
    return FreeElement.generators(v, n, field)


# -- normal forms and products ----------------------------------------------------


def test_normal_form_examples():
    assert normal_form((1, 2), "commutative", Q).terms == {(2, 1): Q(1)}
    assert not normal_form((1, 1), "anticommutative", Q)
    sj = normal_form((1, 2), "special-jordan", Q)
    assert sj.terms == {(1, 2): Q(Fraction(1, 2)), (2, 1): Q(Fraction(1, 2))}


def test_multiply_examples():
    x1, x2 = gens("all")
    assert multiply(x1, x2 * x1).terms == {(1, (2, 1)): Q(1)}
    a1, a2 = gens("anticommutative")
    q = a2 * a1
    assert not q * q
    z1, z2 = gens("trivial")
    assert not z1 * z2


def test_basis_examples():
    (lie2,) = variety_basis("lie", 2, 2)
    assert lie2.preimage == (1, 2)
    assert [bm.preimage for bm in variety_basis("special-jordan", 2, 2)] == [
        (1, 1),
        (1, 2),
        (2, 2),
    ]
    assert variety_basis("trivial", 2, 2) == []


def test_evaluate_examples():
    x1, _ = gens("commutative")
    val = evaluate_monomial((1, 2), {1: x1, 2: x1 * x1})
    assert val.terms == {((1, 1), 1): Q(1)}
    assert evaluate_monomial(1, [x1]) == x1
    a1, a2 = gens("anticommutative")
    assert not evaluate_monomial((1, 1), {1: a1 + a2})


def test_jordan_circ_examples():
    x1, x2 = gens("associative")
    half = Q(Fraction(1, 2))
    assert jordan_circ(x1, x2).terms == {(1, 2): half, (2, 1): half}
    rng = random.Random(3)
    for _ in range(10):
        p = random_element("associative", 2, Q, rng, 3)
        q = random_element("associative", 2, Q, rng, 3)
        assert jordan_circ(p, p) == p * p
        assert not (jordan_circ(p, q) - jordan_circ(q, p))


def test_poisson_examples():
    l1, l2, l3 = (poisson_letter(Q, 3, (i,)) for i in (1, 2, 3))
    assert poisson_bracket(l1, l2) == poisson_letter(Q, 3, (1, 2))
    rng = random.Random(4)
    p = random_element("poisson", 3, Q, rng, 3)
    assert not poisson_bracket(p, p)
    lhs = poisson_bracket(poisson_multiply(l1, l2), l3)
    rhs = poisson_multiply(poisson_bracket(l1, l3), l2) + poisson_multiply(
        l1, poisson_bracket(l2, l3)
    )
    assert lhs == rhs


def test_mismatched_hosts_rejected():
    with pytest.raises(VarietyError):
        gens("lie")[0] + gens("all")[0]
    with pytest.raises(VarietyError):
        gens("lie")[0] + gens("lie", 2, QT)[0]


@pytest.mark.parametrize("v", MAGMA_VARIETIES)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_normal_form_idempotent_on_preimages(v, n):
    for d in range(1, 5):
        for bm in variety_basis(v, n, d):
            el = normal_form(bm.preimage, v, Q, n)
            assert el == basis_element(bm, n, Q)
            if v is not Variety.SPECIAL_JORDAN:
                assert list(el.terms.values()) == [Q(1)]


@pytest.mark.parametrize("v", MAGMA_VARIETIES)
def test_normal_form_is_homomorphism(v):
    for total in range(2, 6):
        for a in range(1, total):
            for w1 in enumerate_words(2, a):
                for w2 in enumerate_words(2, total - a):
                    lhs = normal_form((w1, w2), v, Q, 2)
                    rhs = multiply(normal_form(w1, v, Q, 2), normal_form(w2, v, Q, 2))
                    assert lhs == rhs


# -- dimension oracles, independent of the library's bases ---------------------------


def _canon(w):
    """Canonical form under swapping children, via a string order."""
    if isinstance(w, int):
        return str(w)
    a, b = sorted((_canon(w[0]), _canon(w[1])))
    return f"[{a},{b}]"


def _has_equal_children(w):
    if isinstance(w, int):
        return False
    if _canon(w[0]) == _canon(w[1]):
        return True
    return _has_equal_children(w[0]) or _has_equal_children(w[1])


def oracle_dim(v: Variety, n: int, d: int) -> int:
    words = enumerate_words(n, d)
    if v is Variety.ALL:
        return catalan(d - 1) * n**d
    if v is Variety.ASSOCIATIVE:
        return n**d
    if v is Variety.COMMUTATIVE:
        return len({_canon(w) for w in words})
    if v is Variety.ANTICOMMUTATIVE:
        return len({_canon(w) for w in words if not _has_equal_children(w)})
    if v is Variety.LIE:
        return necklace_count(n, d)
    if v is Variety.TRIVIAL:
        return n if d == 1 else 0
    if v is Variety.POISSON:
        # free associative algebra on a Lie basis: sum over compositions of d
        return _poisson_dim(n, d)
    raise KeyError(v)


@lru_cache(maxsize=None)
def _poisson_dim(n, d):
    if d == 0:
        return 1
    return sum(necklace_count(n, k) * _poisson_dim(n, d - k) for k in range(1, d + 1))


@pytest.mark.parametrize(
    "v", [v for v in Variety if v is not Variety.SPECIAL_JORDAN]
)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_dimensions_match_closed_oracles(v, n):
    for d in range(1, 6):
        assert len(variety_basis(v, n, d)) == oracle_dim(v, n, d), (v, n, d)


def test_special_jordan_two_generators_is_symmetric_part():
    # with two generators the Jordan span is every reversal-invariant polynomial
    for d in range(1, 8):
        sym = (2**d + 2 ** ((d + 1) // 2)) // 2
        assert len(variety_basis("special-jordan", 2, d)) == sym


def test_dims_table_values():
    got = {v: [len(variety_basis(v, 2, d)) for d in (1, 2, 3)] for v in Variety}
    assert got[Variety.ALL] == [2, 4, 16]
    assert got[Variety.COMMUTATIVE] == [2, 3, 6]
    assert got[Variety.ANTICOMMUTATIVE] == [2, 1, 2]
    assert got[Variety.LIE] == [2, 1, 2]


def _commutator(w):
    if isinstance(w, int):
        return {(w,): 1}
    a, b = _commutator(w[0]), _commutator(w[1])
    out = {}
    for u, x in a.items():
        for v, y in b.items():
            out[u + v] = out.get(u + v, 0) + x * y
            out[v + u] = out.get(v + u, 0) - x * y
    return {k: c for k, c in out.items() if c}


@pytest.mark.parametrize("n, d", [(2, 4), (2, 6), (3, 4), (3, 5)])
def test_lie_commutator_rank_cross_check(n, d):
    index = {w: i for i, w in enumerate(product(range(1, n + 1), repeat=d))}
    rows = set()
    for w in enumerate_words(n, d):
        vec = _commutator(w)
        if vec:
            rows.add(tuple(sorted((index[k], c % MODULUS) for k, c in vec.items())))
    mat = np.zeros((len(rows), len(index)), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, c in r:
            mat[i, j] = c
    assert rank_mod_p(mat, MODULUS) == len(variety_basis("lie", n, d))


# -- identities -------------------------------------------------------------------


@pytest.mark.parametrize("v", [v for v in Variety if v is not Variety.POISSON])
def test_identity_suites(v):
    rng = random.Random(11)
    sample = [random_element(v, 3, Q, rng, 3, 3) for _ in range(12)]
    rep = identity_check(v, sample, trials=40, seed=2)
    assert rep.passed, rep


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_jordan_proof_identity(seed):
    rng = random.Random(seed)
    p = random_element("special-jordan", 2, Q, rng, 3, 2)
    z = random_element("special-jordan", 2, Q, rng, 3, 2)
    p2 = jordan_circ(p, p)
    assert jordan_circ(jordan_circ(z, p2), p) == jordan_circ(p2, jordan_circ(z, p))


poisson_triples = st.tuples(st.integers(1, 2), st.integers(1, 2), st.integers(1, 2)).filter(
    lambda ds: sum(ds) <= 4
)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), poisson_triples)
def test_poisson_axioms_up_to_total_degree_four(seed, degrees):
    rng = random.Random(seed)
    x, y, z = (
        random_element("poisson", 2, QT, rng, d, 2, poly_degree=1, min_degree=d) for d in degrees
    )
    b, m = poisson_bracket, poisson_multiply
    assert b(x, y) == -b(y, x)
    assert not (b(b(x, y), z) + b(b(y, z), x) + b(b(z, x), y))
    assert b(m(x, y), z) == m(b(x, z), y) + m(x, b(y, z))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_poisson_left_leibniz_any_degree(seed):
    rng = random.Random(seed)
    x, y, z = (random_element("poisson", 2, QT, rng, 3, 2, poly_degree=1) for _ in range(3))
    b, m = poisson_bracket, poisson_multiply
    assert b(m(x, y), z) == m(b(x, z), y) + m(x, b(y, z))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_poisson_antisymmetry_against_letters(seed, i):
    rng = random.Random(seed)
    x = random_element("poisson", 3, QT, rng, 3, 3, poly_degree=1)
    letter = poisson_letter(QT, 3, (i,))
    assert poisson_bracket(x, letter) == -poisson_bracket(letter, x)


def _farkas_residue(a, b, c, d):
    """{a,b}[c,d] - [a,b]{c,d}, zero in every noncommutative Poisson algebra."""
    br, m = poisson_bracket, poisson_multiply
    comm = lambda x, y: m(x, y) - m(y, x)
    return m(br(a, b), comm(c, d)) - m(comm(a, b), br(c, d))


def test_poisson_word_bracket_is_not_a_poisson_structure():
    # Words over Lie letters cannot carry a Poisson bracket extending the letter
    # bracket: the identity above fails on letters, so antisymmetry breaks on two
    # degree-2 words and Jacobi first on degrees (1, 2, 2).
    x1, x2 = FreeElement.generators("poisson", 2, Q)
    assert _farkas_residue(x1, x2, x1, x2)
    u, v = poisson_multiply(x1, x2), poisson_multiply(x2, x1)
    assert poisson_bracket(u, v) != -poisson_bracket(v, u)
    P = lambda s: parse_element(s, "poisson", 2, Q)
    x, y, z = P("(g 1)"), P("(* (g 1) (g 2))"), P("(* (g 2) (g 2))")
    b = poisson_bracket
    assert b(b(x, y), z) + b(b(y, z), x) + b(b(z, x), y)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["lie", "anticommutative", "commutative", "all"]))
def test_bilinearity(seed, v):
    rng = random.Random(seed)
    a, b, c = (random_element(v, 2, QT, rng, 2, 2, poly_degree=1) for _ in range(3))
    lam = QT("t + 2")
    assert multiply(a + b.scale(lam), c) == multiply(a, c) + multiply(b, c).scale(lam)

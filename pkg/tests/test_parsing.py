import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from freelab.field import field_make
from freelab.parsing import ParseError, format_element, parse_element, parse_elements
from freelab.varieties import FreeElement, Variety, random_element

Q = field_make("Q")
QT = field_make("Q(t)")


def test_leaf_and_sum():
    x1, x2 = FreeElement.generators("all", 2, Q)
    assert parse_element("(g 1)", "all", 2, Q) == x1
    got = parse_element("1/2 (* (g 1) (g 2)) + -1 (g 2)", "all", 2, Q)
    assert got == (x1 * x2).scale(Q(Fraction(1, 2))) - x2


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("(* (g 1)", "unbalanced parenthesis"),
        ("(* (g 1) (g 2)", "unbalanced parenthesis"),
        ("(g 3)", "unknown generator index 3"),
        ("1/0 (g 1)", "zero denominator"),
        ("[t +] (g 1)", "malformed scalar"),
        ("(g 1) (g 2)", "expected '+'"),
        ("(b (g 1) (g 2))", "only available for Poisson"),
        ("(e)", "special Jordan"),
        ("(q 1)", "expected 'g'"),
    ],
)
def test_errors_carry_position(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_element(text, "all", 2, QT)
    assert fragment in str(info.value)
    assert "^" in str(info.value)


def test_function_field_coefficients():
    x1, x2 = FreeElement.generators("lie", 2, QT)
    got = parse_element("[t^2 + 1] (g 1) - [1/t] (* (g 1) (g 2))", "lie", 2, QT)
    t = QT.var("t")
    assert got == x1.scale(t * t + 1) - (x1 * x2).scale(1 / t)


def test_words_mean_their_image():
    # (* (g 2) (g 1)) in Lie is -[x1, x2]
    x1, x2 = FreeElement.generators("lie", 2, Q)
    assert parse_element("(* (g 2) (g 1))", "lie", 2, Q) == -(x1 * x2)
    assert not parse_element("(* (g 1) (g 1))", "anticommutative", 2, Q)


def test_poisson_and_unit_words():
    p = parse_element("(* (b (g 1) (g 2)) (g 1))", "poisson", 2, Q)
    assert format_element(p) == "1 (* (b (g 1) (g 2)) (g 1))"
    e = parse_element("2 (e) + (g 1)", "special-jordan", 2, Q)
    assert parse_element(format_element(e), "special-jordan", 2, Q) == e


def test_parse_elements_lines():
    text = "# a tuple\n(g 1)\n\n(g 2)  # second\n"
    assert len(parse_elements(text, "lie", 2, Q)) == 2


@settings(max_examples=60, deadline=None)
@given(
    st.integers(0, 10**6),
    st.sampled_from(list(Variety)),
    st.sampled_from(["Q", "GF(7)", "Q(t)", "GF(5)(t,s)"]),
)
def test_parse_print_round_trip(seed, variety, field_name):
    fld = field_make(field_name)
    rng = random.Random(seed)
    elem = random_element(variety, 2, fld, rng, 3, 4, poly_degree=2)
    text = format_element(elem)
    assert parse_element(text, variety, 2, fld) == elem

import random

import pytest
from hypothesis import given, settings, strategies as st

from freelab.field import field_make
from freelab.freeness import (
    BASE,
    FULL,
    GeneratorFrame,
    ResourceLimitError,
    collect_monomials,
    evaluate_monomials,
    freeness_test,
    minors,
    minors_vanish_at,
    mlm_check,
    parametric_matrix,
    specialization_search,
    witness_value,
)
from freelab.parsing import format_monomial
from freelab.varieties import FreeElement, Variety, random_element, random_scalar

Q = field_make("Q")
QT = field_make("Q(t)")
t = QT.var("t")


def frame_2x2():
    a1, a2 = FreeElement.generators("all", 2, Q)
    return GeneratorFrame([[a1, a2], [a1, a2]])


def frame_partial():
    a1, a2 = FreeElement.generators("all", 2, Q)
    return GeneratorFrame([[a1, a2], [a1]])


def frame_degenerate():
    (a1,) = FreeElement.generators("all", 1, Q)
    return GeneratorFrame([[a1], [a1]])


def preimages(frame, d):
    monos, _ = collect_monomials(frame.variety, frame.n, d, frame.field)
    return [bm.preimage for bm in monos]


# -- freeness_test ------------------------------------------------------------------


@pytest.mark.parametrize("v", [v for v in Variety if v is not Variety.TRIVIAL])
def test_generators_are_free(v):
    for n in (2, 3):
        rep = freeness_test(FreeElement.generators(v, n, QT), v, 3)
        assert rep.free and rep.witness is None


def test_trivial_generators_free_too():
    rep = freeness_test(FreeElement.generators("trivial", 2, Q), "trivial", 4)
    assert rep.free and rep.dims == [2, 0, 0, 0]


def test_trivial_multiplication_counterexample():
    z = FreeElement.generator("trivial", 1, QT, 1)
    elems = [z, z.scale(t)]
    assert freeness_test(elems, "trivial", 1, BASE).free
    rep = freeness_test(elems, "trivial", 1, FULL)
    assert not rep.free
    assert [(c, format_monomial(bm)) for c, bm in rep.witness] == [(t, "(g 1)"), (QT(-1), "(g 2)")]
    assert not witness_value(rep, elems)


def test_lie_example_free_in_both_scopes():
    a, b = FreeElement.generators("lie", 2, QT)
    elems = [a + b.scale(t), b]
    for scope in (BASE, FULL):
        assert freeness_test(elems, "lie", 4, scope).free


def test_requires_two_elements_and_positive_degree():
    x = FreeElement.generator("lie", 2, Q, 1)
    with pytest.raises(ValueError):
        freeness_test([x], "lie", 2)
    with pytest.raises(ValueError):
        freeness_test([x, x], "lie", 0)


def test_resource_cap_is_explicit():
    elems = FreeElement.generators("all", 3, Q)
    with pytest.raises(ResourceLimitError):
        freeness_test(elems, "all", 6, max_monomials=1000)


def test_json_schema():
    rep = freeness_test(FreeElement.generators("lie", 2, Q), "lie", 2)
    d = rep.to_dict(Q)
    for key in ("variety", "n", "degree", "scope", "verdict", "dims", "witness", "seed", "trials"):
        assert key in d
    assert d["verdict"] == "free-up-to-d" and d["dims"] == [2, 1]


def _random_tuple(v, rng, fld=QT):
    n = rng.choice((2, 3))
    k = rng.choice((2, 3))
    return [random_element(v, n, fld, rng, 2, 3, poly_degree=1) for _ in range(k)]


varieties = st.sampled_from(
    ["all", "associative", "commutative", "anticommutative", "lie", "special-jordan", "poisson"]
)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), varieties)
def test_witness_soundness(seed, v):
    rng = random.Random(seed)
    elems = _random_tuple(v, rng)
    if rng.random() < 0.5:
        elems.append(elems[0].scale(random_scalar(QT, rng, 2, 1)))
    for scope in (FULL, BASE):
        rep = freeness_test(elems, v, 2, scope)
        if not rep.free:
            assert not witness_value(rep, elems)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), varieties)
def test_monotonicity(seed, v):
    rng = random.Random(seed)
    elems = _random_tuple(v, rng)
    verdicts = [freeness_test(elems, v, d).free for d in (1, 2, 3)]
    # free up to d implies free up to every e <= d
    for e in range(3):
        if verdicts[e]:
            assert all(verdicts[:e])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), varieties)
def test_homogeneity_under_scaling(seed, v):
    rng = random.Random(seed)
    elems = _random_tuple(v, rng)
    scaled = [e.scale(random_scalar(QT, rng, 3, 1)) for e in elems]
    assert freeness_test(elems, v, 2).free == freeness_test(scaled, v, 2).free


def test_exact_and_certificate_agree():
    rng = random.Random(9)
    for v in ("lie", "special-jordan", "commutative"):
        elems = _random_tuple(v, rng)
        a = freeness_test(elems, v, 3)
        b = freeness_test(elems, v, 3, exact_only=True)
        assert a.verdict == b.verdict


def test_unital_special_jordan():
    x1, x2 = FreeElement.generators("special-jordan", 2, Q)
    rep = freeness_test([x1, x2], "special-jordan", 2, unital=True)
    assert rep.free
    with pytest.raises(ResourceLimitError):
        freeness_test([x1, x2], "special-jordan", 2, unital=True, max_monomials=3)
    with pytest.raises(ValueError):
        freeness_test(FreeElement.generators("lie", 2, Q), "lie", 2, unital=True)


# -- parametric matrix and minors --------------------------------------------------


def test_parametric_matrix_examples():
    P = parametric_matrix(frame_2x2(), [1, 2], 1)
    F = P.field
    z = {name: F.var(name) for name in ("z11", "z12", "z21", "z22")}
    assert P.entries == [[z["z11"], z["z12"]], [z["z21"], z["z22"]]]
    assert minors(P, 2) == [z["z11"] * z["z22"] - z["z12"] * z["z21"]]
    assert [m for m in minors(P, 1)] == [z["z11"], z["z12"], z["z21"], z["z22"]]

    (a1,) = FreeElement.generators("all", 1, Q)
    single = parametric_matrix(GeneratorFrame([[a1]]), [1], 1)
    assert single.entries == [[single.field.var("z11")]]


def test_whole_space_dependent_flag():
    (x,) = FreeElement.generators("commutative", 1, Q)
    frame = GeneratorFrame([[x], [x]])
    P = parametric_matrix(frame, [1, 2, (1, 1)], 2)
    assert P.shape == (3, 2) and P.whole_space_dependent
    assert minors(P, 3) == []


def test_minor_search_mode_stops_early():
    P = parametric_matrix(frame_2x2(), [1, 2], 1)
    assert len(minors(P, 1, mode="search")) == 1


def _host_matrix(frame, monos, point):
    elems = frame.specialize(point)
    from freelab.varieties import evaluate_monomial

    cache = {}
    return [evaluate_monomial(w, elems, cache) for w in monos]


@pytest.mark.parametrize("maker, d", [(frame_2x2, 1), (frame_2x2, 2), (frame_partial, 2), (frame_degenerate, 2)])
def test_specialization_coherence(maker, d):
    frame = maker()
    monos = preimages(frame, d)
    P = parametric_matrix(frame, monos, d)
    rng = random.Random(5)
    for _ in range(20):
        point = [rng.randint(-4, 4) for _ in range(frame.r)]
        vals = _host_matrix(frame, monos, point)
        spec = P.specialize(point)
        for row, val in zip(spec, vals):
            combo = {}
            for c, e in zip(row, P.basis):
                for k, v in e.items():
                    combo[k] = combo.get(k, Q.zero) + c * v
            assert {k: v for k, v in combo.items() if v} == val.terms


@pytest.mark.parametrize("maker", [frame_2x2, frame_partial, frame_degenerate])
def test_minor_rank_equivalence(maker):
    frame = maker()
    monos = preimages(frame, 1)
    P = parametric_matrix(frame, monos, 1)
    polys = [] if P.whole_space_dependent else minors(P)
    rng = random.Random(7)
    for _ in range(20):
        point = [rng.randint(-3, 3) for _ in range(frame.r)]
        elems = frame.specialize(point)
        rep = freeness_test(elems, frame.variety, 1)
        nonvanishing = bool(polys) and not minors_vanish_at(polys, P, point)
        assert nonvanishing == rep.free


# -- specialization search ---------------------------------------------------------


def test_search_examples():
    frame = frame_2x2()
    assert freeness_test(frame.specialize([1, 0, 0, 1]), "all", 1).free
    res = specialization_search(frame, "all", 1, 100, 1)
    assert not res.exhausted and res.report.free

    res = specialization_search(frame_partial(), "all", 1, 100, 1)
    z11, z12, z21 = res.point
    assert z12 * z21 != 0

    res = specialization_search(frame_degenerate(), "all", 1, 40, 1)
    assert res.exhausted and res.trials == 40


def test_search_is_deterministic():
    a, b = FreeElement.generators("lie", 2, Q)
    frame = GeneratorFrame([[a, b], [a, b, a * b]])
    r1 = specialization_search(frame, "lie", 3, 100, 1)
    r2 = specialization_search(frame, "lie", 3, 100, 1)
    assert r1.point == r2.point and r1.trials == r2.trials


# -- MLM verdicts ------------------------------------------------------------------


def test_mlm_examples():
    a, b = FreeElement.generators("lie", 2, QT)
    assert mlm_check("lie", [a + b.scale(t), b], 4).verdict == "mlm-consistent"
    z = FreeElement.generator("trivial", 1, QT, 1)
    ver = mlm_check("trivial", [z, z.scale(t)], 1)
    assert ver.verdict == "mlm-counterexample"
    assert [c for c, _ in ver.witness] == [t, QT(-1)]
    x1, x2 = FreeElement.generators("special-jordan", 2, QT)
    assert mlm_check("special-jordan", [x1 + x2.scale(t), x2], 3).verdict == "mlm-consistent"


def test_poisson_layers():
    x1, x2 = FreeElement.generators("poisson", 2, QT)
    ver = mlm_check("poisson", [x1, x1.scale(t)], 2)
    assert set(ver.layers) == {"lie-letters", "associative-words"}
    assert ver.verdict == "mlm-consistent"
    d = ver.to_dict(QT)
    assert d["layers"]["lie-letters"]["full"] == "dependent"


def test_evaluate_monomials_uses_unit():
    x1, x2 = FreeElement.generators("special-jordan", 2, Q)
    monos, dims = collect_monomials("special-jordan", 2, 1, Q, unital=True)
    vals = evaluate_monomials(monos, [x1, x2])
    assert vals[0].terms == {(): Q.one} and dims == [2]

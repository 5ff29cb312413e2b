"""Experiment orchestration: configs, seeded MLM instances and the demos."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .field import Field, FieldSpec, field_make
from .freeness import BASE, FULL, SCOPES, mlm_check, witness_value
from .linalg import certify_independence, base_independence, is_zero_combination
from .varieties import (
    FreeElement,
    Variety,
    identity_check,
    jordan_circ,
    random_element,
    random_scalar,
    variety_basis,
)

DEMOS = ("triv", "comassoc", "mlm-lie", "mlm-jordan", "jordan-claims", "dims")
FORMATS = ("json", "csv", "text")
MLM_VARIETIES = (
    Variety.ALL,
    Variety.ASSOCIATIVE,
    Variety.COMMUTATIVE,
    Variety.ANTICOMMUTATIVE,
    Variety.LIE,
    Variety.SPECIAL_JORDAN,
    Variety.POISSON,
)


@dataclass
class ExperimentConfig:
    field: str = "Q(t)"
    variety: str = "lie"
    n: int = 2
    degree: int = 4
    scope: str = FULL
    seed: int = 1
    budget: int = 100
    demo: str | None = None
    format: str = "text"

    def __post_init__(self):
        self.field_spec = FieldSpec.parse(self.field)
        self.variety = str(Variety.parse(self.variety))
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.scope not in SCOPES:
            raise ValueError(f"scope must be one of {', '.join(SCOPES)}")
        if self.demo is not None and self.demo not in DEMOS:
            raise ValueError(f"unknown demo {self.demo!r}; choose from {', '.join(DEMOS)}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")

    def make_field(self) -> Field:
        return field_make(self.field_spec)


# -- random MLM instances -------------------------------------------------------------

MONOMIAL_BUDGET = 120


def _window(variety: Variety, k: int, top: int = 4) -> int:
    """Largest degree ``<= top`` whose monomial count for ``k`` elements fits."""
    total, best = 0, 1
    for e in range(1, top + 1):
        total += len(variety_basis(variety, k, e))
        if total > MONOMIAL_BUDGET:
            break
        best = e
    return best


@dataclass
class MLMInstance:
    variety: Variety
    elements: list[FreeElement]
    degree: int
    kind: str


def random_mlm_instance(variety, field: Field, rng: random.Random) -> MLMInstance:
    """A seeded instance over ``field = K(t...)`` in a host on 2 or 3 generators.

    Most instances are random combinations of generators with polynomial
    coefficients in the transcendentals, sometimes with a product term, whose
    linear parts are F-independent.  A minority are collinear pairs
    ``{u, f u}``: dependent over F, and over K from degree 2 or 3 on.
    """
    variety = Variety(variety)
    n = rng.choice((2, 3))
    k = rng.choice((2, n))
    kind = rng.choices(("generic", "collinear", "constant"), (6, 2, 2))[0]
    pdeg = 0 if kind == "constant" else 2
    gens = FreeElement.generators(variety, n, field)
    while True:
        elements = []
        for _ in range(k):
            e = gens[0].zero()
            while not e:
                for g in gens:
                    if rng.random() < 0.7:
                        e = e + g.scale(random_scalar(field, rng, 2, pdeg))
            if rng.random() < 0.25:
                e = e + random_element(variety, n, field, rng, 2, 1, pdeg, min_degree=2)
            elements.append(e)
        if kind == "collinear" or _linear_parts_independent(elements):
            break
    if kind == "collinear":
        elements[1] = elements[0].scale(random_scalar(field, rng, 2, 2))
        k = 2
        elements = elements[:2]
    return MLMInstance(variety, elements, _window(variety, k), kind)


def _linear_parts_independent(elements) -> bool:
    # With F-dependent linear parts the K-relation can sit far above any
    # affordable window, so such instances only test the window size.
    rows = [e.homogeneous_part(1).terms for e in elements]
    return certify_independence(rows, elements[0].field).independent


def run_mlm_batch(variety, field: Field, count: int, seed: int = 1):
    """``count`` seeded instances; yields ``(index, instance, verdict)``."""
    variety = Variety(variety)
    rng = random.Random(f"{seed}:{variety}:{field}")
    for i in range(count):
        inst = random_mlm_instance(variety, field, rng)
        yield i, inst, mlm_check(variety, inst.elements, inst.degree)


def mlm_batch_report(variety, field: Field, count: int, seed: int = 1) -> dict:
    rows = []
    counts: dict = {}
    for i, inst, verdict in run_mlm_batch(variety, field, count, seed):
        counts[verdict.verdict] = counts.get(verdict.verdict, 0) + 1
        rows.append(
            {
                "instance": i,
                "kind": inst.kind,
                "elements": len(inst.elements),
                "host_n": inst.elements[0].n,
                "degree": inst.degree,
                "base": verdict.base.verdict,
                "full": verdict.full.verdict,
                "verdict": verdict.verdict,
            }
        )
    return {
        "kind": "mlm-batch",
        "variety": str(Variety(variety)),
        "field": str(field),
        "seed": seed,
        "count": count,
        "verdict": "mlm-counterexample" if "mlm-counterexample" in counts else "mlm-consistent",
        "verdicts": dict(sorted(counts.items())),
        "instances": rows,
    }


# -- demos ------------------------------------------------------------------------


def demo_triv(cfg: ExperimentConfig) -> dict:
    """Trivial multiplication: ``{z, t z}`` is free over Q but not over Q(t)."""
    F = field_make(cfg.field if cfg.field_spec.variables else "Q(t)")
    t = F.var(F.variables[0])
    z = FreeElement.generator(Variety.TRIVIAL, 1, F, 1)
    elements = [z, z.scale(t)]
    verdict = mlm_check(Variety.TRIVIAL, elements, cfg.degree)
    zero = not witness_value(verdict.full, elements)
    out = {"kind": "demo", "demo": "triv", "elements": [repr_text(e) for e in elements]}
    out.update(verdict.to_dict(F))
    out["witness_substitutes_to_zero"] = zero
    return out


def repr_text(elem: FreeElement) -> str:
    from .parsing import format_element

    return format_element(elem)


def demo_comassoc(cfg: ExperimentConfig) -> dict:
    """Commutative associative algebras: ``{x, y}`` inside Q(x, y).

    The host is the polynomial ring, its extension the fraction field; words in
    two commuting associative letters are just monomials ``y1^i y2^j``.
    """
    F = field_make("Q(x,y)")
    x, y = F.var("x"), F.var("y")
    monos = [(i, j) for e in range(1, 3) for i in range(e, -1, -1) for j in [e - i]]
    names = [_mono_name(i, j) for i, j in monos]
    rows = [{0: x**i * y**j} for i, j in monos]
    full = certify_independence(rows, F, exact_only=True)
    base = base_independence(rows, F, exact_only=True)
    witness = None
    if not full.independent:
        witness = [(F.to_str(c), m) for c, m in zip(full.witness, names) if c]
    # the single-generator relation x*x^1 = x^2 already lives in degree 2
    pair = [{0: x}, {0: x**2}]
    w = certify_independence(pair, F, exact_only=True).witness
    w = [c / -w[0] for c in w]
    single_ok = is_zero_combination(w, pair)
    return {
        "kind": "demo",
        "demo": "comassoc",
        "field": str(F),
        "elements": ["x", "y"],
        "monomials": names,
        "base": {"scope": BASE, "verdict": _verdict(base.independent)},
        "full": {"scope": FULL, "verdict": _verdict(full.independent), "witness": witness},
        "degree_2_witness": {
            "terms": [(F.to_str(w[1]), "y1^2"), (F.to_str(w[0]), "y1")],
            "text": f"({F.to_str(w[1])})*x^2 - x",
            "substitutes_to_zero": single_ok,
        },
        "witness_substitutes_to_zero": is_zero_combination(full.witness, rows)
        if witness
        else None,
        "verdict": "mlm-counterexample" if base.independent and not full.independent else "mlm-consistent",
    }


def _mono_name(i: int, j: int) -> str:
    parts = []
    for name, e in (("y1", i), ("y2", j)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _verdict(independent: bool) -> str:
    return "free-up-to-d" if independent else "dependent"


def demo_mlm(cfg: ExperimentConfig, variety: Variety, count: int = 10) -> dict:
    F = cfg.make_field() if cfg.field_spec.variables else field_make("Q(t)")
    out = mlm_batch_report(variety, F, count, cfg.seed)
    out["demo"] = f"mlm-{'lie' if variety is Variety.LIE else 'jordan'}"
    return out


def demo_jordan_claims(cfg: ExperimentConfig, samples: int = 20) -> dict:
    """Identities behind the special Jordan argument, on seeded random elements.

    * ``z(pq - qp) - (pq - qp)z = 4[(p.z).q - p.(z.q)]`` in the associative algebra;
    * for commuting ``p, q`` (polynomials in one element) ``(p.z).q = p.(z.q)``;
    * ``(z.p^2).p = p^2.(z.p)``.
    """
    K = cfg.make_field().base_field
    rng = random.Random(cfg.seed)
    n = max(cfg.n, 2)
    A, SJ = Variety.ASSOCIATIVE, Variety.SPECIAL_JORDAN
    half = K.half

    def circ(a, b):
        return (a * b + b * a).scale(half)

    results = {"commutator-associator": 0, "commuting-operators": 0, "jordan-p-squared": 0}
    failures = []
    for _ in range(samples):
        p, z, q = (random_element(A, n, K, rng, 2, 3) for _ in range(3))
        lhs = z * (p * q - q * p) - (p * q - q * p) * z
        rhs = (circ(circ(p, z), q) - circ(p, circ(z, q))).scale(K(4))
        results["commutator-associator"] += 1
        if lhs != rhs:
            failures.append("commutator-associator")
        u = random_element(A, n, K, rng, 1, 2)
        pu = u.scale(random_scalar(K, rng)) + (u * u).scale(random_scalar(K, rng))
        qu = u * u * u + u.scale(random_scalar(K, rng))
        results["commuting-operators"] += 1
        if circ(circ(pu, z), qu) != circ(pu, circ(z, qu)):
            failures.append("commuting-operators")
        pj = random_element(SJ, n, K, rng, 2, 2)
        zj = random_element(SJ, n, K, rng, 2, 2)
        p2 = jordan_circ(pj, pj)
        results["jordan-p-squared"] += 1
        if jordan_circ(jordan_circ(zj, p2), pj) != jordan_circ(p2, jordan_circ(zj, pj)):
            failures.append("jordan-p-squared")
    sample = [random_element(SJ, n, K, rng, 2, 2) for _ in range(8)]
    ident = identity_check(SJ, sample, trials=40, seed=cfg.seed)
    return {
        "kind": "demo",
        "demo": "jordan-claims",
        "field": str(K),
        "samples": samples,
        "checked": results,
        "jordan_identity": str(ident),
        "failures": failures,
        "verdict": "all-identities-hold" if not failures and ident.passed else "identity-failure",
    }


def dims_table(n: int, degree: int, varieties=None) -> list[dict]:
    varieties = list(Variety) if varieties is None else [Variety(v) for v in varieties]
    return [
        {"variety": str(v), "n": n, "degree": d, "dim": len(variety_basis(v, n, d))}
        for v in varieties
        for d in range(1, degree + 1)
    ]


def demo_dims(cfg: ExperimentConfig) -> dict:
    return {"kind": "dims", "n": cfg.n, "rows": dims_table(cfg.n, cfg.degree)}


def run_demo(name: str, cfg: ExperimentConfig | None = None) -> dict:
    cfg = ExperimentConfig(demo=name) if cfg is None else cfg
    if name not in DEMOS:
        raise ValueError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")
    if name == "triv":
        return demo_triv(cfg)
    if name == "comassoc":
        return demo_comassoc(cfg)
    if name == "mlm-lie":
        return demo_mlm(cfg, Variety.LIE)
    if name == "mlm-jordan":
        return demo_mlm(cfg, Variety.SPECIAL_JORDAN)
    if name == "jordan-claims":
        return demo_jordan_claims(cfg)
    return demo_dims(cfg)

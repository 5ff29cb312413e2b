"""Freeness certification up to a degree bound and the parametric machinery.

``freeness_test`` evaluates the basis monomials of a variety at a list of
elements and decides whether the evaluations are linearly independent, either
over the full coefficient field or over its prime subfield.  The parametric
part builds the polynomial coefficient matrix of monomial evaluations at
``a_{z_i} = sum_j z_ij a_ij``, its maximal minors, and a seeded search for a
rational point where the evaluations stay independent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .field import Field, FieldSpec, field_make
from .linalg import (
    base_independence,
    certify_independence,
    determinant,
    reduced_row_basis,
)
from .varieties import (
    BasisMonomial,
    FreeElement,
    Variety,
    VarietyError,
    evaluate_monomial,
    variety_basis,
)
from .words import enumerate_words, leaves, to_sexpr

FULL = "full-field"
BASE = "base-subfield"
SCOPES = (FULL, BASE)
DEFAULT_MAX_MONOMIALS = 20000


class ResourceLimitError(RuntimeError):
    """The monomial count of a test exceeds the configured cap."""


@dataclass
class FreenessReport:
    variety: Variety
    n: int
    degree: int
    scope: str
    verdict: str
    dims: list[int]
    witness: list[tuple] | None  # (coefficient, BasisMonomial) pairs
    field: str
    method: str = ""
    seed: int | None = None
    trials: int | None = None

    @property
    def free(self) -> bool:
        return self.verdict == "free-up-to-d"

    def to_dict(self, coeff_field: Field | None = None) -> dict:
        from .parsing import format_monomial

        def cstr(c):
            return coeff_field.to_str(c) if coeff_field is not None else str(c)

        witness = None
        if self.witness is not None:
            witness = [
                {"coef": cstr(c), "monomial": format_monomial(bm)} for c, bm in self.witness
            ]
        return {
            "variety": str(self.variety),
            "n": self.n,
            "degree": self.degree,
            "scope": self.scope,
            "verdict": self.verdict,
            "dims": list(self.dims),
            "witness": witness,
            "field": self.field,
            "seed": self.seed,
            "trials": self.trials,
        }


def unit_monomial(variety: Variety) -> BasisMonomial:
    return BasisMonomial(variety, 0, (), None)


def collect_monomials(
    variety,
    n: int,
    degree: int,
    field: Field,
    *,
    max_monomials: int = DEFAULT_MAX_MONOMIALS,
    unital: bool = False,
    letters_only: bool = False,
) -> tuple[list[BasisMonomial], list[int]]:
    """Basis preimages of degrees ``1..degree`` with the per-degree counts."""
    variety = Variety(variety)
    if unital and variety is not Variety.SPECIAL_JORDAN:
        raise VarietyError("unit adjunction is only defined for special Jordan")
    monomials: list[BasisMonomial] = [unit_monomial(variety)] if unital else []
    dims = []
    for e in range(1, degree + 1):
        basis = variety_basis(variety, n, e, field)
        if letters_only:
            basis = [bm for bm in basis if len(bm.payload) == 1]
        dims.append(len(basis))
        monomials.extend(basis)
        if len(monomials) > max_monomials:
            raise ResourceLimitError(
                f"{variety} with n={n}, degree {degree} needs more than "
                f"{max_monomials} monomials (cap reached at degree {e})"
            )
    return monomials, dims


def evaluate_monomials(monomials, elements: list[FreeElement]) -> list[FreeElement]:
    cache: dict = {}
    out = []
    for bm in monomials:
        if bm.degree == 0:
            out.append(FreeElement(elements[0].variety, elements[0].n, elements[0].field, {(): elements[0].field.one}))
        else:
            out.append(bm.evaluate(elements, cache))
    return out


def _rows(values: list[FreeElement]) -> list[dict]:
    index: dict = {}
    rows = []
    for v in values:
        rows.append({index.setdefault(k, len(index)): c for k, c in v.terms.items()})
    return rows


def _check_elements(elements):
    if len(elements) < 2:
        raise ValueError("a freeness test needs at least two elements")
    first = elements[0]
    for e in elements[1:]:
        first._check(e)


def freeness_test(
    elements: list[FreeElement],
    variety=None,
    degree: int = 1,
    scope: str = FULL,
    *,
    max_monomials: int = DEFAULT_MAX_MONOMIALS,
    unital: bool = False,
    letters_only: bool = False,
    exact_only: bool = False,
) -> FreenessReport:
    """Decide whether ``elements`` freely generate up to ``degree``.

    ``scope`` selects independence over the whole coefficient field or over
    its prime subfield.  A dependent verdict carries a witness: coefficients
    on basis monomials whose evaluations sum to exactly zero.
    """
    _check_elements(elements)
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}")
    host = elements[0]
    variety = host.variety if variety is None else Variety(variety)
    if variety is not host.variety:
        raise VarietyError(f"elements live in {host.variety}, not {variety}")
    fld = host.field
    monomials, dims = collect_monomials(
        variety,
        len(elements),
        degree,
        fld,
        max_monomials=max_monomials,
        unital=unital,
        letters_only=letters_only,
    )
    values = evaluate_monomials(monomials, elements)
    rows = _rows(values)
    if scope == FULL:
        result = certify_independence(rows, fld, exact_only=exact_only)
        used = str(fld)
    else:
        result = base_independence(rows, fld, exact_only=exact_only)
        used = str(fld.base_field)
    witness = None
    if not result.independent:
        witness = [(c, bm) for c, bm in zip(result.witness, monomials) if c]
    return FreenessReport(
        variety=variety,
        n=len(elements),
        degree=degree,
        scope=scope,
        verdict="free-up-to-d" if result.independent else "dependent",
        dims=dims,
        witness=witness,
        field=used,
        method=result.method,
    )


def witness_value(report: FreenessReport, elements: list[FreeElement]) -> FreeElement:
    """Evaluate the witness combination at ``elements`` (zero when sound)."""
    fld = elements[0].field
    total = elements[0].zero()
    if not report.witness:
        return total
    monos = [bm for _, bm in report.witness]
    for (c, _), val in zip(report.witness, evaluate_monomials(monos, elements)):
        total = total + val.scale(fld(c))
    return total


# -- parametric dependence loci -----------------------------------------------------


@dataclass
class GeneratorFrame:
    """Elements ``a_{z_i} = sum_j z_ij a_ij`` with indeterminate ``z_ij``."""

    vectors: list[list[FreeElement]]
    names: list[list[str]] | None = None

    def __post_init__(self):
        if len(self.vectors) < 1 or any(not v for v in self.vectors):
            raise ValueError("every frame entry needs at least one a_ij")
        first = self.vectors[0][0]
        for v in self.vectors:
            for a in v:
                first._check(a)
        if not first.field.is_prime_field:
            raise ValueError("frame vectors must have coefficients in a prime field K")
        if self.names is None:
            wide = len(self.vectors) > 9 or max(len(v) for v in self.vectors) > 9
            sep = "_" if wide else ""
            self.names = [
                [f"z{i}{sep}{j}" for j in range(1, len(v) + 1)]
                for i, v in enumerate(self.vectors, start=1)
            ]

    @property
    def variety(self) -> Variety:
        return self.vectors[0][0].variety

    @property
    def field(self) -> Field:
        return self.vectors[0][0].field

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def r(self) -> int:
        return sum(len(v) for v in self.vectors)

    @property
    def flat_names(self) -> list[str]:
        return [z for row in self.names for z in row]

    @property
    def flat_vectors(self) -> list[FreeElement]:
        return [a for row in self.vectors for a in row]

    def param_field(self) -> Field:
        return field_make(FieldSpec(self.field.characteristic, tuple(self.flat_names)))

    def generic_elements(self) -> list[FreeElement]:
        F = self.param_field()
        out = []
        for row, names in zip(self.vectors, self.names):
            acc = row[0].change_field(F).scale(F.var(names[0]))
            for a, z in zip(row[1:], names[1:]):
                acc = acc + a.change_field(F).scale(F.var(z))
            out.append(acc)
        return out

    def specialize(self, point) -> list[FreeElement]:
        if len(point) != self.r:
            raise ValueError(f"point needs {self.r} coordinates")
        K = self.field
        it = iter(point)
        out = []
        for row in self.vectors:
            acc = row[0].zero()
            for a in row:
                acc = acc + a.scale(K(next(it)))
            out.append(acc)
        return out


@dataclass
class PolyMatrix:
    """Rows: monomials ``f_k``; columns: a K-basis ``e_t`` of the evaluation span."""

    entries: list[list]
    monomials: list
    basis: list[dict]
    frame: GeneratorFrame
    field: Field

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.basis)

    @property
    def whole_space_dependent(self) -> bool:
        m, s = self.shape
        return m > s

    def specialize(self, point) -> list[list]:
        F, K = self.field, self.frame.field
        return [[K(F.specialize(x, point)) for x in row] for row in self.entries]


def parametric_matrix(frame: GeneratorFrame, monomials, d: int) -> PolyMatrix:
    """Coefficient matrix ``p_kt(z)`` with ``f_k(a_z) = sum_t p_kt(z) e_t``."""
    monomials = list(monomials)
    for w in monomials:
        if _deg(w) > d:
            raise ValueError(f"monomial {to_sexpr(w)} has degree above {d}")
        if max(leaves(w)) > frame.n:
            raise ValueError(f"monomial {to_sexpr(w)} uses y_i with i > {frame.n}")
    K = frame.field
    avec = frame.flat_vectors
    spans = []
    for e in range(1, d + 1):
        spans.extend(evaluate_monomial(w, avec, {}) for w in enumerate_words(len(avec), e))
    index: dict = {}
    span_rows = [{index.setdefault(k, len(index)): c for k, c in v.terms.items()} for v in spans]
    ech = reduced_row_basis(span_rows, K)
    pivots = [c for c, _ in ech]
    F = frame.param_field()
    generic = frame.generic_elements()
    cache: dict = {}
    entries = []
    for w in monomials:
        val = evaluate_monomial(w, generic, cache)
        row = {}
        for k, c in val.terms.items():
            if k not in index:
                raise AssertionError("evaluation left the span of the a_ij monomials")
            row[index[k]] = c
        coords = [row.get(c, F.zero) for c in pivots]
        residual = dict(row)
        for coef, (_, b) in zip(coords, ech):
            if not coef:
                continue
            for j, v in b.items():
                residual[j] = residual.get(j, F.zero) - coef * F(v)
        if any(residual.values()):
            raise AssertionError("evaluation is not in the span of the basis e_t")
        entries.append(coords)
    basis = [{k: b.get(j) for k, j in index.items() if j in b} for _, b in ech]
    return PolyMatrix(entries, monomials, basis, frame, F)


def _deg(w) -> int:
    return len(leaves(w))


def minors(P: PolyMatrix, m: int | None = None, mode: str = "full") -> list:
    """``m x m`` minors of ``P`` (``m`` defaults to the row count).

    ``mode="search"`` stops at the first nonzero minor, enumerating row and
    column subsets in lexicographic order.
    """
    rows, cols = P.shape
    m = rows if m is None else m
    if m < 1 or m > rows:
        raise ValueError(f"minor size {m} outside 1..{rows}")
    if mode not in ("full", "search"):
        raise ValueError("mode must be 'full' or 'search'")
    if m > cols:
        return []
    out = []
    for rsub in combinations(range(rows), m):
        for csub in combinations(range(cols), m):
            sub = [[P.entries[i][j] for j in csub] for i in rsub]
            det = determinant(sub, P.field)
            out.append(det)
            if mode == "search" and det:
                return [det]
    return out


def minors_vanish_at(polys, P: PolyMatrix, point) -> bool:
    return all(not P.field.specialize(p, point) for p in polys)


@dataclass
class SearchResult:
    point: list[int] | None
    trials: int
    report: FreenessReport | None = None
    seed: int = 1

    @property
    def exhausted(self) -> bool:
        return self.point is None


def specialization_search(
    frame: GeneratorFrame,
    variety=None,
    p: int = 1,
    budget: int = 100,
    seed: int = 1,
) -> SearchResult:
    """Sample integer points until the specialized frame is free up to ``p``.

    Coordinates are uniform in ``[-R, R]``; ``R`` starts at 1 and doubles
    every ``budget // 4`` trials.
    """
    variety = frame.variety if variety is None else Variety(variety)
    rng = random.Random(seed)
    radius = 1
    step = max(1, budget // 4)
    for trial in range(budget):
        if trial and trial % step == 0:
            radius *= 2
        point = [rng.randint(-radius, radius) for _ in range(frame.r)]
        elements = frame.specialize(point)
        if any(not e for e in elements) or frame.n < 2:
            continue
        rep = freeness_test(elements, variety, p, FULL)
        if rep.free:
            rep.seed, rep.trials = seed, trial + 1
            return SearchResult(point, trial + 1, rep, seed)
    return SearchResult(None, budget, None, seed)


# -- MLM verdicts -----------------------------------------------------------------


@dataclass
class MLMVerdict:
    variety: Variety
    degree: int
    verdict: str
    base: FreenessReport
    full: FreenessReport
    layers: dict = dc_field(default_factory=dict)

    @property
    def witness(self):
        return self.full.witness if self.verdict == "mlm-counterexample" else None

    def to_dict(self, coeff_field: Field | None = None) -> dict:
        return {
            "variety": str(self.variety),
            "degree": self.degree,
            "verdict": self.verdict,
            "base": self.base.to_dict(coeff_field.base_field if coeff_field else None),
            "full": self.full.to_dict(coeff_field),
            "layers": {
                k: {"base": b.verdict, "full": f.verdict} for k, (b, f) in self.layers.items()
            },
        }


def mlm_check(variety, elements: list[FreeElement], d: int, **kw) -> MLMVerdict:
    """Check that freeness over the prime subfield implies freeness over F.

    For Poisson the check is layered: the Lyndon letters (bracket monomials)
    first, then all words in the letters.
    """
    variety = Variety(variety)
    _check_elements(elements)
    layers = {}
    if variety is Variety.POISSON:
        lb = freeness_test(elements, variety, d, BASE, letters_only=True, **kw)
        lf = freeness_test(elements, variety, d, FULL, letters_only=True, **kw)
        layers["lie-letters"] = (lb, lf)
    base = freeness_test(elements, variety, d, BASE, **kw)
    full = freeness_test(elements, variety, d, FULL, **kw)
    if variety is Variety.POISSON:
        layers["associative-words"] = (base, full)
    consistent = not base.free or full.free
    for lb, lf in layers.values():
        consistent = consistent and (not lb.free or lf.free)
    verdict = "mlm-consistent" if consistent else "mlm-counterexample"
    return MLMVerdict(variety, d, verdict, base, full, layers)

"""Elementary transformations of generator tuples and the annihilator harness.

In free Lie and free anticommutative algebras a nonzero ``q`` annihilates
``p`` (``pq = 0``) only when ``p`` is a scalar multiple of ``q``.  The
harness checks the degree-windowed form: the kernel of ``p -> p*q`` on the
span of basis monomials of degree ``<= d`` is exactly ``span{q}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .field import Field
from .linalg import RowReducer, certify_independence, rank_and_kernel
from .varieties import (
    FreeElement,
    Variety,
    VarietyError,
    basis_element,
    key_degree,
    multiply,
    random_element,
    random_scalar,
    substitute,
    variety_basis,
)
from .words import leaves

SCHREIER_VARIETIES = (Variety.LIE, Variety.ANTICOMMUTATIVE)


def _check_tuple(t: list[FreeElement]):
    if not t:
        raise ValueError("generator tuple must be nonempty")
    for e in t[1:]:
        t[0]._check(e)


def elem_linear(t: list[FreeElement], m) -> list[FreeElement]:
    """``y_i = sum_j m[i][j] x_j`` for an invertible square matrix ``m``."""
    _check_tuple(t)
    fld = t[0].field
    k = len(t)
    if len(m) != k or any(len(row) != k for row in m):
        raise ValueError(f"matrix must be {k}x{k}")
    rank, _ = rank_and_kernel(m, fld)
    if rank < k:
        raise ValueError("singular matrix is not an elementary transformation")
    out = []
    for row in m:
        acc = t[0].zero()
        for c, x in zip(row, t):
            if fld(c):
                acc = acc + x.scale(c)
        out.append(acc)
    return out


def generator_indices(elem: FreeElement) -> set[int]:
    out: set[int] = set()
    for key in elem.terms:
        if elem.variety in (Variety.ASSOCIATIVE, Variety.LIE, Variety.SPECIAL_JORDAN):
            out.update(key)
        elif elem.variety is Variety.POISSON:
            for letter in key:
                out.update(letter)
        else:
            out.update(leaves(key))
    return out


def elem_substitute(t: list[FreeElement], u: FreeElement) -> list[FreeElement]:
    """Replace the last entry ``x_n`` by ``x_n + u(x_1, ..., x_{n-1})``.

    ``u`` is a polynomial expression: an element of the free algebra of the
    same variety whose generator ``i`` stands for ``x_i``.
    """
    _check_tuple(t)
    n = len(t)
    if u.variety is not t[0].variety:
        raise VarietyError("substitution expression must live in the tuple's variety")
    used = generator_indices(u)
    if used and max(used) >= n:
        raise ValueError(
            f"substitution expression references x_{max(used)}; only x_1..x_{n - 1} are allowed"
        )
    if not u:
        return list(t)
    value = substitute(u.change_field(t[0].field), {i: t[i - 1] for i in range(1, n)})
    return list(t[:-1]) + [t[-1] + value]


@dataclass
class AnnihilatorReport:
    variety: Variety
    window: int
    kernel_dim: int
    kernel_by_degree: dict = dc_field(default_factory=dict)
    violations: list = dc_field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def __str__(self):
        status = "kernel = span{q}" if self.holds else f"{len(self.violations)} violation(s)"
        return f"{self.variety} window {self.window}: kernel dim {self.kernel_dim}, {status}"


def annihilator_check(q: FreeElement, variety=None, d: int = 3) -> AnnihilatorReport:
    """Kernel of ``p -> p*q`` on the degree-``<= d`` window versus ``span{q}``."""
    variety = q.variety if variety is None else Variety(variety)
    if variety not in SCHREIER_VARIETIES:
        raise VarietyError("annihilator_check supports lie and anticommutative hosts")
    if q.variety is not variety:
        raise VarietyError(f"q lives in {q.variety}, not {variety}")
    if not q:
        raise ValueError("q must be nonzero")
    if d < q.degree:
        raise ValueError(f"window {d} is below deg q = {q.degree}")
    fld = q.field
    payloads = []
    red = RowReducer(fld)
    index: dict = {}
    kernel = []
    for e in range(1, d + 1):
        for bm in variety_basis(variety, q.n, e, fld):
            payloads.append(bm.payload)
            prod = multiply(basis_element(bm, q.n, fld), q)
            row = {index.setdefault(k, len(index)): c for k, c in prod.terms.items()}
            dep = red.add(row)
            if dep is not None:
                kernel.append(dep)
    report = AnnihilatorReport(variety, d, len(kernel))
    for dep in kernel:
        vec = {payloads[i]: c for i, c in dep.items()}
        top = max(key_degree(variety, k) for k in vec)
        report.kernel_by_degree[top] = report.kernel_by_degree.get(top, 0) + 1
        if not _proportional(vec, q.terms):
            report.violations.append(FreeElement(variety, q.n, fld, vec))
    if len(kernel) != 1:
        report.violations.append(f"kernel dimension {len(kernel)} != 1")
    return report


def _proportional(vec: dict, target: dict) -> bool:
    if set(vec) != set(target):
        return False
    key = next(iter(target))
    lam = vec[key] / target[key]
    return all(vec[k] == lam * target[k] for k in target)


# -- random move scripts ------------------------------------------------------------


@dataclass
class Move:
    kind: str  # "linear" or "subst"
    payload: object

    def apply(self, t: list[FreeElement]) -> list[FreeElement]:
        if self.kind == "linear":
            return elem_linear(t, self.payload)
        return elem_substitute(t, self.payload)


def random_unimodular(k: int, fld: Field, rng: random.Random):
    """Product of a few swaps, shears and nonzero scalings."""
    m = [[fld(int(i == j)) for j in range(k)] for i in range(k)]
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(("swap", "shear", "scale")) if k > 1 else "scale"
        if kind == "scale":
            i = rng.randrange(k)
            c = random_scalar(fld, rng, 2)
            m[i] = [c * x for x in m[i]]
            continue
        i, j = rng.sample(range(k), 2)
        if kind == "swap":
            m[i], m[j] = m[j], m[i]
        else:
            c = random_scalar(fld, rng, 2)
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return m


def random_move(t: list[FreeElement], rng: random.Random, max_degree: int = 2) -> Move:
    k = len(t)
    fld = t[0].field
    if k == 1 or rng.random() < 0.5:
        return Move("linear", random_unimodular(k, fld, rng))
    expr = random_element(t[0].variety, k - 1, fld, rng, max_degree=max_degree, terms=2)
    return Move("subst", FreeElement(expr.variety, k - 1, fld, expr.terms))


def apply_script(t: list[FreeElement], moves: list[Move]) -> list[FreeElement]:
    for mv in moves:
        t = mv.apply(t)
    return t


# -- verdict preservation trials ----------------------------------------------------


@dataclass
class TransformTrial:
    variety: Variety
    kind: str  # "generic" or "related"
    before: list[FreeElement]
    moves: list[Move]
    after: list[FreeElement]
    before_verdict: str
    after_verdict: str

    @property
    def preserved(self) -> bool:
        return self.before_verdict == self.after_verdict


def random_linear_tuple(variety, n: int, k: int, fld: Field, rng: random.Random, related: bool):
    """``k`` linear elements of a host on ``n`` generators.

    Generic tuples have independent entries and so generate freely at every
    degree.  Related tuples make the last entry a combination of the others.
    """
    gens = FreeElement.generators(variety, n, fld)
    while True:
        t = []
        for _ in range(k):
            e = gens[0].zero()
            for g in gens:
                if rng.random() < 0.7:
                    e = e + g.scale(random_scalar(fld, rng, 2, 1))
            t.append(e)
        if related:
            last = t[0].zero()
            for e in t[:-1]:
                last = last + e.scale(random_scalar(fld, rng, 2, 1))
            t[-1] = last
            if all(t):
                return t
        else:
            if certify_independence([e.terms for e in t], fld).independent:
                return t


def random_script(t: list[FreeElement], rng: random.Random, length: int, max_subst: int = 1):
    """A move script with at most ``max_subst`` substitutions of degree <= 2."""
    moves = []
    for _ in range(length):
        mv = random_move(t, rng) if max_subst else Move("linear", random_unimodular(len(t), t[0].field, rng))
        max_subst -= mv.kind == "subst"
        moves.append(mv)
        t = mv.apply(t)
    return moves


def transform_trial(seed: int, fld: Field, d: int = 4) -> TransformTrial:
    """One seeded tuple, script and pair of full-field verdicts up to ``d``.

    With linear tuples and a single degree-2 substitution any relation stays
    at degree <= 2, so windowed verdicts compare the generated subalgebras.
    """
    from .freeness import freeness_test

    rng = random.Random(f"transform:{seed}:{fld}")
    variety = rng.choice(SCHREIER_VARIETIES)
    k = rng.choice((2, 3))
    kind = rng.choice(("generic", "related"))
    before = random_linear_tuple(variety, 3, k, fld, rng, kind == "related")
    moves = random_script(before, rng, rng.randint(2, 4))
    after = apply_script(before, moves)
    vb = freeness_test(before, variety, d).verdict
    va = freeness_test(after, variety, d).verdict
    return TransformTrial(variety, kind, before, moves, after, vb, va)

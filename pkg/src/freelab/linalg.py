"""Exact linear algebra over the fields of :mod:`freelab.field`.

Vectors are sparse ``dict[int, scalar]`` maps.  Independence decisions go
through :func:`certify_independence`, which first tries a cheap modular
certificate (full rank of a specialization mod a prime implies full rank over
the field) and falls back to exact incremental elimination, which also yields
an explicit dependence witness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .field import Field, RationalFunction

# Largest prime below 2**31; products of two residues fit in int64.
MODULUS = 2147483647

Vector = dict


@dataclass
class Independence:
    independent: bool
    witness: list | None  # coefficients aligned with the input rows
    method: str
    rank: int | None = None


def _drop_zeros(row: dict) -> dict:
    return {k: v for k, v in row.items() if v}


def _poly_gcd_content(values):
    """gcd of the numerators of polynomial entries."""
    return reduce(lambda a, b: a.gcd(b), (v.num for v in values))


class RowReducer:
    """Incremental sparse row reduction with dependency tracking.

    Prime fields use normalized pivots.  Function fields use fraction-free
    updates ``a*row - b*pivot`` followed by removal of the polynomial content,
    so row entries stay polynomials of moderate size.
    """

    def __init__(self, field: Field):
        self.field = field
        self.fraction_free = not field.is_prime_field
        self.pivots: dict[int, tuple[dict, dict]] = {}
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _normalize_ff(self, row, tracker):
        g = _poly_gcd_content(row.values())
        if not g.is_one:
            lc = g.LC
            if g.is_ground and lc == 1:
                return row, tracker
            gi = self.field.from_fraction(self.field.ring.one, g)
            row = {k: v * gi for k, v in row.items()}
            tracker = {k: v * gi for k, v in tracker.items()}
        return row, tracker

    def add(self, row: dict) -> dict | None:
        """Insert a row; return ``None`` if independent, else the zero combination.

        The combination maps input indices (0-based insertion order) to
        coefficients and always involves the new row.
        """
        f = self.field
        idx = self.count
        self.count += 1
        row = _drop_zeros(row)
        tracker = {idx: f.one}
        if self.fraction_free and row:
            dens = [v.den for v in row.values() if not v.den.is_one]
            if dens:
                lcm = reduce(lambda a, b: a.lcm(b), dens)
                scale = f.from_fraction(lcm, f.ring.one)
                row = {k: v * scale for k, v in row.items()}
                tracker = {idx: scale}
            row, tracker = self._normalize_ff(row, tracker)
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                if not self.fraction_free:
                    inv = f.one / row[c]
                    row = {k: v * inv for k, v in row.items()}
                    tracker = {k: v * inv for k, v in tracker.items()}
                self.pivots[c] = (row, tracker)
                return None
            prow, ptrack = piv
            b = row[c]
            if self.fraction_free:
                a = prow[c]
                row = _combine(row, a, prow, b)
                tracker = _combine(tracker, a, ptrack, b)
                if row:
                    row, tracker = self._normalize_ff(row, tracker)
            else:
                row = _combine(row, None, prow, b)
                tracker = _combine(tracker, None, ptrack, b)
        return _drop_zeros(tracker)


def _combine(x: dict, a, y: dict, b) -> dict:
    """Return ``a*x - b*y`` (``a=None`` means 1) with zeros removed."""
    out = dict(x) if a is None else {k: a * v for k, v in x.items()}
    for k, v in y.items():
        w = out.get(k)
        nv = -(b * v) if w is None else w - b * v
        if nv:
            out[k] = nv
        elif w is not None:
            del out[k]
    return out


def rank_and_kernel(matrix, field: Field):
    """Exact rank and a basis of the right null space of ``matrix``.

    ``matrix`` is a list of equal-length rows.  Columns are fed into a
    :class:`RowReducer`; each dependent column contributes one kernel vector.
    """
    rows = [[field(x) for x in r] for r in matrix]
    if not rows:
        return 0, []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    red = RowReducer(field)
    kernel = []
    for j in range(ncols):
        col = {i: rows[i][j] for i in range(len(rows)) if rows[i][j]}
        dep = red.add(col)
        if dep is not None:
            kernel.append([dep.get(k, field.zero) for k in range(ncols)])
    return red.rank, kernel


def reduced_row_basis(rows, field: Field) -> list[tuple[int, dict]]:
    """Reduced echelon basis of the span of sparse ``rows``.

    Returns ``(pivot_column, row)`` pairs with pivot entry 1 and zeros in every
    other pivot column, so coordinates of a span member are read off at the
    pivot columns.
    """
    basis: list[tuple[int, dict]] = []
    for r in rows:
        r = _drop_zeros(r)
        for c, b in basis:
            if c in r:
                r = _combine(r, None, b, r[c])
        if not r:
            continue
        c = min(r)
        inv = field.one / r[c]
        r = {k: v * inv for k, v in r.items()}
        basis = [(c2, _combine(b, None, r, b[c]) if c in b else b) for c2, b in basis]
        basis.append((c, r))
    basis.sort(key=lambda cb: cb[0])
    return basis


# -- modular certificates -----------------------------------------------------


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over GF(p), ``p < 2**31``."""
    m = mat.copy() % p
    nrows, ncols = m.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(m[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank] = (m[rank] * inv) % p
        below = np.nonzero(m[rank + 1 :, col])[0] + rank + 1
        if below.size:
            factors = m[below, col][:, None]
            m[below] = (m[below] - (factors * m[rank]) % p) % p
        rank += 1
    return rank


def _poly_mod(poly, point, p, field: Field):
    total = 0
    for monom, coeff in poly.iterterms():
        c = field.to_int_mod(coeff, p)
        if c is None:
            return None
        for ci, e in zip(point, monom):
            if e:
                c = c * pow(ci, e, p) % p
        total += c
    return total % p


def _reduce_rows_mod(rows, field: Field, p: int, point=None):
    """Map rows to a dense residue matrix; ``None`` if a denominator vanishes."""
    cols = sorted({k for r in rows for k in r})
    index = {c: j for j, c in enumerate(cols)}
    mat = np.zeros((len(rows), max(len(cols), 1)), dtype=np.int64)
    cache = {}
    for i, r in enumerate(rows):
        for k, v in r.items():
            if point is None:
                val = field.to_int_mod(v, p)
            else:
                key = (v.num, v.den)
                val = cache.get(key, -1)
                if val == -1:
                    num = _poly_mod(v.num, point, p, field)
                    den = _poly_mod(v.den, point, p, field) if not v.den.is_one else 1
                    val = None if (num is None or not den) else num * pow(den, -1, p) % p
                    cache[key] = val
            if val is None:
                return None
            mat[i, index[k]] = val
    return mat


def modular_full_rank(rows, field: Field, *, attempts: int = 3, seed: int = 0) -> bool:
    """Sound one-sided test: ``True`` only if ``rows`` are certainly independent.

    For characteristic ``p`` prime fields the computation is exact.
    """
    m = len(rows)
    if m == 0:
        return True
    if field.characteristic:
        p = field.characteristic
        if field.is_prime_field:
            mat = _reduce_rows_mod(rows, field, p)
            return mat.shape[1] >= m and rank_mod_p(mat, p) == m
        k = len(field.variables)
        rng = random.Random(seed)
        total = p**k
        tries = min(total, 4 * attempts)
        picks = rng.sample(range(total), tries)
        for code in picks:
            point = [(code // p**i) % p for i in range(k)]
            mat = _reduce_rows_mod(rows, field, p, point)
            if mat is not None and mat.shape[1] >= m and rank_mod_p(mat, p) == m:
                return True
        return False
    rng = random.Random(seed)
    for _ in range(attempts):
        point = None
        if not field.is_prime_field:
            point = [rng.randrange(1, MODULUS) for _ in field.variables]
        mat = _reduce_rows_mod(rows, field, MODULUS, point)
        if mat is not None and mat.shape[1] >= m and rank_mod_p(mat, MODULUS) == m:
            return True
        if field.is_prime_field:
            break
    return False


def certify_independence(rows, field: Field, *, exact_only: bool = False) -> Independence:
    """Decide linear independence of sparse ``rows`` over ``field``.

    A dependent verdict carries a witness whose last nonzero coefficient is
    ``-1``; the witness applied to ``rows`` sums to exactly zero.
    """
    rows = [_drop_zeros(r) for r in rows]
    if not exact_only and modular_full_rank(rows, field):
        return Independence(True, None, "modular-certificate", len(rows))
    red = RowReducer(field)
    for i, r in enumerate(rows):
        dep = red.add(r)
        if dep is not None:
            return Independence(False, _normalize_witness(dep, i + 1, field), "exact")
    return Independence(True, None, "exact", red.rank)


def _normalize_witness(dep: dict, length: int, field: Field) -> list:
    last = max(dep)
    scale = -(field.one / dep[last])
    return [dep[i] * scale if i in dep else field.zero for i in range(length)]


def expand_over_base(rows, field: Field):
    """Rewrite function-field rows as base-field rows.

    All rows are multiplied by one common denominator (a K-linear injection),
    and every polynomial entry is split into its monomial coefficients.
    """
    dens = {v.den for r in rows for v in r.values() if not v.den.is_one}
    common = reduce(lambda a, b: a.lcm(b), dens) if dens else field.ring.one
    keys: dict = {}
    out = []
    for r in rows:
        er = {}
        for col, v in r.items():
            poly = v.num if common.is_one else v.num * common.exquo(v.den)
            for monom, coeff in poly.iterterms():
                j = keys.setdefault((col, monom), len(keys))
                er[j] = field.domain.convert(coeff) if not field.characteristic else coeff
        out.append(er)
    return out


def base_independence(rows, field: Field, *, exact_only: bool = False) -> Independence:
    """Independence over the prime subfield of ``field``."""
    if field.is_prime_field:
        return certify_independence(rows, field, exact_only=exact_only)
    base = field.base_field
    expanded = expand_over_base(rows, field)
    return certify_independence(expanded, base, exact_only=exact_only)


def determinant(matrix, field: Field):
    """Bareiss fraction-free determinant (exact divisions)."""
    a = [[field(x) for x in r] for r in matrix]
    n = len(a)
    if n == 0:
        return field.one
    sign = 1
    prev = field.one
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return field.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def is_zero_combination(witness, rows) -> bool:
    """Check that ``sum(w_i * rows_i)`` is exactly zero."""
    acc: dict = {}
    for w, r in zip(witness, rows):
        if not w:
            continue
        for k, v in r.items():
            acc[k] = acc.get(k, 0 * v) + w * v
    return not any(acc.values())


__all__ = [
    "Independence",
    "RowReducer",
    "rank_and_kernel",
    "certify_independence",
    "base_independence",
    "expand_over_base",
    "modular_full_rank",
    "rank_mod_p",
    "determinant",
    "reduced_row_basis",
    "is_zero_combination",
    "RationalFunction",
]

"""Exact sparse linear algebra over the rationals.

The whole engine reduces to three questions about matrices with rational
entries: what is the rank, what spans the kernel, and is a vector in the span
of some generators (with certificate coefficients).  Everything here answers
those questions exactly.

Internally a vector is a dict {coordinate: value} holding only nonzero
entries.  Elimination happens fraction-free over the integers: each row is
scaled to integer entries once, and every row operation

    row' = (p * row - a * pivot_row) / g

keeps entries integral, with g the gcd of the result (taken jointly with any
augmented bookkeeping columns, so that tracked combinations stay exact).

Two pivot policies exist.  "lex" always takes the leftmost occupied column;
it is the reference policy and the one used for user-facing kernels and
span solves.  "markowitz" picks the least-populated column first (then the
shortest row, preferring unit pivots) to limit fill-in on the big cochain
differentials.  Both are fully deterministic: every tie breaks by index.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch

__all__ = [
    "Matrix",
    "rank",
    "kernel_basis",
    "solve_in_span",
    "invert",
    "SpanSolver",
]


# ---------------------------------------------------------------------------
# sparse integer elimination core
# ---------------------------------------------------------------------------

class EchelonData:
    """Outcome of one elimination run.

    echelon: list of (pivot_col, row_dict, aug_dict) in pivot order.  Later
        entries have zero at all earlier pivot columns, so targets can be
        reduced against the list front to back.
    zeros: list of (original_row_id, aug_dict) for rows that vanished; with
        an identity augmentation these are exactly the kernel combinations.
    """

    __slots__ = ("echelon", "zeros")

    def __init__(self, echelon, zeros):
        self.echelon = echelon
        self.zeros = zeros

    @property
    def pivot_cols(self):
        return [c for (c, _r, _a) in self.echelon]

    @property
    def rank(self):
        return len(self.echelon)


def _gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def _normalize_joint(main: dict, aug: dict) -> None:
    g = _gcd_all(main.values())
    if g != 1:
        g = gcd(g, _gcd_all(aug.values()))
    if g > 1:
        for c in main:
            main[c] //= g
        for c in aug:
            aug[c] //= g


def eliminate(rows, aug=None, policy="markowitz"):
    """Run fraction-free elimination over integer sparse rows.

    ``rows`` is a list of dicts {col: int}; it is consumed.  ``aug`` is an
    optional parallel list of bookkeeping dicts transformed by the identical
    row operations (pass identity rows to track kernel combinations).
    Returns EchelonData.  Deterministic for a fixed policy.
    """
    n = len(rows)
    if aug is None:
        aug = [dict() for _ in range(n)]
    assert len(aug) == n
    for i in range(n):
        _normalize_joint(rows[i], aug[i])

    colrows: dict[int, set] = {}
    for i, r in enumerate(rows):
        for c in r:
            colrows.setdefault(c, set()).add(i)

    active = set(i for i in range(n) if rows[i])
    zero_ids = sorted(i for i in range(n) if not rows[i])
    echelon = []

    if policy == "markowitz":
        heap = [(len(ids), c) for c, ids in colrows.items()]
        heapq.heapify(heap)
    elif policy != "lex":
        raise ValueError("unknown policy %r" % policy)

    while colrows:
        if policy == "lex":
            c = min(colrows)
        else:
            while True:
                cnt, c = heapq.heappop(heap)
                ids = colrows.get(c)
                if ids is None:
                    continue
                if len(ids) == cnt:
                    break
                heapq.heappush(heap, (len(ids), c))
        candidates = colrows[c]
        rp = min(candidates, key=lambda i: (len(rows[i]), 0 if abs(rows[i][c]) == 1 else 1, i))
        prow, paug = rows[rp], aug[rp]
        p = prow[c]

        for i in sorted(candidates):
            if i == rp:
                continue
            r, ar = rows[i], aug[i]
            a = r[c]
            newr = {cc: p * v for cc, v in r.items()}
            for cc, v in prow.items():
                w = newr.get(cc, 0) - a * v
                if w:
                    newr[cc] = w
                elif cc in newr:
                    del newr[cc]
            newa = {cc: p * v for cc, v in ar.items()}
            for cc, v in paug.items():
                w = newa.get(cc, 0) - a * v
                if w:
                    newa[cc] = w
                elif cc in newa:
                    del newa[cc]
            _normalize_joint(newr, newa)
            old_cols = set(r)
            new_cols = set(newr)
            for cc in old_cols - new_cols:
                s = colrows.get(cc)
                if s is not None:
                    s.discard(i)
                    if not s:
                        del colrows[cc]
                    elif policy == "markowitz":
                        heapq.heappush(heap, (len(s), cc))
            for cc in new_cols - old_cols:
                s = colrows.setdefault(cc, set())
                s.add(i)
                if policy == "markowitz":
                    heapq.heappush(heap, (len(s), cc))
            rows[i], aug[i] = newr, newa
            if not newr:
                active.discard(i)
                zero_ids.append(i)

        # retire the pivot row
        for cc in prow:
            s = colrows.get(cc)
            if s is not None:
                s.discard(rp)
                if not s:
                    del colrows[cc]
                elif policy == "markowitz":
                    heapq.heappush(heap, (len(s), cc))
        active.discard(rp)
        echelon.append((c, prow, paug))

    zeros = []
    for i in sorted(zero_ids):
        a = dict(aug[i])
        g = _gcd_all(a.values())
        if g > 1:
            a = {c: v // g for c, v in a.items()}
        zeros.append((i, a))
    return EchelonData(echelon, zeros)


def reduce_against(echelon, target: dict) -> tuple[dict, list[Fraction]]:
    """Reduce a rational sparse vector against echelon rows, front to back.

    Returns (remainder, betas) with  target = sum(beta_k * E_k) + remainder
    and remainder zero at every pivot column.
    """
    t = {c: Fraction(v) for c, v in target.items() if v}
    betas = []
    for c, mrow, _a in echelon:
        tv = t.get(c)
        if not tv:
            betas.append(Fraction(0))
            continue
        coef = tv / mrow[c]
        betas.append(coef)
        for cc, v in mrow.items():
            w = t.get(cc, 0) - coef * v
            if w:
                t[cc] = w
            elif cc in t:
                del t[cc]
    return t, betas


def clear_denominators(vec: dict) -> tuple[dict, Fraction]:
    """Scale a rational sparse vector to a primitive integer one.

    Returns (ivec, mult) with ivec = mult * vec, mult > 0, content(ivec) = 1.
    """
    if not vec:
        return {}, Fraction(1)
    den = 1
    for v in vec.values():
        den = lcm(den, Fraction(v).denominator)
    ints = {c: int(Fraction(v) * den) for c, v in vec.items() if v}
    g = _gcd_all(ints.values())
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    else:
        g = 1
    return ints, Fraction(den, g)


# ---------------------------------------------------------------------------
# the public Matrix type
# ---------------------------------------------------------------------------

class Matrix:
    """Immutable sparse matrix with exact rational entries."""

    __slots__ = ("nrows", "ncols", "_d")

    def __init__(self, nrows: int, ncols: int, entries: dict | None = None):
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        d = {}
        if entries:
            for (i, j), v in entries.items():
                v = Fraction(v)
                if v:
                    assert 0 <= i < nrows and 0 <= j < ncols
                    d[(i, j)] = v
        object.__setattr__(self, "_d", d)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        d = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            for j, v in enumerate(r):
                v = Fraction(v)
                if v:
                    d[(i, j)] = v
        return cls(nrows, ncols, d)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols, {})

    def entry(self, i: int, j: int) -> Fraction:
        return self._d.get((i, j), Fraction(0))

    def to_lists(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self._d.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.nrows)]
        for (i, j), v in self._d.items():
            out[i][j] = v
        return out

    def col_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.ncols)]
        for (i, j), v in self._d.items():
            out[j][i] = v
        return out

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, {(j, i): v for (i, j), v in self._d.items()})

    def density(self) -> float:
        size = self.nrows * self.ncols
        return len(self._d) / size if size else 0.0

    def nnz(self) -> int:
        return len(self._d)

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length %d, expected %d" % (len(vec), self.ncols))
        out = [Fraction(0)] * self.nrows
        for (i, j), v in self._d.items():
            if vec[j]:
                out[i] += v * Fraction(vec[j])
        return out

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatch("%dx%d times %dx%d" % (self.nrows, self.ncols, other.nrows, other.ncols))
        cols = other.col_dicts()
        d = {}
        rows = self.row_dicts()
        for i, r in enumerate(rows):
            if not r:
                continue
            for j, c in enumerate(cols):
                s = Fraction(0)
                if len(r) < len(c):
                    for k, v in r.items():
                        w = c.get(k)
                        if w:
                            s += v * w
                else:
                    for k, w in c.items():
                        v = r.get(k)
                        if v:
                            s += v * w
                if s:
                    d[(i, j)] = s
        return Matrix(self.nrows, other.ncols, d)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch("shape mismatch in addition")
        d = dict(self._d)
        for k, v in other._d.items():
            w = d.get(k, Fraction(0)) + v
            if w:
                d[k] = w
            elif k in d:
                del d[k]
        return Matrix(self.nrows, self.ncols, d)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s) -> "Matrix":
        s = Fraction(s)
        if not s:
            return Matrix.zeros(self.nrows, self.ncols)
        return Matrix(self.nrows, self.ncols, {k: s * v for k, v in self._d.items()})

    def is_zero(self) -> bool:
        return not self._d

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self._d == other._d

    def __repr__(self):
        if self.nrows * self.ncols <= 36:
            return "Matrix(%r)" % (self.to_lists(),)
        return "<Matrix %dx%d, %d nonzero>" % (self.nrows, self.ncols, len(self._d))


# ---------------------------------------------------------------------------
# rank / kernel / span membership
# ---------------------------------------------------------------------------

DENSE_DENSITY_THRESHOLD = 0.2
_DENSE_SIZE_CAP = 40000


def _exact_div(a: int, b: int) -> int:
    q, rem = divmod(a, b)
    assert rem == 0, "fraction-free division left a remainder"
    return q


def _dense_rank(rows: list[list[int]]) -> int:
    """Bareiss fraction-free elimination on small dense integer data."""
    m = [r[:] for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    r = 0
    prev = 1
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nr):
            if not any(m[i][c:]):
                continue
            for j in range(c + 1, nc):
                m[i][j] = _exact_div(m[r][c] * m[i][j] - m[i][c] * m[r][j], prev)
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == nr:
            break
    return r


def rank(m: Matrix) -> int:
    """Exact rank over the rationals.

    >>> rank(Matrix.from_rows([[1, 2], [2, 4]]))
    1
    >>> rank(Matrix.identity(3))
    3
    >>> rank(Matrix.zeros(0, 0))
    0
    """
    if m.nrows == 0 or m.ncols == 0:
        return 0
    size = m.nrows * m.ncols
    if size <= _DENSE_SIZE_CAP and m.density() >= DENSE_DENSITY_THRESHOLD:
        rows = []
        for r in m.row_dicts():
            ints, _ = clear_denominators(r)
            rows.append([ints.get(j, 0) for j in range(m.ncols)])
        return _dense_rank(rows)
    rows = []
    for r in m.row_dicts():
        ints, _ = clear_denominators(r)
        rows.append(ints)
    return eliminate(rows, policy="markowitz").rank


def kernel_basis(m: Matrix) -> list[list[int]]:
    """Integer vectors (content 1) spanning the rational null space.

    >>> kernel_basis(Matrix.from_rows([[1, -1]]))
    [[1, 1]]
    >>> kernel_basis(Matrix.identity(2))
    []
    >>> kernel_basis(Matrix.zeros(2, 3))
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    """
    if m.ncols == 0:
        return []
    rows = []
    mults = []
    for c in m.col_dicts():
        ints, mult = clear_denominators(c)
        rows.append(ints)
        mults.append(mult)
    aug = [{i: 1} for i in range(m.ncols)]
    data = eliminate(rows, aug, policy="lex")
    out = []
    for _i, combo in data.zeros:
        # combo applies to the content-cleared columns; rescale to the originals
        vec = {j: u * mults[j] for j, u in combo.items()}
        ints, _ = clear_denominators(vec)
        dense = [ints.get(j, 0) for j in range(m.ncols)]
        lead = next(v for v in dense if v)
        if lead < 0:
            dense = [-v for v in dense]
        out.append(dense)
    return out


def solve_in_span(target: Sequence, generators: Sequence[Sequence]):
    """Exact coefficients with  target = sum(a_i * generators[i]), or None.

    None is a definitive not-in-span verdict, not a failure to find one.

    >>> solve_in_span([1, 1], [[1, 0], [0, 1]])
    [Fraction(1, 1), Fraction(1, 1)]
    >>> solve_in_span([1, 0], [[0, 1]]) is None
    True
    """
    target = list(target)
    gens = [list(g) for g in generators]
    for g in gens:
        if len(g) != len(target):
            raise DimensionMismatch("generator length %d, target length %d" % (len(g), len(target)))
    solver = SpanSolver((_to_sparse(g) for g in gens), count=len(gens))
    return solver.solve(_to_sparse(target))


def _to_sparse(vec) -> dict:
    if isinstance(vec, dict):
        return {c: Fraction(v) for c, v in vec.items() if v}
    return {i: Fraction(v) for i, v in enumerate(vec) if v}


class SpanSolver:
    """Membership oracle for the span of a fixed generator list.

    Builds one echelon of the generators (lex policy, identity tracking) and
    then answers any number of solve() queries against it.  Coefficients are
    exact and verified by construction of the tracked combinations; callers
    re-substituting will always land on the target.
    """

    def __init__(self, generators: Iterable, count: int | None = None):
        gens = [_to_sparse(g) for g in generators]
        self._mults = []
        rows = []
        for g in gens:
            ints, mult = clear_denominators(g)
            rows.append(ints)
            self._mults.append(mult)
        self._n = len(rows)
        aug = [{i: 1} for i in range(self._n)]
        self._data = eliminate(rows, aug, policy="lex")

    @property
    def rank(self) -> int:
        return self._data.rank

    def reduce(self, target) -> tuple[dict, list[Fraction]]:
        return reduce_against(self._data.echelon, _to_sparse(target))

    def contains(self, target) -> bool:
        rem, _ = self.reduce(target)
        return not rem

    def solve(self, target):
        rem, betas = self.reduce(target)
        if rem:
            return None
        coeffs = [Fraction(0)] * self._n
        for beta, (_c, _mrow, arow) in zip(betas, self._data.echelon):
            if not beta:
                continue
            for i, u in arow.items():
                coeffs[i] += beta * u
        return [coeffs[i] * self._mults[i] for i in range(self._n)]


def det(m: Matrix) -> Fraction:
    """Exact determinant (dense Bareiss); for basis-sized matrices only.

    >>> det(Matrix.from_rows([[2, 1], [1, 1]]))
    Fraction(1, 1)
    """
    if m.nrows != m.ncols:
        raise DimensionMismatch("determinant of a %dx%d matrix" % (m.nrows, m.ncols))
    n = m.nrows
    if n == 0:
        return Fraction(1)
    rows = []
    scale = Fraction(1)
    for r in m.row_dicts():
        ints, mult = clear_denominators(r)
        if not ints:
            return Fraction(0)
        scale *= mult
        rows.append([ints.get(j, 0) for j in range(n)])
    a = rows
    sign = 1
    prev = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = _exact_div(a[c][c] * a[i][j] - a[i][c] * a[c][j], prev)
            a[i][c] = 0
        prev = a[c][c]
    return Fraction(sign * a[n - 1][n - 1]) / scale


def invert(m: Matrix) -> Matrix:
    """Dense exact inverse; raises DimensionMismatch on non-square input and
    ValueError on singular input.  Only used on basis-sized matrices."""
    if m.nrows != m.ncols:
        raise DimensionMismatch("inverse of a %dx%d matrix" % (m.nrows, m.ncols))
    n = m.nrows
    a = m.to_lists()
    inv = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            raise ValueError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        pv = a[c][c]
        a[c] = [v / pv for v in a[c]]
        inv[c] = [v / pv for v in inv[c]]
        for i in range(n):
            if i == c or not a[i][c]:
                continue
            f = a[i][c]
            a[i] = [v - f * w for v, w in zip(a[i], a[c])]
            inv[i] = [v - f * w for v, w in zip(inv[i], inv[c])]
    return Matrix.from_rows(inv)

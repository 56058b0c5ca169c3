"""Exact linear algebra over Q(i).

Vectors are sparse dicts ``key -> GaussianRational``; keys are any hashable,
ordered by a caller-supplied sort key so that every result is deterministic.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .scalars import ONE, ZERO, GaussianRational, as_scalar

Vector = dict
SortKey = Callable[[Hashable], object]


def _identity(key):
    return key


def axpy(target: dict, coeff: GaussianRational, vec: Mapping) -> None:
    """target += coeff * vec, in place, dropping zeros."""
    if not coeff:
        return
    for k, v in vec.items():
        new = target.get(k, ZERO) + coeff * v
        if new:
            target[k] = new
        else:
            target.pop(k, None)


def scale(vec: Mapping, coeff) -> dict:
    coeff = as_scalar(coeff)
    if not coeff:
        return {}
    return {k: v * coeff for k, v in vec.items()}


def combine(pairs: Iterable[tuple[object, Mapping]]) -> dict:
    out: dict = {}
    for c, vec in pairs:
        axpy(out, as_scalar(c), vec)
    return out


class Subspace:
    """Span of sparse vectors kept in fully reduced row-echelon form.

    The pivot of a new row is its largest key under ``order``; every pivot
    column is zero in all other rows, so reduction is a single pass.
    """

    def __init__(self, vectors: Iterable[Mapping] = (), order: SortKey = _identity):
        self.order = order
        self.rows: dict = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping) -> dict:
        out = dict(vec)
        for p in [k for k in out if k in self.rows]:
            c = out.get(p)
            if c:
                axpy(out, -c, self.rows[p])
        return out

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        pivot = max(r, key=self.order)
        inv = ONE / r[pivot]
        r = {k: v * inv for k, v in r.items()}
        for row in self.rows.values():
            c = row.get(pivot)
            if c:
                axpy(row, -c, r)
        self.rows[pivot] = r
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def coords(self, vec: Mapping) -> dict:
        """Coefficients of ``vec`` on the rows, keyed by pivot; raises if outside."""
        coeffs = {p: vec[p] for p in vec if p in self.rows}
        residual = dict(vec)
        for p, c in coeffs.items():
            axpy(residual, -c, self.rows[p])
        if residual:
            raise ValueError("vector is not in the subspace")
        return coeffs

    def pivots(self) -> list:
        return sorted(self.rows, key=self.order)

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in self.pivots()]


def kernel_of_columns(columns: Sequence[Mapping], order: SortKey = _identity) -> list[dict]:
    """Basis of {c : sum_i c_i * columns[i] = 0}; kernel vectors are dicts index -> coeff."""
    rows: dict = {}  # pivot -> (main, tag)
    kernel: list[dict] = []
    for idx, col in enumerate(columns):
        main = dict(col)
        tag = {idx: ONE}
        for p in [k for k in main if k in rows]:
            c = main.get(p)
            if c:
                rmain, rtag = rows[p]
                axpy(main, -c, rmain)
                axpy(tag, -c, rtag)
        if not main:
            kernel.append(tag)
            continue
        pivot = max(main, key=order)
        inv = ONE / main[pivot]
        main = {k: v * inv for k, v in main.items()}
        tag = {k: v * inv for k, v in tag.items()}
        for rmain, rtag in rows.values():
            c = rmain.get(pivot)
            if c:
                axpy(rmain, -c, main)
                axpy(rtag, -c, tag)
        rows[pivot] = (main, tag)
    return kernel


class CoordinateSystem:
    """Coordinates with respect to a fixed list of independent vectors."""

    _TAG = "__coordinate_tag__"

    def __init__(self, vectors: Sequence[Mapping], order: SortKey = _identity):
        self.size = len(vectors)
        tag = self._TAG
        self.space = Subspace(order=lambda k: (0, k[1]) if _is_tag(k) else (1, order(k)))
        for i, v in enumerate(vectors):
            tagged = dict(v)
            tagged[(tag, i)] = ONE
            self.space.add(tagged)
            if any(_is_tag(p) for p in self.space.rows):
                raise ValueError("vectors are linearly dependent")

    def __call__(self, vec: Mapping) -> list[GaussianRational]:
        r = self.space.reduce(vec)
        out = [ZERO] * self.size
        for k, v in r.items():
            if not _is_tag(k):
                raise ValueError("vector is not in the span")
            out[k[1]] = -v
        return out


def _is_tag(key) -> bool:
    return isinstance(key, tuple) and len(key) == 2 and key[0] == CoordinateSystem._TAG


# -- dense matrices -----------------------------------------------------------

Matrix = list  # list of rows, each a list of GaussianRational


def _clear_denominators(row: Sequence[GaussianRational]) -> list[GaussianRational]:
    from math import lcm

    den = 1
    for v in row:
        den = lcm(den, v.denominator())
    return [v * den for v in row]


def rank_fraction_free(matrix: Sequence[Sequence]) -> int:
    """Rank by Bareiss elimination; after clearing row denominators every
    intermediate entry is a Gaussian integer and each division is exact."""
    m = [_clear_denominators([as_scalar(v) for v in row]) for row in matrix]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = ONE
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            a = m[r][col]
            row_r, row_p = m[r], m[rank]
            for c in range(col, ncols):
                val = (p * row_r[c] - a * row_p[c]) / prev
                if not val.is_integral():
                    raise ArithmeticError("fraction-free elimination produced a non-integer")
                row_r[c] = val
        prev = p
        rank += 1
    return rank


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[GaussianRational]], list[int]]:
    m = [[as_scalar(v) for v in row] for row in matrix]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    return m, pivots


def nullspace(matrix: Sequence[Sequence]) -> list[list[GaussianRational]]:
    """Right kernel basis of ``matrix``."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    reduced, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row_idx, p in enumerate(pivots):
            v[p] = -reduced[row_idx][f]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[GaussianRational]:
    """Solve a square nonsingular system exactly."""
    n = len(matrix)
    aug = [list(row) + [as_scalar(b)] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise ValueError("singular system")
    return [reduced[i][n] for i in range(n)]


def transpose(matrix: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*matrix)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[GaussianRational]]:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def is_zero_matrix(a: Sequence[Sequence]) -> bool:
    return all(not v for row in a for v in row)

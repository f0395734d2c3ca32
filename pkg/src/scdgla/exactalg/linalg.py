"""Exact linear algebra over Q.

Dense matrices are small immutable row tuples; the workhorse is a sparse
row-echelon eliminator (rows are dicts column -> Fraction) which also backs
the large structured systems built over polynomial forms.
"""

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .rational import Q


class CompositionNonzero(ValueError):
    """Raised when two maps expected to compose to zero do not."""


@dataclass(frozen=True)
class Matrix:
    nrows: int
    ncols: int
    rows: tuple

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = tuple(tuple(Q(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(len(rows), ncols, rows)

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(nrows, ncols, tuple((Fraction(0),) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n):
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch %dx%d @ %dx%d"
                                 % (self.nrows, self.ncols, other.nrows, other.ncols))
            cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
            return Matrix(self.nrows, other.ncols, tuple(
                tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols)
                for r in self.rows))
        v = list(other)
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows]

    def transpose(self):
        if self.nrows == 0:
            return Matrix.zero(self.ncols, 0)
        return Matrix(self.ncols, self.nrows, tuple(zip(*self.rows)))

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def sparse_rows(self):
        return [{j: x for j, x in enumerate(r) if x} for r in self.rows]

    def tolist(self):
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class LinSystem:
    matrix: Matrix
    rhs: tuple

    def __post_init__(self):
        if self.matrix.nrows != len(self.rhs):
            raise ValueError("row count of matrix != length of rhs")


class Eliminator:
    """Incremental sparse row echelon form with a right-hand side.

    Pivot rows are normalised (pivot entry 1) and only contain columns at or
    after their pivot, so reduction of a new row never cycles.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.pivots = {}        # col -> (row dict, rhs)
        self.inconsistent = False

    def reduce(self, row, rhs=Fraction(0)):
        row = dict(row)
        rhs = Fraction(rhs)
        pending = sorted(c for c in row if c in self.pivots)
        # columns are only ever introduced to the right of the current one
        heapq.heapify(pending)
        seen = set(pending)
        while pending:
            c = heapq.heappop(pending)
            coef = row.get(c)
            if not coef:
                continue
            prow, prhs = self.pivots[c]
            for j, v in prow.items():
                nv = row.get(j, 0) - coef * v
                if nv:
                    row[j] = nv
                    if j in self.pivots and j not in seen:
                        seen.add(j)
                        heapq.heappush(pending, j)
                else:
                    row.pop(j, None)
            rhs -= coef * prhs
        return row, rhs

    def add_row(self, row, rhs=Fraction(0)):
        """Insert an equation; returns True if it was independent."""
        row, rhs = self.reduce({j: Q(v) for j, v in row.items() if v}, rhs)
        if not row:
            if rhs:
                self.inconsistent = True
            return False
        p = min(row)
        inv = 1 / row[p]
        self.pivots[p] = ({j: v * inv for j, v in row.items()}, rhs * inv)
        return True

    @property
    def rank(self):
        return len(self.pivots)

    def free_columns(self):
        return [j for j in range(self.ncols) if j not in self.pivots]

    def back_substitute(self, free_values=None, homogeneous=False):
        x = dict(free_values or {})
        for p in sorted(self.pivots, reverse=True):
            prow, prhs = self.pivots[p]
            s = Fraction(0) if homogeneous else prhs
            for j, v in prow.items():
                if j != p:
                    xj = x.get(j)
                    if xj:
                        s -= v * xj
            if s:
                x[p] = s
            else:
                x.pop(p, None)
        return x

    def particular(self):
        if self.inconsistent:
            return None
        return self.back_substitute()

    def kernel_basis(self):
        basis = []
        for f in self.free_columns():
            basis.append(self.back_substitute({f: Fraction(1)}, homogeneous=True))
        return basis


def solve_sparse(rows, rhs, ncols):
    """Solve sum_j rows[i][j] x_j = rhs[i]; returns a dict solution or None."""
    el = Eliminator(ncols)
    for r, b in zip(rows, rhs):
        el.add_row(r, b)
        if el.inconsistent:
            return None
    return el.particular()


def _dense(vec, n):
    return [vec.get(j, Fraction(0)) for j in range(n)]


def solve_linear(system):
    """Return (particular, kernel_basis) for A x = b, or None if inconsistent.

    The particular solution sets every free variable to zero.
    """
    A, b = system.matrix, [Q(x) for x in system.rhs]
    el = Eliminator(A.ncols)
    for r, bi in zip(A.sparse_rows(), b):
        el.add_row(r, bi)
    if el.inconsistent:
        return None
    part = _dense(el.particular(), A.ncols)
    kern = [_dense(k, A.ncols) for k in el.kernel_basis()]
    if A @ part != b:
        raise AssertionError("back-substitution check failed")
    return part, kern


def rank(M):
    el = Eliminator(M.ncols)
    for r in M.sparse_rows():
        el.add_row(r)
    return el.rank


def kernel(M):
    el = Eliminator(M.ncols)
    for r in M.sparse_rows():
        el.add_row(r)
    return [_dense(k, M.ncols) for k in el.kernel_basis()]


def left_kernel(M):
    """Basis of functionals f with f . M = 0 (the cokernel's dual)."""
    return kernel(M.transpose())


def cohomology_dims(d_in, d_out):
    """(dim ker d_out, rank d_in, dim H) for V --d_in--> W --d_out--> U."""
    if d_in.nrows != d_out.ncols:
        raise ValueError("d_in target dimension %d != d_out source dimension %d"
                         % (d_in.nrows, d_out.ncols))
    if d_in.ncols and d_out.nrows and not (d_out @ d_in).is_zero():
        raise CompositionNonzero("d_out o d_in != 0")
    dim_ker = d_out.ncols - rank(d_out)
    dim_im = rank(d_in)
    return dim_ker, dim_im, dim_ker - dim_im

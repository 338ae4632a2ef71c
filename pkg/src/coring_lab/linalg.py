"""Dense exact linear algebra: reduced echelon form, solving, kernels,
and quotient presentations.

Conventions used throughout the package:

* vectors are 1-D arrays understood as columns,
* a matrix acts on the left, ``y = a @ x``, so composition is ``g @ f``,
* pivoting scans for the first nonzero entry (exact arithmetic needs no
  magnitude heuristics and first-hit pivots keep results deterministic).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .fields import Field


class Mat:
    """A matrix tagged with its field; thin wrapper over an ndarray."""

    __slots__ = ("field", "data")

    def __init__(self, field: Field, data):
        self.field = field
        arr = field.asarray(data)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"matrix must be 2-D, got shape {arr.shape}")
        self.data = arr

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __matmul__(self, other: "Mat") -> "Mat":
        self.field.check_same(other.field)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.data.shape} by {other.data.shape}")
        return Mat(self.field, self.field.matmul(self.data, other.data))

    def __add__(self, other: "Mat") -> "Mat":
        self.field.check_same(other.field)
        if self.data.shape != other.data.shape:
            raise DimensionMismatchError("shape mismatch in addition")
        return Mat(self.field, self.data + other.data)

    def __sub__(self, other: "Mat") -> "Mat":
        self.field.check_same(other.field)
        if self.data.shape != other.data.shape:
            raise DimensionMismatchError("shape mismatch in subtraction")
        return Mat(self.field, self.data - other.data)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and Field.equal(self.data, other.data)
        )

    def __repr__(self):
        return f"Mat({self.field}, {self.data.tolist()})"

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.data.T.copy())

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls(field, field.eye(n))


def rref(field: Field, a) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Reduced row echelon form.

    Returns the reduced array and the list of (row, col) pivot positions.
    """
    a = field.asarray(a).copy()
    if field.characteristic == 0 and a.size > 512:
        return _rref_rational_integer(field, a)
    nrows, ncols = a.shape
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        colvals = a[row:, col]
        nz = np.flatnonzero(colvals)
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = field.inv_scalar(a[row, col])
        if inv != 1:
            a[row] = field.asarray(a[row] * inv)
        others = np.flatnonzero(a[:, col])
        others = others[others != row]
        if others.size:
            a[others] = field.asarray(a[others] - np.outer(a[others, col], a[row]))
        pivots.append((row, col))
        row += 1
    return a, pivots


def _rref_rational_integer(field: Field, a) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Exact RREF over the rationals through integer cross-multiplication.

    Rows are scaled to integers, elimination multiplies rows through instead
    of dividing (arbitrary-precision ints, no overflow), updated rows are
    reduced by their gcd, and pivots are normalized to 1 only at the end.
    The reduced echelon form is unique, so the result matches the generic
    path entry for entry while avoiding per-operation Fraction overhead.
    """
    from fractions import Fraction
    from math import gcd

    nrows, ncols = a.shape
    work = np.empty((nrows, ncols), dtype=object)
    for i in range(nrows):
        lcm = 1
        for v in a[i]:
            d = v.denominator if isinstance(v, Fraction) else 1
            if lcm % d:
                lcm = lcm * d // gcd(lcm, d)
        for j, v in enumerate(a[i]):
            work[i, j] = (v.numerator * (lcm // v.denominator)
                          if isinstance(v, Fraction) else int(v) * lcm)
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(work[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            work[[row, piv]] = work[[piv, row]]
        pivot_row = work[row]
        pval = pivot_row[col]
        others = np.flatnonzero(work[:, col])
        others = others[others != row]
        if others.size:
            factors = work[others, col]
            work[others] = work[others] * pval - np.outer(factors, pivot_row)
            for r in others:
                g = 0
                for v in work[r]:
                    g = gcd(g, v if v >= 0 else -v)
                    if g == 1:
                        break
                if g > 1:
                    work[r] = work[r] // g
        pivots.append((row, col))
        row += 1
    for r, c in pivots:
        pval = work[r, c]
        if pval != 1:
            row_vals = work[r]
            for j in range(ncols):
                v = row_vals[j]
                if v:
                    row_vals[j] = Fraction(v, pval)
    return field.asarray(work), pivots


def rank(field: Field, a) -> int:
    return len(rref(field, a)[1])


def solve_linear(a: Mat, b: Mat):
    """Solve ``a @ x = b`` exactly; None when inconsistent.

    Free variables are set to zero, so the returned solution is the
    reduced echelon particular solution and is deterministic.
    """
    a.field.check_same(b.field)
    if a.rows != b.rows:
        raise DimensionMismatchError(f"a has {a.rows} rows but b has {b.rows}")
    x = _solve(a.field, a.data, b.data)
    return None if x is None else Mat(a.field, x)


def _solve(field: Field, a, b):
    """Array-level solve; b may be a vector or a matrix of columns."""
    b_arr = field.asarray(b)
    vector_rhs = b_arr.ndim == 1
    if vector_rhs:
        b_arr = b_arr[:, None]
    ncols = a.shape[1]
    aug = np.concatenate([field.asarray(a), b_arr], axis=1)
    red, pivots = rref(field, aug)
    for r, c in pivots:
        if c >= ncols:
            return None
    x = field.zeros((ncols, b_arr.shape[1]))
    for r, c in pivots:
        x[c] = red[r, ncols:]
    return x[:, 0] if vector_rhs else x


def kernel_basis(a: Mat) -> list[np.ndarray]:
    """Basis vectors of the right null space, deterministic from RREF."""
    return _kernel(a.field, a.data)


def _kernel(field: Field, a) -> list[np.ndarray]:
    a = field.asarray(a)
    red, pivots = rref(field, a)
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(a.shape[1]) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        v = field.zeros(a.shape[1])
        v[f] = 1
        for r, c in pivots:
            v[c] = -red[r, f]
        basis.append(field.asarray(v))
    return basis


@dataclass
class QuotientPresentation:
    """Presentation of ambient / span(relations) with a chosen section.

    projection @ section is the identity on the quotient and the kernel
    of projection is exactly the row span of relation_basis.
    """

    field: Field
    ambient_dim: int
    relation_basis: np.ndarray  # reduced echelon rows spanning the killed subspace
    quotient_dim: int
    projection: np.ndarray  # quotient_dim x ambient_dim
    section: np.ndarray  # ambient_dim x quotient_dim

    @classmethod
    def trivial(cls, field: Field, ambient_dim: int) -> "QuotientPresentation":
        eye = field.eye(ambient_dim)
        return cls(
            field=field,
            ambient_dim=ambient_dim,
            relation_basis=field.zeros((0, ambient_dim)),
            quotient_dim=ambient_dim,
            projection=eye,
            section=eye.copy(),
        )

    @classmethod
    def from_relations(cls, field: Field, ambient_dim: int, relations) -> "QuotientPresentation":
        """Quotient by the row span of ``relations``."""
        relations = field.asarray(relations)
        if relations.size == 0:
            return cls.trivial(field, ambient_dim)
        red, pivots = rref(field, relations)
        nrel = len(pivots)
        rel = red[:nrel]
        pivot_cols = [c for _, c in pivots]
        free_cols = [c for c in range(ambient_dim) if c not in pivot_cols]
        q = len(free_cols)
        proj = field.zeros((q, ambient_dim))
        sect = field.zeros((ambient_dim, q))
        for t, j in enumerate(free_cols):
            proj[t, j] = 1
            for r, c in enumerate(pivot_cols):
                proj[t, c] = -rel[r, j]
            sect[j, t] = 1
        return cls(
            field=field,
            ambient_dim=ambient_dim,
            relation_basis=rel,
            quotient_dim=q,
            projection=field.asarray(proj),
            section=sect,
        )

    @property
    def is_trivial(self) -> bool:
        return self.relation_basis.shape[0] == 0

    def reduces_to_zero(self, vectors) -> bool:
        """True when every column of ``vectors`` lies in the relation span."""
        cols = self.field.asarray(vectors)
        return bool(np.all(self.field.matmul(self.projection, cols) == 0))


def cokernel(a: Mat) -> QuotientPresentation:
    """Present target / image(a); projection @ a = 0 by construction."""
    return QuotientPresentation.from_relations(a.field, a.rows, a.data.T)

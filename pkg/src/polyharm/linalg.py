"""Dense exact linear algebra over the Gaussian rationals.

Reduction is plain Gauss-Jordan with the first nonzero entry as pivot;
there is no numerical pivot selection because the arithmetic is exact.
Kernel basis vectors are normalized so that their first nonzero entry is 1,
which makes hand comparisons "equal up to one declared scale factor".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import UsageError
from .rationals import GaussianRational, ONE, ZERO, ScalarLike

Vector = tuple[GaussianRational, ...]


def _coerce_entry(v: ScalarLike) -> GaussianRational:
    return GaussianRational.coerce(v)


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[GaussianRational, ...]  # row-major

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise UsageError("entry count does not match matrix shape")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[ScalarLike]]) -> "ExactMatrix":
        if not rows:
            raise UsageError("matrix needs at least one row")
        ncols = len(rows[0])
        flat = []
        for row in rows:
            if len(row) != ncols:
                raise UsageError("ragged rows")
            flat.extend(_coerce_entry(v) for v in row)
        return ExactMatrix(len(rows), ncols, tuple(flat))

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    def at(self, i: int, j: int) -> GaussianRational:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_lists(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def matvec(self, v: Sequence[ScalarLike]) -> Vector:
        if len(v) != self.cols:
            raise UsageError("vector length does not match column count")
        vv = [_coerce_entry(x) for x in v]
        out = []
        for i in range(self.rows):
            acc = ZERO
            for j in range(self.cols):
                acc = acc + self.at(i, j) * vv[j]
            out.append(acc)
        return tuple(out)

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise UsageError("inner dimensions do not match")
        rows = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    acc = acc + self.at(i, k) * other.at(k, j)
                row.append(acc)
            rows.append(row)
        return ExactMatrix.from_rows(rows)


def rref(m: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Reduced row echelon form and the ascending list of pivot columns."""
    work = [list(m.row(i)) for i in range(m.rows)]
    pivots: list[int] = []
    pivot_row = 0
    for col in range(m.cols):
        src = next(
            (r for r in range(pivot_row, m.rows) if not work[r][col].is_zero()),
            None,
        )
        if src is None:
            continue
        work[pivot_row], work[src] = work[src], work[pivot_row]
        inv = ONE / work[pivot_row][col]
        work[pivot_row] = [v * inv for v in work[pivot_row]]
        for r in range(m.rows):
            if r == pivot_row:
                continue
            factor = work[r][col]
            if factor.is_zero():
                continue
            work[r] = [a - factor * b for a, b in zip(work[r], work[pivot_row])]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == m.rows:
            break
    return ExactMatrix.from_rows(work), tuple(pivots)


def rank(m: ExactMatrix) -> int:
    return len(rref(m)[1])


def _normalize_leading(v: list[GaussianRational]) -> Vector:
    lead = next((x for x in v if not x.is_zero()), None)
    if lead is None:
        return tuple(v)
    inv = ONE / lead
    return tuple(x * inv for x in v)


def nullspace(m: ExactMatrix) -> list[Vector]:
    """Exact kernel basis; empty list for a trivial kernel.

    One basis vector per free column, each normalized to leading entry 1.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        v = [ZERO] * m.cols
        v[free] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -reduced.at(r, free)
        basis.append(_normalize_leading(v))
    return basis


def solve(m: ExactMatrix, rhs: Sequence[ScalarLike]) -> Vector | None:
    """One exact solution of m x = rhs, or None when inconsistent."""
    if len(rhs) != m.rows:
        raise UsageError("right-hand side length does not match row count")
    augmented = ExactMatrix.from_rows(
        [list(m.row(i)) + [rhs[i]] for i in range(m.rows)]
    )
    reduced, pivots = rref(augmented)
    if m.cols in pivots:  # pivot in the augmented column
        return None
    x = [ZERO] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = reduced.at(r, m.cols)
    return tuple(x)


def primitive_real_scale(values: Iterable[GaussianRational]) -> Fraction:
    """Positive rational s such that s*values has coprime integer entries.

    Only defined for vectors of real rationals; used to print kernel vectors
    and ansatz matrix rows the way tables of integer coefficients are
    usually typeset.
    """
    fracs = []
    for v in values:
        if v.im != 0:
            raise UsageError("primitive scaling needs real rational entries")
        fracs.append(v.re)
    nonzero = [f for f in fracs if f != 0]
    if not nonzero:
        return Fraction(1)
    denom_lcm = 1
    for f in nonzero:
        denom_lcm = denom_lcm * f.denominator // math.gcd(denom_lcm, f.denominator)
    nums = [abs(int(f * denom_lcm)) for f in nonzero]
    g = 0
    for n in nums:
        g = math.gcd(g, n)
    return Fraction(denom_lcm, g)


def primitive_rows(m: ExactMatrix) -> list[list[GaussianRational]]:
    """Rows rescaled to coprime integers with positive first nonzero entry."""
    out = []
    for i in range(m.rows):
        row = list(m.row(i))
        try:
            s = primitive_real_scale(row)
            lead = next((x for x in row if not x.is_zero()), None)
            if lead is not None and lead.re * s < 0:
                s = -s
            out.append([x * s for x in row])
        except UsageError:
            out.append(list(_normalize_leading(row)))
    return out

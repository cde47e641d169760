"""Exact linear algebra over fields whose elements support ``+ - * /`` and
comparison with ``0`` (Fraction, RatFunc).

Everything here is plain Gaussian elimination; no floating point is used.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polys import Poly


def _is_zero(x) -> bool:
    return x == 0


def rref(matrix: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if not _is_zero(rows[i][c])), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None, one=Fraction(1)) -> list[list]:
    """Basis of ``{v : matrix @ v = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        return [[one if i == j else one * 0 for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(matrix)
    zero = one * 0
    basis = []
    pivset = set(pivots)
    for free in range(ncols):
        if free in pivset:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(red, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def left_nullspace(matrix: Sequence[Sequence], one=Fraction(1)) -> list[list]:
    """Basis of ``{y : y @ matrix = 0}``."""
    if not matrix:
        return []
    transposed = [list(col) for col in zip(*matrix)]
    if not transposed:
        return nullspace([], len(matrix), one)
    return nullspace(transposed, len(matrix), one)


def matvec(matrix, v):
    return [sum((a * b for a, b in zip(row, v)), v[0] * 0) for row in matrix]


def bareiss_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix by fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    var = matrix[0][0].var
    m = [list(r) for r in matrix]
    sign = 1
    prev = Poly([1], var)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return Poly([], var)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


class IncrementalEchelon:
    """Row-by-row echelon basis over Q that remembers how each row was reduced.

    Rows are sparse ``{column: Fraction}`` dicts. :meth:`add` returns
    ``("pivot", column)`` when a row is independent of its predecessors and
    ``("relation", {row_index: coeff})`` when it is not; in that case the
    returned combination of the original rows vanishes exactly.
    """

    def __init__(self):
        self._basis: dict = {}  # pivot column -> (row dict normalized at pivot, combination)
        self._order: list = []
        self.count = 0

    def add(self, row: dict):
        idx = self.count
        self.count += 1
        vec = {c: v for c, v in row.items() if v != 0}
        combo = {idx: Fraction(1)}
        for pc in self._order:
            if pc not in vec:
                continue
            f = vec[pc]
            brow, bcombo = self._basis[pc]
            for c, v in brow.items():
                nv = vec.get(c, 0) - f * v
                if nv == 0:
                    vec.pop(c, None)
                else:
                    vec[c] = nv
            for r, v in bcombo.items():
                nv = combo.get(r, 0) - f * v
                if nv == 0:
                    combo.pop(r, None)
                else:
                    combo[r] = nv
        if not vec:
            return "relation", combo
        pc = min(vec)
        piv = vec[pc]
        self._basis[pc] = ({c: v / piv for c, v in vec.items()}, {r: v / piv for r, v in combo.items()})
        self._order.append(pc)
        return "pivot", pc

    @property
    def rank(self) -> int:
        return len(self._order)

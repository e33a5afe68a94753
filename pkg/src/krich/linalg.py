"""Small exact linear-algebra kit over the rationals.

Vectors are sparse ``dict`` objects mapping a hashable column label to a
non-zero :class:`~fractions.Fraction`. Dense matrices are lists of lists.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

Vec = dict

__all__ = ["Echelon", "rank", "det", "solve", "nullspace", "axpy"]


def axpy(y: Vec, c: Fraction, x: Vec) -> None:
    """In place ``y += c * x`` dropping cancelled entries."""
    if not c:
        return
    for k, v in x.items():
        s = y.get(k, 0) + c * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class Echelon:
    """Incremental reduced row echelon form.

    ``pivot_key`` ranks columns; the pivot of a new row is its entry with
    the smallest key among columns accepted by ``allowed`` (all columns by
    default). Rows without an allowed entry are kept as *residual* rows so
    that callers can inspect what is left.
    """

    def __init__(self, pivot_key: Callable[[Hashable], object] | None = None,
                 allowed: Callable[[Hashable], bool] | None = None):
        self.pivot_key = pivot_key or (lambda c: c)
        self.allowed = allowed or (lambda c: True)
        self.rows: dict[Hashable, Vec] = {}
        self.residual = Echelon(self.pivot_key) if allowed is not None else None

    def reduce(self, v: Vec) -> Vec:
        """Return ``v`` minus its projection on the span of pivot rows."""
        v = dict(v)
        for col in [c for c in v if c in self.rows]:
            c = v.get(col)
            if c:
                axpy(v, -c, self.rows[col])
        return v

    def add(self, v: Vec) -> Hashable | None:
        """Insert a row; return its pivot column or ``None`` if dependent."""
        v = {k: x for k, x in self.reduce(v).items() if x}
        cand = [c for c in v if self.allowed(c)]
        if not cand:
            if v and self.residual is not None:
                self.residual.add(v)
            return None
        piv = min(cand, key=self.pivot_key)
        inv = 1 / v[piv]
        v = {k: x * inv for k, x in v.items()}
        for row in self.rows.values():
            c = row.get(piv)
            if c:
                axpy(row, -c, v)
        self.rows[piv] = v
        return piv

    def __len__(self) -> int:
        return len(self.rows)

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)


def rank(rows: Iterable[Vec]) -> int:
    e = Echelon(pivot_key=repr)
    for r in rows:
        e.add(r)
    return len(e)


def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [[Fraction(x) for x in row] for row in m]
    if any(len(row) != n for row in a):
        raise ValueError("det needs a square matrix")
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col]
            if f:
                f /= p
                row_r, row_c = a[r], a[col]
                for k in range(col, n):
                    if row_c[k]:
                        row_r[k] -= f * row_c[k]
    return sign * result


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """One solution of ``a x = b`` or ``None`` when inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in a[r]] + [Fraction(b[r])] for r in range(rows)]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols]:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return x


def nullspace(a: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel of ``a``."""
    rows = len(a)
    cols = ncols if ncols is not None else (len(a[0]) if rows else 0)
    m = [[Fraction(x) for x in row] for row in a]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis

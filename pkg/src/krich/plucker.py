"""Plücker coordinates of cell points and the transition matrices between cells.

For an index ``S = (S_1, ..., S_n)`` with ``S_i ⊇ [N, ∞)`` the coordinate
``s_{S,N}(W)`` is the determinant of the composite

    span{t_i^e : e ∈ S_i, e < N}  ->  H / (W + H_{>=N})

written in the trivialisation of the cell.  At level ``N = 0`` the target
is ``H_{>=-a} / H_{>=0}``; at level ``N >= 1`` it is ``H'_{>=-a} / H_{>=N}``
where ``H'`` omits the constant term of a reference branch ``r`` (the
constant ``1`` lies in ``W``).

Rows and columns are ordered by the key ``(0, branch, e)`` for ``e <= 0``
followed by ``(1, e, branch)`` for ``e >= 1``: at levels 0 and 1 this is
plain ``(branch, exponent)`` order, and raising the level appends the new
unit rows and columns at the end, so that ``s_{S,N} = s_{S,N+1}`` holds
with no sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PrecisionError, UsageError
from .krichever import WPoint
from .linalg import det

__all__ = [
    "PluckerIndex",
    "order_key",
    "cell_index",
    "alpha_index",
    "plucker_coordinate",
    "plucker_matrix",
    "alpha_plucker_sign",
    "transition_matrix",
    "transition_det",
    "unit_removal_sign",
    "level_shift_sign",
    "level_one_transition",
]

Col = tuple


def order_key(c: Col) -> tuple:
    b, e = c
    return (0, b, e) if e <= 0 else (1, e, b)


@dataclass(frozen=True)
class PluckerIndex:
    """Finite description of ``S``: the elements below ``level`` on each branch."""

    below: tuple[frozenset[int], ...]
    level: int

    def __post_init__(self) -> None:
        if self.level < 0:
            raise UsageError("level must be >= 0")
        for s in self.below:
            if any(e >= self.level for e in s):
                raise UsageError("elements at or above the level are implicit")

    @property
    def n(self) -> int:
        return len(self.below)

    def elements(self) -> list[Col]:
        return sorted(((b, e) for b, s in enumerate(self.below, start=1) for e in s), key=order_key)

    def size(self) -> int:
        return sum(len(s) for s in self.below)

    def raise_level(self, level: int) -> "PluckerIndex":
        if level < self.level:
            raise UsageError("cannot lower the level")
        if self.level == 0 and level > 0:
            raise UsageError("level 0 and level >= 1 use different trivialisations; use level_shift_sign")
        ext = tuple(frozenset(s | set(range(self.level, level))) for s in self.below)
        return PluckerIndex(ext, level)

    @classmethod
    def from_sets(cls, sets: Sequence[Iterable[int]], level: int) -> "PluckerIndex":
        return cls(tuple(frozenset(int(e) for e in s if e < level) for s in sets), level)


def cell_index(a: Sequence[int], level: int = 0, ref: int | None = None) -> PluckerIndex:
    """Index of the cell ``SG^a`` (at level ``>= 1`` with ``t_ref^0`` removed)."""
    sets = [set(range(-x, level)) for x in a]
    if level >= 1:
        r = _default_ref(a) if ref is None else ref
        sets[r - 1].discard(0)
    return PluckerIndex.from_sets(sets, level)


def alpha_index(a: Sequence[int], i: int, j: int, p: int, q: int, level: int | None = None) -> PluckerIndex:
    """Index ``S`` whose coordinate recovers ``alpha_ij[p, q]`` (reference branch ``i``)."""
    a = tuple(a)
    if not (p < -a[i - 1]) or q < -a[j - 1]:
        raise UsageError("need p < -a_i and q >= -a_j")
    if j == i and q == 0:
        raise UsageError("alpha_ii[p, 0] is fixed by the normalisation")
    if level is None:
        level = 0 if q < 0 else q + 1
    if q >= level:
        raise UsageError(f"level {level} too low for q = {q}")
    sets = [set(range(-x, level)) for x in a]
    if level >= 1:
        sets[i - 1].discard(0)
    sets[i - 1].add(p)
    sets[j - 1].discard(q)
    return PluckerIndex.from_sets(sets, level)


def _default_ref(a: Sequence[int]) -> int:
    return next((k for k, x in enumerate(a, start=1) if x > 0), 1)


def _rows(a: Sequence[int], level: int, ref: int) -> list[Col]:
    rows = [(k, e) for k in range(1, len(a) + 1) for e in range(-a[k - 1], level)]
    if level >= 1:
        rows.remove((ref, 0))
    return sorted(rows, key=order_key)


def _column(w: WPoint, c: Col, rows: Sequence[Col], level: int, ref: int) -> dict[Col, Fraction]:
    k, e = c
    rowset = set(rows)
    if e < -w.a[k - 1]:
        if e < -w.radius:
            raise PrecisionError(f"t_{k}^{e} lies outside the window")
        v = w.f(k, e)
        if level >= 1:
            shift = v[ref].coefficient(0)
        else:
            shift = Fraction(0)
        out = {}
        for (b, q) in rows:
            s = v[b]
            if q >= s.hi:
                raise PrecisionError(f"coefficient t_{b}^{q} of f_{k}[{e}] not certified on the window")
            val = s.coefficient(q) - (shift if q == 0 else 0)
            if val:
                out[(b, q)] = -val
        return out
    if level >= 1 and c == (ref, 0):
        return {(b, 0): Fraction(-1) for b in range(1, w.n + 1) if b != ref and (b, 0) in rowset}
    if c not in rowset:
        raise UsageError(f"t_{k}^{e} is not in the target")  # pragma: no cover - guarded by sizes
    return {c: Fraction(1)}


def plucker_matrix(w: WPoint, S: PluckerIndex, ref: int | None = None) -> tuple[list[Col], list[Col], list[list[Fraction]]]:
    if S.n != w.n:
        raise UsageError("index and point have different numbers of branches")
    r = _default_ref(w.a) if ref is None else ref
    rows = _rows(w.a, S.level, r)
    cols = S.elements()
    if len(cols) != len(rows):
        raise UsageError(f"index has {len(cols)} elements below level {S.level}; the target has dimension {len(rows)}")
    for (b, e) in cols:
        if e < -w.radius:
            raise PrecisionError(f"index element t_{b}^{e} below the window")
    colvecs = [_column(w, c, rows, S.level, r) for c in cols]
    mat = [[cv.get(rw, Fraction(0)) for cv in colvecs] for rw in rows]
    return rows, cols, mat


def plucker_coordinate(w: WPoint, S: PluckerIndex, ref: int | None = None) -> Fraction:
    """``s_{S,N}(W)`` in the trivialisation of the cell of ``w``."""
    _, _, mat = plucker_matrix(w, S, ref)
    return det(mat) if mat else Fraction(1)


def alpha_plucker_sign(a: Sequence[int], i: int, j: int, p: int, q: int, level: int | None = None) -> int:
    """``eps`` with ``alpha_ij[p, q] = eps * s_S / s_a`` for ``S = alpha_index(...)``.

    The matrix is the identity except for the column of ``t_i^p`` (minus the
    reduction of ``t_i^p``) and the missing unit column of ``t_j^q``; expanding
    along the remaining unit columns gives ``-(-1)^(r+c)`` with ``r`` the
    position of ``t_j^q`` among the rows and ``c`` that of ``t_i^p`` among the
    columns.
    """
    S = alpha_index(a, i, j, p, q, level)
    rows = _rows(a, S.level, i)
    cols = S.elements()
    r = rows.index((j, q))
    c = cols.index((i, p))
    return -((-1) ** (r + c))


def transition_matrix(w: WPoint, a2: Sequence[int]) -> tuple[list[Col], list[Col], list[list[Fraction]]]:
    """Matrix of ``H_{>=-a'}/H_{>=0} -> H/(W + H_{>=0}) = H_{>=-a}/H_{>=0}``.

    ``t_i^e`` goes to itself when ``e >= -a_i`` and to minus the non-polar
    part of ``f_i[e]`` otherwise, both modulo ``H_{>=0}``.
    """
    a = w.a
    a2 = tuple(int(x) for x in a2)
    if len(a2) != w.n or sum(a2) != sum(a) or min(a2) < 0:
        raise UsageError("a' must have the same length and sum as a")
    rows = [(k, q) for k in range(1, w.n + 1) for q in range(-a[k - 1], 0)]
    cols = [(i, e) for i in range(1, w.n + 1) for e in range(-a2[i - 1], 0)]
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    ridx = {rw: n for n, rw in enumerate(rows)}
    for cn, (i, e) in enumerate(cols):
        if e >= -a[i - 1]:
            mat[ridx[(i, e)]][cn] = Fraction(1)
        else:
            f = w.f(i, e)
            for (k, q) in rows:
                mat[ridx[(k, q)]][cn] = -f[k].coefficient(q)
    return rows, cols, mat


def transition_det(w: WPoint, a2: Sequence[int]) -> tuple[list[list[Fraction]], Fraction]:
    _, _, mat = transition_matrix(w, a2)
    return mat, (det(mat) if mat else Fraction(1))


def unit_removal_sign(rows: Sequence[Col], cols: Sequence[Col], units: Iterable[Col]) -> int:
    """Sign ``eps`` with ``det(M) = eps * det(M')`` when each ``u`` in ``units``
    indexes a column of ``M`` equal to the unit vector at row ``u``, and ``M'``
    deletes those rows and columns."""
    rows, cols = list(rows), list(cols)
    sign = 1
    for u in units:
        r, c = rows.index(u), cols.index(u)
        sign *= (-1) ** (r + c)
        rows.pop(r)
        cols.pop(c)
    return sign


def level_shift_sign(a: Sequence[int], a2: Sequence[int], ref: int) -> int:
    """``eps'`` with ``s_{a'} (level 0) = eps' * s_{S'', 1}``, ``S'' = S_{a'} minus t_ref^0``."""
    rows1 = _rows(a, 1, ref)
    S1 = cell_index(a2, 1, ref)
    cols1 = S1.elements()
    units = [(k, 0) for k in range(1, len(a) + 1) if k != ref]
    return unit_removal_sign(rows1, cols1, units)


def level_one_transition(w: WPoint, a2: Sequence[int], ref: int | None = None) -> tuple[Fraction, int]:
    """``(s_{S'',1}, eps')`` for the level-one route to ``det A_{a,a'}``."""
    r = _default_ref(w.a) if ref is None else ref
    s1 = plucker_coordinate(w, cell_index(a2, 1, r), r)
    return s1, level_shift_sign(w.a, a2, r)


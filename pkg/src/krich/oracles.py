"""Independent reference computations used to cross-check the main routes.

Each function here deliberately avoids the machinery it checks: dense
elimination instead of Groebner bases, Carathéodory bases instead of the
simplex, the truncated span instead of cell coordinates.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .algebra import Monomial, Polynomial
from .krichever import WSpace

__all__ = [
    "dense_rank",
    "dense_solve_square",
    "homogeneous_codimensions",
    "caratheodory_member",
    "all_positive_member",
    "h0_by_span",
    "riemann_roch_expected",
    "hyperelliptic_gaps",
]


def dense_rank(mat: Sequence[Sequence[object]]) -> int:
    """Rank by fraction-exact Gaussian elimination on a dense copy."""
    m = [[Fraction(x) for x in row] for row in mat]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((k for k in range(r, rows) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for k in range(rows):
            if k != r and m[k][c] != 0:
                f = m[k][c] / m[r][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        r += 1
        if r == rows:
            break
    return r


def dense_solve_square(mat: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(mat, rhs)]
    for c in range(n):
        piv = next((k for k in range(c, n) if aug[k][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        for k in range(n):
            if k != c and aug[k][c] != 0:
                f = aug[k][c] / aug[c][c]
                aug[k] = [x - f * y for x, y in zip(aug[k], aug[c])]
    return [aug[k][n] / aug[k][k] for k in range(n)]


def _monomials(names: Sequence[str], d: int) -> list[Monomial]:
    out = []
    for combo in itertools.combinations_with_replacement(names, d):
        exps: dict[str, int] = {}
        for v in combo:
            exps[v] = exps.get(v, 0) + 1
        out.append(Monomial.from_dict(exps))
    return out


def homogeneous_codimensions(gens: Sequence[Polynomial], names: Sequence[str], upto: int) -> dict[int, int]:
    """``dim k[x]_d / I_d`` for a homogeneous ideal, by dense elimination in each degree."""
    out = {}
    degs = []
    for f in gens:
        ds = {m.total_degree() for m in f.terms}
        if len(ds) != 1:
            raise ValueError("oracle needs homogeneous generators")
        degs.append(ds.pop())
    for d in range(upto + 1):
        basis = _monomials(names, d)
        idx = {m: k for k, m in enumerate(basis)}
        rows = []
        for f, df in zip(gens, degs):
            if df > d:
                continue
            for m in _monomials(names, d - df):
                row = [Fraction(0)] * len(basis)
                for mm, c in f.terms.items():
                    row[idx[mm * m]] += c
                rows.append(row)
        out[d] = len(basis) - dense_rank(rows)
    return out


def caratheodory_member(gens: Sequence[Sequence[object]], chi: Sequence[object]) -> bool:
    """Membership via nonnegative solutions over linearly independent subsets."""
    chi = [Fraction(x) for x in chi]
    n = len(chi)
    if not any(chi):
        return True
    gens = [[Fraction(x) for x in g] for g in gens]
    for k in range(1, min(n, len(gens)) + 1):
        for sub in itertools.combinations(gens, k):
            if dense_rank(sub) != k:
                continue
            # least-squares-free test: pick k independent coordinates
            for rows in itertools.combinations(range(n), k):
                mat = [[g[r] for g in sub] for r in rows]
                if dense_rank(mat) != k:
                    continue
                x = dense_solve_square(mat, [chi[r] for r in rows])
                if x is None:
                    continue
                if all(sum(xi * g[r] for xi, g in zip(x, sub)) == chi[r] for r in range(n)) and min(x) >= 0:
                    return True
                break
    return False


def all_positive_member(gens: Sequence[Sequence[object]], chi: Sequence[object]) -> bool:
    """``t chi = sum_k lam_k v_k`` with every ``lam_k >= 1`` and ``t >= 1`` (pointed, full-dimensional cones)."""
    from .git import lp_feasible

    n = len(chi)
    chi = [Fraction(x) for x in chi]
    gens = [[Fraction(x) for x in g] for g in gens]
    if dense_rank(gens) < n:
        return False
    # mu_k = lam_k - 1 >= 0, s = t - 1 >= 0:  sum mu_k v_k - s chi = chi - sum v_k
    A = [[g[r] for g in gens] + [-chi[r]] for r in range(n)]
    b = [chi[r] - sum(g[r] for g in gens) for r in range(n)]
    return lp_feasible(A, b) is not None


def h0_by_span(w: WSpace, D: Sequence[int]) -> int:
    """``dim W ∩ H_{>= -D}`` directly from a spanning set, dense elimination."""
    rows = list(w.rows.values())
    cols = sorted({c for r in rows for c in r if c[1] < -D[c[0] - 1]})
    mat = [[r.get(c, Fraction(0)) for c in cols] for r in rows]
    return len(rows) - dense_rank(mat)


def riemann_roch_expected(genus: int, D: Sequence[int]) -> int:
    return 1 - genus + sum(D)


def hyperelliptic_gaps(g: int) -> tuple[int, ...]:
    return tuple(range(1, 2 * g, 2))

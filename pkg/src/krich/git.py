"""Weights of the torus action on cell coordinates, cones, and stability.

The torus ``G_m^n`` rescales the parameters, ``t_i -> lambda_i t_i``; the
coordinate ``alpha_ij[p, q]`` is semi-invariant of weight ``-p e_i + q e_j``.
Cone questions are decided exactly: membership by a rational simplex
(Bland's rule), interiority through an explicit list of facet normals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import UsageError
from .linalg import nullspace, rank

__all__ = [
    "WeightVector",
    "ConeSpec",
    "DivisorClass",
    "coordinate_weight",
    "omega",
    "cone_of_a",
    "cone_membership",
    "cone_decomposition",
    "facet_normals",
    "stability_test",
    "chi_pairing",
    "ell_weights",
    "pole_bound",
    "psi_class",
    "z_class",
    "z_chi_class",
    "psi_tilde",
    "nonvanishing_weights",
    "lp_feasible",
]

WeightVector = tuple  # of Fractions / ints


def _vec(v: Iterable[object]) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def _unit(n: int, i: int, c: object = 1) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) if k == i else Fraction(0) for k in range(1, n + 1))


def _check_a(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if not a or min(a) < 0:
        raise UsageError("weights must be non-negative")
    if sum(a) < 1:
        raise UsageError("need genus >= 1")
    return a


def coordinate_weight(i: int, j: int, p: int, q: int, a: Sequence[int] | None = None, n: int | None = None) -> tuple[int, ...]:
    """``-p e_i + q e_j``."""
    if a is not None:
        a = tuple(a)
        n = len(a)
        if not (1 <= i <= n and 1 <= j <= n):
            raise UsageError("branch index out of range")
        if p > -a[i - 1] - 1 or q < -a[j - 1]:
            raise UsageError(f"need p <= -a_i - 1 = {-a[i - 1] - 1} and q >= -a_j = {-a[j - 1]}")
    n = n or max(i, j)
    out = [0] * n
    out[i - 1] -= p
    out[j - 1] += q
    return tuple(out)


def omega(a: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    """``(a_i + 1) e_i - a_j e_j``."""
    out = [0] * len(a)
    out[i - 1] += a[i - 1] + 1
    out[j - 1] -= a[j - 1]
    return tuple(out)


@dataclass(frozen=True)
class ConeSpec:
    generators: tuple[tuple[Fraction, ...], ...]
    dim: int
    label: str = ""

    @classmethod
    def from_vectors(cls, vecs: Iterable[Iterable[object]], dim: int | None = None, label: str = "") -> "ConeSpec":
        gens = tuple(_vec(v) for v in vecs)
        if dim is None:
            if not gens:
                raise UsageError("empty cone needs an explicit dimension")
            dim = len(gens[0])
        if any(len(g) != dim for g in gens):
            raise UsageError("generators of different lengths")
        return cls(gens, dim, label)

    def as_ints(self) -> list[list[str]]:
        return [[str(x) for x in g] for g in self.generators]


def cone_of_a(a: Sequence[int]) -> ConeSpec:
    """Generators of ``C_a``: the reduced list that spans the cone of all ``omega_ij``."""
    a = _check_a(a)
    n = len(a)
    if n == 1:
        return ConeSpec.from_vectors([(1,)], 1, f"C{a}")
    pos = [i for i in range(1, n + 1) if a[i - 1] > 0]
    if len(pos) >= 2:
        gens = [omega(a, i, j) for i in range(1, n + 1) for j in pos if i != j]
    else:
        k = pos[0]
        gens = [_unit(n, k)] + [omega(a, i, k) for i in range(1, n + 1) if i != k]
    return ConeSpec.from_vectors(gens, n, f"C{a}")


def all_omegas(a: Sequence[int]) -> list[tuple[int, ...]]:
    a = _check_a(a)
    n = len(a)
    return [omega(a, i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


# ---------------------------------------------------------------------------
# exact linear programming


def lp_feasible(A: Sequence[Sequence[object]], b: Sequence[object]) -> list[Fraction] | None:
    """Some ``x >= 0`` with ``A x = b``, or ``None``.

    Phase one of the simplex method on a dense rational tableau, pivoting by
    Bland's rule (smallest index enters and leaves), so it terminates.
    """
    m = len(A)
    k = len(A[0]) if m else 0
    rows = []
    for r in range(m):
        row = [Fraction(x) for x in A[r]]
        rhs = Fraction(b[r])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        rows.append(row + [Fraction(int(s == r)) for s in range(m)] + [rhs])
    basis = [k + r for r in range(m)]
    ncol = k + m
    # objective: minimise the sum of artificials, i.e. reduced costs
    while True:
        # minus the reduced costs of the phase-one objective
        obj = [Fraction(0)] * (ncol + 1)
        for r in range(m):
            if basis[r] >= k:
                for c in range(ncol + 1):
                    obj[c] += rows[r][c]
        for c in range(k, ncol):
            obj[c] -= 1
        enter = next((c for c in range(ncol) if c not in basis and obj[c] > 0), None)
        if enter is None:
            break
        best = None
        for r in range(m):
            if rows[r][enter] > 0:
                ratio = rows[r][-1] / rows[r][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:  # pragma: no cover - bounded phase-one objective
            break
        r = best[1]
        piv = rows[r][enter]
        rows[r] = [x / piv for x in rows[r]]
        for s in range(m):
            if s != r and rows[s][enter]:
                f = rows[s][enter]
                rows[s] = [x - f * y for x, y in zip(rows[s], rows[r])]
        basis[r] = enter
    x = [Fraction(0)] * ncol
    for r in range(m):
        x[basis[r]] = rows[r][-1]
    if any(x[c] for c in range(k, ncol)):
        return None
    return x[:k]


def cone_decomposition(c: ConeSpec, chi: Sequence[object]) -> list[Fraction] | None:
    """Nonnegative coefficients expressing ``chi`` in the generators (one choice)."""
    chi = _vec(chi)
    if len(chi) != c.dim:
        raise UsageError("weight length differs from cone dimension")
    if not c.generators:
        return [] if not any(chi) else None
    A = [[g[r] for g in c.generators] for r in range(c.dim)]
    x = lp_feasible(A, chi)
    if x is not None:
        assert all(sum(xg * g[r] for xg, g in zip(x, c.generators)) == chi[r] for r in range(c.dim))
    return x


def facet_normals(c: ConeSpec) -> list[tuple[Fraction, ...]]:
    """Inner normals of the facets of a full-dimensional cone."""
    n = c.dim
    gens = list(c.generators)
    out: list[tuple[Fraction, ...]] = []
    if n == 1:
        sg = {1 if g[0] > 0 else -1 for g in gens if g[0]}
        return [(Fraction(s),) for s in sg] if len(sg) == 1 else []
    for sub in itertools.combinations(gens, n - 1):
        if rank({k: x for k, x in enumerate(v)} for v in sub) != n - 1:
            continue
        ker = nullspace([list(v) for v in sub], n)
        if len(ker) != 1:
            continue
        u = ker[0]
        dots = [sum(x * y for x, y in zip(u, g)) for g in gens]
        if all(d >= 0 for d in dots):
            cand = tuple(u)
        elif all(d <= 0 for d in dots):
            cand = tuple(-x for x in u)
        else:
            continue
        # normalise to a primitive direction for de-duplication
        lead = next(x for x in cand if x)
        cand = tuple(x / abs(lead) for x in cand)
        if cand not in out:
            out.append(cand)
    return out


def cone_membership(c: ConeSpec, chi: Sequence[object]) -> str:
    """``"outside"``, ``"boundary"`` or ``"interior"``."""
    chi = _vec(chi)
    if cone_decomposition(c, chi) is None:
        return "outside"
    n = c.dim
    if not c.generators or rank({k: x for k, x in enumerate(v)} for v in c.generators) < n:
        return "boundary"
    for u in facet_normals(c):
        if sum(x * y for x, y in zip(u, chi)) <= 0:
            return "boundary"
    return "interior"


def stability_test(weights: Sequence[Sequence[object]], chi: Sequence[object], n: int | None = None) -> str:
    """``"stable"`` / ``"semistable"`` / ``"unstable"`` by the cone of the given weights."""
    chi = _vec(chi)
    cone = ConeSpec.from_vectors(weights, n or len(chi))
    where = cone_membership(cone, chi)
    return {"interior": "stable", "boundary": "semistable", "outside": "unstable"}[where]


def chi_pairing(a: Sequence[int], a2: Sequence[int]) -> tuple[int, ...]:
    """``sum_i (C(a'_i + 1, 2) - C(a_i + 1, 2)) e_i``."""
    a, a2 = _check_a(a), _check_a(a2)
    if len(a) != len(a2) or sum(a) != sum(a2):
        raise UsageError("a and a' must have the same length and genus")
    return tuple(comb(y + 1, 2) - comb(x + 1, 2) for x, y in zip(a, a2))


@dataclass
class EllReport:
    weights: tuple[Fraction, ...]
    bound: Fraction
    values: dict[tuple[int, int], Fraction]

    @property
    def passed(self) -> bool:
        return all(v >= self.bound for v in self.values.values())


def ell_weights(a: Sequence[int]) -> EllReport:
    """``w_i = 1/a_i`` (or ``1 + 1/N`` when ``a_i = 0``), with ``l(omega_ij) >= 1/N`` checked."""
    a = _check_a(a)
    N = max(a)
    w = tuple(Fraction(1, x) if x > 0 else 1 + Fraction(1, N) for x in a)
    vals = {}
    for i in range(1, len(a) + 1):
        for j in range(1, len(a) + 1):
            if i != j:
                vals[(i, j)] = sum(wi * oi for wi, oi in zip(w, omega(a, i, j)))
    return EllReport(w, Fraction(1, N), vals)


def ell(a: Sequence[int], v: Sequence[object]) -> Fraction:
    w = ell_weights(a).weights
    return sum(x * Fraction(y) for x, y in zip(w, v))


def pole_bound(a: Sequence[int], i: int, j: int, p: int, q: int, i0: int | None = None, j0: int | None = None) -> int:
    """``1 + d_j (q + a_j) - d_i (p + a_i + 1)``, ``d_i = 1`` if ``a_i > 0`` else ``a_{i0} + 1``."""
    a = _check_a(a)
    if p > -a[i - 1] - 1 or q < -a[j - 1]:
        raise UsageError("need p <= -a_i - 1 and q >= -a_j")
    if j0 is not None and a[j0 - 1] != min(a):
        raise UsageError("j0 must carry the minimal weight")
    if 0 in a:
        if i0 is None or a[i0 - 1] <= 0:
            raise UsageError("some weight vanishes: i0 with a_i0 > 0 is required")

    def d(k: int) -> int:
        return 1 if a[k - 1] > 0 else a[i0 - 1] + 1  # type: ignore[index]

    return 1 + d(j) * (q + a[j - 1]) - d(i) * (p + a[i - 1] + 1)


# ---------------------------------------------------------------------------
# divisor classes


@dataclass(frozen=True)
class DivisorClass:
    """Rational combination of ``psi_i``, ``lambda`` and boundary classes ``Z_b``."""

    coeffs: tuple[tuple[str, Fraction], ...] = field(default_factory=tuple)

    @classmethod
    def of(cls, d: Mapping[str, object]) -> "DivisorClass":
        return cls(tuple(sorted((k, Fraction(v)) for k, v in d.items() if Fraction(v))))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.coeffs)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        d = self.as_dict()
        for k, v in other.coeffs:
            d[k] = d.get(k, Fraction(0)) + v
        return DivisorClass.of(d)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass.of({k: -v for k, v in self.coeffs})

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def scale(self, c: object) -> "DivisorClass":
        return DivisorClass.of({k: Fraction(c) * v for k, v in self.coeffs})

    def is_zero(self) -> bool:
        return not self.coeffs

    def expand(self) -> "DivisorClass":
        """Rewrite every ``Z_b`` as ``Psi_b - lambda``."""
        out = DivisorClass()
        for k, v in self.coeffs:
            if k.startswith("Z"):
                b = tuple(int(x) for x in k[2:-1].split(",") if x.strip())
                out = out + (psi_class(b) - _lam()).scale(v)
            else:
                out = out + DivisorClass.of({k: v})
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*{k}" for k, v in self.coeffs)


def _lam() -> DivisorClass:
    return DivisorClass.of({"lambda": 1})


def _zname(b: Sequence[int]) -> str:
    return "Z(" + ",".join(str(int(x)) for x in b) + ")"


def psi_class(a: Sequence[int]) -> DivisorClass:
    """``Psi_a = sum_i C(a_i + 1, 2) psi_i``."""
    return DivisorClass.of({f"psi{i}": comb(x + 1, 2) for i, x in enumerate(a, start=1)})


def z_class(a: Sequence[int]) -> DivisorClass:
    """The boundary class ``Z_a`` (equal to ``Psi_a - lambda``, see :meth:`DivisorClass.expand`)."""
    return DivisorClass.of({_zname(_check_a(a)): 1})


def psi_tilde(a: Sequence[int], v: Sequence[object]) -> DivisorClass:
    """``sum_i v_i (psi_i + N l(e_i) Z_a)``."""
    a = _check_a(a)
    N = max(a)
    w = ell_weights(a).weights
    out = DivisorClass()
    for i, x in enumerate(v, start=1):
        x = Fraction(x)
        out = out + DivisorClass.of({f"psi{i}": x}) + z_class(a).scale(x * N * w[i - 1])
    return out


def z_chi_class(a: Sequence[int], decomposition: Mapping[object, object]) -> DivisorClass:
    """The class ``Z(chi)`` for ``chi`` given by a nonnegative decomposition.

    With two or more positive weights the keys are pairs ``(i, j)``
    (``a_j > 0``) standing for ``omega_ij``.  For ``a = g e_k`` the keys are
    ``k`` (the vector ``e_k``) and pairs ``(i, k)``.
    """
    a = _check_a(a)
    n = len(a)
    N = max(a)
    pos = [i for i in range(1, n + 1) if a[i - 1] > 0]
    out = DivisorClass()
    for key, x in decomposition.items():
        x = Fraction(x)
        if x < 0:
            raise UsageError("decomposition coefficients must be non-negative")
        if isinstance(key, int):
            if len(pos) != 1 or key != pos[0]:
                raise UsageError("a bare basis vector is allowed only for a = g e_k")
            out = out + (DivisorClass.of({f"psi{key}": 1}) + z_class(a)).scale(x)
            continue
        i, j = key
        if i == j or a[j - 1] <= 0:
            raise UsageError(f"omega_{i}{j} is not a generator (need i != j and a_j > 0)")
        b = list(a)
        b[i - 1] += 1
        b[j - 1] -= 1
        term = z_class(b)
        if a[i - 1] > 0:
            term = term + z_class(a).scale(Fraction(N, a[i - 1]) - 1)
        out = out + term.scale(x)
    return out


def decomposition_vector(a: Sequence[int], decomposition: Mapping[object, object]) -> tuple[Fraction, ...]:
    n = len(a)
    chi = [Fraction(0)] * n
    for key, x in decomposition.items():
        v = _unit(n, key) if isinstance(key, int) else omega(a, *key)
        for r in range(n):
            chi[r] += Fraction(x) * v[r]
    return tuple(chi)


def nonvanishing_weights(table: Mapping[tuple[int, int, int, int], Fraction], n: int) -> list[tuple[int, ...]]:
    """Distinct weights of the non-zero coordinates of an alpha-table."""
    out = []
    for (i, j, p, q), v in sorted(table.items()):
        if v:
            wt = coordinate_weight(i, j, p, q, n=n)
            if wt not in out:
                out.append(wt)
    return out

"""From a presented curve to a point of the Sato Grassmannian and back.

A curve with formal parameters at its marked points gives the subspace
``W`` of ``H = sum_i k((t_i))`` spanned by the expansions of its regular
functions.  We only ever hold the finite piece ``F_R = W ∩ H_{>= -R D1}``
truncated below exponent ``R`` (the *window radius*): the normal
monomials of the presentation with pole profile at most ``R`` span it and
their number certifies it.

For a point of the cell ``SG^a`` the canonical basis is ``1`` together with
``f_i[p] = t_i^p + sum_j sum_{q >= -a_j} alpha_ij[p, q] t_j^q``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import Monomial, Polynomial
from .curves import CurvePresentation
from .errors import MathFailure, NotInCellError, PrecisionError, UsageError
from .laurent import HVector, ParamChange, TruncatedSeries, apply_param_change, compose_changes
from .linalg import Echelon, axpy, nullspace, solve

__all__ = [
    "expand_generators",
    "validate_expansions",
    "monomial_expansions",
    "WSpace",
    "WPoint",
    "AlphaTable",
    "assemble_w",
    "subspace_from_curve",
    "krichever_point",
    "alpha_table",
    "sigma_normalize",
    "sigma_conditions",
    "check_subalgebra",
    "SubalgebraReport",
    "h0_h1_of_divisor",
    "bn_locus_check",
    "forget_last_point",
    "sections_with_poles",
    "random_wpoint",
    "g1n2_coordinates",
    "plane_model_coefficients",
    "rescale_parameter",
]

Col = tuple  # (branch, exponent)


# ---------------------------------------------------------------------------
# expansions


def expand_generators(curve: CurvePresentation, hi: int, validate: bool = True) -> dict[str, HVector]:
    """Expansion of every generator at every marked point, known below ``hi``.

    With ``validate`` the declared pole bounds are checked and every relation
    is substituted; a non-zero coefficient on the certified window is an
    error.
    """
    maxpole = max(max(g.poles) for g in curve.generators)
    if hi < 2 * maxpole:
        raise UsageError(f"window {hi} too small: need at least twice the largest pole ({2 * maxpole})")
    per_branch = [curve.expand(b, hi) for b in range(1, curve.n + 1)]
    out = {}
    for g in curve.generators:
        comps = [per_branch[b - 1][g.name].with_branch(b) for b in range(1, curve.n + 1)]
        out[g.name] = HVector(comps)
    if validate:
        validate_expansions(curve, out)
    return out


def _eval_poly(p: Polynomial, values: Mapping[str, HVector], n: int, cache: dict) -> HVector:
    total: HVector | None = None
    for m, c in p.terms.items():
        v = _monomial_value(m, values, n, cache).__mul__(c)
        total = v if total is None else total + v
    if total is None:
        raise UsageError("zero relation")
    return total


def _monomial_value(m: Monomial, values: Mapping[str, HVector], n: int, cache: dict) -> HVector:
    hit = cache.get(m)
    if hit is not None:
        return hit
    if m.is_one():
        hi = min(min(v.hi) for v in values.values())
        res = HVector.one(n, hi)
    else:
        v, _ = m.items[-1]
        rest = m / Monomial.var(v)
        res = _monomial_value(rest, values, n, cache) * values[v] if not rest.is_one() else values[v]
    cache[m] = res
    return res


def validate_expansions(curve: CurvePresentation, expansions: Mapping[str, HVector]) -> None:
    for g in curve.generators:
        vec = expansions[g.name]
        for b in range(1, curve.n + 1):
            s = vec[b]
            if s.valuation() < -g.poles[b - 1]:
                raise MathFailure(f"{g.name} has pole {-s.valuation()} > declared {g.poles[b - 1]} at p{b}")
    cache: dict = {}
    for r in curve.relations:
        val = _eval_poly(r, expansions, curve.n, cache)
        for s in val.components:
            if s.hi < 1:
                raise PrecisionError("expansion window too small to certify a relation")
            if not s.is_zero():
                e = s.valuation()
                raise MathFailure(f"relation {r} fails at branch {s.branch}: coefficient of t^{e} is {s.coefficient(e)}")


def monomial_expansions(curve: CurvePresentation, monomials: Iterable[Monomial], hi: int) -> dict[Monomial, HVector]:
    gen = expand_generators(curve, hi)
    cache: dict = {}
    return {m: _monomial_value(m, gen, curve.n, cache) for m in monomials}


# ---------------------------------------------------------------------------
# vectors as sparse maps


def _to_dict(v: HVector, upto: int) -> dict[Col, Fraction]:
    out = {}
    for s in v.components:
        if s.hi < upto:
            raise PrecisionError(f"vector known only below t^{s.hi} on branch {s.branch}, need {upto}")
        for e, c in s.coeffs.items():
            if e < upto:
                out[(s.branch, e)] = c
    return out


def _to_hvector(d: Mapping[Col, Fraction], n: int, hi: int | Sequence[int]) -> HVector:
    his = [hi] * n if isinstance(hi, int) else list(hi)
    comps = []
    for b in range(1, n + 1):
        coeffs = {e: c for (bb, e), c in d.items() if bb == b and e < his[b - 1]}
        lo = min(list(coeffs) + [his[b - 1]])
        comps.append(TruncatedSeries(coeffs, hi=his[b - 1], lo=lo, branch=b))
    return HVector(comps)


def _one(n: int) -> dict[Col, Fraction]:
    return {(b, 0): Fraction(1) for b in range(1, n + 1)}


# ---------------------------------------------------------------------------
# the truncated subspace


class WSpace:
    """``F_R = W ∩ H_{>= -R D1}``, truncated below ``t^R`` on every branch."""

    def __init__(self, n: int, genus: int, radius: int, rows: Sequence[Mapping[Col, Fraction]],
                 source: Callable[[int], "WSpace"] | None = None, certify: bool = True):
        self.n = n
        self.genus = genus
        self.radius = radius
        ech = Echelon(pivot_key=lambda c: (c[1], c[0]))
        for r in rows:
            ech.add(r)
        self.rows: dict[Col, dict[Col, Fraction]] = ech.rows
        self.source = source
        if certify:
            want = n * radius + 1 - genus
            if len(self.rows) != want:
                raise MathFailure(
                    f"span of the supplied elements has dimension {len(self.rows)}, expected {want}"
                )

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _check_divisor(self, D: Sequence[int]) -> list[int]:
        D = [int(x) for x in D]
        if len(D) != self.n:
            raise UsageError(f"divisor has {len(D)} entries, expected {self.n}")
        for d in D:
            if d > self.radius:
                raise PrecisionError(f"divisor coefficient {d} exceeds window radius {self.radius}")
            if -d >= self.radius:
                raise PrecisionError(f"divisor coefficient {d} needs coefficients beyond the window")
        return D

    def _projection_rank(self, D: Sequence[int]) -> int:
        cols = {(b, e) for b in range(1, self.n + 1) for e in range(-self.radius, -D[b - 1])}
        ech = Echelon(pivot_key=lambda c: (c[1], c[0]))
        for r in self.rows.values():
            ech.add({k: v for k, v in r.items() if k in cols})
        return len(ech)

    def h0_span(self, D: Sequence[int]) -> int:
        D = self._check_divisor(D)
        return self.dim - self._projection_rank(D)

    def h1_span(self, D: Sequence[int]) -> int:
        D = self._check_divisor(D)
        ncols = sum(self.radius - d for d in D)
        return ncols - self._projection_rank(D)

    def sections(self, D: Sequence[int]) -> list[dict[Col, Fraction]]:
        """Basis (echelon by pole) of ``W ∩ H_{>= -D}`` as sparse vectors."""
        D = self._check_divisor(D)
        cols = sorted({(b, e) for b in range(1, self.n + 1) for e in range(-self.radius, -D[b - 1])})
        rows = list(self.rows.values())
        if not cols:
            return [dict(r) for r in rows]
        mat = [[r.get(c, Fraction(0)) for r in rows] for c in cols]
        ker = nullspace(mat, len(rows))
        out = []
        ech = Echelon(pivot_key=lambda c: (c[1], c[0]))
        for coeffs in ker:
            v: dict[Col, Fraction] = {}
            for c, r in zip(coeffs, rows):
                axpy(v, c, r)
            ech.add(v)
        out = [ech.rows[k] for k in sorted(ech.rows, key=lambda c: (c[1], c[0]))]
        return out

    def pole_orders(self) -> list[int]:
        """Pole orders at ``p_1`` realised in ``F_R`` (one-point case)."""
        if self.n != 1:
            raise UsageError("pole orders are defined here for one marked point")
        orders = sorted({-e for (_, e) in self.rows if e <= 0})
        return orders

    def markings_multiplicative(self, a: Sequence[int], bound: int) -> bool:
        """Leading coefficients of products are products of leading coefficients."""
        reps = []
        for i in range(1, self.n + 1):
            for k in range(a[i - 1] + 1, a[i - 1] + bound + 2):
                if k > self.radius:
                    break
                D = [a[j - 1] + bound if j != i else k for j in range(1, self.n + 1)]
                D = [min(d, self.radius) for d in D]
                for v in self.sections(D):
                    if v.get((i, -k)):
                        reps.append((i, k, v))
                        break
        for (i, k, v), (j, l, w) in itertools.combinations_with_replacement(reps, 2):
            if i != j or k + l > self.radius:
                continue
            sv = _to_hvector(v, self.n, self.radius)[i]
            sw = _to_hvector(w, self.n, self.radius)[i]
            prod = sv * sw
            if prod.valuation() != -(k + l) or prod.coefficient(-(k + l)) != v[(i, -k)] * w[(i, -l)]:
                return False
        return True

    def rescaled(self, lam: Fraction) -> "WSpace":
        return rescale_parameter(self, lam)


def rescale_parameter(w: WSpace, lam: object) -> WSpace:
    """The subspace seen through the parameters ``lam * t_i`` (coefficient of t^e times lam^e)."""
    lam = Fraction(lam)
    rows = [{(b, e): c * lam**e for (b, e), c in r.items()} for r in w.rows.values()]
    return WSpace(w.n, w.genus, w.radius, rows)


@dataclass
class AlphaTable:
    a: tuple[int, ...]
    convention: str
    entries: dict[tuple[int, int, int, int], Fraction]

    def nonzero(self) -> dict[tuple[int, int, int, int], Fraction]:
        return {k: v for k, v in self.entries.items() if v}

    def common(self, other: "AlphaTable") -> list[tuple[int, int, int, int]]:
        return sorted(set(self.entries) & set(other.entries))

    def __getitem__(self, key: tuple[int, int, int, int]) -> Fraction:
        return self.entries[key]


class WPoint(WSpace):
    """A point of the cell ``SG^a`` with its canonical basis ``1, f_i[p]``.

    ``basis[(i, p)]`` holds ``f_i[p]`` normalised so that the constant term on
    branch ``i`` vanishes (``alpha_ii[p, 0] = 0``).  Series windows may be
    shorter than the radius after a normalisation that certified them only
    partially.
    """

    def __init__(self, a: Sequence[int], radius: int, basis: Mapping[tuple[int, int], HVector],
                 source: Callable[[int], "WPoint"] | None = None, tag: str = "alpha_ii_zero"):
        self.a = tuple(int(x) for x in a)
        self.n = len(self.a)
        self.genus = sum(self.a)
        self.radius = radius
        self.basis = dict(basis)
        self.source = source
        self.tag = tag
        expected = {(i, p) for i in range(1, self.n + 1) for p in range(-radius, -self.a[i - 1])}
        if set(self.basis) != expected:
            raise UsageError("basis keys do not match the cell and window")
        self._rows_cache: dict | None = None

    # WSpace interface: rows on demand (full-window vectors only)
    @property
    def rows(self) -> dict[Col, dict[Col, Fraction]]:  # type: ignore[override]
        if self._rows_cache is None:
            rows = {(0, 0): _one(self.n)}
            for (i, p), v in self.basis.items():
                rows[(i, p)] = _to_dict(v, self.radius)
            self._rows_cache = rows
        return self._rows_cache

    @rows.setter
    def rows(self, value) -> None:  # pragma: no cover - WSpace.__init__ is not used
        self._rows_cache = value

    def f(self, i: int, p: int, convention: str = "alpha_ii_zero", j0: int | None = None) -> HVector:
        v = self.basis.get((i, p))
        if v is None:
            if p >= -self.a[i - 1] or p < -self.radius:
                raise PrecisionError(f"f_{i}[{p}] is not a basis element in window {self.radius}")
        if convention == "alpha_ii_zero":
            return v
        if convention == "alpha_j0_zero":
            if j0 is None:
                raise UsageError("alpha_j0_zero needs j0")
            c = v[j0].coefficient(0)
            return _shift_const(v, -c)
        raise UsageError(f"unknown convention {convention!r}")

    def alpha(self, i: int, j: int, p: int, q: int, convention: str = "alpha_ii_zero", j0: int | None = None) -> Fraction:
        if q < -self.a[j - 1]:
            raise UsageError(f"alpha_{i}{j}[{p},{q}]: q below -a_{j}")
        return self.f(i, p, convention, j0)[j].coefficient(q)

    def alpha_table(self, convention: str = "alpha_ii_zero", j0: int | None = None) -> AlphaTable:
        return alpha_table(self, convention, j0)

    def apply_change(self, g: ParamChange) -> "WPoint":
        """The point ``g . W`` (substitution ``t_i -> phi_i(t_i)``), re-canonicalised."""
        vecs = [HVector.one(self.n, self.radius)] + [self.basis[k] for k in sorted(self.basis)]
        moved = [apply_param_change(v, g) for v in vecs]
        basis = _canonicalize([_to_dict(v, self.radius) for v in moved], self.a, self.radius)
        return WPoint(self.a, self.radius, basis, None, self.tag)

    def window_of(self, i: int, p: int) -> tuple[int, ...]:
        return self.basis[(i, p)].hi

    @classmethod
    def from_alpha(cls, a: Sequence[int], radius: int, entries: Mapping[tuple[int, int, int, int], object]) -> "WPoint":
        """Point of ``SG^a`` with prescribed coordinates (missing entries are zero)."""
        a = tuple(int(x) for x in a)
        n = len(a)
        basis = {}
        for i in range(1, n + 1):
            for p in range(-radius, -a[i - 1]):
                d: dict[Col, Fraction] = {(i, p): Fraction(1)}
                for j in range(1, n + 1):
                    for q in range(-a[j - 1], radius):
                        c = Fraction(entries.get((i, j, p, q), 0))
                        if c and not (j == i and q == 0):
                            d[(j, q)] = c
                basis[(i, p)] = _to_hvector(d, n, radius)
        return cls(a, radius, basis)


def _shift_const(v: HVector, c: Fraction) -> HVector:
    comps = []
    for s in v.components:
        comps.append(s + TruncatedSeries.constant(c, s.hi, s.branch) if s.hi > 0 else s)
    return HVector(comps)


def _canonicalize(rows: Sequence[Mapping[Col, Fraction]], a: Sequence[int], radius: int) -> dict[tuple[int, int], HVector]:
    """Canonical basis ``f_i[p]`` of a span containing ``1``, or raise NotInCellError."""
    n = len(a)

    def polar(c: Col) -> bool:
        return c[1] < -a[c[0] - 1]

    ech = Echelon(pivot_key=lambda c: (c[1], c[0]), allowed=polar)
    for r in rows:
        for (b, e) in r:
            if e < -radius:
                raise UsageError(f"element has a pole of order {-e} > window radius {radius}")
        ech.add(r)
    need = {(i, p) for i in range(1, n + 1) for p in range(-radius, -a[i - 1])}
    missing = need - set(ech.rows)
    if missing:
        raise NotInCellError(f"no element with leading pole at {sorted(missing)[:3]}: h^1(W(a)) != 0 on this window")
    res = ech.residual
    if res is None or len(res) != 1:
        raise NotInCellError(f"W ∩ H_(>= -a) has dimension {0 if res is None else len(res)}, expected 1")
    (piv, vec), = res.rows.items()
    one = _one(n)
    scale = vec.get((1, 0), Fraction(0))
    if not scale or any(vec.get(k, 0) != scale * one.get(k, 0) for k in set(vec) | set(one)):
        raise NotInCellError("the only regular element up to the window is not a constant")
    basis = {}
    for (i, p) in need:
        r = dict(ech.rows[(i, p)])
        c = r.get((i, 0), Fraction(0))
        if c:
            axpy(r, -c, one)
        basis[(i, p)] = _to_hvector(r, n, radius)
    return basis


# ---------------------------------------------------------------------------
# assembling W from a curve


def _normal_monomials_in_window(curve: CurvePresentation, radius: int) -> list[Monomial]:
    gb = curve.groebner()
    deg = {g.name: max(g.poles) for g in curve.generators}
    from .groebner import enumerate_monomials

    out = []
    for m in enumerate_monomials(curve.names, deg, radius * curve.n):
        if not gb.is_normal(m):
            continue
        if all(x <= radius for x in curve.pole_profile(m)):
            out.append(m)
    return out


def _rows_from_curve(curve: CurvePresentation, radius: int) -> list[dict[Col, Fraction]]:
    mons = _normal_monomials_in_window(curve, radius)
    vals = monomial_expansions(curve, mons, 2 * radius + 2)
    return [_to_dict(vals[m], radius) for m in mons]


def subspace_from_curve(curve: CurvePresentation, radius: int) -> WSpace:
    """``F_R`` of the curve (no cell assumption), with a regeneration hook."""
    rows = _rows_from_curve(curve, radius)
    return WSpace(curve.n, curve.genus, radius, rows, source=lambda r: subspace_from_curve(curve, r))


def assemble_w(source: CurvePresentation | Mapping[str, HVector], a: Sequence[int] | None, window: int,
               monomials: Sequence[Monomial] | None = None, genus: int | None = None) -> WPoint:
    """Canonical basis of the point of ``SG^a`` defined by a curve (or expansions).

    From a :class:`CurvePresentation` the spanning set is the set of normal
    monomials with pole profile at most ``window``.  From a bare mapping of
    generator expansions, ``monomials`` must be supplied.
    """
    if isinstance(source, CurvePresentation):
        curve = source
        a = tuple(a) if a is not None else curve.weights
        if a is None:
            raise UsageError("curve has no cell weights; pass a")
        if sum(a) != curve.genus or len(a) != curve.n:
            raise UsageError("weights must have length n and sum g")
        rows = _rows_from_curve(curve, window)
        tpl = tuple(a)
        src = lambda r: assemble_w(curve, tpl, r)  # noqa: E731
    else:
        if monomials is None or a is None:
            raise UsageError("assembling from expansions needs monomials and weights")
        n = len(a)
        cache: dict = {}
        rows = [_to_dict(_monomial_value(m, source, n, cache), window) for m in monomials]
        src = None
    n = len(a)
    if not any(r == _one(n) or (len(r) == n and all(k[1] == 0 for k in r)) for r in rows):
        rows = [_one(n)] + list(rows)
    want = n * window + 1 - sum(a)
    ech = Echelon(pivot_key=lambda c: (c[1], c[0]))
    for r in rows:
        ech.add(r)
    if len(ech) < want:
        raise NotInCellError(f"span has dimension {len(ech)} < {want}: h^1 does not vanish on the window")
    if len(ech) > want:
        raise NotInCellError(f"span has dimension {len(ech)} > {want}: W ∩ H_(>= -a) is too large")
    basis = _canonicalize(list(ech.rows.values()), a, window)
    return WPoint(a, window, basis, src)


def krichever_point(curve: CurvePresentation, window: int, a: Sequence[int] | None = None) -> WPoint:
    return assemble_w(curve, a, window)


# ---------------------------------------------------------------------------
# coordinates


def alpha_table(w: WPoint, convention: str = "alpha_ii_zero", j0: int | None = None) -> AlphaTable:
    """All coordinates ``alpha_ij[p, q]`` certified on the window."""
    if convention not in ("alpha_ii_zero", "alpha_j0_zero"):
        raise UsageError(f"unknown convention {convention!r}")
    entries = {}
    for (i, p) in sorted(w.basis):
        v = w.f(i, p, convention, j0)
        for j in range(1, w.n + 1):
            s = v[j]
            for q in range(-w.a[j - 1], s.hi):
                entries[(i, j, p, q)] = s.coefficient(q)
    name = convention if convention == "alpha_ii_zero" else f"alpha_j0_zero(j0={j0})"
    return AlphaTable(w.a, name, entries)


def random_wpoint(a: Sequence[int], radius: int, rng: random.Random, bound: int = 10,
                  density: float = 1.0) -> WPoint:
    """A point of ``SG^a`` with random small rational coordinates."""
    a = tuple(a)
    n = len(a)
    entries = {}
    for i in range(1, n + 1):
        for p in range(-radius, -a[i - 1]):
            for j in range(1, n + 1):
                for q in range(-a[j - 1], radius):
                    if j == i and q == 0:
                        continue
                    if rng.random() <= density:
                        entries[(i, j, p, q)] = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return WPoint.from_alpha(a, radius, entries)


# ---------------------------------------------------------------------------
# the normalisation Sigma


def sigma_conditions(w: WPoint, i0: int) -> dict[str, Fraction]:
    """Values of the defining equations of the section (all zero when normalised)."""
    if w.a[i0 - 1] <= 0:
        raise UsageError("i0 must have positive weight")
    out = {}
    for i in range(1, w.n + 1):
        ai = w.a[i - 1]
        if ai > 0:
            for p in range(1, w.radius - ai + 1):
                v = w.f(i, -ai - p)[i]
                if -ai < v.hi:
                    out[f"alpha_{i}{i}[{-ai - p},{-ai}]"] = v.coefficient(-ai)
        else:
            v = w.f(i, -1)
            if v[i0].hi > 0 and v[i].hi > 0:
                out[f"alpha_{i}{i0}[-1,0]-alpha_{i}{i}[-1,0]"] = v[i0].coefficient(0) - v[i].coefficient(0)
            for p in range(1, v[i].hi):
                out[f"alpha_{i}{i}[-1,{p}]"] = v[i].coefficient(p)
    return out


def sigma_normalize(w: WPoint, i0: int | None = None, trim: bool = True) -> tuple[ParamChange, WPoint]:
    """Move ``w`` into the section ``Sigma^{a, i0}`` by a parameter change.

    Returns the change ``g`` and the normalised point ``g . w``.  Positive-weight branches are treated
    first, order by order, then the weight-zero branches.  With ``trim`` the
    windows are cut to the coefficients that the finite number of
    corrections determines.
    """
    a = w.a
    n = w.n
    R = w.radius
    if i0 is None:
        i0 = next((i for i in range(1, n + 1) if a[i - 1] > 0), None)
        if i0 is None:
            raise UsageError("normalisation needs a branch of positive weight")
    if a[i0 - 1] <= 0:
        raise UsageError("i0 must have positive weight")
    K = R
    total = ParamChange.identity(n, K)
    cur = w
    orders: dict[int, int] = {}

    def step(i: int, power: int, c: Fraction) -> None:
        nonlocal cur, total
        if not c:
            return
        gch = ParamChange.single(n, i, power, c, order=K)
        cur = cur.apply_change(gch)
        total = compose_changes(gch, total, order=K)

    for i in range(1, n + 1):
        ai = a[i - 1]
        if ai <= 0:
            continue
        for p in range(1, R - ai + 1):
            val = cur.f(i, -ai - p)[i].coefficient(-ai)
            step(i, p + 1, val / (ai + p))
            if cur.f(i, -ai - p)[i].coefficient(-ai):
                raise MathFailure("normalisation step did not clear its coordinate")  # pragma: no cover
        orders[i] = R - ai
    for i in range(1, n + 1):
        if a[i - 1] > 0:
            continue
        v = cur.f(i, -1)
        delta = v[i0].coefficient(0) - v[i].coefficient(0)
        step(i, 2, -delta)
        for p in range(2, R + 1):
            step(i, p + 1, cur.f(i, -1)[i].coefficient(p - 1))
        orders[i] = R
    if any(sigma_conditions(cur, i0).values()):
        raise MathFailure("normalised point violates the section equations")  # pragma: no cover
    out = cur
    if trim:
        basis = {}
        for (i, p), v in cur.basis.items():
            own = min(v[i].hi, p + orders[i] + 1)
            comps = []
            for s in v.components:
                j = s.branch
                val = p if j == i else -a[j - 1]
                hi = min(s.hi, val + orders[j] + 1)
                if own <= 0:
                    # the constant on every branch is shifted by the own-branch constant
                    hi = min(hi, 0)
                comps.append(s.truncate(hi))
            basis[(i, p)] = HVector(comps)
        out = WPoint(a, R, basis, None, tag=f"sigma(i0={i0})")
        out._rows_cache = cur.rows
    else:
        out.tag = f"sigma(i0={i0})"
    src = w.source
    if src is not None:
        out.source = lambda r: sigma_normalize(src(r), i0, trim)[1]
    return total, out


# ---------------------------------------------------------------------------
# products and cohomology


@dataclass
class SubalgebraReport:
    status: str  # "pass" | "fail" | "undecidable"
    checked: int
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def check_subalgebra(w: WPoint, max_pairs: int | None = None) -> SubalgebraReport:
    """Test ``f_i[p] f_j[p'] ∈ W`` for every pair the window can decide."""
    keys = sorted(w.basis)
    n = w.n
    checked = 0
    failures = []
    for (k1, k2) in itertools.combinations_with_replacement(keys, 2):
        prod = w.basis[k1] * w.basis[k2]
        res = prod
        ok_prec = True
        for s in prod.components:
            b = s.branch
            for e in range(s.lo, min(s.hi, -w.a[b - 1])):
                c = s.coefficient(e)
                if not c:
                    continue
                if e < -w.radius:
                    ok_prec = False
                    break
            if not ok_prec:
                break
        if not ok_prec:
            continue
        # subtract the polar part, column by column from the most polar one
        for _ in range(4 * w.radius * n + 4):
            pol = [(s.branch, e) for s in res.components for e in range(s.lo, min(s.hi, -w.a[s.branch - 1]))
                   if s.coefficient(e)]
            if not pol:
                break
            b, e = min(pol, key=lambda c: (c[1], c[0]))
            if e < -w.radius:
                ok_prec = False
                break
            c = res[b].coefficient(e)
            res = res - w.basis[(b, e)] * c
        if not ok_prec:
            continue
        certified = [(s.branch, q) for s in res.components for q in range(-w.a[s.branch - 1], s.hi)]
        if not certified:
            continue
        consts = {s.branch: s.coefficient(0) for s in res.components if s.hi > 0}
        c0 = next(iter(consts.values())) if consts else Fraction(0)
        bad = None
        for (b, q) in certified:
            want = c0 if q == 0 else Fraction(0)
            if res[b].coefficient(q) != want:
                bad = (b, q, res[b].coefficient(q))
                break
        checked += 1
        if bad:
            failures.append({"pair": (k1, k2), "branch": bad[0], "exponent": bad[1], "coefficient": bad[2]})
        if max_pairs and checked >= max_pairs:
            break
    status = "undecidable" if checked == 0 else ("fail" if failures else "pass")
    return SubalgebraReport(status, checked, failures)


def _h0_cell(w: WPoint, D: Sequence[int]) -> int:
    a = w.a
    unknowns = [(i, p) for i in range(1, w.n + 1) for p in range(-D[i - 1], -a[i - 1])]
    cons = [(j, e) for j in range(1, w.n + 1) for e in range(-a[j - 1], -D[j - 1])]
    if not unknowns:
        return 1
    mat = [[w.alpha(i, j, p, e) for (i, p) in unknowns] for (j, e) in cons]
    if not cons:
        return 1 + len(unknowns)
    ker = nullspace(mat, len(unknowns))
    return 1 + len(ker)


def _h1_cell(w: WPoint, D: Sequence[int]) -> int:
    a = w.a
    rows = [(k, q) for k in range(1, w.n + 1) for q in range(-a[k - 1], 0)]
    cols = []
    for j in range(1, w.n + 1):
        for e in range(-D[j - 1], 0):
            if e >= -a[j - 1]:
                cols.append({(j, e): Fraction(1)})
            else:
                v = w.f(j, e)
                cols.append({(k, q): -v[k].coefficient(q) for (k, q) in rows if v[k].coefficient(q)})
    ech = Echelon(pivot_key=lambda c: (c[1], c[0]))
    for c in cols:
        ech.add(c)
    return len(rows) - len(ech)


def h0_h1_of_divisor(w: WSpace, D: Sequence[int], method: str | None = None, recheck: bool = True) -> tuple[int, int]:
    """``(h^0, h^1)`` of ``W(D)``, re-verified on a window enlarged by 2.

    ``method="cell"`` uses the canonical coordinates of a cell point (needs
    ``D >= 0``); ``method="span"`` uses the truncated span directly.
    """
    D = [int(x) for x in D]
    if len(D) != w.n:
        raise UsageError("divisor length differs from the number of points")
    if method is None:
        method = "cell" if isinstance(w, WPoint) and min(D) >= 0 else "span"
    if method == "cell":
        if not isinstance(w, WPoint):
            raise UsageError("cell method needs a cell point")
        if min(D) < 0:
            raise UsageError("cell method needs an effective divisor")
        if max(D) > w.radius:
            raise PrecisionError(f"divisor {D} exceeds window radius {w.radius}")
        res = (_h0_cell(w, D), _h1_cell(w, D))
    elif method == "span":
        res = (w.h0_span(D), w.h1_span(D))
    else:
        raise UsageError(f"unknown method {method!r}")
    if recheck and w.source is not None:
        bigger = w.source(w.radius + 2)
        again = h0_h1_of_divisor(bigger, D, method, recheck=False)
        if again != res:
            raise PrecisionError(f"h0/h1 of {D} not stable under window enlargement: {res} vs {again}")
    return res


def bn_locus_check(w: WPoint, i: int, j: int, m: int, mp: int) -> tuple[bool, bool]:
    """Both sides of the Brill-Noether vanishing criterion.

    Left: ``alpha_ij[p, q] = 0`` for ``-a_i-m <= p <= -a_i-1`` and
    ``-a_j <= q <= -a_j+m'-1``.  Right: ``h^0(a + m p_i - m' p_j) = m + 1``.
    """
    a = w.a
    if i == j or a[j - 1] <= 0 or not (1 <= mp <= min(m, a[j - 1])):
        raise UsageError("need i != j, a_j > 0 and 1 <= m' <= min(m, a_j)")
    lhs = all(w.alpha(i, j, p, q) == 0
              for p in range(-a[i - 1] - m, -a[i - 1]) for q in range(-a[j - 1], -a[j - 1] + mp))
    D = list(a)
    D[i - 1] += m
    D[j - 1] -= mp
    h0, _ = h0_h1_of_divisor(w, D, method="cell", recheck=False)
    return lhs, h0 == m + 1


def forget_last_point(w: WPoint) -> WPoint:
    """Drop the last marked point (its weight must be zero)."""
    if w.n < 2 or w.a[-1] != 0:
        raise UsageError("the last point must have weight 0 and n >= 2")
    n = w.n - 1
    basis = {}
    for (i, p), v in w.basis.items():
        if i <= n:
            basis[(i, p)] = HVector(v.components[:n])
    src = w.source
    out = WPoint(w.a[:n], w.radius, basis, (lambda r: forget_last_point(src(r))) if src else None, w.tag)
    return out


# ---------------------------------------------------------------------------
# sections as polynomials in the generators


def sections_with_poles(curve: CurvePresentation, D: Sequence[int], window: int | None = None) -> list[Polynomial]:
    D = [int(x) for x in D]
    if len(D) != curve.n or min(D) < 0:
        raise UsageError("need an effective divisor with one entry per point")
    R = window or max(max(D), max(max(g.poles) for g in curve.generators), 1)
    mons = _normal_monomials_in_window(curve, R)
    vals = monomial_expansions(curve, mons, 2 * R + 2)
    vecs = [_to_dict(vals[m], R) for m in mons]
    cols = sorted({(b, e) for b in range(1, curve.n + 1) for e in range(-R, -D[b - 1])})
    mat = [[v.get(c, Fraction(0)) for v in vecs] for c in cols]
    ker = nullspace(mat, len(mons)) if cols else [[Fraction(int(k == i)) for k in range(len(mons))] for i in range(len(mons))]
    order = curve.order
    ech = Echelon(pivot_key=lambda m: tuple(-x if isinstance(x, int) else tuple(-y for y in x) for x in order.key(m)))
    for coeffs in ker:
        ech.add({mons[k]: c for k, c in enumerate(coeffs) if c})
    polys = [Polynomial(ech.rows[m]) for m in sorted(ech.rows, key=order.key)]
    return polys


# ---------------------------------------------------------------------------
# invariants recovered from W alone


def _express(target: Mapping[Col, Fraction], basis: Sequence[Mapping[Col, Fraction]]) -> list[Fraction]:
    cols = sorted(set(target) | {c for b in basis for c in b})
    mat = [[b.get(c, Fraction(0)) for b in basis] for c in cols]
    rhs = [target.get(c, Fraction(0)) for c in cols]
    x = solve(mat, rhs)
    if x is None:
        raise MathFailure("element is not in the expected span")
    return x


def _vmul(u: Mapping[Col, Fraction], v: Mapping[Col, Fraction], n: int, radius: int) -> dict[Col, Fraction]:
    hu, hv = _to_hvector(u, n, radius), _to_hvector(v, n, radius)
    prod = hu * hv
    return {(s.branch, e): c for s in prod.components for e, c in s.coeffs.items()}


def _trunc(v: Mapping[Col, Fraction], hi: Sequence[int]) -> dict[Col, Fraction]:
    return {k: c for k, c in v.items() if k[1] < hi[k[0] - 1]}


def _monic_section(w: WSpace, D: Sequence[int], branch: int, pole: int) -> dict[Col, Fraction]:
    for v in w.sections(D):
        c = v.get((branch, -pole))
        if c and all(e >= -pole for (b, e) in v if b == branch):
            return {k: x / c for k, x in v.items()}
    raise MathFailure(f"no section with pole {pole} at p{branch}")


def _combo(vecs: Sequence[Mapping[Col, Fraction]], coeffs: Sequence[Fraction]) -> dict[Col, Fraction]:
    out: dict[Col, Fraction] = {}
    for v, c in zip(vecs, coeffs):
        axpy(out, c, v)
    return out


def _window_hi(w: WSpace, *factors: Mapping[Col, Fraction]) -> list[int]:
    """Certified upper exponent per branch of a product of full-window vectors."""
    his = []
    for b in range(1, w.n + 1):
        vals = [min([e for (bb, e) in f if bb == b] + [w.radius]) for f in factors]
        his.append(min(w.radius + sum(vals) - vals[k] for k in range(len(vals))) if vals else w.radius)
    return his


def _cubic_normal_form(b1, b2, b3, b4, b5):
    """Normalise ``Y^2 - X^3 = b1 XY + b2 X^2 + b3 Y + b4 X + b5`` to ``(shift data, pi, s)``."""
    c2 = b2 + b1 * b1 / 4
    c1 = b4 + b1 * b3 / 2
    c0 = b5 + b3 * b3 / 4
    gam = c2 / 3
    pi = c1 - 3 * gam * gam
    s = 2 * gam**3 - c1 * gam + c0
    return gam, pi, s


def g1n2_coordinates(w: WSpace) -> dict[str, Fraction]:
    """``(a, b, e, pi, s)`` of a genus-one two-pointed subspace, parameter free.

    ``f1, h1`` are the sections with poles 2 and 3 at ``p1`` brought to
    Weierstrass form; ``b, e`` are their values at ``p2``; ``h12`` is the
    section with simple poles at both points, shifted so that ``f1 h12``
    has no ``f1`` term, and ``f1 h12 = a h1 + b' h12 + c``.
    """
    if w.n != 2 or w.genus != 1:
        raise UsageError("need genus 1 with two marked points")
    n, R = 2, w.radius
    X = _monic_section(w, [2, 0], 1, 2)
    Y = _monic_section(w, [3, 0], 1, 3)
    Y = dict(Y)
    axpy(Y, -Y.get((1, -2), Fraction(0)), X)
    one = _one(n)
    XX = _vmul(X, X, n, R)
    XY = _vmul(X, Y, n, R)
    YY = _vmul(Y, Y, n, R)
    XXX = _vmul(XX, X, n, R)
    hi = [min(x, y) for x, y in zip(_window_hi(w, X, X, X), _window_hi(w, Y, Y))]
    target = _trunc(YY, hi)
    axpy(target, Fraction(-1), _trunc(XXX, hi))
    basis = [_trunc(v, hi) for v in (XY, XX, Y, X, one)]
    b1, b2, b3, b4, b5 = _express(target, basis)
    gam, pi, s = _cubic_normal_form(b1, b2, b3, b4, b5)
    f1 = dict(X)
    axpy(f1, gam, one)
    h1 = dict(Y)
    axpy(h1, -b1 / 2, X)
    axpy(h1, -b3 / 2, one)
    b = f1.get((2, 0), Fraction(0))
    e = h1.get((2, 0), Fraction(0))
    G = _monic_section(w, [1, 1], 2, 1)
    FG = _vmul(f1, G, n, R)
    hi2 = _window_hi(w, f1, G)
    coeffs = _express(_trunc(FG, hi2), [_trunc(v, hi2) for v in (h1, G, f1, one)])
    alpha, beta, gamma, delta = coeffs
    G2 = dict(G)
    axpy(G2, -gamma, one)
    const = delta + beta * gamma
    return {"a": alpha, "b": beta, "e": e, "pi": pi, "s": s, "b_at_p2": b, "const": const}


def plane_model_coefficients(w: WSpace) -> list[Fraction]:
    """Coefficients ``a_1..a_2g`` of the plane model ``y^2 = x^(2g+1) + ...`` (one point).

    Requires the non-gaps 2 and ``2g+1`` (hyperelliptic Weierstrass point or
    genus one).
    """
    if w.n != 1:
        raise UsageError("plane model needs one marked point")
    g = w.genus
    R = w.radius
    if R < 4 * g + 3:
        raise PrecisionError(f"window radius {R} too small; need {4 * g + 3}")
    X = _monic_section(w, [2], 1, 2)
    Y = _monic_section(w, [2 * g + 1], 1, 2 * g + 1)
    one = _one(1)
    powers = [one, X]
    for _ in range(2, 2 * g + 2):
        powers.append(_vmul(powers[-1], X, 1, R))
    # make Y free of even pole orders below 2g + 1
    for k in range(g, 0, -1):
        c = Y.get((1, -2 * k), Fraction(0))
        if c:
            axpy(Y, -c, powers[k])
    YY = _vmul(Y, Y, 1, R)
    hi = [min(x, y) for x, y in zip(_window_hi(w, Y, Y), _window_hi(w, *([X] * (2 * g + 1))))]
    target = _trunc(YY, hi)
    axpy(target, Fraction(-1), _trunc(powers[2 * g + 1], hi))
    basis = [_trunc(powers[k], hi) for k in range(2 * g + 1)]
    xy = [_trunc(_vmul(powers[k], Y, 1, R), hi) for k in range(g)]
    coeffs = _express(target, basis + xy)
    P = coeffs[: 2 * g + 1]
    Qc = coeffs[2 * g + 1:]
    # Y' = Y - Q(X)/2, so Y'^2 = X^(2g+1) + P(X) + Q(X)^2/4
    poly = [Fraction(0)] * (2 * g + 2)
    poly[2 * g + 1] = Fraction(1)
    for k, c in enumerate(P):
        poly[k] += c
    for k1, c1 in enumerate(Qc):
        for k2, c2 in enumerate(Qc):
            poly[k1 + k2] += c1 * c2 / 4
    gam = poly[2 * g] / (2 * g + 1)
    # substitute X = X' - gam
    shifted = [Fraction(0)] * (2 * g + 2)
    from math import comb

    for k, c in enumerate(poly):
        for r in range(k + 1):
            shifted[r] += c * comb(k, r) * (-gam) ** (k - r)
    return [shifted[2 * g - i] for i in range(1, 2 * g + 1)]

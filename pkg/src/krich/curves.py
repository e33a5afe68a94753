"""Curve families given by generators, relations and marked-point expansions.

Each builder returns a :class:`CurvePresentation`: the generators with their
filtration degrees and declared pole profiles, the defining relations, the
graded order used for Groebner computations, and a rule that expands every
generator as a Laurent series at every marked point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Mapping, Sequence

from .algebra import Monomial, OrderSpec, Polynomial
from .errors import MathFailure, UsageError
from .groebner import GroebnerBasis, LeadingRule, ShapeTemplate, buchberger, enumerate_monomials
from .laurent import TruncatedSeries

__all__ = [
    "Generator",
    "CurvePresentation",
    "build_semigroup_curve",
    "build_cusp_chain",
    "build_special_curve",
    "build_g1_n2",
    "build_g1_n3",
    "build_hyperelliptic",
    "g1n3_parameters",
    "g1n2_template",
    "g1n3_template",
    "special_curve_template",
    "hyperelliptic_template",
    "semigroup_template",
    "eliminate_generators",
    "coefficient_weights",
    "h0_basis",
    "check_marked_algebra",
    "MarkedAlgebraReport",
]

Expander = Callable[[int, int], dict[str, TruncatedSeries]]


@dataclass(frozen=True)
class Generator:
    name: str
    deg1: int
    deg2: int
    poles: tuple[int, ...]


@dataclass
class CurvePresentation:
    """Generators, relations and expansion rule of a marked curve."""

    family: str
    genus: int
    n: int
    generators: tuple[Generator, ...]
    relations: tuple[Polynomial, ...]
    order: OrderSpec
    expander: Expander | None = None
    weights: tuple[int, ...] | None = None
    params: dict = field(default_factory=dict)
    coefficient_weights: dict[str, int] = field(default_factory=dict)
    rules: tuple[str, ...] = ()
    _gb: GroebnerBasis | None = field(default=None, repr=False)

    def generator(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise UsageError(f"no generator {name!r}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def groebner(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.relations, self.order)
        return self._gb

    def pole_profile(self, m: Monomial) -> tuple[int, ...]:
        prof = [0] * self.n
        for v, e in m.items:
            g = self.generator(v)
            for i in range(self.n):
                prof[i] += g.poles[i] * e
        return tuple(prof)

    def expand(self, branch: int, hi: int) -> dict[str, TruncatedSeries]:
        if self.expander is None:
            raise UsageError(f"curve family {self.family!r} has no expansion rule")
        if not 1 <= branch <= self.n:
            raise UsageError(f"branch {branch} out of range 1..{self.n}")
        return self.expander(branch, hi)


def _order_for(gens: Sequence[Generator]) -> OrderSpec:
    return OrderSpec.from_degrees({g.name: g.deg1 for g in gens}, {g.name: g.deg2 for g in gens})


def _laurent_poly(coeffs: Mapping[int, Fraction], hi: int, branch: int) -> TruncatedSeries:
    coeffs = {e: c for e, c in coeffs.items() if e < hi}
    lo = min([e for e, c in coeffs.items() if c] + [hi])
    return TruncatedSeries(coeffs, hi=hi, lo=lo, branch=branch)


# ---------------------------------------------------------------------------
# numerical semigroups


def _semigroup_closure(gens: Sequence[int], upto: int) -> set[int]:
    s = {0}
    for m in range(1, upto + 1):
        if any(m - g in s for g in gens if m - g >= 0):
            s.add(m)
    return s


def _minimal_generators(gens: Sequence[int]) -> list[int]:
    g = sorted(set(int(x) for x in gens))
    if not g or g[0] <= 0:
        raise UsageError("semigroup generators must be positive integers")
    d = 0
    for x in g:
        d = gcd(d, x)
    if d != 1:
        raise UsageError("semigroup generators must be coprime (finite complement)")
    bound = g[0] * g[-1]
    s = _semigroup_closure(g, bound)
    minimal = []
    for x in g:
        if not any((x - y) in s and x - y > 0 for y in minimal):
            minimal.append(x)
    return minimal


def _frobenius(gens: Sequence[int]) -> int:
    bound = gens[0] * gens[-1]
    s = _semigroup_closure(gens, bound)
    gaps = [m for m in range(1, bound + 1) if m not in s]
    return max(gaps) if gaps else -1


def build_semigroup_curve(gens: Sequence[int]) -> CurvePresentation:
    """Monomial curve ``Spec k[S]`` with one marked point at infinity.

    The relations are a minimal set of binomials found degree by degree,
    then certified: in every degree the number of normal monomials is one
    on the semigroup and zero off it.
    """
    mins = _minimal_generators(gens)
    frob = _frobenius(mins)
    s_len = frob + 1
    closure = _semigroup_closure(mins, max(s_len, 1) + 1)
    genus = sum(1 for m in range(1, s_len + 1) if m not in closure)
    names = [f"x{k}" for k in range(1, len(mins) + 1)]
    generators = tuple(Generator(nm, v, 0, (v,)) for nm, v in zip(names, mins))
    order = _order_for(generators)
    deg = dict(zip(names, mins))
    bound = frob + mins[0] + 2 * mins[-1] + 1
    rels: list[Polynomial] = []
    gb = buchberger(rels, order) if rels else GroebnerBasis((), order)
    by_degree: dict[int, list[Monomial]] = {}
    for m in enumerate_monomials(names, deg, 2 * bound):
        by_degree.setdefault(m.weighted_degree(deg), []).append(m)
    for d in range(1, bound + 1):
        normal = sorted((m for m in by_degree.get(d, []) if gb.is_normal(m)), key=order.key)
        if len(normal) > 1:
            for m in normal[1:]:
                rels.append(Polynomial.monomial(m) - Polynomial.monomial(normal[0]))
            gb = buchberger(rels, order)
    for d in range(1, 2 * bound + 1):
        cnt = sum(1 for m in by_degree.get(d, []) if gb.is_normal(m))
        want = 1 if d in _semigroup_closure(mins, d) else 0
        if cnt != want:
            raise MathFailure(f"semigroup presentation certification failed in degree {d}")

    def expander(branch: int, hi: int) -> dict[str, TruncatedSeries]:
        return {nm: TruncatedSeries.monomial(-v, hi, 1, 1) for nm, v in zip(names, mins)}

    weights = (genus,) if genus and frob == genus else None
    curve = CurvePresentation(
        family="semigroup", genus=genus, n=1, generators=generators, relations=tuple(rels),
        order=order, expander=expander, weights=weights,
        params={"generators": mins}, rules=("monomial",),
    )
    curve._gb = gb
    return curve


def semigroup_template(curve: CurvePresentation) -> ShapeTemplate:
    """Leading monomials of the certified binomial basis; lower terms are binomial partners."""
    order = curve.order
    gb = curve.groebner()
    deg = curve.order.deg1
    rules = []
    for e in gb.elements:
        lm = e.leading_monomial(order)
        d = order.degree1(lm)
        rules.append(LeadingRule(lm, lambda m, d=d: m.weighted_degree(deg) == d, {}, "same weighted degree"))
    return ShapeTemplate("semigroup", order, tuple(rules))


# ---------------------------------------------------------------------------
# special curves (and cusp chains)


def _hname(i: int, m: int) -> str:
    return f"h{i}.{m}"


def build_special_curve(a: Sequence[int], hbar: Mapping[int, Mapping[int, Sequence[object]]] | None = None,
                        family: str = "special") -> CurvePresentation:
    """Curve of the algebra generated by ``B(a)`` and ``h_j = x_j + hbar_j``.

    ``hbar[j][i]`` lists ``c_ji(1), ..., c_ji(a_i)``: the coefficients of
    ``x_i, ..., x_i^{a_i}`` in the branch-``i`` part of ``hbar_j``.
    """
    a = tuple(int(x) for x in a)
    n = len(a)
    if n == 0 or any(x < 0 for x in a):
        raise UsageError("weights must be non-negative")
    g = sum(a)
    if g < 1:
        raise UsageError("special curves need genus >= 1")
    pos = [i for i in range(1, n + 1) if a[i - 1] > 0]
    zer = [j for j in range(1, n + 1) if a[j - 1] == 0]
    hbar = hbar or {}
    c: dict[tuple[int, int], list[Fraction]] = {}
    for j in zer:
        row = hbar.get(j, hbar.get(str(j), {})) or {}
        for i in pos:
            vals = row.get(i, row.get(str(i), [])) or []
            vals = [Fraction(v) for v in vals]
            if len(vals) > a[i - 1]:
                raise UsageError(f"hbar_{j} has degree > a_{i} on branch {i}")
            c[(j, i)] = vals + [Fraction(0)] * (a[i - 1] - len(vals))
    for key in hbar:
        if int(key) not in zer:
            raise UsageError(f"hbar given for branch {key} whose weight is positive")
    # products hbar_j hbar_j' must vanish modulo x_i^(a_i+1)
    for j in zer:
        for jj in zer:
            if jj <= j:
                continue
            for i in pos:
                ai = a[i - 1]
                for k in range(2, ai + 1):
                    s = sum(c[(j, i)][p - 1] * c[(jj, i)][k - p - 1] for p in range(1, k))
                    if s:
                        raise UsageError(f"hbar_{j} * hbar_{jj} does not vanish modulo x_{i}^{ai + 1}")
    gens: list[Generator] = []
    for i in pos:
        for m in range(a[i - 1] + 1):
            poles = tuple(a[i - 1] + 1 + m if k == i else 0 for k in range(1, n + 1))
            gens.append(Generator(_hname(i, m), a[i - 1] + 1 + m, 0, poles))
    for j in zer:
        poles = []
        for k in range(1, n + 1):
            if k == j:
                poles.append(1)
            elif k in pos:
                vals = c[(j, k)]
                poles.append(max([p for p in range(1, len(vals) + 1) if vals[p - 1]] + [0]))
            else:
                poles.append(0)
        gens.append(Generator(f"h{j}", max(poles), 1, tuple(poles)))
    order = _order_for(gens)

    def H(i: int, m: int) -> Polynomial:
        ai = a[i - 1]
        if m <= ai:
            return Polynomial.var(_hname(i, m))
        return Polynomial.var(_hname(i, m - ai - 1)) * Polynomial.var(_hname(i, 0))

    rels: list[Polynomial] = []
    for ii, i in enumerate(pos):
        for i2 in pos[ii + 1:]:
            for m in range(a[i - 1] + 1):
                for m2 in range(a[i2 - 1] + 1):
                    rels.append(Polynomial.var(_hname(i, m)) * Polynomial.var(_hname(i2, m2)))
    for i in pos:
        ai = a[i - 1]
        for m in range(1, ai + 1):
            for m2 in range(m, ai + 1):
                rels.append(Polynomial.var(_hname(i, m)) * Polynomial.var(_hname(i, m2)) - H(i, m + m2) * H(i, 0))
    for i in pos:
        ai = a[i - 1]
        for j in zer:
            for m in range(ai + 1):
                rhs = Polynomial.zero()
                for p in range(1, ai + 1):
                    if c[(j, i)][p - 1]:
                        rhs = rhs + H(i, m + p).scale(c[(j, i)][p - 1])
                rels.append(Polynomial.var(_hname(i, m)) * Polynomial.var(f"h{j}") - rhs)
    for jx, j in enumerate(zer):
        for jj in zer[jx + 1:]:
            rhs = Polynomial.zero()
            for i in pos:
                ai = a[i - 1]
                for m in range(ai):
                    s = sum(c[(j, i)][p - 1] * c[(jj, i)][ai + m - p] for p in range(1, ai + 1)
                            if 1 <= ai + 1 + m - p <= ai)
                    if s:
                        rhs = rhs + H(i, m).scale(s)
            rels.append(Polynomial.var(f"h{j}") * Polynomial.var(f"h{jj}") - rhs)

    def expander(branch: int, hi: int) -> dict[str, TruncatedSeries]:
        out = {}
        for gen in gens:
            coeffs: dict[int, Fraction] = {}
            if gen.name.startswith("h") and "." in gen.name:
                i, m = gen.name[1:].split(".")
                if int(i) == branch:
                    coeffs[-(a[branch - 1] + 1 + int(m))] = Fraction(1)
            else:
                j = int(gen.name[1:])
                if branch == j:
                    coeffs[-1] = Fraction(1)
                elif branch in pos:
                    for p, cv in enumerate(c[(j, branch)], start=1):
                        if cv:
                            coeffs[-p] = cv
            out[gen.name] = _laurent_poly(coeffs, hi, branch)
        return out

    params = {"a": list(a), "hbar": {j: {i: [str(x) for x in c[(j, i)]] for i in pos} for j in zer}}
    return CurvePresentation(
        family=family, genus=g, n=n, generators=tuple(gens), relations=tuple(rels), order=order,
        expander=expander, weights=a, params=params, rules=("monomial",) * n,
    )


def build_cusp_chain(a: Sequence[int]) -> CurvePresentation:
    """Transversal union of the cuspidal curves ``C^cusp(a_i)`` (all ``hbar = 0``)."""
    return build_special_curve(a, None, family="cusp")


def special_curve_template(curve: CurvePresentation) -> ShapeTemplate:
    """Leading monomials and lower-term classes of the special-curve relations."""
    a = curve.weights
    n = curve.n
    pos = [i for i in range(1, n + 1) if a[i - 1] > 0]
    zer = [j for j in range(1, n + 1) if a[j - 1] == 0]

    def branch_class(i: int) -> Callable[[Monomial], bool]:
        ai = a[i - 1]

        def ok(m: Monomial) -> bool:
            d = m.as_dict()
            names = set(d)
            allowed = {_hname(i, k) for k in range(ai + 1)}
            if not names <= allowed:
                return False
            if len(m.items) == 1 and m.total_degree() == 1:
                return True
            # h_i(k) h_i(0) with k <= a_i - 1 represents h_i(k + a_i + 1)
            return m.total_degree() == 2 and d.get(_hname(i, 0), 0) >= 1

        return ok

    order = curve.order
    rules = []
    for ii, i in enumerate(pos):
        for i2 in pos[ii + 1:]:
            for m in range(a[i - 1] + 1):
                for m2 in range(a[i2 - 1] + 1):
                    lm = Monomial.var(_hname(i, m)) * Monomial.var(_hname(i2, m2))
                    rules.append(LeadingRule(lm, lambda _m: False, {}, "cross products vanish"))
    for i in pos:
        ai = a[i - 1]
        for m in range(1, ai + 1):
            for m2 in range(m, ai + 1):
                lm = Monomial.var(_hname(i, m)) * Monomial.var(_hname(i, m2))
                k = m + m2
                if k <= ai:
                    req = Monomial.var(_hname(i, k)) * Monomial.var(_hname(i, 0))
                else:
                    req = Monomial.var(_hname(i, k - ai - 1)) * Monomial.var(_hname(i, 0), 2)
                rules.append(LeadingRule(lm, lambda _m: False, {req: Fraction(-1)}, "h_i(m)h_i(m') = h_i(m+m')h_i(0)"))
    for i in pos:
        for j in zer:
            for m in range(a[i - 1] + 1):
                lm = Monomial.var(_hname(i, m)) * Monomial.var(f"h{j}")
                rules.append(LeadingRule(lm, branch_class(i), {}, f"branch-{i} class"))
    for jx, j in enumerate(zer):
        for jj in zer[jx + 1:]:
            lm = Monomial.var(f"h{j}") * Monomial.var(f"h{jj}")
            classes = [branch_class(i) for i in pos]
            rules.append(LeadingRule(lm, lambda m, cl=classes: any(f(m) for f in cl), {}, "sum of branch classes"))

    def normal(m: Monomial) -> bool:
        d = m.as_dict()
        if not d:
            return True
        branches = set()
        for v in d:
            if "." in v:
                branches.add(("pos", int(v[1:].split(".")[0])))
            else:
                branches.add(("zero", int(v[1:])))
        if len(branches) != 1:
            return False
        kind, i = branches.pop()
        if kind == "zero":
            return True
        high = [v for v in d if not v.endswith(".0")]
        return len(high) == 0 or (len(high) == 1 and d[high[0]] == 1)

    bound = 2 * max(g.deg1 for g in curve.generators) + 2
    return ShapeTemplate(f"special{tuple(a)}", order, tuple(rules), normal, bound)


# ---------------------------------------------------------------------------
# genus one with two and three marked points


def _weierstrass_p1(pi: Fraction, s: Fraction, hi: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """``f1, h1`` at ``p1`` in the parameter ``t = f1/h1`` (valid below ``hi``)."""
    target = hi + 6
    t = TruncatedSeries({1: 1}, hi=target, lo=1)
    u = TruncatedSeries({3: 1}, hi=target, lo=3)
    for _ in range(target):
        nxt = (TruncatedSeries({3: 1}, hi=target, lo=3) + t * u * u * pi + u * u * u * s).truncate(target)
        nxt = TruncatedSeries(nxt.coeffs, hi=target, lo=3)
        if nxt == u:
            break
        u = nxt
    else:  # pragma: no cover - the iteration is a contraction
        raise MathFailure("fixed point iteration did not converge")
    from .laurent import series_invert

    h1 = series_invert(u)
    f1 = t * h1
    return f1.truncate(hi), h1.truncate(hi)


def _fixed_point(step: Callable[[dict[str, TruncatedSeries]], dict[str, TruncatedSeries]],
                 start: dict[str, TruncatedSeries], hi: int) -> dict[str, TruncatedSeries]:
    cur = {k: v.truncate(hi) for k, v in start.items()}
    for _ in range(hi + 4):
        nxt = {k: TruncatedSeries(v.truncate(hi).coeffs, hi=hi, lo=min(0, v.lo), branch=v.branch)
               for k, v in step(cur).items()}
        if all(nxt[k] == cur[k] for k in cur) and all(v.hi >= hi for v in nxt.values()):
            return nxt
        cur = nxt
    raise MathFailure("fixed point iteration did not converge")  # pragma: no cover


def build_g1_n2(a: object, b: object, e: object, pi: object) -> CurvePresentation:
    """Genus one, two marked points, weights ``(1, 0)``.

    Relations ``h1^2 = f1^3 + pi f1 + s``, ``f1 h12 = a h1 + b h12 + a e`` and
    ``h1 h12 = a f1^2 + e h12 + a b f1 + a(pi + b^2)`` with
    ``s = e^2 - b(pi + b^2)``.  ``a = 0`` gives the degenerate point where a
    rational component carries the second marked point.
    """
    a, b, e, pi = (Fraction(x) for x in (a, b, e, pi))
    s = e * e - b * (pi + b * b)
    gens = (
        Generator("h12", 1, 1, (1, 1)),
        Generator("f1", 2, 0, (2, 0)),
        Generator("h1", 3, 0, (3, 0)),
    )
    order = OrderSpec({"h12": 1, "f1": 2, "h1": 3}, {"h12": 1}, ("h12", "f1", "h1"))
    F, H, G = Polynomial.var("f1"), Polynomial.var("h1"), Polynomial.var("h12")
    rels = (
        H * H - F**3 - F.scale(pi) - s,
        F * G - H.scale(a) - G.scale(b) - a * e,
        H * G - (F * F).scale(a) - G.scale(e) - F.scale(a * b) - a * (pi + b * b),
    )

    def expander(branch: int, hi: int) -> dict[str, TruncatedSeries]:
        if branch == 1:
            f1, h1 = _weierstrass_p1(pi, s, hi + 4)
            h12 = ((h1 + e) * (f1 - b) ** -1).scale(a) if a else TruncatedSeries.zero(hi, 1)
            return {"f1": f1.truncate(hi), "h1": h1.truncate(hi), "h12": h12.truncate(hi)}
        t2 = TruncatedSeries({1: 1}, hi=hi + 2, lo=1, branch=2)

        def step(cur: dict[str, TruncatedSeries]) -> dict[str, TruncatedSeries]:
            f, h = cur["f1"], cur["h1"]
            return {
                "f1": (t2 * (h + e)).scale(a) + b,
                "h1": t2 * ((f * f).scale(a) + f.scale(a * b) + a * (pi + b * b)) + e,
            }

        start = {"f1": TruncatedSeries.constant(b, hi + 2, 2), "h1": TruncatedSeries.constant(e, hi + 2, 2)}
        fp = _fixed_point(step, start, hi + 2)
        return {"f1": fp["f1"].truncate(hi), "h1": fp["h1"].truncate(hi),
                "h12": TruncatedSeries({-1: 1}, hi=hi, lo=-1, branch=2)}

    return CurvePresentation(
        family="g1n2", genus=1, n=2, generators=gens, relations=rels, order=order, expander=expander,
        weights=(1, 0), params={"a": a, "b": b, "e": e, "pi": pi, "s": s},
        rules=("weierstrass-fixed-point", "fixed-point"),
    )


def g1n2_template(order: OrderSpec | None = None) -> ShapeTemplate:
    order = order or OrderSpec({"h12": 1, "f1": 2, "h1": 3}, {"h12": 1}, ("h12", "f1", "h1"))
    M = Monomial.from_dict
    one, f1, h1, h12 = M({}), M({"f1": 1}), M({"h1": 1}), M({"h12": 1})
    rules = (
        LeadingRule(M({"h1": 2}), lambda m: m in {f1, one}, {M({"f1": 3}): Fraction(-1)}, "h1^2 = f1^3 + pi f1 + s"),
        LeadingRule(M({"f1": 1, "h12": 1}), lambda m: m in {h1, h12, one}, {}, "f1 h12 in <h1, h12, 1>"),
        LeadingRule(M({"h1": 1, "h12": 1}), lambda m: m in {M({"f1": 2}), h12, f1, one}, {},
                    "h1 h12 in <f1^2, h12, f1, 1>"),
    )

    def normal(m: Monomial) -> bool:
        d = m.as_dict()
        if d.get("h12"):
            return set(d) == {"h12"}
        return d.get("h1", 0) <= 1

    return ShapeTemplate("g1n2", order, rules, normal, 12)


def g1n3_parameters(M: Sequence[Sequence[object]], t: object) -> dict[str, Fraction]:
    """Invert the change of variables from ``(M, t)`` to the relation coefficients."""
    m = [[Fraction(x) for x in row] for row in M]
    if len(m) != 2 or any(len(r) != 4 for r in m):
        raise UsageError("M must be a 2x4 matrix")
    t = Fraction(t)
    b12, b13 = t, m[0][2] + t
    e12 = (m[1][2] - m[0][3]) / 2
    e13 = (m[1][2] + m[0][3]) / 2
    pi = m[1][3] - (b12 * b12 + b12 * b13 + b13 * b13)
    a12, a13 = m[0][0], m[0][1]
    c23, c32 = m[1][0], -m[1][1]
    d = a12 * a13 * (b12 + b13)
    s1 = e12 * e12 - b12**3 - pi * b12
    return {"a12": a12, "a13": a13, "b12": b12, "b13": b13, "e12": e12, "e13": e13, "pi": pi,
            "c23": c23, "c32": c32, "d": d, "s1": s1}


def _rank_2x4(m: Sequence[Sequence[Fraction]]) -> int:
    if not any(any(r) for r in m):
        return 0
    for i in range(4):
        for j in range(i + 1, 4):
            if m[0][i] * m[1][j] - m[0][j] * m[1][i]:
                return 2
    return 1


def build_g1_n3(M: Sequence[Sequence[object]], t: object, force: bool = False) -> CurvePresentation:
    """Genus one, three marked points, weights ``(1, 0, 0)``; needs ``rank M <= 1``.

    With ``force=True`` a rank-2 matrix is accepted so that the failure of
    the Groebner criterion can be exhibited; such presentations have no
    expansion rule.
    """
    mm = [[Fraction(x) for x in row] for row in M]
    rk = _rank_2x4(mm)
    if rk > 1 and not force:
        raise UsageError(f"matrix M has rank {rk}; the family requires rank <= 1")
    p = g1n3_parameters(mm, t)
    a12, a13, b12, b13, e12, e13 = p["a12"], p["a13"], p["b12"], p["b13"], p["e12"], p["e13"]
    pi, c23, c32, d, s1 = p["pi"], p["c23"], p["c32"], p["d"], p["s1"]
    gens = (
        Generator("h12", 1, 1, (1, 1, 0)),
        Generator("h13", 1, 1, (1, 0, 1)),
        Generator("f1", 2, 0, (2, 0, 0)),
        Generator("h1", 3, 0, (3, 0, 0)),
    )
    order = OrderSpec({"h12": 1, "h13": 1, "f1": 2, "h1": 3}, {"h12": 1, "h13": 1}, ("h12", "h13", "f1", "h1"))
    F, H = Polynomial.var("f1"), Polynomial.var("h1")
    G = {2: Polynomial.var("h12"), 3: Polynomial.var("h13")}
    A = {2: a12, 3: a13}
    B = {2: b12, 3: b13}
    E = {2: e12, 3: e13}
    rels = [H * H - F**3 - F.scale(pi) - s1]
    for i in (2, 3):
        rels.append(F * G[i] - H.scale(A[i]) - G[i].scale(B[i]) - A[i] * E[i])
    for i in (2, 3):
        rels.append(H * G[i] - (F * F).scale(A[i]) - G[i].scale(E[i]) - F.scale(A[i] * B[i])
                    - A[i] * (pi + B[i] * B[i]))
    rels.append(G[2] * G[3] - G[2].scale(c32) - G[3].scale(c23) - F.scale(a12 * a13) - d)

    def expander(branch: int, hi: int) -> dict[str, TruncatedSeries]:
        if branch == 1:
            f1, h1 = _weierstrass_p1(pi, s1, hi + 4)
            out = {"f1": f1.truncate(hi), "h1": h1.truncate(hi)}
            for i in (2, 3):
                if A[i]:
                    out[f"h1{i}"] = ((h1 + E[i]) * (f1 - B[i]) ** -1).scale(A[i]).truncate(hi)
                else:
                    out[f"h1{i}"] = TruncatedSeries.zero(hi, 1)
            return out
        i = branch
        other = 5 - branch
        c_self, c_other = (c23, c32) if i == 2 else (c32, c23)
        hi2 = hi + 2
        tt = TruncatedSeries({1: 1}, hi=hi2, lo=1, branch=i)

        def step(cur: dict[str, TruncatedSeries]) -> dict[str, TruncatedSeries]:
            f, h = cur["f1"], cur["h1"]
            return {
                "f1": (tt * (h + E[i])).scale(A[i]) + B[i],
                "h1": tt * ((f * f).scale(A[i]) + f.scale(A[i] * B[i]) + A[i] * (pi + B[i] * B[i])) + E[i],
            }

        start = {"f1": TruncatedSeries.constant(B[i], hi2, i), "h1": TruncatedSeries.constant(E[i], hi2, i)}
        fp = _fixed_point(step, start, hi2)
        # h_{1,other} = (c_other + t (a12 a13 f1 + d)) / (1 - c_self t)
        num = tt * (fp["f1"].scale(a12 * a13) + d) + c_other
        den = TruncatedSeries({0: 1, 1: -c_self}, hi=hi2, lo=0, branch=i)
        h_other = num * den ** -1
        return {"f1": fp["f1"].truncate(hi), "h1": fp["h1"].truncate(hi),
                f"h1{i}": TruncatedSeries({-1: 1}, hi=hi, lo=-1, branch=i),
                f"h1{other}": h_other.truncate(hi)}

    return CurvePresentation(
        family="g1n3", genus=1, n=3, generators=gens, relations=tuple(rels), order=order,
        expander=None if rk > 1 else expander, weights=(1, 0, 0),
        params={"M": [[str(x) for x in r] for r in mm], "t": Fraction(t), "rank": rk, **p},
        rules=("weierstrass-fixed-point", "fixed-point", "fixed-point"),
    )


def g1n3_template(order: OrderSpec | None = None) -> ShapeTemplate:
    order = order or OrderSpec({"h12": 1, "h13": 1, "f1": 2, "h1": 3}, {"h12": 1, "h13": 1},
                               ("h12", "h13", "f1", "h1"))
    M = Monomial.from_dict
    one, f1, h1 = M({}), M({"f1": 1}), M({"h1": 1})
    rules = [LeadingRule(M({"h1": 2}), lambda m: m in {f1, one}, {M({"f1": 3}): Fraction(-1)}, "Weierstrass")]
    for g in ("h12", "h13"):
        gi = M({g: 1})
        rules.append(LeadingRule(M({"f1": 1, g: 1}), lambda m, gi=gi: m in {h1, gi, one}, {}, f"f1 {g}"))
        rules.append(LeadingRule(M({"h1": 1, g: 1}), lambda m, gi=gi: m in {M({"f1": 2}), gi, f1, one}, {}, f"h1 {g}"))
    h12, h13 = M({"h12": 1}), M({"h13": 1})
    rules.append(LeadingRule(M({"h12": 1, "h13": 1}), lambda m: m in {h12, h13, f1, one}, {}, "h12 h13"))

    def normal(m: Monomial) -> bool:
        d = m.as_dict()
        if d.get("h12") or d.get("h13"):
            return set(d) in ({"h12"}, {"h13"})
        return d.get("h1", 0) <= 1

    return ShapeTemplate("g1n3", order, tuple(rules), normal, 12)


# ---------------------------------------------------------------------------
# hyperelliptic curves


def build_hyperelliptic(g: int, coeffs: Sequence[object]) -> CurvePresentation:
    """``y^2 = x^(2g+1) + a_1 x^(2g-1) + ... + a_{2g}`` marked at infinity."""
    g = int(g)
    if g < 1:
        raise UsageError("genus must be >= 1")
    cs = [Fraction(x) for x in coeffs]
    if len(cs) != 2 * g:
        raise UsageError(f"need {2 * g} coefficients a_1..a_{2 * g}")
    gens = (Generator("x", 2, 0, (2,)), Generator("y", 2 * g + 1, 0, (2 * g + 1,)))
    order = _order_for(gens)
    X, Y = Polynomial.var("x"), Polynomial.var("y")
    rel = Y * Y - X ** (2 * g + 1)
    for i, c in enumerate(cs, start=1):
        rel = rel - (X ** (2 * g - i)).scale(c)

    def expander(branch: int, hi: int) -> dict[str, TruncatedSeries]:
        prec = hi + 2 * g + 1
        rad = {0: Fraction(1)}
        for i, c in enumerate(cs, start=1):
            if c and 2 * i + 2 < prec:
                rad[2 * i + 2] = c
        root = TruncatedSeries(rad, hi=prec, lo=0).sqrt()
        y = root.shift(-(2 * g + 1))
        return {"x": TruncatedSeries.monomial(-2, hi, 1, 1), "y": y.truncate(hi)}

    return CurvePresentation(
        family="hyperelliptic" if g > 1 else "weierstrass", genus=g, n=1, generators=gens, relations=(rel,),
        order=order, expander=expander, weights=(1,) if g == 1 else None,
        params={"g": g, "coeffs": cs},
        coefficient_weights={f"a{i}": 2 * i + 2 for i in range(1, 2 * g + 1)},
        rules=("monomial-sqrt",),
    )


def hyperelliptic_template(curve: CurvePresentation) -> ShapeTemplate:
    g = curve.genus
    M = Monomial.from_dict
    lower = {M({"x": k}) for k in range(0, 2 * g)}
    rule = LeadingRule(M({"y": 2}), lambda m: m in lower, {M({"x": 2 * g + 1}): Fraction(-1)}, "plane model")

    def normal(m: Monomial) -> bool:
        return m.exponent("y") <= 1

    return ShapeTemplate(f"hyperelliptic(g={g})", curve.order, (rule,), normal, 4 * g + 4)


def coefficient_weights(curve: CurvePresentation) -> dict[str, int]:
    """Weights of the plane-model coefficients read off from the relation.

    The coefficient of ``x^(2g-i)`` in ``y^2`` has weight
    ``deg1(y^2) - deg1(x^(2g-i))``.
    """
    if curve.family not in ("hyperelliptic", "weierstrass"):
        raise UsageError("coefficient weights are defined for plane models only")
    g = curve.genus
    lead = Monomial.var("y", 2)
    out = {}
    for i in range(1, 2 * g + 1):
        out[f"a{i}"] = curve.order.degree1(lead) - curve.order.degree1(Monomial.var("x", 2 * g - i))
    return out


# ---------------------------------------------------------------------------
# eliminating redundant generators


def eliminate_generators(curve: CurvePresentation) -> tuple[tuple[str, ...], tuple[Polynomial, ...]]:
    """Drop generators that a relation expresses through the others.

    A relation ``v - q`` with ``q`` free of ``v`` is used to substitute ``v``
    away.  Returns the remaining generator names and the reduced Groebner
    basis of the relations among them (same graded order, restricted).
    """
    rels = list(curve.relations)
    names = list(curve.names)
    changed = True
    while changed:
        changed = False
        for r in rels:
            for v in names:
                m = Monomial.var(v)
                c = r.coefficient(m)
                if not c:
                    continue
                rest = r - Polynomial.monomial(m, c)
                if v in rest.variables():
                    continue
                expr = rest.scale(-1 / c)
                rels = [x.substitute({v: expr}) for x in rels if x is not r]
                rels = [x for x in rels if x]
                names.remove(v)
                changed = True
                break
            if changed:
                break
    deg1 = {v: curve.order.deg1[v] for v in names}
    deg2 = {v: curve.order.deg2[v] for v in names}
    order = OrderSpec(deg1, deg2, tuple(v for v in curve.order.var_order if v in names))
    gb = buchberger(rels, order) if rels else GroebnerBasis((), order)
    return tuple(names), gb.elements


# ---------------------------------------------------------------------------
# sections and the marked-algebra axioms


def h0_basis(curve: CurvePresentation, D: Sequence[int], window: int | None = None) -> list[Polynomial]:
    """Basis of ``H^0(D)`` written in normal monomials, in echelon form.

    Each element is a normal monomial plus smaller normal monomials; for
    most divisors the elements are exactly the normal monomials whose pole
    profile is bounded by ``D``.
    """
    from .krichever import sections_with_poles

    return sections_with_poles(curve, D, window)


@dataclass
class MarkedAlgebraReport:
    a: tuple[int, ...]
    checks: dict[str, bool]
    details: dict[str, str]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def check_marked_algebra(curve: CurvePresentation, a: Sequence[int], bound: int = 3, window: int | None = None) -> MarkedAlgebraReport:
    """Check the marked-algebra axioms of the pole filtration for weights ``a``.

    ``F_m`` is the space of elements with pole order at most ``m_i`` at
    ``p_i``.  Checked for all ``m`` with ``a_i <= m_i <= a_i + bound``:
    ``F_a = F_0 = k``, the lattice identities, rank-one graded pieces above
    ``a``, and multiplicativity of the leading-coefficient markings.
    """
    from .krichever import subspace_from_curve

    a = tuple(int(x) for x in a)
    if len(a) != curve.n:
        raise UsageError("weights length differs from number of points")
    top = max(a) + bound
    w = subspace_from_curve(curve, window or max(8, top + 2))
    checks: dict[str, bool] = {}
    details: dict[str, str] = {}
    f0 = w.h0_span([0] * curve.n)
    fa = w.h0_span(list(a))
    checks["F_0 = k"] = f0 == 1
    checks["F_a = k"] = fa == 1
    details["F_0 = k"] = f"rank F_0 = {f0}"
    details["F_a = k"] = f"rank F_a = {fa}"
    import itertools

    grid = list(itertools.product(*[range(ai, ai + bound + 1) for ai in a]))
    dims = {m: w.h0_span(list(m)) for m in grid}
    lattice_ok = True
    for m1 in grid:
        for m2 in grid:
            lo = tuple(min(x, y) for x, y in zip(m1, m2))
            hi_ = tuple(max(x, y) for x, y in zip(m1, m2))
            if dims[hi_] + dims[lo] != dims[m1] + dims[m2]:
                lattice_ok = False
                details["lattice"] = f"dim F_max + dim F_min != dim F_m + dim F_m' at {m1}, {m2}"
                break
        if not lattice_ok:
            break
    checks["lattice"] = lattice_ok
    rank_ok = True
    for m in grid:
        for i in range(curve.n):
            up = tuple(x + (1 if k == i else 0) for k, x in enumerate(m))
            if up in dims and dims[up] - dims[m] != 1:
                rank_ok = False
                details["graded rank one"] = f"rank F_{up}/F_{m} = {dims[up] - dims[m]}"
    checks["graded rank one"] = rank_ok
    checks["markings multiplicative"] = w.markings_multiplicative(a, bound)
    return MarkedAlgebraReport(a, checks, details)

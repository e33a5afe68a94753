"""Buchberger's algorithm, normal forms and shape templates.

The shape machinery checks that a candidate basis has a prescribed set of
leading monomials, that every lower term belongs to an allowed class, and
that the candidate satisfies Buchberger's S-pair criterion.  Failures carry
a concrete witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import Monomial, OrderSpec, Polynomial
from .errors import ShapeViolation, UsageError

__all__ = [
    "IdealPresentation",
    "GroebnerBasis",
    "buchberger",
    "s_polynomial",
    "normal_form",
    "normal_monomials_upto",
    "enumerate_monomials",
    "LeadingRule",
    "ShapeTemplate",
    "ShapeReport",
    "Violation",
    "verify_shape",
]


@dataclass(frozen=True)
class IdealPresentation:
    generators: tuple[Polynomial, ...]
    order: OrderSpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            for m in g.terms:
                self.order.check(m)


def s_polynomial(f: Polynomial, g: Polynomial, order: OrderSpec) -> Polynomial:
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    lcm = mf.lcm(mg)
    return f.mul_term(lcm / mf, 1 / cf) - g.mul_term(lcm / mg, 1 / cg)


def _reduce(p: Polynomial, basis: Sequence[tuple[Monomial, Polynomial]], order: OrderSpec, full: bool = True) -> Polynomial:
    """Reduce ``p`` by monic ``(leading monomial, element)`` pairs."""
    key = order.key
    work = dict(p.terms)
    rem: dict[Monomial, Fraction] = {}
    while work:
        m = max(work, key=key)
        c = work[m]
        for lm, g in basis:
            if lm.divides(m):
                q = m / lm
                for gm, gc in g.terms.items():
                    t = gm * q
                    s = work.get(t, 0) - c * gc
                    if s:
                        work[t] = s
                    else:
                        work.pop(t, None)
                break
        else:
            del work[m]
            rem[m] = c
            if not full:
                rem.update(work)
                break
    return Polynomial._raw(rem)


def normal_form(p: Polynomial, gb: "GroebnerBasis | Sequence[Polynomial]", order: OrderSpec | None = None) -> Polynomial:
    """Fully reduced remainder of ``p``; unique when ``gb`` is a Groebner basis."""
    if isinstance(gb, GroebnerBasis):
        return gb.normal_form(p)
    if order is None:
        raise UsageError("normal_form over a plain list needs an order")
    pairs = [(g.leading_monomial(order), g.monic(order)) for g in gb if g]
    return _reduce(p, pairs, order)


class GroebnerBasis:
    """A (reduced, when produced by :func:`buchberger`) Groebner basis."""

    def __init__(self, elements: Iterable[Polynomial], order: OrderSpec):
        self.order = order
        elems = [e.monic(order) for e in elements if e]
        elems.sort(key=lambda e: order.key(e.leading_monomial(order)))
        self.elements: tuple[Polynomial, ...] = tuple(elems)
        self._pairs = [(e.leading_monomial(order), e) for e in self.elements]

    @property
    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(lm for lm, _ in self._pairs)

    def normal_form(self, p: Polynomial) -> Polynomial:
        return _reduce(p, self._pairs, self.order)

    def contains(self, p: Polynomial) -> bool:
        return not self.normal_form(p)

    def is_normal(self, m: Monomial) -> bool:
        return not any(lm.divides(m) for lm, _ in self._pairs)

    def normal_monomials_upto(self, bound: int) -> list[Monomial]:
        return normal_monomials_upto(self, bound)

    def is_groebner(self) -> bool:
        return not _failing_pairs(self.elements, self.order, first_only=True)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return set(self.elements) == set(other.elements) and self.order == other.order

    def __repr__(self) -> str:
        return "GroebnerBasis([" + ", ".join(e.to_str(self.order) for e in self.elements) + "])"


def _failing_pairs(elems: Sequence[Polynomial], order: OrderSpec, first_only: bool = False):
    pairs = [(e.leading_monomial(order), e.monic(order)) for e in elems]
    bad = []
    for (i, (mi, fi)), (j, (mj, fj)) in combinations(enumerate(pairs), 2):
        if mi.gcd_is_one(mj):
            continue  # product criterion
        s = s_polynomial(fi, fj, order)
        r = _reduce(s, pairs, order)
        if r:
            bad.append((i, j, s, r))
            if first_only:
                break
    return bad


def buchberger(ideal: IdealPresentation | Sequence[Polynomial], order: OrderSpec | None = None) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm (normal strategy).

    Pairs are processed by increasing lcm; the product criterion and the
    chain criterion skip pairs known to reduce to zero.
    """
    if not isinstance(ideal, IdealPresentation):
        if order is None:
            raise UsageError("buchberger over a plain list needs an order")
        ideal = IdealPresentation(tuple(ideal), order)
    order = ideal.order
    key = order.key
    basis: list[tuple[Monomial, Polynomial]] = []
    for g in ideal.generators:
        r = _reduce(g, basis, order)
        if r:
            r = r.monic(order)
            basis.append((r.leading_monomial(order), r))
    if not basis:
        return GroebnerBasis((), order)
    pairs: set[tuple[int, int]] = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    done: set[tuple[int, int]] = set()

    def pair_lcm(pr: tuple[int, int]) -> Monomial:
        return basis[pr[0]][0].lcm(basis[pr[1]][0])

    while pairs:
        pr = min(pairs, key=lambda q: key(pair_lcm(q)))
        pairs.discard(pr)
        done.add(pr)
        i, j = pr
        mi, fi = basis[i]
        mj, fj = basis[j]
        if mi.gcd_is_one(mj):
            continue
        lcm = mi.lcm(mj)
        chain = False
        for k in range(len(basis)):
            if k in (i, j) or not basis[k][0].divides(lcm):
                continue
            if tuple(sorted((i, k))) in done and tuple(sorted((j, k))) in done:
                chain = True
                break
        if chain:
            continue
        s = s_polynomial(fi, fj, order)
        r = _reduce(s, basis, order)
        if r:
            r = r.monic(order)
            basis.append((r.leading_monomial(order), r))
            n = len(basis) - 1
            pairs.update((k, n) for k in range(n))
    return _reduced(basis, order)


def _reduced(basis: list[tuple[Monomial, Polynomial]], order: OrderSpec) -> GroebnerBasis:
    key = order.key
    basis = sorted(basis, key=lambda mp: key(mp[0]))
    minimal: list[tuple[Monomial, Polynomial]] = []
    for lm, f in basis:
        if not any(m.divides(lm) for m, _ in minimal):
            minimal.append((lm, f))
    out = []
    for idx, (lm, f) in enumerate(minimal):
        others = [mp for k, mp in enumerate(minimal) if k != idx]
        out.append(_reduce(f, others, order).monic(order))
    return GroebnerBasis(out, order)


def enumerate_monomials(variables: Sequence[str], deg1: Mapping[str, int], bound: int) -> list[Monomial]:
    """All monomials in ``variables`` with weighted degree at most ``bound``."""
    vs = list(variables)
    for v in vs:
        if deg1[v] <= 0:
            raise UsageError(f"variable {v!r} has non-positive deg1; enumeration unbounded")
    out: list[Monomial] = []

    def rec(k: int, left: int, acc: dict[str, int]) -> None:
        if k == len(vs):
            out.append(Monomial.from_dict(acc))
            return
        v = vs[k]
        e = 0
        while e * deg1[v] <= left:
            if e:
                acc[v] = e
            rec(k + 1, left - e * deg1[v], acc)
            e += 1
        acc.pop(v, None)

    rec(0, bound, {})
    return out


def normal_monomials_upto(gb: GroebnerBasis, bound: int) -> list[Monomial]:
    """Monomials of deg1 at most ``bound`` not divisible by any leading monomial."""
    order = gb.order
    mons = [m for m in enumerate_monomials(order.var_order, order.deg1, bound) if gb.is_normal(m)]
    mons.sort(key=order.key)
    return mons


# ---------------------------------------------------------------------------
# shape templates


@dataclass(frozen=True)
class LeadingRule:
    """Constraint on the basis element whose leading monomial is ``leading``.

    ``allowed(m)`` decides whether a lower monomial may occur; ``required``
    lists lower monomials whose coefficient is prescribed exactly.
    """

    leading: Monomial
    allowed: Callable[[Monomial], bool]
    required: Mapping[Monomial, Fraction] = field(default_factory=dict)
    description: str = ""


@dataclass(frozen=True)
class ShapeTemplate:
    name: str
    order: OrderSpec
    rules: tuple[LeadingRule, ...]
    normal_family: Callable[[Monomial], bool] | None = None
    family_bound: int = 0

    def rule_for(self, m: Monomial) -> LeadingRule | None:
        for r in self.rules:
            if r.leading == m:
                return r
        return None

    @property
    def leading_set(self) -> frozenset[Monomial]:
        return frozenset(r.leading for r in self.rules)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    witness: object = None


@dataclass
class ShapeReport:
    template: str
    violations: list[Violation]

    @property
    def passed(self) -> bool:
        return not self.violations

    def raise_on_failure(self) -> None:
        if self.violations:
            raise ShapeViolation("; ".join(f"{v.kind}: {v.detail}" for v in self.violations))

    def __bool__(self) -> bool:
        return self.passed


def verify_shape(candidate: GroebnerBasis | Sequence[Polynomial], template: ShapeTemplate,
                 check_pairs: bool = True) -> ShapeReport:
    """Check leading monomials, lower-term classes, exact terms and S-pairs."""
    order = template.order
    elems = list(candidate.elements if isinstance(candidate, GroebnerBasis) else candidate)
    elems = [e.monic(order) for e in elems if e]
    violations: list[Violation] = []
    seen: dict[Monomial, Polynomial] = {}
    for e in elems:
        lm = e.leading_monomial(order)
        if lm in seen:
            violations.append(Violation("duplicate-leading", f"two elements lead with {lm}", (seen[lm], e)))
            continue
        seen[lm] = e
        rule = template.rule_for(lm)
        if rule is None:
            violations.append(Violation("unexpected-leading", f"leading monomial {lm} not in template", e))
            continue
        for m, c in e.terms.items():
            if m == lm:
                continue
            if m in rule.required:
                continue
            if not rule.allowed(m):
                violations.append(Violation("lower-term", f"{m} not allowed below {lm} ({rule.description})", e))
        for m, c in rule.required.items():
            if e.coefficient(m) != c:
                violations.append(
                    Violation("required-term", f"coefficient of {m} below {lm} is {e.coefficient(m)}, expected {c}", e)
                )
    for r in template.rules:
        if r.leading not in seen:
            violations.append(Violation("missing-leading", f"no element leads with {r.leading}"))
    if check_pairs and elems:
        for i, j, s, rem in _failing_pairs(elems, order):
            violations.append(
                Violation(
                    "s-pair",
                    f"S({elems[i].leading_monomial(order)}, {elems[j].leading_monomial(order)}) reduces to {rem.to_str(order)}",
                    {"pair": (elems[i], elems[j]), "s_polynomial": s, "normal_form": rem},
                )
            )
    if template.normal_family is not None and template.family_bound > 0 and not violations:
        lms = list(seen)
        for m in enumerate_monomials(order.var_order, order.deg1, template.family_bound):
            normal = not any(lm.divides(m) for lm in lms)
            if normal != template.normal_family(m):
                violations.append(
                    Violation("normal-family", f"monomial {m} normal={normal} disagrees with the expected family", m)
                )
                break
    return ShapeReport(template.name, violations)

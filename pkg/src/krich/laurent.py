"""Truncated Laurent series, vectors of them, and formal parameter changes.

A :class:`TruncatedSeries` knows its coefficients exactly on a window
``lo <= e < hi``; everything below ``lo`` is zero and everything from
``hi`` on is unknown.  Arithmetic tracks the window that the inputs
certify, and asking for an uncertified coefficient raises
:class:`~krich.errors.PrecisionError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import PrecisionError, UsageError

__all__ = [
    "TruncatedSeries",
    "HVector",
    "ParamChange",
    "series_mul",
    "series_invert",
    "apply_param_change",
    "compose_changes",
    "invert_change",
]

_ZERO = Fraction(0)


class TruncatedSeries:
    """Element of k((t)) known on the window ``[lo, hi)``."""

    __slots__ = ("branch", "lo", "hi", "_c")

    def __init__(self, coeffs: Mapping[int, object] | None = None, hi: int = 0, lo: int | None = None, branch: int = 1):
        coeffs = {int(e): Fraction(c) for e, c in (coeffs or {}).items()}
        nz = [e for e, c in coeffs.items() if c]
        if lo is None:
            lo = min(nz) if nz else hi
        if nz and min(nz) < lo:
            raise UsageError("coefficient below the window start")
        lo = min(lo, hi)
        self.branch = branch
        self.lo = lo
        self.hi = hi
        self._c = [coeffs.get(e, _ZERO) for e in range(lo, hi)]

    @classmethod
    def _dense(cls, lo: int, hi: int, c: list[Fraction], branch: int) -> "TruncatedSeries":
        s = cls.__new__(cls)
        s.branch = branch
        s.lo = lo
        s.hi = hi
        s._c = c
        return s

    @classmethod
    def monomial(cls, e: int, hi: int, c: object = 1, branch: int = 1) -> "TruncatedSeries":
        if e >= hi:
            return cls._dense(hi, hi, [], branch)
        return cls({e: c}, hi=hi, lo=e, branch=branch)

    @classmethod
    def zero(cls, hi: int, branch: int = 1) -> "TruncatedSeries":
        return cls._dense(hi, hi, [], branch)

    @classmethod
    def constant(cls, c: object, hi: int, branch: int = 1) -> "TruncatedSeries":
        return cls.monomial(0, hi, c, branch)

    # access ------------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, Fraction]:
        return {self.lo + k: c for k, c in enumerate(self._c) if c}

    def coefficient(self, e: int) -> Fraction:
        if e >= self.hi:
            raise PrecisionError(f"coefficient t^{e} outside window [{self.lo},{self.hi})")
        if e < self.lo:
            return _ZERO
        return self._c[e - self.lo]

    __getitem__ = coefficient

    def valuation(self) -> int:
        """First exponent with a non-zero coefficient (``hi`` if none is known)."""
        for k, c in enumerate(self._c):
            if c:
                return self.lo + k
        return self.hi

    def is_zero(self) -> bool:
        return not any(self._c)

    def truncate(self, hi: int) -> "TruncatedSeries":
        if hi >= self.hi:
            return self
        lo = min(self.lo, hi)
        return TruncatedSeries._dense(lo, hi, self._c[: hi - lo], self.branch)

    def with_branch(self, branch: int) -> "TruncatedSeries":
        return TruncatedSeries._dense(self.lo, self.hi, list(self._c), branch)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``t^k`` (exact)."""
        return TruncatedSeries._dense(self.lo + k, self.hi + k, list(self._c), self.branch)

    def polar_part(self) -> dict[int, Fraction]:
        return {e: c for e, c in self.coeffs.items() if e < 0}

    # arithmetic --------------------------------------------------------
    def _check_branch(self, other: "TruncatedSeries") -> None:
        if self.branch != other.branch:
            raise UsageError(f"branch mismatch: {self.branch} vs {other.branch}")

    def __add__(self, other: "TruncatedSeries | int | Fraction") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.hi, self.branch)
        self._check_branch(other)
        lo = min(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        lo = min(lo, hi)
        c = [_ZERO] * (hi - lo)
        for k in range(max(self.lo, lo), min(self.hi, hi)):
            c[k - lo] = self._c[k - self.lo]
        for k in range(max(other.lo, lo), min(other.hi, hi)):
            c[k - lo] += other._c[k - other.lo]
        return TruncatedSeries._dense(lo, hi, c, self.branch)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries._dense(self.lo, self.hi, [-x for x in self._c], self.branch)

    def __sub__(self, other: "TruncatedSeries | int | Fraction") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.hi, self.branch)
        return self + (-other)

    def __rsub__(self, other: "int | Fraction") -> "TruncatedSeries":
        return (-self) + other

    def scale(self, c: object) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries._dense(self.lo, self.hi, [c * x for x in self._c], self.branch)

    def __mul__(self, other: "TruncatedSeries | int | Fraction") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        return series_mul(self, other)

    def __rmul__(self, other: "int | Fraction") -> "TruncatedSeries":
        return self.scale(other)

    def __pow__(self, k: int) -> "TruncatedSeries":
        if k < 0:
            return series_invert(self) ** (-k)
        if k == 0:
            return TruncatedSeries.constant(1, max(1, self.hi - self.valuation()), self.branch)
        out = None
        base = self
        while k:
            if k & 1:
                out = base if out is None else out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __truediv__(self, other: "TruncatedSeries | int | Fraction") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return self.scale(1 / Fraction(other))
        return self * series_invert(other)

    def sqrt(self) -> "TruncatedSeries":
        """Square root of a series whose leading term is ``t^{2v}``."""
        v = self.valuation()
        if v >= self.hi:
            raise PrecisionError("square root of a series that vanishes on its window")
        if (v % 2) or self.coefficient(v) != 1:
            raise UsageError("sqrt needs leading term t^(2v) with coefficient 1")
        u = self._c[v - self.lo:]
        n = len(u)
        r = [_ZERO] * n
        r[0] = Fraction(1)
        for m in range(1, n):
            acc = u[m]
            for k in range(1, m):
                if r[k] and r[m - k]:
                    acc -= r[k] * r[m - k]
            r[m] = acc / 2
        h = v // 2
        return TruncatedSeries._dense(h, h + n, r, self.branch)

    def compose(self, g: "ParamChange") -> "TruncatedSeries":
        return apply_param_change(self, g)

    # comparison --------------------------------------------------------
    def agrees(self, other: "TruncatedSeries", upto: int | None = None) -> bool:
        """Equality of coefficients on the common window (optionally capped)."""
        hi = min(self.hi, other.hi) if upto is None else min(self.hi, other.hi, upto)
        lo = min(self.lo, other.lo)
        return all(self.coefficient(e) == other.coefficient(e) for e in range(lo, hi))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.branch == other.branch and self.hi == other.hi and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.branch, self.hi, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*t^{e}" for e, c in sorted(self.coeffs.items())) or "0"
        return f"TruncatedSeries[b{self.branch}]({terms} + O(t^{self.hi}))"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product on the window ``[l1+l2, min(v1+h2, v2+h1))``."""
    a._check_branch(b)
    va, vb = a.valuation(), b.valuation()
    lo = a.lo + b.lo
    hi = min(va + b.hi, vb + a.hi)
    if hi <= lo:
        return TruncatedSeries._dense(hi, hi, [], a.branch)
    n = hi - lo
    c = [_ZERO] * n
    ac, bc = a._c, b._c
    al, bl = a.lo, b.lo
    for i in range(va - al, len(ac)):
        x = ac[i]
        if not x:
            continue
        off = i
        lim = n - off
        if lim <= 0:
            break
        for j in range(vb - bl, min(len(bc), lim)):
            y = bc[j]
            if y:
                c[off + j] += x * y
    return TruncatedSeries._dense(lo, hi, c, a.branch)


def series_invert(s: TruncatedSeries) -> TruncatedSeries:
    """Inverse of a series with certified leading term ``c t^v``: window ``[-v, hi-2v)``."""
    v = s.valuation()
    if v >= s.hi:
        raise PrecisionError("cannot invert a series that vanishes on its window")
    u = s._c[v - s.lo:]
    n = len(u)
    inv0 = 1 / u[0]
    r = [_ZERO] * n
    r[0] = inv0
    for m in range(1, n):
        acc = _ZERO
        for k in range(1, m + 1):
            if u[k]:
                acc += u[k] * r[m - k]
        r[m] = -acc * inv0
    return TruncatedSeries._dense(-v, -v + n, r, s.branch)


class HVector:
    """An element of H = sum of k((t_i)): one truncated series per branch."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[TruncatedSeries]):
        comps = tuple(components)
        for i, s in enumerate(comps, start=1):
            if s.branch != i:
                comps = tuple(c.with_branch(k) for k, c in enumerate(comps, start=1))
                break
        self.components = comps

    @property
    def n(self) -> int:
        return len(self.components)

    def __getitem__(self, branch: int) -> TruncatedSeries:
        return self.components[branch - 1]

    @classmethod
    def one(cls, n: int, hi: int) -> "HVector":
        return cls([TruncatedSeries.constant(1, hi, i) for i in range(1, n + 1)])

    @classmethod
    def basis_vector(cls, n: int, branch: int, e: int, hi: int) -> "HVector":
        return cls([TruncatedSeries.monomial(e, hi, 1, i) if i == branch else TruncatedSeries.zero(hi, i)
                    for i in range(1, n + 1)])

    def coefficient(self, branch: int, e: int) -> Fraction:
        return self.components[branch - 1].coefficient(e)

    def _zip(self, other: "HVector", op) -> "HVector":
        if self.n != other.n:
            raise UsageError("HVector length mismatch")
        return HVector([op(a, b) for a, b in zip(self.components, other.components)])

    def __add__(self, other: "HVector") -> "HVector":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "HVector") -> "HVector":
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other: "HVector | int | Fraction") -> "HVector":
        if isinstance(other, HVector):
            return self._zip(other, lambda a, b: a * b)
        return HVector([a.scale(other) for a in self.components])

    __rmul__ = __mul__

    def __neg__(self) -> "HVector":
        return HVector([-a for a in self.components])

    def truncate(self, hi: int) -> "HVector":
        return HVector([a.truncate(hi) for a in self.components])

    @property
    def hi(self) -> tuple[int, ...]:
        return tuple(a.hi for a in self.components)

    def pole_orders(self) -> tuple[int, ...]:
        return tuple(max(0, -a.valuation()) for a in self.components)

    def as_dict(self, upto: int | None = None) -> dict[tuple[int, int], Fraction]:
        out = {}
        for s in self.components:
            for e, c in s.coeffs.items():
                if upto is None or e < upto:
                    out[(s.branch, e)] = c
        return out

    def __repr__(self) -> str:
        return "HVector(" + ", ".join(repr(c) for c in self.components) + ")"


@dataclass(frozen=True)
class ParamChange:
    """Per-branch substitution ``t_i -> t_i + c_1 t_i^2 + ... + c_K t_i^(K+1)``.

    As a map on series the substitution is applied exactly; as a group
    element it is known modulo ``t^(K+2)``, which is what composition and
    inversion return.
    """

    coefficients: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(c) for c in row) for row in self.coefficients)
        k = max((len(r) for r in rows), default=0)
        rows = tuple(r + (_ZERO,) * (k - len(r)) for r in rows)
        object.__setattr__(self, "coefficients", rows)

    @classmethod
    def identity(cls, n: int, order: int = 0) -> "ParamChange":
        return cls(tuple((_ZERO,) * order for _ in range(n)))

    @classmethod
    def single(cls, n: int, branch: int, power: int, c: object, order: int | None = None) -> "ParamChange":
        """The change ``t_branch -> t_branch + c t_branch^power`` (power >= 2)."""
        if power < 2:
            raise UsageError("a parameter change must have power >= 2")
        order = max(order or 0, power - 1)
        rows = []
        for i in range(1, n + 1):
            row = [_ZERO] * order
            if i == branch:
                row[power - 2] = Fraction(c)
            rows.append(tuple(row))
        return cls(tuple(rows))

    @property
    def n(self) -> int:
        return len(self.coefficients)

    @property
    def order(self) -> int:
        return len(self.coefficients[0]) if self.coefficients else 0

    def is_identity(self) -> bool:
        return not any(any(r) for r in self.coefficients)

    def unit_series(self, branch: int, hi: int) -> TruncatedSeries:
        """``u`` with ``phi(t) = t * u(t)`` (exact, shown up to ``hi``)."""
        row = self.coefficients[branch - 1]
        coeffs = {0: Fraction(1)}
        for k, c in enumerate(row, start=1):
            if c and k < hi:
                coeffs[k] = c
        return TruncatedSeries(coeffs, hi=hi, lo=0, branch=branch)


def _substitute(s: TruncatedSeries, row: Sequence[Fraction]) -> TruncatedSeries:
    """``s(t + c_1 t^2 + ...)`` computed exactly on the window of ``s``."""
    if not any(row):
        return s
    v = s.valuation()
    hi = s.hi
    if v >= hi:
        return s
    prec = hi - v  # relative precision needed for u^e
    ucoef = {0: Fraction(1)}
    for k, c in enumerate(row, start=1):
        if c and k < prec:
            ucoef[k] = c
    u = TruncatedSeries(ucoef, hi=prec, lo=0, branch=s.branch)
    cur = u ** v if v else TruncatedSeries.constant(1, prec, s.branch)
    cur = cur.truncate(prec)
    acc = [_ZERO] * prec
    for e in range(v, hi):
        c = s.coefficient(e)
        if c:
            rel = hi - e
            for k in range(min(rel, cur.hi)):
                x = cur.coefficient(k) if k >= cur.lo else _ZERO
                if x:
                    acc[e - v + k] += c * x
        if e + 1 < hi:
            cur = (cur * u).truncate(hi - e - 1)
    return TruncatedSeries._dense(v, hi, acc, s.branch)


def apply_param_change(v: HVector | TruncatedSeries, g: ParamChange) -> HVector | TruncatedSeries:
    """Substitute ``t_i -> phi_i(t_i)`` branchwise (valid on the input window)."""
    if isinstance(v, TruncatedSeries):
        if v.branch > g.n:
            raise UsageError("parameter change has no entry for this branch")
        return _substitute(v, g.coefficients[v.branch - 1])
    if v.n != g.n:
        raise UsageError("parameter change and vector have different branch counts")
    return HVector([_substitute(s, g.coefficients[s.branch - 1]) for s in v.components])


def _poly_phi(row: Sequence[Fraction], hi: int) -> TruncatedSeries:
    coeffs = {1: Fraction(1)}
    for k, c in enumerate(row, start=1):
        if c and k + 1 < hi:
            coeffs[k + 1] = c
    return TruncatedSeries(coeffs, hi=hi, lo=1)


def compose_changes(g1: ParamChange, g2: ParamChange, order: int | None = None) -> ParamChange:
    """Change ``g`` with ``apply(g, v) == apply(g1, apply(g2, v))``.

    Its substitution is ``phi2(phi1(t))`` reduced modulo ``t^(K+2)``; by
    default ``K`` is the common truncation order of the two inputs.
    """
    if g1.n != g2.n:
        raise UsageError("branch count mismatch")
    if order is None:
        if g1.order != g2.order:
            raise UsageError("compose needs equal truncation orders (or an explicit order)")
        order = g1.order
    hi = order + 2
    rows = []
    for i in range(g1.n):
        phi1 = _poly_phi(g1.coefficients[i], hi)
        comp = _substitute_series_into_poly(g2.coefficients[i], phi1, hi)
        rows.append(tuple(comp.coefficient(k + 1) for k in range(1, order + 1)))
    return ParamChange(tuple(rows))


def _substitute_series_into_poly(row: Sequence[Fraction], x: TruncatedSeries, hi: int) -> TruncatedSeries:
    """``phi(x)`` where ``phi(t) = t + sum c_k t^(k+1)``, mod ``t^hi``."""
    out = x.truncate(hi)
    power = x.truncate(hi)
    for c in row:
        power = (power * x).truncate(hi)
        if c:
            out = out + power.scale(c)
    return TruncatedSeries(out.coeffs, hi=hi, lo=1)


def invert_change(g: ParamChange) -> ParamChange:
    """Inverse modulo ``t^(K+2)``."""
    order = g.order
    hi = order + 2
    rows = []
    for i in range(g.n):
        row = g.coefficients[i]
        psi = TruncatedSeries({1: 1}, hi=hi, lo=1)
        for _ in range(order + 1):
            phi_psi = _substitute_series_into_poly(row, psi, hi)
            psi = TruncatedSeries((psi - (phi_psi - TruncatedSeries({1: 1}, hi=hi, lo=1))).coeffs, hi=hi, lo=1)
        rows.append(tuple(psi.coefficient(k + 1) for k in range(1, order + 1)))
    return ParamChange(tuple(rows))

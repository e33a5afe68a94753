"""Exact rationals, sparse polynomials and graded monomial orders.

Everything here is exact: coefficients are :class:`fractions.Fraction`
values, monomials are immutable exponent maps and polynomials are
immutable sparse maps from monomials to non-zero coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import UnknownVariableError, UsageError

Rational = Fraction
Number = Union[int, Fraction]

__all__ = [
    "Rational",
    "Q",
    "parse_rational",
    "format_rational",
    "Monomial",
    "Polynomial",
    "OrderSpec",
    "Ordering",
    "compare_monomials",
    "poly_op",
]


def Q(value: Number | str, den: int = 1) -> Fraction:
    """Build a reduced rational from an int, a Fraction or a ``"n/d"`` string."""
    if isinstance(value, str):
        return parse_rational(value) / den
    return Fraction(value, den) if den != 1 else Fraction(value)


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"num/den"`` (or a bare integer) into a Fraction.

    >>> parse_rational("6/4")
    Fraction(3, 2)
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise UsageError(f"not a rational: {text!r}")
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            d = int(den)
            if d == 0:
                raise UsageError(f"zero denominator in {text!r}")
            return Fraction(int(num), d)
        return Fraction(int(s))
    except ValueError as exc:
        raise UsageError(f"not a rational: {text!r}") from exc


def format_rational(q: Number) -> str:
    """Serialize as ``"num/den"`` with a positive denominator."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=False)
class Monomial:
    """A power product of named variables.

    Stored as a sorted tuple of ``(variable, exponent)`` pairs; zero
    exponents never appear, so the representation is canonical.
    """

    items: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        for var, exp in self.items:
            if not isinstance(exp, int) or exp <= 0:
                raise UsageError(f"bad exponent {exp!r} for {var!r}")

    @staticmethod
    def one() -> "Monomial":
        return _ONE

    @staticmethod
    def var(name: str, exp: int = 1) -> "Monomial":
        return Monomial(((name, exp),)) if exp else _ONE

    @staticmethod
    def from_dict(exps: Mapping[str, int]) -> "Monomial":
        return Monomial(tuple(sorted((v, int(e)) for v, e in exps.items() if e)))

    def as_dict(self) -> dict[str, int]:
        return dict(self.items)

    def exponent(self, var: str) -> int:
        for v, e in self.items:
            if v == var:
                return e
        return 0

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.items)

    def total_degree(self) -> int:
        return sum(e for _, e in self.items)

    def weighted_degree(self, weights: Mapping[str, int]) -> int:
        try:
            return sum(weights[v] * e for v, e in self.items)
        except KeyError as exc:
            raise UnknownVariableError(f"no weight for variable {exc.args[0]!r}") from None

    def is_one(self) -> bool:
        return not self.items

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other.items:
            return self
        if not self.items:
            return other
        d = dict(self.items)
        for v, e in other.items:
            d[v] = d.get(v, 0) + e
        return Monomial(tuple(sorted(d.items())))

    def __pow__(self, k: int) -> "Monomial":
        if k < 0:
            raise UsageError("negative monomial power")
        if k == 0:
            return _ONE
        return Monomial(tuple((v, e * k) for v, e in self.items))

    def divides(self, other: "Monomial") -> bool:
        od = dict(other.items)
        return all(od.get(v, 0) >= e for v, e in self.items)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        d = dict(self.items)
        for v, e in other.items:
            r = d.get(v, 0) - e
            if r < 0:
                raise UsageError(f"{other} does not divide {self}")
            if r:
                d[v] = r
            else:
                d.pop(v, None)
        return Monomial(tuple(sorted(d.items())))

    def lcm(self, other: "Monomial") -> "Monomial":
        d = dict(self.items)
        for v, e in other.items:
            d[v] = max(d.get(v, 0), e)
        return Monomial(tuple(sorted(d.items())))

    def gcd_is_one(self, other: "Monomial") -> bool:
        od = dict(other.items)
        return not any(v in od for v, _ in self.items)

    def __str__(self) -> str:
        if not self.items:
            return "1"
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self.items)

    def __repr__(self) -> str:
        return f"Monomial({self})"


_ONE = Monomial(())


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | Iterable[tuple[Monomial, Number]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for m, c in items:
            c = Fraction(c)
            if c:
                s = acc.get(m, 0) + c
                if s:
                    acc[m] = s
                else:
                    del acc[m]
        self._terms = acc
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._raw({})

    @classmethod
    def constant(cls, c: Number) -> "Polynomial":
        c = Fraction(c)
        return cls._raw({_ONE: c} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Polynomial":
        return cls._raw({Monomial.var(name, exp): Fraction(1)})

    @classmethod
    def monomial(cls, m: Monomial, c: Number = 1) -> "Polynomial":
        c = Fraction(c)
        return cls._raw({m: c} if c else {})

    # access ------------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def monomials(self) -> list[Monomial]:
        return list(self._terms)

    def variables(self) -> set[str]:
        out: set[str] = set()
        for m in self._terms:
            out.update(m.variables)
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def sorted_terms(self, order: "OrderSpec") -> list[tuple[Monomial, Fraction]]:
        """Terms in decreasing order under ``order``."""
        key = order.key
        return sorted(self._terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def leading_term(self, order: "OrderSpec") -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise UsageError("zero polynomial has no leading term")
        key = order.key
        return max(self._terms.items(), key=lambda mc: key(mc[0]))

    def leading_monomial(self, order: "OrderSpec") -> Monomial:
        return self.leading_term(order)[0]

    def monic(self, order: "OrderSpec") -> "Polynomial":
        _, c = self.leading_term(order)
        return self.scale(1 / c)

    # arithmetic --------------------------------------------------------
    def __add__(self, other: "Polynomial | Number") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return Polynomial._raw(acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial | Number") -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other: Number) -> "Polynomial":
        return Polynomial.constant(other) - self

    def scale(self, c: Number) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial._raw({})
        return Polynomial._raw({m: c * v for m, v in self._terms.items()})

    def mul_term(self, m: Monomial, c: Number = 1) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial._raw({})
        return Polynomial._raw({m * k: c * v for k, v in self._terms.items()})

    def __mul__(self, other: "Polynomial | Number") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                s = acc.get(m, 0) + c1 * c2
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return Polynomial._raw(acc)

    def __rmul__(self, other: Number) -> "Polynomial":
        return self.scale(other)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise UsageError("negative polynomial power")
        out = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def substitute(self, values: Mapping[str, "Polynomial | Number"]) -> "Polynomial":
        """Replace variables by polynomials (or numbers); others are kept."""
        out = Polynomial.zero()
        cache: dict[tuple[str, int], Polynomial] = {}
        for m, c in self._terms.items():
            term = Polynomial.constant(c)
            for v, e in m.items:
                if v in values:
                    key = (v, e)
                    if key not in cache:
                        base = values[v]
                        if not isinstance(base, Polynomial):
                            base = Polynomial.constant(base)
                        cache[key] = base**e
                    term = term * cache[key]
                else:
                    term = term.mul_term(Monomial.var(v, e))
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for v, e in m.items:
                if v not in values:
                    raise UnknownVariableError(f"no value for {v!r}")
                t *= Fraction(values[v]) ** e
            total += t
        return total

    # comparison --------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def to_str(self, order: "OrderSpec | None" = None) -> str:
        if not self._terms:
            return "0"
        items = self.sorted_terms(order) if order else sorted(self._terms.items(), key=lambda mc: str(mc[0]))
        parts = []
        for m, c in items:
            if m.is_one():
                s = str(c)
            elif c == 1:
                s = str(m)
            elif c == -1:
                s = f"-{m}"
            else:
                s = f"{c}*{m}"
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_str()})"


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class OrderSpec:
    """The order ``<_{deg1,deg2}``: deg1, then deg2, then reverse lex.

    ``var_order`` lists the variables from smallest to largest; the reverse
    lexicographic tie-break looks at the smallest variable first and the
    monomial with the *smaller* exponent there is the larger one.
    """

    deg1: Mapping[str, int]
    deg2: Mapping[str, int]
    var_order: tuple[str, ...]
    _index: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "deg1", dict(self.deg1))
        object.__setattr__(self, "deg2", {v: self.deg2.get(v, 0) for v in self.deg1})
        object.__setattr__(self, "var_order", tuple(self.var_order))
        if set(self.var_order) != set(self.deg1) or len(self.var_order) != len(self.deg1):
            raise UsageError("var_order must list every variable exactly once")
        for v in self.var_order:
            if self.deg1[v] < 0 or self.deg2[v] < 0 or self.deg1[v] + self.deg2[v] == 0:
                raise UsageError(f"variable {v!r} needs a positive grading")
        for a, b in zip(self.var_order, self.var_order[1:]):
            if self.deg1[a] > self.deg1[b]:
                raise UsageError(
                    f"var_order violates deg1 monotonicity: {a} (deg1 {self.deg1[a]}) before {b} (deg1 {self.deg1[b]})"
                )
        self._index.update({v: k for k, v in enumerate(self.var_order)})

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.deg1.items())), tuple(sorted(self.deg2.items())), self.var_order))

    @classmethod
    def from_degrees(cls, deg1: Mapping[str, int], deg2: Mapping[str, int] | None = None, tiebreak: Iterable[str] | None = None) -> "OrderSpec":
        """Sort variables by (deg1, deg2, position in ``tiebreak`` or name)."""
        deg2 = dict(deg2 or {})
        pos = {v: i for i, v in enumerate(tiebreak)} if tiebreak is not None else {}
        order = sorted(deg1, key=lambda v: (deg1[v], deg2.get(v, 0), pos.get(v, 0), v))
        return cls(deg1, deg2, tuple(order))

    def check(self, m: Monomial) -> None:
        for v in m.variables:
            if v not in self._index:
                raise UnknownVariableError(f"unknown variable {v!r}")

    def key(self, m: Monomial) -> tuple:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        d1 = d2 = 0
        rev = [0] * len(self.var_order)
        idx = self._index
        for v, e in m.items:
            k = idx.get(v)
            if k is None:
                raise UnknownVariableError(f"unknown variable {v!r}")
            d1 += self.deg1[v] * e
            d2 += self.deg2[v] * e
            rev[k] = -e
        out = (d1, d2, tuple(rev))
        if len(self._cache) < 200_000:
            self._cache[m] = out
        return out

    def degree1(self, m: Monomial) -> int:
        return m.weighted_degree(self.deg1)

    def degree2(self, m: Monomial) -> int:
        return m.weighted_degree(self.deg2)

    def compare(self, a: Monomial, b: Monomial) -> Ordering:
        ka, kb = self.key(a), self.key(b)
        return Ordering.LESS if ka < kb else Ordering.GREATER if ka > kb else Ordering.EQUAL


def compare_monomials(a: Monomial, b: Monomial, order: OrderSpec) -> Ordering:
    """Total order used for leading terms; see :class:`OrderSpec`."""
    return order.compare(a, b)


def poly_op(op: str, p1: Polynomial, p2: Polynomial | None = None, *, power: int | None = None, scalar: Number | None = None) -> Polynomial:
    """Dispatch ``add``/``sub``/``mul``/``neg``/``pow``/``scale`` by name."""
    if op == "add":
        return p1 + p2
    if op == "sub":
        return p1 - p2
    if op == "mul":
        return p1 * p2
    if op == "neg":
        return -p1
    if op == "pow":
        return p1 ** int(power)
    if op == "scale":
        return p1.scale(scalar)
    raise UsageError(f"unknown polynomial operation {op!r}")

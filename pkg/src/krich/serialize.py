"""JSON forms of the exact objects.

Rationals are ``"num/den"`` strings, polynomials are lists of
``[coefficient, {var: exp}]``, series are ``{branch, lo, hi, coeffs}``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .algebra import Monomial, OrderSpec, Polynomial, format_rational, parse_rational
from .curves import CurvePresentation
from .errors import UsageError
from .krichever import AlphaTable
from .laurent import HVector, ParamChange, TruncatedSeries

__all__ = [
    "rational_to_json",
    "rational_from_json",
    "polynomial_to_json",
    "polynomial_from_json",
    "order_to_json",
    "order_from_json",
    "series_to_json",
    "series_from_json",
    "hvector_to_json",
    "change_to_json",
    "curve_to_json",
    "alpha_table_to_json",
    "alpha_table_from_json",
    "to_jsonable",
    "dumps",
]


def rational_to_json(q: object) -> str:
    return format_rational(Fraction(q))


def rational_from_json(s: object) -> Fraction:
    return parse_rational(s)


def polynomial_to_json(p: Polynomial, order: OrderSpec | None = None) -> list:
    terms = p.sorted_terms(order) if order is not None else sorted(p.terms.items(), key=lambda t: t[0].items)
    return [[rational_to_json(c), dict(m.items)] for m, c in terms]


def polynomial_from_json(data: Sequence) -> Polynomial:
    try:
        terms = {}
        for c, exps in data:
            m = Monomial.from_dict({str(k): int(v) for k, v in exps.items()})
            terms[m] = terms.get(m, Fraction(0)) + rational_from_json(c)
    except (TypeError, ValueError, AttributeError) as exc:
        raise UsageError(f"malformed polynomial JSON: {exc}") from exc
    return Polynomial(terms)


def order_to_json(order: OrderSpec) -> dict:
    return {"deg1": dict(order.deg1), "deg2": dict(order.deg2), "var_order": list(order.var_order)}


def order_from_json(data: Mapping) -> OrderSpec:
    try:
        deg1 = {str(k): int(v) for k, v in data["deg1"].items()}
        deg2 = {str(k): int(v) for k, v in (data.get("deg2") or {}).items()}
        if "var_order" in data:
            return OrderSpec(deg1, {v: deg2.get(v, 0) for v in deg1}, tuple(data["var_order"]))
        return OrderSpec.from_degrees(deg1, deg2)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed order JSON: {exc}") from exc


def series_to_json(s: TruncatedSeries) -> dict:
    return {"branch": s.branch, "lo": s.lo, "hi": s.hi,
            "coeffs": {str(e): rational_to_json(c) for e, c in sorted(s.coeffs.items())}}


def series_from_json(d: Mapping) -> TruncatedSeries:
    try:
        coeffs = {int(e): rational_from_json(c) for e, c in d["coeffs"].items()}
        return TruncatedSeries(coeffs, hi=int(d["hi"]), lo=int(d["lo"]), branch=int(d.get("branch", 1)))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed series JSON: {exc}") from exc


def hvector_to_json(v: HVector) -> list:
    return [series_to_json(s) for s in v.components]


def change_to_json(g: ParamChange) -> dict:
    return {"order": g.order,
            "branches": [[rational_to_json(c) for c in row] for row in g.coefficients]}


def curve_to_json(c: CurvePresentation) -> dict:
    return {
        "family": c.family,
        "genus": c.genus,
        "n": c.n,
        "weights": list(c.weights) if c.weights is not None else None,
        "generators": [{"name": g.name, "deg1": g.deg1, "poles": list(g.poles)} for g in c.generators],
        "relations": [polynomial_to_json(r, c.order) for r in c.relations],
        "order": order_to_json(c.order),
    }


def alpha_table_to_json(t: AlphaTable) -> dict:
    return {"convention": t.convention, "a": list(t.a),
            "entries": [[i, j, p, q, rational_to_json(v)] for (i, j, p, q), v in sorted(t.entries.items())]}


def alpha_table_from_json(d: Mapping) -> AlphaTable:
    try:
        entries = {(int(i), int(j), int(p), int(q)): rational_from_json(v) for i, j, p, q, v in d["entries"]}
        return AlphaTable(tuple(int(x) for x in d.get("a", ())), str(d["convention"]), entries)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed alpha-table JSON: {exc}") from exc


def to_jsonable(x: Any) -> Any:
    """Recursively convert rationals, tuples and dataclass-like values."""
    if isinstance(x, bool) or x is None or isinstance(x, (str, int)):
        return x
    if isinstance(x, Fraction):
        return rational_to_json(x)
    if isinstance(x, Polynomial):
        return polynomial_to_json(x)
    if isinstance(x, Monomial):
        return dict(x.items)
    if isinstance(x, TruncatedSeries):
        return series_to_json(x)
    if isinstance(x, HVector):
        return hvector_to_json(x)
    if isinstance(x, ParamChange):
        return change_to_json(x)
    if isinstance(x, AlphaTable):
        return alpha_table_to_json(x)
    if isinstance(x, CurvePresentation):
        return curve_to_json(x)
    if isinstance(x, Mapping):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [to_jsonable(v) for v in items]
    raise TypeError(f"cannot serialise {type(x).__name__}")


def dumps(x: Any) -> str:
    return json.dumps(to_jsonable(x), indent=2, sort_keys=False)

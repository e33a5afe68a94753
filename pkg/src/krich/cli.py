"""The ``krich`` command line.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad usage or a
coefficient outside the certified window.  Every command is deterministic
given its flags and ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .algebra import parse_rational
from .curves import (
    CurvePresentation,
    build_cusp_chain,
    build_g1_n2,
    build_g1_n3,
    build_hyperelliptic,
    build_semigroup_curve,
    build_special_curve,
    g1n2_template,
    g1n3_template,
    hyperelliptic_template,
    semigroup_template,
    special_curve_template,
)
from .errors import KrichError, MathFailure, UsageError
from .gaps import ChainData, chain_from_gaps, gaps_from_chain, genus_of_chain, h1_profile, is_symmetric, validate_chain
from .git import (
    chi_pairing,
    cone_membership,
    cone_of_a,
    decomposition_vector,
    pole_bound,
    stability_test,
    z_chi_class,
)
from .groebner import buchberger, normal_form, verify_shape
from .instances import rng_for
from .krichever import (
    WPoint,
    alpha_table,
    expand_generators,
    forget_last_point,
    h0_h1_of_divisor,
    krichever_point,
    plane_model_coefficients,
    random_wpoint,
    sigma_conditions,
    sigma_normalize,
    subspace_from_curve,
)
from .plucker import alpha_index, alpha_plucker_sign, cell_index, plucker_coordinate, transition_det
from .serialize import (
    curve_to_json,
    order_from_json,
    order_to_json,
    polynomial_from_json,
    polynomial_to_json,
    to_jsonable,
)
from .verify import SUITES, format_table, verify_suite

__all__ = ["main", "run", "build_parser"]

FAMILIES = ("semigroup", "cusp", "special", "g1n2", "g1n3", "hyperelliptic")


class Result:
    """Payload of a command: JSON data, a table rendering and an exit code."""

    def __init__(self, data: Any, table: str | None = None, code: int = 0):
        self.data = data
        self.table = table
        self.code = code


# ---------------------------------------------------------------------------
# argument parsing helpers


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _rationals(text: str) -> tuple[Fraction, ...]:
    return tuple(parse_rational(x.strip()) for x in text.split(",") if x.strip() != "")


def _vectors(text: str) -> list[tuple[Fraction, ...]]:
    """``"1,0;0,1"`` -> two vectors."""
    return [_rationals(v) for v in text.split(";") if v.strip()]


def _load_json(text: str) -> Any:
    """Inline JSON, ``@path`` or a path to a JSON file; ``-`` reads stdin."""
    try:
        if text == "-":
            return json.load(sys.stdin)
        if text.startswith("@"):
            return json.loads(Path(text[1:]).read_text())
        stripped = text.lstrip()
        if stripped[:1] in "{[":
            return json.loads(text)
        return json.loads(Path(text).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {text!r}: {exc}") from exc


def _params(text: str | None) -> dict:
    """JSON object, or ``k=v`` pairs separated by ``;``."""
    if not text:
        return {}
    if text.lstrip()[:1] in "{@" or os.path.exists(text):
        data = _load_json(text)
        if not isinstance(data, dict):
            raise UsageError("--params must be a JSON object")
        return data
    out = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise UsageError(f"malformed parameter {part!r}; expected key=value")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _need(p: dict, key: str) -> Any:
    if key not in p:
        raise UsageError(f"missing parameter {key!r}")
    return p[key]


def _as_list(x: Any, conv) -> list:
    if isinstance(x, str):
        return [conv(v) for v in x.split(",") if v.strip()]
    return [conv(v) for v in x]


def _matrix(x: Any) -> list[list[Fraction]]:
    if isinstance(x, str):
        return [list(r) for r in _vectors(x)]
    return [[parse_rational(v) for v in row] for row in x]


def build_curve(family: str, params: dict) -> CurvePresentation:
    if family == "semigroup":
        return build_semigroup_curve(_as_list(_need(params, "generators"), int))
    if family == "cusp":
        return build_cusp_chain(_as_list(_need(params, "a"), int))
    if family == "special":
        hbar = params.get("hbar") or {}
        if isinstance(hbar, str):
            hbar = json.loads(hbar)
        return build_special_curve(_as_list(_need(params, "a"), int), hbar)
    if family == "g1n2":
        return build_g1_n2(*(parse_rational(_need(params, k)) for k in ("a", "b", "e", "pi")))
    if family == "g1n3":
        force = str(params.get("force", "false")).lower() in ("1", "true", "yes")
        return build_g1_n3(_matrix(_need(params, "M")), parse_rational(_need(params, "t")), force=force)
    if family == "hyperelliptic":
        return build_hyperelliptic(int(_need(params, "g")), _as_list(_need(params, "coeffs"), parse_rational))
    raise UsageError(f"unknown family {family!r}")


def template_for(curve: CurvePresentation):
    fam = curve.family
    if fam == "semigroup":
        return semigroup_template(curve)
    if fam in ("cusp", "special"):
        return special_curve_template(curve)
    if fam == "g1n2":
        return g1n2_template(curve.order)
    if fam == "g1n3":
        return g1n3_template(curve.order)
    if fam in ("hyperelliptic", "weierstrass"):
        return hyperelliptic_template(curve)
    raise UsageError(f"no shape template for family {fam!r}")  # pragma: no cover - families are closed


def _curve_from_args(args) -> CurvePresentation:
    if not args.family:
        raise UsageError("--family is required")
    return build_curve(args.family, _params(args.params))


def _point_from_args(args) -> WPoint:
    """A cell point either from a curve (``--family``) or random (``--random-cell``)."""
    if getattr(args, "random_cell", None):
        a = _ints(args.random_cell)
        return random_wpoint(a, args.window, rng_for(args.seed, "cli-point"))
    curve = _curve_from_args(args)
    a = _ints(args.cell) if getattr(args, "cell", None) else None
    return krichever_point(curve, args.window, a)


# ---------------------------------------------------------------------------
# commands


def cmd_curve_build(args) -> Result:
    c = _curve_from_args(args)
    data = curve_to_json(c)
    lines = [f"family {c.family}, genus {c.genus}, n = {c.n}, weights {c.weights}"]
    lines += [f"  {g.name}: deg {g.deg1}, poles {g.poles}" for g in c.generators]
    lines += ["relations:"] + [f"  {r.to_str(c.order)}" for r in c.relations]
    return Result(data, "\n".join(lines))


def _ideal_from_input(args):
    data = _load_json(args.input)
    if not isinstance(data, dict):
        raise UsageError("input must be a JSON object with 'order' and 'relations' or 'polynomials'")
    polys = data.get("polynomials", data.get("relations"))
    if polys is None or "order" not in data:
        raise UsageError("input needs 'order' and 'polynomials' (or 'relations')")
    order = order_from_json(data["order"])
    return [polynomial_from_json(p) for p in polys], order


def cmd_groebner_compute(args) -> Result:
    polys, order = _ideal_from_input(args)
    gb = buchberger(polys, order)
    data = {"order": order_to_json(order), "basis": [polynomial_to_json(p, order) for p in gb.elements],
            "leading": [dict(m.items) for m in gb.leading_monomials]}
    return Result(data, "\n".join(p.to_str(order) for p in gb.elements))


def cmd_groebner_nf(args) -> Result:
    polys, order = _ideal_from_input(args)
    gb = buchberger(polys, order)
    target = polynomial_from_json(_load_json(args.poly))
    r = normal_form(target, gb)
    return Result({"normal_form": polynomial_to_json(r, order), "in_ideal": not r}, r.to_str(order))


def cmd_groebner_shape(args) -> Result:
    curve = _curve_from_args(args)
    tmpl = template_for(curve)
    if args.input:
        polys, _ = _ideal_from_input(args)
        cand: Any = polys
    else:
        cand = list(curve.relations)
    rep = verify_shape(cand, tmpl)
    viol = [{"kind": v.kind, "detail": v.detail} for v in rep.violations]
    table = f"template {rep.template}: " + ("pass" if rep.passed else "FAIL")
    table += "".join(f"\n  {v['kind']}: {v['detail']}" for v in viol)
    return Result({"template": rep.template, "passed": rep.passed, "violations": viol}, table, 0 if rep.passed else 1)


def cmd_krichever_expand(args) -> Result:
    curve = _curve_from_args(args)
    exps = expand_generators(curve, args.window)
    data = {name: to_jsonable(v) for name, v in exps.items()}
    lines = []
    for name, v in exps.items():
        for s in v.components:
            terms = " + ".join(f"({c})t^{e}" for e, c in sorted(s.coeffs.items()))
            lines.append(f"{name} on branch {s.branch}: {terms or '0'} + O(t^{s.hi})")
    return Result(data, "\n".join(lines))


def _table_lines(table) -> str:
    return "\n".join(f"alpha_{i}{j}[{p},{q}] = {v}" for (i, j, p, q), v in sorted(table.nonzero().items())) or "all zero"


def cmd_krichever_coords(args) -> Result:
    w = _point_from_args(args)
    T = alpha_table(w, args.convention, args.j0)
    return Result(to_jsonable(T), f"cell {w.a}, window {w.radius}, convention {T.convention}\n" + _table_lines(T))


def cmd_krichever_normalize(args) -> Result:
    w = _point_from_args(args)
    g, wn = sigma_normalize(w, args.i0, trim=not args.no_trim)
    i0 = args.i0 or next(i for i, x in enumerate(w.a, start=1) if x > 0)
    residual = {k: v for k, v in sigma_conditions(wn, i0).items() if v}
    T = alpha_table(wn)
    data = {"change": to_jsonable(g), "table": to_jsonable(T), "residual": to_jsonable(residual)}
    table = "change: " + "; ".join(
        f"t{k + 1} -> t{k + 1}" + "".join(f" + ({c})t{k + 1}^{e}" for e, c in enumerate(row, start=2) if c)
        for k, row in enumerate(g.coefficients))
    table += "\n" + _table_lines(T)
    return Result(data, table, 1 if residual else 0)


def cmd_krichever_plucker(args) -> Result:
    w = _point_from_args(args)
    sa = plucker_coordinate(w, cell_index(w.a))
    data: dict[str, Any] = {"s_a": to_jsonable(sa)}
    lines = [f"s_a = {sa}"]
    code = 0
    if args.entry:
        i, j, p, q = _ints(args.entry)
        S = alpha_index(w.a, i, j, p, q)
        sS = plucker_coordinate(w, S, i)
        eps = alpha_plucker_sign(w.a, i, j, p, q)
        alpha = w.alpha(i, j, p, q)
        ok = alpha == eps * sS / sa
        data.update({"alpha": to_jsonable(alpha), "s_S": to_jsonable(sS), "sign": eps, "identity": ok})
        lines.append(f"alpha_{i}{j}[{p},{q}] = {alpha}, s_S = {sS}, sign {eps}: {'holds' if ok else 'FAILS'}")
        code = 0 if ok else 1
    if args.transition:
        a2 = _ints(args.transition)
        _, d = transition_det(w, a2)
        s2 = plucker_coordinate(w, cell_index(a2))
        ok = d == s2 / sa
        data.update({"det": to_jsonable(d), "s_a2": to_jsonable(s2), "transition_identity": ok})
        lines.append(f"det A = {d}, s_a' = {s2}: {'holds' if ok else 'FAILS'}")
        code = code or (0 if ok else 1)
    return Result(data, "\n".join(lines), code)


def cmd_krichever_h0h1(args) -> Result:
    D = _ints(args.divisor)
    W: Any
    method = args.method
    if args.random_cell:
        W = _point_from_args(args)
    else:
        curve = _curve_from_args(args)
        if method != "span" and (curve.weights is not None or args.cell):
            W = krichever_point(curve, args.window, _ints(args.cell) if args.cell else None)
        else:
            # curves without cell weights (hyperelliptic, g >= 2) live as subspaces only
            W, method = subspace_from_curve(curve, args.window), "span"
    h0, h1 = h0_h1_of_divisor(W, D, method=method)
    rr = h0 - h1 == 1 - W.genus + sum(D)
    return Result({"divisor": list(D), "h0": h0, "h1": h1, "riemann_roch": rr},
                  f"h0 = {h0}, h1 = {h1}, h0 - h1 = 1 - g + deg D: {rr}", 0 if rr else 1)


def cmd_krichever_forget(args) -> Result:
    w = _point_from_args(args)
    w1 = forget_last_point(w)
    T = alpha_table(w1)
    data: dict[str, Any] = {"a": list(w1.a), "table": to_jsonable(T)}
    lines = [f"cell {w1.a}", _table_lines(T)]
    if w1.n == 1 and w1.radius >= 4 * w1.genus + 3:
        coeffs = plane_model_coefficients(w1)
        data["plane_model"] = to_jsonable(coeffs)
        lines.append("plane model coefficients a_1..a_2g: " + ", ".join(str(c) for c in coeffs))
    return Result(data, "\n".join(lines))


def cmd_git_cone(args) -> Result:
    C = cone_of_a(_ints(args.a))
    return Result({"a": list(_ints(args.a)), "generators": C.as_ints()},
                  "\n".join(", ".join(map(str, g)) for g in C.generators))


def cmd_git_member(args) -> Result:
    where = cone_membership(cone_of_a(_ints(args.a)), _rationals(args.chi))
    return Result({"membership": where}, where)


def cmd_git_stability(args) -> Result:
    verdict = stability_test(_vectors(args.weights), _rationals(args.chi))
    return Result({"stability": verdict}, verdict)


def cmd_git_chi(args) -> Result:
    chi = chi_pairing(_ints(args.a), _ints(args.a2))
    return Result({"chi": list(chi)}, ",".join(map(str, chi)))


def cmd_git_polebound(args) -> Result:
    i, j, p, q = _ints(args.entry)
    d = pole_bound(_ints(args.a), i, j, p, q, args.i0, args.j0)
    return Result({"bound": d}, str(d))


def _decomposition(text: str) -> dict:
    """``"1-2:3,2"`` means ``3 omega_12 + 2 e_2``-style keys: ``i-j:x`` or ``k:x``."""
    out: dict = {}
    for part in text.split(","):
        if not part.strip():
            continue
        key, _, val = part.partition(":")
        x = parse_rational(val or "1")
        if "-" in key:
            i, j = key.split("-")
            out[(int(i), int(j))] = x
        else:
            out[int(key)] = x
    return out


def cmd_git_class(args) -> Result:
    a = _ints(args.a)
    dec = _decomposition(args.decomposition)
    cls = z_chi_class(a, dec)
    chi = decomposition_vector(a, dec)
    data = {"chi": to_jsonable(chi), "class": to_jsonable(cls.as_dict()), "expanded": to_jsonable(cls.expand().as_dict())}
    return Result(data, f"chi = {', '.join(map(str, chi))}\nZ(chi) = {cls}\n      = {cls.expand()}")


def _chain_from_args(args) -> ChainData:
    if args.chain:
        return ChainData.from_json(_load_json(args.chain))
    if args.gaps:
        return chain_from_gaps(_ints(args.gaps))
    raise UsageError("give --gaps or --chain")


def cmd_gaps_chain(args) -> Result:
    if args.chain:
        ch = ChainData.from_json(_load_json(args.chain))
        rep = validate_chain(ch)
        if not rep.ok:
            return Result({"valid": False, "failure": rep.failure, "q": rep.q},
                          f"invalid at q = {rep.q}: {rep.failure}", 1)
        if ch.points == 1:
            gs = gaps_from_chain(ch)
            return Result({"valid": True, "gaps": list(gs)}, ",".join(map(str, gs)))
        return Result({"valid": True}, "valid")
    ch = _chain_from_args(args)
    lines = [f"q={q}: D- = {st.dminus}, D+ = {st.dplus}" for q, st in enumerate(ch.steps)]
    return Result(ch.to_json(), "\n".join(lines))


def cmd_gaps_genus(args) -> Result:
    g = genus_of_chain(_chain_from_args(args))
    return Result({"genus": g}, str(g))


def cmd_gaps_h1(args) -> Result:
    prof = h1_profile(_chain_from_args(args))
    data = [{"q": q, "h1_minus": hm, "h1_plus": hp} for q, hm, hp in prof]
    return Result(data, "\n".join(f"q={q}: h1(D-) = {hm}, h1(D+) = {hp}" for q, hm, hp in prof))


def cmd_gaps_symmetric(args) -> Result:
    sym = is_symmetric(_ints(args.gaps))
    return Result({"symmetric": sym}, "true" if sym else "false")


def cmd_verify(args) -> Result:
    rep = verify_suite(args.suite, args.seed, args.window)
    return Result(rep.to_json(), format_table(rep), 0 if rep.passed else 1)


# ---------------------------------------------------------------------------
# parser


def _default_window() -> int:
    env = os.environ.get("KRICH_WINDOW")
    if env is None:
        return 8
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"KRICH_WINDOW must be an integer, got {env!r}") from None


def _common(parser: argparse.ArgumentParser, top: bool) -> None:
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--window", type=int, default=d(None), help="window radius R (default 8, or $KRICH_WINDOW)")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for random instances (default 0)")
    parser.add_argument("--format", choices=("json", "table"), default=d("table"), help="output format")
    parser.add_argument("-o", "--output", default=d(None), help="write the report to this file")


def _with_curve(p: argparse.ArgumentParser, point: bool = False) -> None:
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--params", help="JSON object (inline, @file or path) or key=value pairs separated by ';'")
    if point:
        p.add_argument("--cell", help="cell weights a (default: the family's weights)")
        p.add_argument("--random-cell", help="use a random point of this cell instead of a curve")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="krich", description="Exact computations with marked curves and their "
                                  "Sato-Grassmannian coordinates.")
    top.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common(top, True)
    sub = top.add_subparsers(dest="command", metavar="command")

    def leaf(group, name: str, func, help_: str) -> argparse.ArgumentParser:
        p = group.add_parser(name, help=help_)
        _common(p, False)
        p.set_defaults(func=func)
        return p

    curve = sub.add_parser("curve", help="build curve presentations").add_subparsers(dest="action", metavar="action")
    _with_curve(leaf(curve, "build", cmd_curve_build, "emit a curve presentation as JSON"))

    gb = sub.add_parser("groebner", help="Groebner bases").add_subparsers(dest="action", metavar="action")
    p = leaf(gb, "compute", cmd_groebner_compute, "reduced Groebner basis of an ideal")
    p.add_argument("--input", required=True, help="JSON with 'order' and 'polynomials' (a curve JSON also works)")
    p = leaf(gb, "nf", cmd_groebner_nf, "normal form of a polynomial")
    p.add_argument("--input", required=True)
    p.add_argument("--poly", required=True, help="polynomial JSON [[coef, {var: exp}], ...]")
    p = leaf(gb, "shape", cmd_groebner_shape, "check a family's relations against its shape template")
    _with_curve(p)
    p.add_argument("--input", help="check these polynomials instead of the emitted relations")

    kr = sub.add_parser("krichever", help="coordinates of the Krichever point").add_subparsers(dest="action", metavar="action")
    _with_curve(leaf(kr, "expand", cmd_krichever_expand, "Laurent expansions of the generators"))
    p = leaf(kr, "coords", cmd_krichever_coords, "alpha-table of the point")
    _with_curve(p, True)
    p.add_argument("--convention", choices=("alpha_ii_zero", "alpha_j0_zero"), default="alpha_ii_zero")
    p.add_argument("--j0", type=int)
    p = leaf(kr, "normalize", cmd_krichever_normalize, "canonical formal parameters")
    _with_curve(p, True)
    p.add_argument("--i0", type=int)
    p.add_argument("--no-trim", action="store_true", help="keep uncertified coefficients")
    p = leaf(kr, "plucker", cmd_krichever_plucker, "Pluecker coordinates and their identities")
    _with_curve(p, True)
    p.add_argument("--entry", help="i,j,p,q: compare alpha_ij[p,q] with its Pluecker ratio")
    p.add_argument("--transition", help="a': compare det A_(a,a') with s_a'/s_a")
    p = leaf(kr, "h0h1", cmd_krichever_h0h1, "h0 and h1 of a divisor")
    _with_curve(p, True)
    p.add_argument("--divisor", required=True, help="comma-separated coefficients")
    p.add_argument("--method", choices=("cell", "span"))
    _with_curve(leaf(kr, "forget", cmd_krichever_forget, "forget the last marked point"), True)

    git = sub.add_parser("git", help="weight cones and stability").add_subparsers(dest="action", metavar="action")
    leaf(git, "cone", cmd_git_cone, "generators of C_a").add_argument("--a", required=True)
    p = leaf(git, "member", cmd_git_member, "position of chi relative to C_a")
    p.add_argument("--a", required=True)
    p.add_argument("--chi", required=True)
    p = leaf(git, "stability", cmd_git_stability, "chi-stability for a list of weights")
    p.add_argument("--weights", required=True, help="vectors separated by ';'")
    p.add_argument("--chi", required=True)
    p = leaf(git, "chi", cmd_git_chi, "character of the change of cell a -> a'")
    p.add_argument("--a", required=True)
    p.add_argument("--a2", required=True)
    p = leaf(git, "polebound", cmd_git_polebound, "pole bound of a coordinate")
    p.add_argument("--a", required=True)
    p.add_argument("--entry", required=True, help="i,j,p,q")
    p.add_argument("--i0", type=int)
    p.add_argument("--j0", type=int)
    p = leaf(git, "class", cmd_git_class, "divisor class Z(chi)")
    p.add_argument("--a", required=True)
    p.add_argument("--decomposition", required=True, help="'i-j:x' for omega_ij, 'k:x' for e_k, comma-separated")

    gp = sub.add_parser("gaps", help="gap sequences and chains").add_subparsers(dest="action", metavar="action")
    for name, func, help_ in (("chain", cmd_gaps_chain, "chain of a gap sequence, or validate a chain"),
                              ("genus", cmd_gaps_genus, "genus of a chain"),
                              ("h1", cmd_gaps_h1, "h1 along a chain")):
        p = leaf(gp, name, func, help_)
        p.add_argument("--gaps")
        p.add_argument("--chain", help="chain JSON (inline, @file or path)")
    leaf(gp, "symmetric", cmd_gaps_symmetric, "symmetry of the semigroup").add_argument("--gaps", required=True)

    for name in ("verify", "verify-paper"):
        p = sub.add_parser(name, help="run the built-in checks")
        _common(p, False)
        p.add_argument("--suite", choices=tuple(SUITES), default="all")
        p.set_defaults(func=cmd_verify)
    return top


def _emit(res: Result, fmt: str, output: str | None) -> None:
    if fmt == "json":
        text = json.dumps(to_jsonable(res.data), indent=2)
    else:
        text = res.table if res.table is not None else json.dumps(to_jsonable(res.data), indent=2)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


_NEGATIVE = re.compile(r"^-\d")


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Let ``--chi -3,3`` mean ``--chi=-3,3`` (argparse only accepts plain negative numbers)."""
    out: list[str] = []
    k = 0
    while k < len(argv):
        tok = argv[k]
        if tok.startswith("--") and "=" not in tok and k + 1 < len(argv) and _NEGATIVE.match(argv[k + 1]):
            out.append(f"{tok}={argv[k + 1]}")
            k += 2
            continue
        out.append(tok)
        k += 1
    return out


def run(argv: Sequence[str] | None = None) -> int:
    argv = _attach_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    if not hasattr(args, "func"):
        parser.print_usage(sys.stderr)
        return 2
    try:
        if args.window is None:
            args.window = _default_window()
        if args.window < 1:
            raise UsageError("--window must be positive")
        res = args.func(args)
    except MathFailure as exc:
        print(f"krich: mathematical failure: {exc}", file=sys.stderr)
        return 1
    except KrichError as exc:
        print(f"krich: error: {exc}", file=sys.stderr)
        return 2
    _emit(res, args.format, args.output)
    return res.code


def main() -> None:
    sys.exit(run())

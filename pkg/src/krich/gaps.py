"""Weierstrass gaps, numerical semigroups and chains of formal divisors.

A chain over ``n`` points is a list of pairs ``D_q^- <= D_q^+``
(``q = 0..s``) with ``D_0^- = 0`` and ``D_q^- = D_{q-1}^+ + p_{i_q}``.  For
one point it is the same thing as a gap sequence: the intervals
``[d_q^-, d_q^+]`` are cut at the non-gaps up to the last gap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MathFailure, UsageError

__all__ = [
    "GapSequence",
    "ChainStep",
    "ChainData",
    "ChainReport",
    "validate_gaps",
    "semigroup_from_gaps",
    "gaps_from_semigroup",
    "gaps_from_pole_orders",
    "chain_from_gaps",
    "gaps_from_chain",
    "genus_of_chain",
    "h1_profile",
    "is_symmetric",
    "validate_chain",
    "enumerate_gap_sequences",
]

GapSequence = tuple  # strictly increasing positive ints


def _closed(gaps: set[int], top: int) -> bool:
    elems = [m for m in range(1, top + 1) if m not in gaps]
    for x in elems:
        for y in elems:
            if x + y <= top and (x + y) in gaps:
                return False
    return True


def validate_gaps(gaps: Iterable[int]) -> tuple[int, ...]:
    """Return the gaps as a tuple, or raise UsageError if they are not a gap sequence."""
    ell = tuple(int(x) for x in gaps)
    if any(b <= a for a, b in zip(ell, ell[1:])):
        raise UsageError("gaps must be strictly increasing")
    if ell and ell[0] != 1:
        raise UsageError("the first gap must be 1")
    if any(x <= 0 for x in ell):
        raise UsageError("gaps must be positive")
    if not _closed(set(ell), ell[-1] if ell else 0):
        raise UsageError("complement of the gaps is not closed under addition")
    g = len(ell)
    if ell and ell[-1] > 2 * g - 1:  # pragma: no cover - forced by closure
        raise MathFailure("last gap exceeds 2g - 1")
    return ell


def semigroup_from_gaps(gaps: Iterable[int]) -> tuple[int, ...]:
    """Minimal generators of ``S = Z_>=0 minus gaps``."""
    ell = validate_gaps(gaps)
    top = ell[-1] if ell else 0
    first = next(m for m in itertools.count(1) if m not in ell)
    bound = top + first
    S = [m for m in range(1, bound + 1) if m not in ell]
    sset = set(S)
    gens = [m for m in S if not any((m - x) in sset for x in S if x < m)]
    return tuple(gens)


def gaps_from_semigroup(gens: Sequence[int]) -> tuple[int, ...]:
    gens = [int(x) for x in gens]
    if not gens or min(gens) <= 0:
        raise UsageError("generators must be positive")
    from math import gcd

    d = 0
    for x in gens:
        d = gcd(d, x)
    if d != 1:
        raise UsageError("generators must be coprime")
    bound = min(gens) * max(gens)
    S = {0}
    for m in range(1, bound + 1):
        if any(m - x in S for x in gens if x <= m):
            S.add(m)
    return tuple(m for m in range(1, bound + 1) if m not in S)


def gaps_from_pole_orders(orders: Iterable[int], genus: int, top: int | None = None) -> tuple[int, ...]:
    """Gaps ``[1, top]`` minus the realised pole orders (``top`` defaults to ``2g``)."""
    top = 2 * genus if top is None else top
    have = set(orders)
    if max(have | {0}) < top:
        raise UsageError(f"pole orders known only up to {max(have | {0})}, need {top}")
    return tuple(m for m in range(1, top + 1) if m not in have)


def is_symmetric(gaps: Iterable[int]) -> bool:
    """``m ∈ S`` exactly when ``2g - 1 - m ∉ S``, for ``0 <= m <= 2g - 1``."""
    ell = validate_gaps(gaps)
    g = len(ell)
    if g == 0:
        return True
    G = set(ell)
    res = all((m not in G) != ((2 * g - 1 - m) not in G) for m in range(0, 2 * g))
    if ell[-1] == 2 * g - 1 and not res:  # pragma: no cover - cannot happen for valid sequences
        raise MathFailure("symmetry must hold when the last gap is 2g - 1")
    return res


def enumerate_gap_sequences(g: int) -> list[tuple[int, ...]]:
    """All gap sequences of genus ``g``."""
    if g == 0:
        return [()]
    out = []
    for rest in itertools.combinations(range(2, 2 * g), g - 1):
        cand = (1,) + rest
        if _closed(set(cand), cand[-1]):
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class ChainStep:
    dminus: tuple[int, ...]
    dplus: tuple[int, ...]
    iq: int | None = None


@dataclass(frozen=True)
class ChainData:
    points: int
    steps: tuple[ChainStep, ...]

    @property
    def s(self) -> int:
        return len(self.steps) - 1

    def to_json(self) -> dict:
        return {"points": self.points,
                "q": [{"dminus": list(st.dminus), "dplus": list(st.dplus), "iq": st.iq} for st in self.steps]}

    @classmethod
    def from_json(cls, d: dict) -> "ChainData":
        try:
            n = int(d["points"])
            steps = tuple(ChainStep(tuple(int(x) for x in st["dminus"]), tuple(int(x) for x in st["dplus"]),
                                    None if st.get("iq") is None else int(st["iq"])) for st in d["q"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed chain: {exc}") from exc
        return cls(n, steps)


@dataclass
class ChainReport:
    ok: bool
    failure: str | None = None
    q: int | None = None


def validate_chain(chain: ChainData) -> ChainReport:
    n = chain.points
    if not chain.steps:
        return ChainReport(False, "empty chain")
    for q, st in enumerate(chain.steps):
        if len(st.dminus) != n or len(st.dplus) != n:
            return ChainReport(False, "divisor length differs from the number of points", q)
        if any(x < 0 for x in st.dminus):
            return ChainReport(False, "negative coefficient", q)
        if any(x > y for x, y in zip(st.dminus, st.dplus)):
            return ChainReport(False, "D_q^- is not <= D_q^+", q)
    if any(chain.steps[0].dminus):
        return ChainReport(False, "D_0^- must be 0", 0)
    for q in range(1, len(chain.steps)):
        st, prev = chain.steps[q], chain.steps[q - 1]
        diff = [x - y for x, y in zip(st.dminus, prev.dplus)]
        ones = [k for k, x in enumerate(diff, start=1) if x == 1]
        if sorted(diff) != [0] * (n - 1) + [1] or len(ones) != 1:
            return ChainReport(False, "D_q^- differs from D_(q-1)^+ by more than one point", q)
        if st.iq is not None and st.iq != ones[0]:
            return ChainReport(False, f"index i_q = {st.iq} but the added point is p_{ones[0]}", q)
    last = chain.steps[-1]
    for k in range(n):
        if last.dplus[k] > 0 and last.dplus[k] == last.dminus[k]:
            return ChainReport(False, f"supp condition fails at p_{k + 1}", chain.s)
    return ChainReport(True)


def _require(chain: ChainData) -> None:
    rep = validate_chain(chain)
    if not rep.ok:
        raise UsageError(f"invalid chain at q={rep.q}: {rep.failure}")


def chain_from_gaps(gaps: Iterable[int]) -> ChainData:
    ell = validate_gaps(gaps)
    if not ell:
        raise UsageError("genus 0 has no chain")
    top = ell[-1]
    nongaps = [m for m in range(1, top + 1) if m not in ell]
    starts = [0] + nongaps
    ends = [x - 1 for x in nongaps] + [top]
    steps = tuple(ChainStep((a,), (b,), None if q == 0 else 1) for q, (a, b) in enumerate(zip(starts, ends)))
    return ChainData(1, steps)


def gaps_from_chain(chain: ChainData) -> tuple[int, ...]:
    _require(chain)
    if chain.points != 1:
        raise UsageError("gap sequences correspond to one-point chains")
    top = chain.steps[-1].dplus[0]
    minus = {st.dminus[0] for st in chain.steps[1:]}
    return tuple(m for m in range(1, top + 1) if m not in minus)


def genus_of_chain(chain: ChainData) -> int:
    """``sum_q deg(D_q^+ - D_q^-)``, checked against ``deg D_s^+ - s``."""
    _require(chain)
    g1 = sum(sum(st.dplus) - sum(st.dminus) for st in chain.steps)
    g2 = sum(chain.steps[-1].dplus) - chain.s
    if g1 != g2:  # pragma: no cover - telescoping identity on valid chains
        raise MathFailure(f"genus formulas disagree: {g1} vs {g2}")
    return g1


def h1_profile(chain: ChainData) -> list[tuple[int, int, int]]:
    """``(q, h1(D_q^-), h1(D_q^+))`` with ``h1(D_q^±) = g + q - deg D_q^±``."""
    g = genus_of_chain(chain)
    out = [(q, g + q - sum(st.dminus), g + q - sum(st.dplus)) for q, st in enumerate(chain.steps)]
    if out[-1][2] != 0:  # pragma: no cover - equals g - genus
        raise MathFailure("h1(D_s^+) must vanish")
    return out

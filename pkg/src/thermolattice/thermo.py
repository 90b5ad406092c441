"""Finite-temperature classical ordering (thermo-majorization).

A distribution ``p`` is compared with the Gibbs distribution through its
Gibbs-rescaled entries ``p_i / gamma_i``. Sorting those ratios fixes the
beta-ordering and the x-grid of the thermo-majorization curve. Within one
beta-ordering the order is plain majorization of reordered vectors and forms a
lattice; across orderings joins and meets can fail to exist, which is what
:func:`join_candidates` and :func:`meet_candidates` detect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import accumulate, permutations

from ._rational import to_fraction
from .majorization import (
    DimensionError,
    PLCurve,
    ProbVector,
    as_probvector,
    flatten_to_concave,
    uniform,
)
from .simplex import solve_lp

MAX_ENUM_DIM = 6

__all__ = [
    "BetaOrdering",
    "CandidateSet",
    "GibbsContext",
    "beta_order",
    "common_beta_order",
    "d_level_bounds",
    "d_level_counterexample",
    "gibbs_rescale",
    "join_candidates",
    "meet_candidates",
    "no_meet_counterexample",
    "same_beta_join",
    "same_beta_meet",
    "thermo_curve",
    "thermo_majorizes",
    "two_level_counterexample",
]


class OrderingMismatch(ValueError):
    """Inputs do not share a beta-ordering."""


@dataclass(frozen=True)
class GibbsContext:
    """Thermal state of a d-level system with exact rational populations.

    ``beta`` and ``energies`` are informational; ``gamma`` is what every
    computation uses. ``beta is None`` means the context was given directly by
    its Gibbs distribution.
    """

    gamma: ProbVector
    beta: Fraction | None = None
    energies: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        g = as_probvector(self.gamma)
        object.__setattr__(self, "gamma", g)
        if any(v <= 0 for v in g):
            raise ValueError("Gibbs populations must be strictly positive")
        if any(a < b for a, b in zip(g, g[1:])):
            raise ValueError("levels must be listed by non-decreasing energy "
                             "(non-increasing Gibbs population)")
        if self.energies is not None:
            es = tuple(to_fraction(e) for e in self.energies)
            object.__setattr__(self, "energies", es)
            if any(a > b for a, b in zip(es, es[1:])):
                raise ValueError("energies must be non-decreasing")
            if len(es) != len(g):
                raise DimensionError("energies and gamma differ in length")

    @classmethod
    def from_gamma(cls, gamma) -> GibbsContext:
        return cls(as_probvector(gamma))

    @classmethod
    def infinite_temperature(cls, d: int) -> GibbsContext:
        return cls(uniform(d), Fraction(0), tuple(Fraction(0) for _ in range(d)))

    @classmethod
    def from_energies(cls, beta, energies, max_denominator: int = 10**6) -> GibbsContext:
        """Boltzmann weights ``exp(-beta E_i)``, rationalized then normalized exactly.

        The exponentials are irrational in general; each weight is replaced by
        its best rational approximation with bounded denominator so that all
        downstream arithmetic stays exact with respect to the stored gamma.
        """
        beta = to_fraction(beta)
        if beta < 0:
            raise ValueError("beta must be non-negative")
        es = tuple(to_fraction(e) for e in energies)
        if beta == 0:
            return cls(uniform(len(es)), beta, es)
        e0 = min(es)
        ws = [Fraction(math.exp(-float(beta * (e - e0)))).limit_denominator(max_denominator)
              for e in es]
        if any(w <= 0 for w in ws):
            raise ValueError("Boltzmann weight underflowed; lower beta or max_denominator")
        total = sum(ws)
        return cls(ProbVector(tuple(w / total for w in ws)), beta, es)

    @property
    def dim(self) -> int:
        return len(self.gamma)

    @property
    def is_infinite_temperature(self) -> bool:
        return len(set(self.gamma)) == 1


@dataclass(frozen=True)
class BetaOrdering:
    """``order[k]`` is the level placed k-th when ratios are sorted (0-based)."""

    order: tuple[int, ...]

    def apply(self, v) -> tuple:
        return tuple(v[i] for i in self.order)

    def restore(self, v) -> tuple:
        out = [None] * len(self.order)
        for k, i in enumerate(self.order):
            out[i] = v[k]
        return tuple(out)

    def to_json(self) -> list[int]:
        return list(self.order)


def _ctx_for(p: ProbVector, ctx: GibbsContext) -> None:
    if len(p) != ctx.dim:
        raise DimensionError(f"state has dimension {len(p)}, context {ctx.dim}")


def gibbs_rescale(p, ctx: GibbsContext) -> tuple[Fraction, ...]:
    p = as_probvector(p)
    _ctx_for(p, ctx)
    return tuple(a / g for a, g in zip(p, ctx.gamma))


def beta_order(p, ctx: GibbsContext) -> BetaOrdering:
    r = gibbs_rescale(p, ctx)
    return BetaOrdering(tuple(sorted(range(len(r)), key=lambda i: -r[i])))


def common_beta_order(p, q, ctx: GibbsContext) -> BetaOrdering | None:
    """A single ordering sorting both rescaled vectors, or None.

    Ties are honoured: ``gamma`` itself shares an ordering with every state.
    """
    rp, rq = gibbs_rescale(p, ctx), gibbs_rescale(q, ctx)
    order = BetaOrdering(tuple(sorted(range(len(rp)), key=lambda i: (-rp[i], -rq[i]))))
    srq = order.apply(rq)
    if all(a >= b for a, b in zip(srq, srq[1:])):
        return order
    return None


def _curve_along(p: ProbVector, ctx: GibbsContext, order: BetaOrdering) -> PLCurve:
    xs = accumulate(order.apply(ctx.gamma), initial=Fraction(0))
    ys = accumulate(order.apply(p), initial=Fraction(0))
    return PLCurve(tuple(zip(xs, ys)))


def thermo_curve(p, ctx: GibbsContext) -> PLCurve:
    p = as_probvector(p)
    return _curve_along(p, ctx, beta_order(p, ctx))


def thermo_majorizes(p, q, ctx: GibbsContext) -> bool:
    """True iff ``f_p >= f_q`` on [0, 1]; exact, evaluated at breakpoints of ``f_q``."""
    p, q = as_probvector(p), as_probvector(q)
    _ctx_for(p, ctx)
    _ctx_for(q, ctx)
    return thermo_curve(p, ctx).dominates(thermo_curve(q, ctx))


def _shared_order(p, q, ctx) -> BetaOrdering:
    order = common_beta_order(p, q, ctx)
    if order is None:
        raise OrderingMismatch("inputs belong to different beta-orderings")
    return order


def same_beta_meet(p, q, ctx: GibbsContext) -> ProbVector:
    p, q = as_probvector(p), as_probvector(q)
    order = _shared_order(p, q, ctx)
    cp = list(accumulate(order.apply(p), initial=Fraction(0)))
    cq = list(accumulate(order.apply(q), initial=Fraction(0)))
    lo = [min(a, b) for a, b in zip(cp, cq)]
    return ProbVector(order.restore([b - a for a, b in zip(lo, lo[1:])]))


def same_beta_join(p, q, ctx: GibbsContext) -> ProbVector:
    p, q = as_probvector(p), as_probvector(q)
    order = _shared_order(p, q, ctx)
    cp = list(accumulate(order.apply(p), initial=Fraction(0)))
    cq = list(accumulate(order.apply(q), initial=Fraction(0)))
    hi = [max(a, b) for a, b in zip(cp, cq)]
    g0 = [b - a for a, b in zip(hi, hi[1:])]
    g, _ = flatten_to_concave(g0, order.apply(ctx.gamma))
    return ProbVector(order.restore(g))


@dataclass(frozen=True)
class CandidateSet:
    """Extremal bounds of a pair, one per surviving beta-ordering.

    ``kind`` is "join" (minimal upper bounds) or "meet" (maximal lower
    bounds); ``verdict`` is "unique-join"/"no-join" or "unique-meet"/"no-meet".
    Survivors are pairwise incomparable; equivalent candidates are reported
    once, by the first ordering in lexicographic enumeration.
    """

    kind: str
    candidates: tuple[tuple[ProbVector, BetaOrdering], ...]
    verdict: str
    notes: tuple[str, ...] = field(default=())

    @property
    def states(self) -> list[ProbVector]:
        return [c for c, _ in self.candidates]

    @property
    def unique(self) -> bool:
        return self.verdict.startswith("unique")

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "candidates": [{"state": s.to_json(), "beta_order": o.to_json()}
                           for s, o in self.candidates],
        }


def _enum_guard(d: int) -> None:
    if d > MAX_ENUM_DIM:
        raise DimensionError(f"enumerating {d}! orderings is disabled above d={MAX_ENUM_DIM}")


def _antichain(found, ctx, drop_if):
    """Keep candidates not strictly beyond another; dedupe equivalents.

    ``drop_if(a, b)`` is true when ``a`` lies beyond ``b`` in the direction
    being minimized.
    """
    survivors = []
    for i, (s, o) in enumerate(found):
        dominated = False
        for j, (t, _) in enumerate(found):
            if i == j:
                continue
            if drop_if(s, t) and not (drop_if(t, s) and j > i):
                dominated = True
                break
        if not dominated:
            survivors.append((s, o))
    return tuple(survivors)


def meet_candidates(p, q, ctx: GibbsContext) -> CandidateSet:
    """Greatest common lower bound within each beta-ordering.

    For a fixed ordering the lower bounds with that ordering have a greatest
    element: the curve ``min(f_p, f_q)`` sampled on the ordering's x-grid,
    which is concave because the minimum of concave curves is.
    """
    p, q = as_probvector(p), as_probvector(q)
    d = ctx.dim
    _ctx_for(p, ctx)
    _ctx_for(q, ctx)
    _enum_guard(d)
    fp, fq = thermo_curve(p, ctx), thermo_curve(q, ctx)
    found = []
    for perm in permutations(range(d)):
        order = BetaOrdering(perm)
        xs = accumulate(order.apply(ctx.gamma), initial=Fraction(0))
        ys = [min(fp(x), fq(x)) for x in xs]
        found.append((ProbVector(order.restore([b - a for a, b in zip(ys, ys[1:])])), order))

    def beyond(a, b):  # a lies strictly-or-equally below b
        return thermo_majorizes(b, a, ctx)

    survivors = _antichain(found, ctx, beyond)
    verdict = "unique-meet" if len(survivors) == 1 else "no-meet"
    return CandidateSet("meet", survivors, verdict)


def _interp_row(order_gamma, x):
    """Coefficients ``c`` with ``Y(x) = c @ r`` for a curve with entries ``r`` on the grid."""
    row = []
    left = Fraction(0)
    for w in order_gamma:
        if x >= left + w:
            row.append(Fraction(1))
        elif x > left:
            row.append((x - left) / w)
        else:
            row.append(Fraction(0))
        left += w
    return row


def _upper_bound_lp(order_gamma, breakpoints, objective, ceiling=None):
    """Minimize ``objective @ r`` over ordering-consistent upper bounds.

    Variables are the entries ``r`` along the ordering. Constraints: unit sum,
    non-increasing ratios ``r_k / w_k`` (concavity), and the curve lying on or
    above every breakpoint of the inputs (sufficient by concavity). With
    ``ceiling`` (entries along the same ordering) the curve must also stay on
    or below the ceiling's curve.
    """
    d = len(order_gamma)
    A_ub, b_ub = [], []
    for k in range(d - 1):
        row = [Fraction(0)] * d
        row[k + 1] = order_gamma[k]
        row[k] = -order_gamma[k + 1]
        A_ub.append(row)
        b_ub.append(0)
    for x, y in breakpoints:
        A_ub.append([-c for c in _interp_row(order_gamma, x)])
        b_ub.append(-y)
    if ceiling is not None:
        for k, height in enumerate(accumulate(ceiling[:-1]), start=1):
            A_ub.append([Fraction(1)] * k + [Fraction(0)] * (d - k))
            b_ub.append(height)
    return solve_lp(objective, A_eq=[[1] * d], b_eq=[1], A_ub=A_ub, b_ub=b_ub)


def _escaping_bound(best, orderings, breakpoints, ctx):
    """An upper bound whose curve dips below ``best``'s somewhere, if one exists.

    Checking ``best``'s own breakpoints suffices: every upper bound is
    concave and ``best`` is linear between its breakpoints.
    """
    checks = [(x, y) for x, y in thermo_curve(best, ctx).points if 0 < x < 1]
    for order in orderings:
        og = order.apply(ctx.gamma)
        for x, y in checks:
            res = _upper_bound_lp(og, breakpoints, _interp_row(og, x))
            if res.objective < y:
                return order, res.x
    return None


MAX_REFINEMENTS = 64


def join_candidates(p, q, ctx: GibbsContext) -> CandidateSet:
    """Minimal common upper bounds found by exact LPs over each beta-ordering.

    Within a fixed ordering the upper bounds form a polytope in the entry
    coordinates; minimizing a positively weighted sum of curve heights gives
    one of its minimal elements. The verdict is exact: a join exists iff a
    single candidate survives and no ordering admits an upper bound whose
    curve falls below the candidate's. When such an escaping bound exists,
    a minimal bound beneath it is added and the search repeats.
    """
    p, q = as_probvector(p), as_probvector(q)
    d = ctx.dim
    _ctx_for(p, ctx)
    _ctx_for(q, ctx)
    _enum_guard(d)
    if thermo_majorizes(p, q, ctx):
        return CandidateSet("join", ((p, beta_order(p, ctx)),), "unique-join")
    if thermo_majorizes(q, p, ctx):
        return CandidateSet("join", ((q, beta_order(q, ctx)),), "unique-join")

    fp, fq = thermo_curve(p, ctx), thermo_curve(q, ctx)
    breakpoints = [(x, y) for x, y in fp.points + fq.points if 0 < x < 1]
    weights = [Fraction(d - k) for k in range(1, d + 1)]
    found, feasible = [], []
    for perm in permutations(range(d)):
        order = BetaOrdering(perm)
        res = _upper_bound_lp(order.apply(ctx.gamma), breakpoints, weights)
        if res.status != "optimal":
            continue
        feasible.append(order)
        found.append((ProbVector(order.restore(res.x)), order))

    def beyond(a, b):  # a lies on or above b
        return thermo_majorizes(a, b, ctx)

    for _ in range(MAX_REFINEMENTS):
        survivors = _antichain(found, ctx, beyond)
        if len(survivors) != 1:
            return CandidateSet("join", survivors, "no-join")
        escape = _escaping_bound(survivors[0][0], feasible, breakpoints, ctx)
        if escape is None:
            return CandidateSet("join", survivors, "unique-join")
        order, ceiling = escape
        res = _upper_bound_lp(order.apply(ctx.gamma), breakpoints, weights, ceiling)
        found = list(survivors) + [(ProbVector(order.restore(res.x)), order)]
    raise RuntimeError("join candidate refinement did not settle")


def _open_unit(gamma0) -> Fraction:
    g = to_fraction(gamma0)
    if not Fraction(1, 2) < g < 1:
        raise ValueError(f"gamma0 must lie in (1/2, 1), got {g}")
    return g


def two_level_counterexample(gamma0) -> tuple[ProbVector, ProbVector]:
    """Two-level pair with two incomparable minimal upper bounds (no join).

    The construction only works for ``gamma0 >= 2 - sqrt(2)``: below that
    ``q < gamma0 / 2`` and ``q`` already lies above ``p``, so the join is ``q``.
    """
    g = _open_unit(gamma0)
    p = (1 + g) / 2
    q = (2 * g - 1) / g
    return ProbVector((p, 1 - p)), ProbVector((q, 1 - q))


def no_meet_counterexample(gamma0) -> tuple[ProbVector, ProbVector]:
    g = _open_unit(gamma0)
    p = (3 + g) / 4
    q = (g * g + 2 * g - 1) / (4 * g)
    return ProbVector((p, 1 - p)), ProbVector((q, 1 - q))


def d_level_bounds(ctx: GibbsContext) -> tuple[Fraction, Fraction, Fraction]:
    """Occupation ``p`` of level d-1 and the open interval admissible for ``1 - q``."""
    d = ctx.dim
    if d < 3:
        raise DimensionError("the d-level construction needs d >= 3")
    g = ctx.gamma
    g_below, g_top, g_last = g[d - 3], g[d - 2], g[d - 1]  # levels d-2, d-1, d
    if g_top == g_last:
        raise ValueError("the two highest levels must be non-degenerate")
    p = (1 + max(g_top / g_below, g_top / (g_last + g_top))) / 2
    lower = g_last / g_top * p
    upper = min(g_last / g_top, 1 - g_top / g_last * (1 - p))
    return p, lower, upper


def d_level_counterexample(ctx: GibbsContext) -> tuple[ProbVector, ProbVector]:
    """Pair supported on the two highest levels with no join, for d >= 3.

    ``p`` puts weight ``p`` on level d-1 and ``1-p`` on level d; ``1 - q`` is
    the midpoint of the open interval that makes the pair incomparable with
    two incomparable minimal upper bounds.
    """
    p, lower, upper = d_level_bounds(ctx)
    if not lower < upper:
        raise ValueError("admissible interval for q is empty for this spectrum")
    one_minus_q = (lower + upper) / 2
    zeros = (Fraction(0),) * (ctx.dim - 2)
    return ProbVector(zeros + (p, 1 - p)), ProbVector(zeros + (1 - one_minus_q, one_minus_q))

"""History erasure, future creation and thermodynamic monotones.

Erasing the ``(p, q)``-history means evolving to a state reachable from both
``p`` and ``q``; the cheapest such state is their meet when one exists.
Creating the ``(p, q)``-futures is the same problem with the order reversed
and is answered by the join. Where the classical finite-temperature
order has no meet (or join), the extremal candidates are reported instead.

Monotones are in nats; ``k_B T`` factors are not applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .majorization import ProbVector, as_probvector, join, meet
from .qubit import QubitGibbs, QubitState, qubit_join, qubit_meet
from .thermo import (
    GibbsContext,
    common_beta_order,
    join_candidates,
    meet_candidates,
    same_beta_join,
    same_beta_meet,
    thermo_majorizes,
)

__all__ = [
    "DEFAULT_MONOTONES",
    "ErasureReport",
    "Monotone",
    "asymmetry_gap",
    "create_futures",
    "erase_history",
    "evaluate_monotone",
    "shannon_entropy",
]

KINDS = ("shannon", "relative-entropy", "renyi")


@dataclass(frozen=True)
class Monotone:
    kind: str
    alpha: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown monotone kind {self.kind!r}")
        if self.kind == "renyi":
            if self.alpha is None or self.alpha <= 0 or self.alpha == 1:
                raise ValueError("Renyi order must satisfy alpha > 0, alpha != 1")

    @property
    def label(self) -> str:
        return f"renyi-{self.alpha:g}" if self.kind == "renyi" else self.kind


DEFAULT_MONOTONES = (
    Monotone("relative-entropy"),
    Monotone("renyi", 0.5),
    Monotone("renyi", 2.0),
    Monotone("shannon"),
)


def _xlogx(v: float) -> float:
    return v * math.log(v) if v > 0 else 0.0


def shannon_entropy(p) -> float:
    return -math.fsum(_xlogx(float(v)) for v in p)


def _classical(m: Monotone, p: ProbVector, gamma: ProbVector) -> float:
    ps = [float(v) for v in p]
    gs = [float(v) for v in gamma]
    if m.kind == "shannon":
        return math.log(len(ps)) - shannon_entropy(ps)
    if m.kind == "relative-entropy":
        return math.fsum(a * (math.log(a) - math.log(g)) for a, g in zip(ps, gs) if a > 0)
    a = m.alpha
    s = math.fsum(v ** a * g ** (1 - a) for v, g in zip(ps, gs) if v > 0)
    return math.log(s) / (a - 1)


def _mpow(mat: np.ndarray, s: float) -> np.ndarray:
    w, v = np.linalg.eigh(mat)
    w = np.clip(w, 0.0, None)
    with np.errstate(divide="ignore"):
        ws = np.where(w > 0, w ** s, 0.0)
    return (v * ws) @ v.conj().T


def _quantum(m: Monotone, rho: QubitState, g: QubitGibbs) -> float:
    lam = rho.eigenvalues()
    if m.kind == "shannon":
        return math.log(2) + _xlogx(lam[0]) + _xlogx(lam[1])
    g0, g1 = g.populations
    if m.kind == "relative-entropy":
        p0, p1 = (1 + rho.z) / 2, (1 - rho.z) / 2
        if g1 == 0:
            return 0.0 if p1 <= 1e-15 and rho.transverse <= 1e-15 else math.inf
        return _xlogx(lam[0]) + _xlogx(lam[1]) - p0 * math.log(g0) - p1 * math.log(g1)
    if g1 == 0:
        raise ValueError("Renyi divergence to a pure Gibbs state is not supported")
    a = m.alpha
    r = rho.density_matrix()
    if a < 1:  # Petz form, contractive for 0 < alpha < 1
        gm = np.diag([g0 ** (1 - a), g1 ** (1 - a)])
        tr = np.trace(_mpow(r, a) @ gm).real
    else:  # sandwiched form, contractive for alpha > 1
        s = (1 - a) / (2 * a)
        gs = np.diag([g0 ** s, g1 ** s])
        tr = np.trace(_mpow(gs @ r @ gs, a)).real
    return math.log(tr) / (a - 1)


def evaluate_monotone(m: Monotone, state, ctx) -> float:
    """Value of ``m`` for a classical state (with GibbsContext) or a qubit (with QubitGibbs).

    Qubit Renyi divergences use the Petz form below ``alpha = 1`` and the
    sandwiched form above, the ranges where each contracts under channels.
    """
    if isinstance(state, QubitState):
        if not isinstance(ctx, QubitGibbs):
            raise TypeError("qubit states need a QubitGibbs context")
        return _quantum(m, state, ctx)
    if not isinstance(ctx, GibbsContext):
        raise TypeError("classical states need a GibbsContext")
    p = as_probvector(state)
    if len(p) != ctx.dim:
        raise ValueError("state and context dimensions differ")
    return _classical(m, p, ctx.gamma)


@dataclass(frozen=True)
class ErasureReport:
    """Optimal state(s) for erasing a two-state history or creating two futures.

    ``costs[label]`` holds ``(value at first input, value at second input)``
    and the values at each optimal state, in order.
    """

    process: str  # "erasure" | "creation"
    optimal_states: tuple
    verdict: str  # "unique-optimum" | "multiple-candidates"
    costs: dict = field(default_factory=dict)
    method: str = ""

    def to_json(self) -> dict:
        def enc(s):
            return s.to_json()
        return {
            "process": self.process,
            "verdict": self.verdict,
            "method": self.method,
            "optimal_states": [enc(s) for s in self.optimal_states],
            "costs": {k: {"inputs": list(v["inputs"]), "optimal": list(v["optimal"])}
                      for k, v in self.costs.items()},
        }


def _report(process, p, q, ctx, states, method, monotones) -> ErasureReport:
    costs = {}
    for m in monotones:
        costs[m.label] = {
            "inputs": (evaluate_monotone(m, p, ctx), evaluate_monotone(m, q, ctx)),
            "optimal": tuple(evaluate_monotone(m, s, ctx) for s in states),
        }
    verdict = "unique-optimum" if len(states) == 1 else "multiple-candidates"
    return ErasureReport(process, tuple(states), verdict, costs, method)


def _optimal(p, q, ctx, lower: bool):
    if isinstance(p, QubitState) or isinstance(q, QubitState):
        if not (isinstance(p, QubitState) and isinstance(q, QubitState)
                and isinstance(ctx, QubitGibbs)):
            raise TypeError("mixing qubit and classical inputs")
        return [(qubit_meet if lower else qubit_join)(p, q, ctx)], "qubit-lattice"

    p, q = as_probvector(p), as_probvector(q)
    if not (len(p) == len(q) == ctx.dim):
        raise ValueError("dimension mismatch between states and context")
    hi, lo = (p, q) if thermo_majorizes(p, q, ctx) else (q, p)
    if thermo_majorizes(hi, lo, ctx):
        return [lo if lower else hi], "comparable"
    if ctx.is_infinite_temperature:
        return [(meet if lower else join)(p, q)], "majorization-lattice"
    if common_beta_order(p, q, ctx) is not None:
        return [(same_beta_meet if lower else same_beta_join)(p, q, ctx)], "shared-beta-ordering"
    cands = (meet_candidates if lower else join_candidates)(p, q, ctx)
    return cands.states, "candidate-enumeration"


def erase_history(p, q, ctx, monotones=DEFAULT_MONOTONES) -> ErasureReport:
    """Least-evolved state consistent with both pasts ``p`` and ``q``."""
    states, method = _optimal(p, q, ctx, lower=True)
    return _report("erasure", p, q, ctx, states, method, monotones)


def create_futures(p, q, ctx, monotones=DEFAULT_MONOTONES) -> ErasureReport:
    """Latest state that can still evolve into both ``p`` and ``q``.

    Dual to ``erase_history``: the same search with the order reversed.
    """
    states, method = _optimal(p, q, ctx, lower=False)
    return _report("creation", p, q, ctx, states, method, monotones)


def asymmetry_gap(p, q) -> tuple[float, float]:
    """Average entropy gain of optimal erasure vs optimal future creation.

    ``lhs = H(p^q) - (H(p)+H(q))/2`` and ``rhs = (H(p)+H(q))/2 - H(pvq)``;
    supermodularity of H on the majorization lattice gives ``lhs >= rhs``.
    """
    p, q = as_probvector(p), as_probvector(q)
    avg = (shannon_entropy(p) + shannon_entropy(q)) / 2
    return shannon_entropy(meet(p, q)) - avg, avg - shannon_entropy(join(p, q))

"""Seeded random instances for sweeps and property tests."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .majorization import ProbVector
from .qubit import QubitState
from .thermo import GibbsContext


def random_probvector(rng: random.Random, d: int, scale: int = 24,
                      zero_prob: float = 0.15) -> ProbVector:
    """Random composition of ``total`` into ``d`` parts; some entries forced to zero."""
    while True:
        w = [0 if rng.random() < zero_prob else rng.randint(0, scale) for _ in range(d)]
        total = sum(w)
        if total:
            return ProbVector(tuple(Fraction(v, total) for v in w))


def random_gibbs(rng: random.Random, d: int, scale: int = 12) -> GibbsContext:
    """Strictly positive, non-increasing rational Gibbs populations."""
    w = sorted((rng.randint(1, scale) for _ in range(d)), reverse=True)
    total = sum(w)
    return GibbsContext.from_gamma(ProbVector(tuple(Fraction(v, total) for v in w)))


def random_gp_step(rng: random.Random, p: ProbVector, ctx: GibbsContext) -> ProbVector:
    """Apply a random two-level Gibbs-preserving map to ``p``.

    On levels ``i`` (population ``g_i``) and ``j`` (``g_j <= g_i``) the matrix
    moves a fraction ``s`` of ``p_j`` to ``i`` and ``s g_j / g_i`` of ``p_i``
    to ``j``; this keeps ``gamma`` fixed and every column stochastic.
    """
    d = len(p)
    if d < 2:
        return p
    i, j = sorted(rng.sample(range(d), 2))
    g = ctx.gamma
    if g[i] < g[j]:
        i, j = j, i
    s = Fraction(rng.randint(0, 8), 8)
    t = s * g[j] / g[i]
    out = list(p)
    out[i] = (1 - t) * p[i] + s * p[j]
    out[j] = t * p[i] + (1 - s) * p[j]
    return ProbVector(tuple(out))


def random_gp_image(rng: random.Random, p: ProbVector, ctx: GibbsContext,
                    steps: int | None = None) -> ProbVector:
    for _ in range(rng.randint(1, 3) if steps is None else steps):
        p = random_gp_step(rng, p, ctx)
    return p


def random_pair(rng: random.Random, ctx: GibbsContext, related: float = 0.5):
    """A pair where, with probability ``related``, the second is a GP image of the first."""
    p = random_probvector(rng, ctx.dim)
    if rng.random() < related:
        return p, random_gp_image(rng, p, ctx)
    return p, random_probvector(rng, ctx.dim)


def random_qubit(gen: np.random.Generator, pure: bool = False) -> QubitState:
    v = gen.normal(size=3)
    v /= np.linalg.norm(v)
    if not pure:
        v *= gen.random() ** (1 / 3)
    return QubitState(*v)


def random_qubit_arrays(gen: np.random.Generator, n: int):
    """``(transverse^2, z)`` for ``n`` points uniform in the ball."""
    v = gen.normal(size=(n, 3))
    v /= np.linalg.norm(v, axis=1)[:, None]
    v *= gen.random(n)[:, None] ** (1 / 3)
    return v[:, 0] ** 2 + v[:, 1] ** 2, v[:, 2]

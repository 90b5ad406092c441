"""Brute-force ground truth for classical Gibbs-preserving transitions.

Decides whether a column-stochastic matrix ``L`` exists with ``L p = q`` and
``L gamma = gamma`` by exact phase-1 simplex over ``d*d`` unknowns. This path
shares nothing with the curve-based thermo-majorization test, which is the
point: the two are compared against each other in the test suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .majorization import DimensionError, as_probvector, uniform
from .simplex import solve_lp

MAX_DIM = 8


@dataclass(frozen=True)
class GPWitness:
    """Column-stochastic matrix, ``matrix[i][j]`` is the j -> i transition."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def apply(self, v) -> tuple[Fraction, ...]:
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.matrix)

    def to_json(self) -> str:
        return json.dumps([[str(v) for v in row] for row in self.matrix])

    @classmethod
    def from_json(cls, text: str) -> GPWitness:
        return cls(tuple(tuple(Fraction(v) for v in row) for row in json.loads(text)))


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: GPWitness | None = None

    def __bool__(self):
        return self.feasible


def gp_matrix_exists(p, q, gamma) -> Feasibility:
    """Is there a GP stochastic matrix taking ``p`` to ``q``?"""
    p, q, gamma = as_probvector(p), as_probvector(q), as_probvector(gamma)
    d = len(p)
    if len(q) != d or len(gamma) != d:
        raise DimensionError("p, q and gamma must share a dimension")
    if d > MAX_DIM:
        raise DimensionError(f"d={d} exceeds the oracle guard d <= {MAX_DIM}")
    if any(g <= 0 for g in gamma):
        raise ValueError("gamma must be strictly positive")

    # variable index for L[i][j] is i*d + j
    A, b = [], []
    for j in range(d):
        A.append([1 if k % d == j else 0 for k in range(d * d)])
        b.append(1)
    for target, src in ((q, p), (gamma, gamma)):
        for i in range(d):
            row = [Fraction(0)] * (d * d)
            for j in range(d):
                row[i * d + j] = src[j]
            A.append(row)
            b.append(target[i])

    res = solve_lp([0] * (d * d), A_eq=A, b_eq=b)
    if not res.feasible:
        return Feasibility(False)
    x = res.x
    return Feasibility(True, GPWitness(tuple(tuple(x[i * d:(i + 1) * d]) for i in range(d))))


def unital_matrix_exists(p, q) -> Feasibility:
    """Bistochastic feasibility; agrees with ``majorizes`` by Hardy-Littlewood-Polya."""
    return gp_matrix_exists(p, q, uniform(len(as_probvector(p))))


def check_witness(w: GPWitness, p, q, gamma) -> bool:
    """Exact verification of every constraint on ``w``."""
    d = len(gamma)
    M = w.matrix
    if any(v < 0 for row in M for v in row):
        return False
    if any(sum(M[i][j] for i in range(d)) != 1 for j in range(d)):
        return False
    return w.apply(p) == tuple(q) and w.apply(gamma) == tuple(gamma)

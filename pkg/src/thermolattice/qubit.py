"""Gibbs-preserving transitions between qubit states.

States are Bloch vectors, the Gibbs state sits at ``(0, 0, zeta)`` with
``zeta = 2/Z - 1``. Rotations about z are free and reversible, so every
computation first moves states to the xz-plane with ``x >= 0``.

Two routes decide reachability: the closed-form pair ``R+/R-`` and a sampled
trace-norm test over a grid of mixing weights ``lam``. They are deliberately
independent and are compared in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TOL = 1e-9

__all__ = [
    "AUProfile",
    "ConeDescriptor",
    "QubitGibbs",
    "QubitState",
    "ZeroTemperatureError",
    "au_delta",
    "au_oracle",
    "canonical_rep",
    "decision_margin",
    "future_cone",
    "gp_exists_qubit",
    "lambda_roots",
    "qubit_join",
    "qubit_meet",
    "r3",
    "r_plus_minus",
]


class ZeroTemperatureError(ValueError):
    """The operation needs a mixed Gibbs state (zeta < 1)."""


@dataclass(frozen=True)
class QubitState:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.x ** 2 + self.y ** 2 + self.z ** 2 > 1 + 1e-12:
            raise ValueError(f"Bloch vector {self.bloch} lies outside the unit ball")

    @classmethod
    def incoherent(cls, ground_population) -> QubitState:
        return cls(0.0, 0.0, 2 * float(ground_population) - 1)

    @property
    def bloch(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    @property
    def radius(self) -> float:
        return math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)

    @property
    def transverse(self) -> float:
        return math.hypot(self.x, self.y)

    def density_matrix(self) -> np.ndarray:
        return 0.5 * np.array([[1 + self.z, self.x - 1j * self.y],
                               [self.x + 1j * self.y, 1 - self.z]])

    def eigenvalues(self) -> tuple[float, float]:
        r = min(self.radius, 1.0)
        return ((1 + r) / 2, (1 - r) / 2)

    def to_json(self) -> list[float]:
        return [self.x, self.y, self.z]


@dataclass(frozen=True)
class QubitGibbs:
    zeta: float

    def __post_init__(self):
        object.__setattr__(self, "zeta", float(self.zeta))
        if not 0.0 <= self.zeta <= 1.0:
            raise ValueError(f"zeta must lie in [0, 1], got {self.zeta}")

    @classmethod
    def from_beta_energy(cls, beta: float, energy: float) -> QubitGibbs:
        """Two levels at 0 and ``energy``: ``Z = 1 + exp(-beta E)``."""
        Z = 1.0 + math.exp(-beta * energy)
        return cls(2.0 / Z - 1.0)

    @property
    def state(self) -> QubitState:
        return QubitState(0.0, 0.0, self.zeta)

    @property
    def populations(self) -> tuple[float, float]:
        return ((1 + self.zeta) / 2, (1 - self.zeta) / 2)

    @property
    def zero_temperature(self) -> bool:
        return self.zeta >= 1.0


def canonical_rep(rho: QubitState) -> QubitState:
    return QubitState(rho.transverse, 0.0, rho.z)


def _finite(g: QubitGibbs) -> None:
    if g.zero_temperature:
        raise ZeroTemperatureError("zeta = 1: use the zero-temperature criterion (r3)")


def _delta(xx: float, z: float, zeta: float) -> float:
    # xx is the squared transverse length
    return math.sqrt((z - zeta) ** 2 + xx * (1 - zeta ** 2))


def r_plus_minus(rho: QubitState, g: QubitGibbs) -> tuple[float, float]:
    _finite(g)
    d = _delta(rho.x ** 2 + rho.y ** 2, rho.z, g.zeta)
    return d + g.zeta * rho.z, d - g.zeta * rho.z


def r_plus_minus_arrays(xx, z, zeta: float):
    """Vectorized ``(R+, R-)`` from squared transverse length and z."""
    d = np.sqrt((z - zeta) ** 2 + xx * (1 - zeta ** 2))
    return d + zeta * z, d - zeta * z


def r3(rho: QubitState) -> float:
    """Zero-temperature radius; 0 for the ground state itself."""
    gap = 1.0 - rho.z
    if gap <= 1e-15:
        return 0.0
    return (rho.x ** 2 + rho.y ** 2 + gap ** 2) / (2 * gap)


def gp_exists_qubit(rho: QubitState, rho_prime: QubitState, g: QubitGibbs,
                    tol: float = TOL) -> bool:
    if g.zero_temperature:
        return rho.z <= rho_prime.z + tol and r3(rho) >= r3(rho_prime) - tol
    pp, pm = r_plus_minus(rho, g)
    qp, qm = r_plus_minus(rho_prime, g)
    return pp >= qp - tol and pm >= qm - tol


def decision_margin(rho: QubitState, rho_prime: QubitState, g: QubitGibbs) -> float:
    """Distance of the pair from the R+/R- decision boundary."""
    pp, pm = r_plus_minus(rho, g)
    qp, qm = r_plus_minus(rho_prime, g)
    return min(abs(pp - qp), abs(pm - qm))


@dataclass(frozen=True)
class ConeDescriptor:
    """Future thermal cone as an intersection of two z-axis-centred balls.

    With ``zero_temp_halfspace`` set (zeta = 1), the cone is the ball of
    radius ``R1`` around ``c1`` cut by ``z' >= zero_temp_halfspace``; ``R2``
    and ``c2`` then repeat the same ball.
    """

    R1: float
    R2: float
    c1: float
    c2: float
    zero_temp_halfspace: float | None = None

    def contains(self, sigma: QubitState, tol: float = TOL) -> bool:
        t, z = sigma.transverse, sigma.z
        in1 = math.hypot(t, z - self.c1) <= self.R1 + tol
        in2 = math.hypot(t, z - self.c2) <= self.R2 + tol
        if self.zero_temp_halfspace is not None and z < self.zero_temp_halfspace - tol:
            return False
        return in1 and in2

    def to_json(self) -> dict:
        return {"R1": self.R1, "R2": self.R2, "c1": self.c1, "c2": self.c2,
                "zero_temp_halfspace": self.zero_temp_halfspace}


def _radii(rho: QubitState, zeta: float) -> tuple[float, float, float, float]:
    pp, pm = r_plus_minus(rho, QubitGibbs(zeta))
    s = 1 - zeta ** 2
    R1 = (pm + zeta ** 2) / s
    R2 = (pp - zeta ** 2) / s
    return R1, R2, zeta * (1 + R1), zeta * (1 - R2)


def future_cone(rho: QubitState, g: QubitGibbs) -> ConeDescriptor:
    if g.zero_temperature:
        R = r3(rho)
        return ConeDescriptor(R, R, 1 - R, 1 - R, rho.z)
    return ConeDescriptor(*_radii(rho, g.zeta))


@dataclass(frozen=True)
class AUProfile:
    """Roots of the quadratic ``c(lam) = c2 lam^2 + c1 lam + c0`` for one state."""

    lambda1: float
    lambda2: float
    c2: float
    c1: float
    c0: float


def lambda_roots(rho: QubitState, g: QubitGibbs) -> AUProfile:
    _finite(g)
    zeta = g.zeta
    rho = canonical_rep(rho)
    x, z = rho.x, rho.z
    denom = 4 - (z + zeta) ** 2 - x ** 2
    assert denom > 0, "denominator vanishes only outside the Bloch ball"
    d = _delta(x * x, z, zeta)
    l1 = (2 - zeta * (z + zeta) - d) / denom
    l2 = (2 - zeta * (z + zeta) + d) / denom
    assert -TOL <= l1 <= 0.5 + TOL and 0.5 - TOL <= l2 <= 1 + TOL, (l1, l2)
    return AUProfile(l1, l2, -denom / 2, 2 - zeta * (z + zeta), (zeta ** 2 - 1) / 2)


def au_delta(rho: QubitState, rho_prime: QubitState, g: QubitGibbs,
             lambdas: np.ndarray) -> np.ndarray:
    """``D_lam(rho) - D_lam(rho')`` with ``D_lam = ||lam rho - (1-lam) gamma||_1^2``.

    ``lam rho - (1-lam) gamma`` is ``(t I + v.sigma)/2`` with eigenvalues
    ``(t +- |v|)/2``; its trace norm is the sum of their absolute values.
    """
    lam = np.asarray(lambdas, dtype=float)
    t = 2 * lam - 1

    def sq_norm(s: QubitState):
        vx = lam * s.x
        vy = lam * s.y
        vz = lam * s.z - (1 - lam) * g.zeta
        v = np.sqrt(vx ** 2 + vy ** 2 + vz ** 2)
        return (0.5 * (np.abs(t + v) + np.abs(t - v))) ** 2

    return sq_norm(rho) - sq_norm(rho_prime)


def au_oracle(rho: QubitState, rho_prime: QubitState, g: QubitGibbs,
              grid_size: int = 1001, tol: float = TOL) -> bool:
    """Sampled two-state transformation test on a uniform grid of weights.

    A necessary condition at grid resolution; it is not ground truth for pairs
    sitting on the decision boundary.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    lam = np.linspace(0.0, 1.0, grid_size)
    return bool(np.all(au_delta(rho, rho_prime, g, lam) >= -tol))


def _circle_intersection(ca: float, Ra: float, cb: float, Rb: float) -> QubitState:
    if abs(cb - ca) < 1e-15:
        raise ValueError("concentric circles have no isolated intersection")
    z = (Ra ** 2 - Rb ** 2 - ca ** 2 + cb ** 2) / (2 * (cb - ca))
    xx = Ra ** 2 - (z - ca) ** 2
    x = math.sqrt(max(xx, 0.0))
    # rounding can push a boundary point a hair outside the ball
    norm = math.hypot(x, z)
    if norm > 1.0:
        x, z = x / norm, z / norm
    return QubitState(x, 0.0, z)


def _extremal(rho: QubitState, rho_prime: QubitState, g: QubitGibbs, pick) -> QubitState:
    if g.zero_temperature:
        raise ZeroTemperatureError("qubit join/meet is only implemented for zeta < 1")
    a, b = canonical_rep(rho), canonical_rep(rho_prime)
    ra, rb = _radii(a, g.zeta), _radii(b, g.zeta)
    s1 = ra if pick(ra[0], rb[0]) else rb
    s2 = ra if pick(ra[1], rb[1]) else rb
    return _circle_intersection(s1[2], s1[0], s2[3], s2[1])


def qubit_join(rho: QubitState, rho_prime: QubitState, g: QubitGibbs) -> QubitState:
    """Least upper bound: on ``C1`` of the larger-R1 state and ``C2`` of the larger-R2."""
    a, b = canonical_rep(rho), canonical_rep(rho_prime)
    if gp_exists_qubit(a, b, g):
        return a
    if gp_exists_qubit(b, a, g):
        return b
    return _extremal(a, b, g, lambda u, v: u >= v)


def qubit_meet(rho: QubitState, rho_prime: QubitState, g: QubitGibbs) -> QubitState:
    """Greatest lower bound: on ``C1`` of the smaller-R1 state and ``C2`` of the smaller-R2."""
    a, b = canonical_rep(rho), canonical_rep(rho_prime)
    if gp_exists_qubit(a, b, g):
        return b
    if gp_exists_qubit(b, a, g):
        return a
    return _extremal(a, b, g, lambda u, v: u <= v)

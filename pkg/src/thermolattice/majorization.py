"""Majorization preorder and the infinite-temperature (information) lattice.

Probability vectors are held as exact rationals. Two vectors related by a
permutation are equivalent, so lattice operations act on the sorted
representative ``p↓`` and return non-increasing vectors.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

from ._rational import to_fraction

__all__ = [
    "CanonicalClass",
    "DimensionError",
    "JoinTrace",
    "PLCurve",
    "ProbVector",
    "as_probvector",
    "canonicalize",
    "join",
    "join_trace",
    "majorization_curve",
    "majorizes",
    "meet",
    "normalized",
    "probvec",
    "spectrum_majorizes",
    "uniform",
]


class DimensionError(ValueError):
    """Inputs have incompatible or unsupported dimensions."""


@dataclass(frozen=True)
class ProbVector(Sequence):
    """A d-dimensional probability distribution with exact rational entries."""

    entries: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(to_fraction(v) for v in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("a probability vector needs at least one entry")
        if any(v < 0 for v in entries):
            raise ValueError(f"negative entry in {self}")
        if sum(entries) != 1:
            raise ValueError(f"entries sum to {sum(entries)}, not 1")

    def __getitem__(self, index):
        return self.entries[index]

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return "ProbVector(" + ", ".join(str(v) for v in self.entries) + ")"

    @property
    def dim(self) -> int:
        return len(self.entries)

    def sorted_desc(self) -> ProbVector:
        return ProbVector(tuple(sorted(self.entries, reverse=True)))

    def to_json(self) -> list[str]:
        return [str(v) for v in self.entries]

    def as_floats(self) -> list[float]:
        return [float(v) for v in self.entries]


def probvec(*entries) -> ProbVector:
    """Shorthand constructor: ``probvec("1/2", "1/4", 0.25)``."""
    if len(entries) == 1 and not isinstance(entries[0], (str, int, float, Fraction)):
        entries = tuple(entries[0])
    return ProbVector(tuple(entries))


def as_probvector(p) -> ProbVector:
    return p if isinstance(p, ProbVector) else ProbVector(tuple(p))


def normalized(weights) -> ProbVector:
    """Scale non-negative weights to unit sum. Never applied implicitly."""
    ws = [to_fraction(w) for w in weights]
    total = sum(ws)
    if total <= 0:
        raise ValueError("weights must have a positive sum")
    return ProbVector(tuple(w / total for w in ws))


def uniform(d: int) -> ProbVector:
    return ProbVector(tuple(Fraction(1, d) for _ in range(d)))


def _check_dims(p: ProbVector, q: ProbVector) -> None:
    if len(p) != len(q):
        raise DimensionError(f"dimension mismatch: {len(p)} vs {len(q)}")


@dataclass(frozen=True)
class PLCurve:
    """Piecewise-linear curve through ``points``, x strictly increasing from 0."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pts = tuple((to_fraction(x), to_fraction(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        if not pts or pts[0] != (0, 0):
            raise ValueError("curve must start at (0, 0)")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x1 <= x0:
                raise ValueError("x-coordinates must be strictly increasing")
            if y1 < y0:
                raise ValueError("y-coordinates must be non-decreasing")

    @property
    def xs(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.points)

    @property
    def ys(self) -> tuple[Fraction, ...]:
        return tuple(y for _, y in self.points)

    def __call__(self, x) -> Fraction:
        x = to_fraction(x)
        pts = self.points
        if x < 0 or x > pts[-1][0]:
            raise ValueError(f"x={x} outside [0, {pts[-1][0]}]")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return pts[-1][1]

    def slopes(self) -> list[Fraction]:
        return [(y1 - y0) / (x1 - x0)
                for (x0, y0), (x1, y1) in zip(self.points, self.points[1:])]

    def is_concave(self) -> bool:
        s = self.slopes()
        return all(a >= b for a, b in zip(s, s[1:]))

    def dominates(self, other: PLCurve) -> bool:
        """``self(x) >= other(x)`` everywhere; requires ``self`` concave.

        A concave curve minus a linear piece is concave, so the minimum over
        each segment of ``other`` sits at its endpoints.
        """
        return all(self(x) >= y for x, y in other.points)


@dataclass(frozen=True)
class CanonicalClass:
    """Sorted representative of a permutation class.

    ``representative[i] == original[permutation[i]]`` (0-based indices).
    """

    representative: ProbVector
    permutation: tuple[int, ...]


def canonicalize(p) -> CanonicalClass:
    p = as_probvector(p)
    # stable: equal entries keep their original index order
    perm = tuple(sorted(range(len(p)), key=lambda i: -p[i]))
    return CanonicalClass(ProbVector(tuple(p[i] for i in perm)), perm)


def _cumsums(values) -> list[Fraction]:
    return [Fraction(0), *accumulate(values)]


def majorizes(p, q) -> bool:
    """True iff every partial sum of ``p↓`` is at least that of ``q↓``."""
    p, q = as_probvector(p), as_probvector(q)
    _check_dims(p, q)
    sp = _cumsums(sorted(p, reverse=True))
    sq = _cumsums(sorted(q, reverse=True))
    return all(a >= b for a, b in zip(sp, sq))


def spectrum_majorizes(spec_rho, spec_sigma) -> bool:
    """Infinite-temperature quantum ordering.

    A unital channel maps rho to sigma iff the spectrum of rho majorizes that
    of sigma, so the quantum question reduces to the classical one on eigenvalue lists.
    """
    return majorizes(spec_rho, spec_sigma)


def majorization_curve(p) -> PLCurve:
    p = as_probvector(p)
    ys = _cumsums(sorted(p, reverse=True))
    return PLCurve(tuple((Fraction(i), y) for i, y in enumerate(ys)))


def _differences(cums: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(b - a for a, b in zip(cums, cums[1:]))


def meet(p, q) -> ProbVector:
    """Greatest lower bound: the vector whose curve is ``min(f_p, f_q)``."""
    p, q = as_probvector(p), as_probvector(q)
    _check_dims(p, q)
    sp = _cumsums(sorted(p, reverse=True))
    sq = _cumsums(sorted(q, reverse=True))
    return ProbVector(_differences([min(a, b) for a, b in zip(sp, sq)]))


@dataclass(frozen=True)
class JoinTrace:
    start: tuple[Fraction, ...]
    steps: tuple[tuple[int, int, Fraction], ...]
    result: ProbVector


def flatten_to_concave(g: Sequence[Fraction], weights: Sequence[Fraction] | None = None):
    """Smooth ``g`` until ``g[i] / weights[i]`` is non-increasing.

    Each step takes the first index ``n`` where the ratio rises, then the
    largest ``m < n`` whose left neighbour ratio is at least the block ratio
    ``b = sum(g[m..n]) / sum(weights[m..n])`` (``m == 0`` always qualifies),
    and resets ``g[i] = b * weights[i]`` on the block. Indices are 0-based.

    Returns the smoothed list and the list of ``(m, n, b)`` steps taken.
    """
    g = list(g)
    w = [Fraction(1)] * len(g) if weights is None else list(weights)
    steps = []
    while True:
        n = next((i for i in range(1, len(g)) if g[i] * w[i - 1] > g[i - 1] * w[i]), None)
        if n is None:
            return g, steps
        for m in range(n - 1, -1, -1):
            b = sum(g[m:n + 1]) / sum(w[m:n + 1])
            if m == 0 or g[m - 1] >= b * w[m - 1]:
                break
        for i in range(m, n + 1):
            g[i] = b * w[i]
        steps.append((m, n, b))
        if len(steps) >= len(g):
            raise AssertionError("flattening failed to terminate")


def join_trace(p, q) -> JoinTrace:
    """Least upper bound together with the intermediate smoothing record."""
    p, q = as_probvector(p), as_probvector(q)
    _check_dims(p, q)
    sp = _cumsums(sorted(p, reverse=True))
    sq = _cumsums(sorted(q, reverse=True))
    g0 = _differences([max(a, b) for a, b in zip(sp, sq)])
    g, steps = flatten_to_concave(g0)
    return JoinTrace(g0, tuple(steps), ProbVector(tuple(g)))


def join(p, q) -> ProbVector:
    return join_trace(p, q).result

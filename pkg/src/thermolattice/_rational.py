"""Conversions between user-facing numbers and exact rationals."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def to_fraction(value) -> Fraction:
    """Convert ``value`` to a Fraction without binary-float artefacts.

    Floats are read through their shortest decimal repr, so ``0.15`` becomes
    ``3/20`` rather than the nearest dyadic rational. Strings may be integers,
    decimals or ``"a/b"``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def fraction_str(value: Fraction) -> str:
    return str(value)

"""Thermodynamic ordering of classical and qubit states under Gibbs-preserving maps."""

from .majorization import (
    CanonicalClass,
    DimensionError,
    PLCurve,
    ProbVector,
    canonicalize,
    join,
    majorization_curve,
    majorizes,
    meet,
    normalized,
    probvec,
    spectrum_majorizes,
    uniform,
)

__version__ = "0.1.0"

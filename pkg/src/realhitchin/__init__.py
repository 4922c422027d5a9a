"""Real structures on hyperelliptic curves and component counts of real Hitchin fibres."""

__version__ = "0.1.0"

from .curve import HyperellipticCurve, InvolutionKind, build_curve  # noqa: E402
from .klein import KleinInvariants, admissible_pairs, classify_hyperelliptic, validate_invariants  # noqa: E402
from .spectral import QuadDifferential, SpectralInvariants, analyze, ovals  # noqa: E402
from .counting import count_gl, count_gl2, count_sl2, torus_d  # noqa: E402

__all__ = [
    "HyperellipticCurve",
    "InvolutionKind",
    "KleinInvariants",
    "QuadDifferential",
    "SpectralInvariants",
    "admissible_pairs",
    "analyze",
    "build_curve",
    "classify_hyperelliptic",
    "count_gl",
    "count_gl2",
    "count_sl2",
    "ovals",
    "torus_d",
    "validate_invariants",
]

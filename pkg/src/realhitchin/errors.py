"""Exception types shared across the package."""

from .realpoly import CertificationError, NonSquareFree


class InvalidCurve(ValueError):
    pass


class OddDegree(InvalidCurve):
    """Infinity is a branch point: the defining polynomial has odd degree."""


class NotConjugationClosed(InvalidCurve):
    pass


class GenusTooSmall(InvalidCurve):
    pass


class NoSuchInvolution(ValueError):
    pass


class NonSimpleZeros(ValueError):
    pass


class RealityViolation(ValueError):
    pass


class OddU(ValueError):
    pass


class NotApplicable(ValueError):
    pass


class NotPowerOfTwoForm(ValueError):
    pass


class InvalidCaseParams(ValueError):
    pass


class OddOvalAssignment(ValueError):
    pass


class NoFixedBranchPoint(ValueError):
    pass


class SampleDegeneracy(RuntimeError):
    pass


__all__ = [
    "CertificationError",
    "GenusTooSmall",
    "InvalidCaseParams",
    "InvalidCurve",
    "NoFixedBranchPoint",
    "NoSuchInvolution",
    "NonSimpleZeros",
    "NonSquareFree",
    "NotApplicable",
    "NotConjugationClosed",
    "NotPowerOfTwoForm",
    "OddDegree",
    "OddOvalAssignment",
    "OddU",
    "RealityViolation",
    "SampleDegeneracy",
]

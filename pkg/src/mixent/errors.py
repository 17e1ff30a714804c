"""Exception taxonomy shared by all modules."""


class MixentError(ValueError):
    """Base class for contract violations raised by mixent."""


class NotHermitian(MixentError):
    pass


class SpectrumNotReal(MixentError):
    pass


class NotPSD(MixentError):
    pass


class NotNormalized(MixentError):
    pass


class WeightsInvalid(MixentError):
    pass


class InvalidDensityMatrix(MixentError):
    pass


class OmegaOutOfRange(MixentError):
    pass


class ParamOutOfRange(MixentError):
    pass


class ToleranceOutOfRange(MixentError):
    pass


class GridInvalid(MixentError):
    pass


class BranchInconsistent(MixentError):
    """Neither closed-form branch validates against its dominance condition."""


class OmegaMismatch(MixentError):
    """Closed-form critical weight disagrees with the bisection solver."""

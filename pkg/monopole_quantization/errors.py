"""Error types raised by the monopole quantization library.

Every error derives from ``MonopoleQuantizationError``, which is itself a
``ValueError`` so callers validating inputs can keep catching ``ValueError``.
"""


class MonopoleQuantizationError(ValueError):
    """Base class for all errors raised by this package"""


class DegenerateQuaternion(MonopoleQuantizationError):
    """A quaternion or axis is too close to zero to be normalized"""


class SingularPoint(MonopoleQuantizationError):
    """A point lies inside the exclusion ball around the monopole"""


class AntipodalTranslation(MonopoleQuantizationError):
    """x and x+a are anti-parallel, so the cocycle rotation axis is undefined"""


class DegenerateTriangle(MonopoleQuantizationError):
    """Two vertices of a spherical triangle are (nearly) parallel"""


class IllConditioned(MonopoleQuantizationError):
    """A ratio was requested with a denominator too close to zero"""


class InsufficientSamples(MonopoleQuantizationError):
    """Too many samples were skipped for a pointwise comparison to be meaningful"""


class MomentumTooSmall(MonopoleQuantizationError):
    """The momentum of an orbit chart point is below the chart threshold"""


class OffOrbit(MonopoleQuantizationError):
    """A coadjoint point does not satisfy the massless orbit constraints"""


class InconsistentTable(MonopoleQuantizationError):
    """Finite-difference structure constants did not round to a clean table"""


class ConfigError(MonopoleQuantizationError):
    """A verification configuration is invalid"""


class ReportIoError(MonopoleQuantizationError):
    """A verification report could not be written"""

"""Exception types raised by twistphase."""


class TwistPhaseError(Exception):
    """Base class for all library errors."""


class InvalidInputError(TwistPhaseError, ValueError):
    """Argument outside the domain an operation accepts (non-finite, bad range, zero vector)."""


class DegeneracyError(TwistPhaseError):
    """Repeated eigenvalue; no unique eigenbasis exists."""

    def __init__(self, eigenvalue, message=None):
        self.eigenvalue = complex(eigenvalue)
        super().__init__(message or f"repeated eigenvalue {self.eigenvalue!r}")


class SingularBirefringenceError(TwistPhaseError):
    """Birefringence diverges (sin(theta) = 0 in the polarization-matrix derivation)."""


class UnsupportedMediumError(TwistPhaseError):
    """Operation requires a lossless (anti-Hermitian) generator."""


class UndefinedPhaseError(TwistPhaseError):
    """Overlap of two consecutive states vanishes, so their relative phase is undefined."""


class AmbiguousGeodesicError(TwistPhaseError):
    """Consecutive sphere points are antipodal; the connecting geodesic is not unique."""


class ConfigError(TwistPhaseError, ValueError):
    """Malformed scenario configuration."""

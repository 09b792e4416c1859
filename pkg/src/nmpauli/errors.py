"""Exceptions raised by nmpauli."""


class NMError(ValueError):
    """Base class for all nmpauli errors."""


class DegenerateAlpha(NMError):
    """alpha = 0 has no crossover point: both roots of kappa = 1/2 run off to infinity."""


class NotCP(NMError):
    """Channel parameters give negative Pauli weights (map from 0 is not CP)."""


class MapNonInvertible(NMError):
    """The superoperator E(s, 0) cannot be inverted at the requested p."""

    def __init__(self, p, message=None):
        self.p = p
        super().__init__(message or f"map E(s,0) is non-invertible at p = {p!r}")


class SingularWindow(NMError):
    """Intermediate window starts at the crossover point, closed forms diverge."""


class UnsupportedForm(NMError):
    """Choi matrix is not diagonal in the Pauli-Bell basis."""


class RateSingular(NMError):
    """Decoherence rate evaluated at a point where 1 - 2 kappa vanishes."""

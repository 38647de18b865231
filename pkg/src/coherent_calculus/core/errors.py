"""Error hierarchy shared by the numerical modules.

Each error carries the CLI exit code it maps to.
"""


class CoherentCalculusError(Exception):
    """Base exception for coherent-calculus errors."""

    exit_code = 1


class DomainError(CoherentCalculusError):
    """An argument lies outside the domain of an operation."""

    exit_code = 3


class SingularityError(DomainError):
    """A fraction-linear denominator vanishes."""

    pass


class LightConeSingularityError(SingularityError):
    """A Cl(1,1) element of zero Clifford norm had to be inverted."""

    pass


class SpectralDomainError(DomainError):
    """The spectral radius condition fails or a matrix pencil is singular."""

    pass


class DiskViolationError(DomainError):
    """A holomorphic map sends a point outside the closed unit disk."""

    exit_code = 5


class ClusterResolutionError(CoherentCalculusError):
    """Two eigenvalue clusters are too close to be told apart."""

    exit_code = 4


class UnsupportedSystemError(CoherentCalculusError):
    """The wavelet system does not support the requested check."""

    pass


class DecompositionRequiredError(CoherentCalculusError):
    """A symplectic element is not in one of the generator families."""

    pass


class PreconditionError(CoherentCalculusError):
    """An input violates a documented precondition."""

    pass


class BoxSizeError(CoherentCalculusError):
    """A Heisenberg-group function does not fit in its sampling box."""

    pass

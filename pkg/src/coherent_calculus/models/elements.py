"""Group and algebra elements: Heisenberg group, SU(1,1), Cl(1,1), Sp(2,R)."""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..core.errors import DomainError

# Relative tolerance for the determinant constraints.
DET_TOL = 1e-12


@dataclass(frozen=True)
class HeisPoint:
    """A point (s, x, y) of the Heisenberg group, with z = x + iy."""

    s: float
    x: float
    y: float

    def validate(self) -> bool:
        """Check that all coordinates are finite."""
        return all(math.isfinite(v) for v in (self.s, self.x, self.y))

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @classmethod
    def identity(cls) -> "HeisPoint":
        return cls(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class SL2Elt:
    """An element [[alpha, beta], [conj(beta), conj(alpha)]] of SU(1,1).

    The pair is rescaled on construction so that |alpha|^2 - |beta|^2 = 1.

    Raises:
        DomainError: If |alpha|^2 - |beta|^2 is not positive.
    """

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        det = abs(self.alpha) ** 2 - abs(self.beta) ** 2
        if not det > 0.0:
            raise DomainError(
                f"|alpha|^2 - |beta|^2 = {det:.3e} must be positive for SU(1,1)"
            )
        scale = math.sqrt(det)
        object.__setattr__(self, "alpha", complex(self.alpha) / scale)
        object.__setattr__(self, "beta", complex(self.beta) / scale)

    def validate(self) -> bool:
        return abs(abs(self.alpha) ** 2 - abs(self.beta) ** 2 - 1.0) <= DET_TOL

    def __mul__(self, other: "SL2Elt") -> "SL2Elt":
        return SL2Elt(
            self.alpha * other.alpha + self.beta * other.beta.conjugate(),
            self.alpha * other.beta + self.beta * other.alpha.conjugate(),
        )

    def inverse(self) -> "SL2Elt":
        return SL2Elt(self.alpha.conjugate(), -self.beta)

    def as_matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.alpha, self.beta],
                [self.beta.conjugate(), self.alpha.conjugate()],
            ],
            dtype=complex,
        )

    @classmethod
    def identity(cls) -> "SL2Elt":
        return cls(1.0, 0.0)

    @classmethod
    def rotation(cls, psi: float) -> "SL2Elt":
        """The compact-subgroup element h_psi = diag(e^{i psi}, e^{-i psi})."""
        return cls(complex(math.cos(psi), math.sin(psi)), 0.0)

    @classmethod
    def boost(cls, t: float, theta1: float = 0.0, theta2: float = 0.0) -> "SL2Elt":
        """alpha = cosh(t) e^{i theta1}, beta = sinh(t) e^{i theta2}."""
        return cls(
            math.cosh(t) * complex(math.cos(theta1), math.sin(theta1)),
            math.sinh(t) * complex(math.cos(theta2), math.sin(theta2)),
        )


@dataclass(frozen=True)
class DiskPoint:
    """A point of the open unit disk.

    Raises:
        DomainError: If |z| >= 1.
    """

    z: complex

    def __post_init__(self) -> None:
        if not abs(self.z) < 1.0:
            raise DomainError(f"|z| = {abs(self.z):.6g} is not inside the unit disk")
        object.__setattr__(self, "z", complex(self.z))

    def __complex__(self) -> complex:
        return self.z


DiskLike = Union[DiskPoint, complex, float]


def as_disk_point(value: DiskLike) -> complex:
    """Return the complex coordinate of a disk point, checking |z| < 1."""
    if isinstance(value, DiskPoint):
        return value.z
    return DiskPoint(complex(value)).z


@dataclass(frozen=True)
class Cliff11:
    """c0 + c1 e1 + c2 e2 + c12 e1e2 in Cl(1,1), with e1^2 = -1 and e2^2 = +1."""

    c0: float = 0.0
    c1: float = 0.0
    c2: float = 0.0
    c12: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.c0, self.c1, self.c2, self.c12], dtype=float)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "Cliff11":
        return cls(*(float(v) for v in values))

    @classmethod
    def scalar(cls, value: float) -> "Cliff11":
        return cls(c0=value)

    def __add__(self, other: "Cliff11") -> "Cliff11":
        return Cliff11.from_array(self.as_array() + other.as_array())

    def __sub__(self, other: "Cliff11") -> "Cliff11":
        return Cliff11.from_array(self.as_array() - other.as_array())

    def __neg__(self) -> "Cliff11":
        return Cliff11.from_array(-self.as_array())


E0 = Cliff11(c0=1.0)
E1 = Cliff11(c1=1.0)
E2 = Cliff11(c2=1.0)
E12 = Cliff11(c12=1.0)


@dataclass(frozen=True)
class HypPoint:
    """A vector u = u1 e1 + u2 e2 of R^{1,1}."""

    u1: float
    u2: float

    def as_cliff(self) -> Cliff11:
        return Cliff11(c1=self.u1, c2=self.u2)

    def one_plus_square(self) -> float:
        """The scalar 1 + u^2 = 1 - u1^2 + u2^2."""
        return 1.0 - self.u1**2 + self.u2**2


@dataclass(frozen=True)
class Cliff11Matrix:
    """A 2x2 Clifford matrix with entries a (diagonal) and b (off-diagonal)."""

    a: Cliff11
    b: Cliff11

    @classmethod
    def identity(cls) -> "Cliff11Matrix":
        return cls(E0, Cliff11())


@dataclass(frozen=True)
class SympElt:
    """A linear symplectomorphism [[a, b], [c, d]] of the (p, q) plane.

    Raises:
        DomainError: If ad - bc differs from 1 by more than 1e-12.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > DET_TOL:
            raise DomainError(f"Symplectic determinant {det!r} differs from 1")

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    def inverse(self) -> "SympElt":
        return SympElt(self.d, -self.b, -self.c, self.a)

    def __mul__(self, other: "SympElt") -> "SympElt":
        m = self.as_matrix() @ other.as_matrix()
        return SympElt(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls) -> "SympElt":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def rotation(cls, theta: float) -> "SympElt":
        c, s = math.cos(theta), math.sin(theta)
        return cls(c, -s, s, c)

    @classmethod
    def scaling(cls, t: float) -> "SympElt":
        """(p, q) -> (t p, q / t)."""
        if t <= 0.0:
            raise DomainError(f"Scaling factor {t!r} must be positive")
        return cls(t, 0.0, 0.0, 1.0 / t)

    @classmethod
    def shear(cls, c: float) -> "SympElt":
        """(p, q) -> (p + c q, q)."""
        return cls(1.0, c, 0.0, 1.0)

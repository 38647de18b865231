"""Matrices, holomorphic maps and jet spectra for the functional calculus."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from ..core.errors import DomainError
from .functions import is_power_of_two


@dataclass
class CMatrix:
    """A complex n x n matrix."""

    array: np.ndarray

    def __post_init__(self) -> None:
        self.array = np.asarray(self.array, dtype=complex)
        if not self.validate():
            raise DomainError(
                f"Matrix of shape {self.array.shape} must be square with finite entries"
            )

    def validate(self) -> bool:
        return (
            self.array.ndim == 2
            and self.array.shape[0] == self.array.shape[1]
            and bool(np.all(np.isfinite(self.array)))
        )

    @property
    def n(self) -> int:
        return int(self.array.shape[0])

    def spectral_radius(self) -> float:
        if self.n == 0:
            return 0.0
        return float(np.max(np.abs(np.linalg.eigvals(self.array))))

    def entries(self) -> list[complex]:
        """Row-major entries."""
        return [complex(v) for v in self.array.reshape(-1)]

    @classmethod
    def from_entries(cls, n: int, entries: Sequence[complex]) -> "CMatrix":
        if len(entries) != n * n:
            raise DomainError(f"Expected {n * n} entries, got {len(entries)}")
        return cls(np.asarray(entries, dtype=complex).reshape(n, n))

    @classmethod
    def identity(cls, n: int) -> "CMatrix":
        return cls(np.eye(n, dtype=complex))


@dataclass(frozen=True)
class JetSpectrum:
    """Multiset of (eigenvalue, Jordan block length) pairs."""

    pairs: tuple[tuple[complex, int], ...]

    def __post_init__(self) -> None:
        ordered = tuple(
            sorted(
                ((complex(lam), int(k)) for lam, k in self.pairs),
                key=lambda pair: (round(pair[0].real, 9), round(pair[0].imag, 9), pair[1]),
            )
        )
        object.__setattr__(self, "pairs", ordered)

    def validate(self) -> bool:
        return all(k >= 1 for _, k in self.pairs)

    @property
    def n(self) -> int:
        return sum(k for _, k in self.pairs)

    def in_disk(self) -> bool:
        return all(abs(lam) < 1.0 for lam, _ in self.pairs)

    def matches(self, other: "JetSpectrum", tol: float = 1e-6) -> bool:
        """Multiset equality with eigenvalues compared within tol."""
        if len(self.pairs) != len(other.pairs):
            return False
        remaining = list(other.pairs)
        for lam, k in self.pairs:
            for idx, (mu, m) in enumerate(remaining):
                if m == k and abs(lam - mu) <= tol:
                    del remaining[idx]
                    break
            else:
                return False
        return True

    def support(self, tol: float = 1e-6) -> list[complex]:
        """Distinct eigenvalues."""
        points: list[complex] = []
        for lam, _ in self.pairs:
            if all(abs(lam - p) > tol for p in points):
                points.append(lam)
        return points

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[complex, int]]) -> "JetSpectrum":
        return cls(tuple(pairs))


@dataclass
class HoloMap:
    """
    A rational map numerator / denominator with complex coefficients.

    Polynomials have denominator 1. Coefficients are in increasing degree.
    """

    numerator: Polynomial
    denominator: Polynomial

    def validate(self, radius: float = 1.0) -> bool:
        """The denominator has no zero on the closed disk of the given radius."""
        if self.denominator.degree() == 0:
            return abs(self.denominator.coef[0]) > 0.0
        roots = self.denominator.roots()
        return bool(np.all(np.abs(roots) > radius))

    @property
    def is_polynomial(self) -> bool:
        return self.denominator.degree() == 0

    def __call__(self, z: np.ndarray | complex) -> np.ndarray | complex:
        return self.numerator(z) / self.denominator(z)

    def __mul__(self, other: "HoloMap") -> "HoloMap":
        return HoloMap(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    def compose_affine(self, scale: complex, shift: complex) -> "HoloMap":
        """z -> f(scale z + shift)."""
        inner = Polynomial([shift, scale])
        return HoloMap(self.numerator(inner), self.denominator(inner))

    @classmethod
    def polynomial(cls, coeffs: Sequence[complex]) -> "HoloMap":
        return cls(
            Polynomial(np.asarray(coeffs, dtype=complex)).trim(),
            Polynomial(np.array([1.0 + 0j])),
        )

    @classmethod
    def rational(
        cls, numerator: Sequence[complex], denominator: Sequence[complex]
    ) -> "HoloMap":
        return cls(
            Polynomial(np.asarray(numerator, dtype=complex)).trim(),
            Polynomial(np.asarray(denominator, dtype=complex)).trim(),
        )

    @classmethod
    def identity(cls) -> "HoloMap":
        return cls.polynomial([0.0, 1.0])

    @classmethod
    def constant(cls, value: complex) -> "HoloMap":
        return cls.polynomial([value])

    @classmethod
    def power(cls, k: int) -> "HoloMap":
        coeffs = np.zeros(k + 1, dtype=complex)
        coeffs[k] = 1.0
        return cls.polynomial(coeffs)


@dataclass(frozen=True)
class Contour:
    """Trapezoid nodes on the circle |t| = radius."""

    nodes: int = 256
    radius: float = 1.0

    def __post_init__(self) -> None:
        if not self.validate():
            raise DomainError(
                f"Contour needs a power-of-two node count >= 16 and positive radius,"
                f" got {self.nodes} nodes, radius {self.radius}"
            )

    def validate(self) -> bool:
        return self.nodes >= 16 and is_power_of_two(self.nodes) and self.radius > 0.0

    def points(self) -> np.ndarray:
        return self.radius * np.exp(2j * np.pi * np.arange(self.nodes) / self.nodes)


@dataclass
class VectorSeries:
    """
    A C^n-valued power series F(w) = sum_k w^k F_k.

    Evaluated at a matrix b through the left module action sum_k b^k F_k.
    """

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        self.coeffs = np.atleast_2d(np.asarray(self.coeffs, dtype=complex))

    @property
    def dim(self) -> int:
        return int(self.coeffs.shape[1])

    def at_matrix(self, b: np.ndarray) -> np.ndarray:
        result = np.array(self.coeffs[-1], dtype=complex)
        for coeff in self.coeffs[-2::-1]:
            result = b @ result + coeff
        return result

    @classmethod
    def constant(cls, x: Sequence[complex]) -> "VectorSeries":
        """x tensor the vacuum 1."""
        return cls(np.asarray(x, dtype=complex)[np.newaxis, :])

    @classmethod
    def scalar_times(cls, f: Sequence[complex], x: Sequence[complex]) -> "VectorSeries":
        """x tensor f for a scalar polynomial f with coefficients in increasing degree."""
        return cls(np.outer(np.asarray(f, dtype=complex), np.asarray(x, dtype=complex)))


class Agreement(Enum):
    """How the literal spectral-mapping formula relates to the Jordan splitting."""

    MULTISET = "multiset"
    SET_LEVEL = "set-level"
    DISAGREE = "disagree"


@dataclass(frozen=True)
class PairComparison:
    """One source pair with its literal image and its Jordan-true images."""

    source: tuple[complex, int]
    literal: tuple[complex, int]
    oracle: tuple[tuple[complex, int], ...]
    degree: int
    agreement: Agreement

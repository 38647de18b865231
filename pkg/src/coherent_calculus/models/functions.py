"""Sampled functions on the line, the circle and the plane."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np
from scipy.special import roots_legendre

from ..core.errors import DomainError


def is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid x_j = x0 + j h, j = 0..n-1."""

    n: int
    x0: float
    h: float

    def validate(self) -> bool:
        return self.n >= 8 and is_power_of_two(self.n) and self.h > 0.0

    @property
    def points(self) -> np.ndarray:
        return self.x0 + self.h * np.arange(self.n)

    @property
    def extent(self) -> float:
        return self.n * self.h

    @classmethod
    def centered(cls, n: int, h: float) -> "GridSpec":
        """Nodes (j - n/2) h."""
        return cls(n, -0.5 * n * h, h)

    @classmethod
    def fourier_grid(cls, n: int) -> "GridSpec":
        """The self-dual grid of the sqrt(2)-scaled Fourier kernel, sqrt(2) h^2 = 2 pi / n."""
        return cls.centered(n, math.sqrt(2.0 * math.pi / (math.sqrt(2.0) * n)))


@dataclass
class GridFn:
    """
    Complex samples on a uniform line grid.

    error_bound carries the interpolation error estimate of the operation
    that produced the samples (0 when exact).
    """

    samples: np.ndarray
    x0: float
    h: float
    error_bound: float = 0.0

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=complex)
        if not self.validate():
            raise DomainError(
                f"Grid of {self.samples.shape[0]} points with step {self.h} is invalid;"
                " need a power of two >= 8 and a positive step"
            )

    def validate(self) -> bool:
        return self.samples.ndim == 1 and self.spec.validate()

    @property
    def n(self) -> int:
        return int(self.samples.shape[0])

    @property
    def spec(self) -> GridSpec:
        return GridSpec(int(self.samples.shape[0]), self.x0, self.h)

    @property
    def x(self) -> np.ndarray:
        return self.spec.points

    def norm(self) -> float:
        """Trapezoid L^2 norm (the samples decay at both ends)."""
        return float(math.sqrt(self.h * np.sum(np.abs(self.samples) ** 2)))

    def with_samples(self, samples: np.ndarray, error_bound: float = 0.0) -> "GridFn":
        return GridFn(samples, self.x0, self.h, error_bound)

    @classmethod
    def zeros(cls, spec: GridSpec) -> "GridFn":
        return cls(np.zeros(spec.n, dtype=complex), spec.x0, spec.h)

    @classmethod
    def from_function(
        cls, fn: Callable[[np.ndarray], np.ndarray], spec: GridSpec
    ) -> "GridFn":
        return cls(fn(spec.points), spec.x0, spec.h)


@dataclass
class CircleFn:
    """Samples at the angles 2 pi k / N, with the normalized measure d phi / 2 pi."""

    samples: np.ndarray

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=complex)
        if not self.validate():
            raise DomainError(
                f"Circle grid of {self.samples.shape[0]} points must be a power of two >= 8"
            )

    def validate(self) -> bool:
        n = int(self.samples.shape[0])
        return self.samples.ndim == 1 and n >= 8 and is_power_of_two(n)

    @property
    def size(self) -> int:
        return int(self.samples.shape[0])

    @property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.size) / self.size

    def norm(self) -> float:
        return float(math.sqrt(np.mean(np.abs(self.samples) ** 2)))

    def coefficients(self) -> np.ndarray:
        """Fourier coefficients c_k, k = 0..N-1 in FFT order (negative k wrap)."""
        return np.fft.fft(self.samples) / self.size

    @classmethod
    def from_function(
        cls, fn: Callable[[np.ndarray], np.ndarray], size: int = 256
    ) -> "CircleFn":
        phi = 2.0 * np.pi * np.arange(size) / size
        return cls(fn(phi))

    @classmethod
    def from_coefficients(cls, coeffs: dict[int, complex], size: int = 256) -> "CircleFn":
        """Trigonometric polynomial sum c_k e^{i k phi}."""
        phi = 2.0 * np.pi * np.arange(size) / size
        values = np.zeros(size, dtype=complex)
        for k, c in coeffs.items():
            values += c * np.exp(1j * k * phi)
        return cls(values)


@dataclass
class SeriesValue:
    """A truncated series value with its tail estimate."""

    value: complex
    tail_bound: float
    warning: Optional[str] = None


@dataclass
class TaylorSeries:
    """Coefficients c_0..c_{M-1} of a power series in the unit disk."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        self.coeffs = np.asarray(self.coeffs, dtype=complex)

    def validate(self) -> bool:
        return self.coeffs.ndim == 1 and bool(np.all(np.isfinite(self.coeffs)))

    @property
    def size(self) -> int:
        return int(self.coeffs.shape[0])

    def evaluate(self, z: complex) -> complex:
        return complex(np.polynomial.polynomial.polyval(z, self.coeffs))

    def tail_bound(self, z: complex) -> float:
        """Size of the last retained term, a proxy for the truncation error."""
        if self.size == 0:
            return 0.0
        return float(abs(self.coeffs[-1]) * abs(z) ** (self.size - 1))


@dataclass
class FockFn:
    """Coefficients in the orthonormal basis z^n / sqrt(n!) of the Fock space."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        self.coeffs = np.asarray(self.coeffs, dtype=complex)

    def validate(self) -> bool:
        return bool(np.all(np.isfinite(self.coeffs)))

    @property
    def modes(self) -> int:
        return int(self.coeffs.shape[0])

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def monomial_coeffs(self) -> np.ndarray:
        """Coefficients in the plain monomial basis z^n."""
        factorials = np.array([math.factorial(k) for k in range(self.modes)], float)
        return self.coeffs / np.sqrt(factorials)

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        return np.polynomial.polynomial.polyval(z, self.monomial_coeffs())


@dataclass
class PlaneGridFn:
    """Complex samples f[i, j] = f(origin + (i h1, j h2))."""

    samples: np.ndarray
    origin: tuple[float, float]
    steps: tuple[float, float]

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=complex)
        if not self.validate():
            raise DomainError("Plane grid needs at least 5 points per axis")

    def validate(self) -> bool:
        return (
            self.samples.ndim == 2
            and min(self.samples.shape) >= 5
            and min(self.steps) > 0.0
        )

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        n1, n2 = self.samples.shape[:2]
        return (
            self.origin[0] + self.steps[0] * np.arange(n1),
            self.origin[1] + self.steps[1] * np.arange(n2),
        )

    @classmethod
    def from_function(
        cls,
        fn: Callable[[np.ndarray, np.ndarray], np.ndarray],
        origin: tuple[float, float],
        steps: tuple[float, float],
        shape: tuple[int, int],
    ) -> "PlaneGridFn":
        x1 = origin[0] + steps[0] * np.arange(shape[0])
        x2 = origin[1] + steps[1] * np.arange(shape[1])
        grid1, grid2 = np.meshgrid(x1, x2, indexing="ij")
        return cls(fn(grid1, grid2), origin, steps)


@dataclass
class Cliff11GridFn:
    """Cl(1,1)-valued samples, last axis holding (c0, c1, c2, c12)."""

    samples: np.ndarray
    origin: tuple[float, float]
    steps: tuple[float, float]

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=float)
        if not self.validate():
            raise DomainError("Clifford grid needs shape (n1, n2, 4), n1, n2 >= 5")

    def validate(self) -> bool:
        return (
            self.samples.ndim == 3
            and self.samples.shape[2] == 4
            and min(self.samples.shape[:2]) >= 5
            and min(self.steps) > 0.0
        )

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        n1, n2 = self.samples.shape[:2]
        return (
            self.origin[0] + self.steps[0] * np.arange(n1),
            self.origin[1] + self.steps[1] * np.arange(n2),
        )


@dataclass(frozen=True)
class PolarGrid:
    """Gauss-Legendre radii times equispaced angles on the disk |z| <= radius."""

    radius: float
    radial_nodes: int = 96
    angular_nodes: int = 128

    def validate(self) -> bool:
        return self.radius > 0.0 and self.radial_nodes >= 8 and self.angular_nodes >= 8

    def points(self) -> np.ndarray:
        r, _ = self._radial()
        theta = 2.0 * np.pi * np.arange(self.angular_nodes) / self.angular_nodes
        return (r[:, np.newaxis] * np.exp(1j * theta)[np.newaxis, :]).reshape(-1)

    def weights(self) -> np.ndarray:
        """Area weights, Jacobian r included, matching points()."""
        r, w = self._radial()
        ring = r * w * (2.0 * np.pi / self.angular_nodes)
        return np.repeat(ring, self.angular_nodes)

    def _radial(self) -> tuple[np.ndarray, np.ndarray]:
        nodes, weights = roots_legendre(self.radial_nodes)
        half = 0.5 * self.radius
        return half * (nodes + 1.0), half * weights

    @classmethod
    def for_modes(cls, modes: int, floor: float = 1e-16) -> "PolarGrid":
        """Smallest radius, in steps of 1/4, with exp(-R^2) R^(2 modes) <= floor."""
        radius = 4.0
        log_floor = math.log(floor)
        while -(radius**2) + 2 * max(modes, 1) * math.log(radius) > log_floor:
            radius += 0.25
        return cls(radius)


class WaveletKind(Enum):
    """Supported coherent-state systems."""

    FOURIER = "fourier"
    BARGMANN = "bargmann"
    HARDY = "hardy"


@dataclass
class WaveletSystem:
    """A coherent-state system: representation, vacuum, analysing vector, measure."""

    kind: WaveletKind
    vacuum: str
    analysing: str
    quadrature: int
    hbar: float = 1.0
    extras: dict[str, float] = field(default_factory=dict)

    def validate(self) -> bool:
        return self.quadrature >= 2 and self.hbar > 0.0

    @classmethod
    def bargmann(cls, nodes: int = 32, hbar: float = 1.0) -> "WaveletSystem":
        return cls(
            WaveletKind.BARGMANN,
            vacuum="gaussian exp(-y^2/2)/pi^(1/4)",
            analysing="gaussian exp(-y^2/2)/pi^(1/4)",
            quadrature=nodes,
            hbar=hbar,
        )

    @classmethod
    def fourier(cls, nodes: int = 256) -> "WaveletSystem":
        return cls(
            WaveletKind.FOURIER,
            vacuum="none (enlarged space)",
            analysing="delta at the origin",
            quadrature=nodes,
        )

    @classmethod
    def hardy(cls, nodes: int = 256) -> "WaveletSystem":
        return cls(
            WaveletKind.HARDY,
            vacuum="f0 = 1",
            analysing="f0 = 1",
            quadrature=nodes,
        )

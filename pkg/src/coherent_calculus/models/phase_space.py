"""Phase-space symbols, their quantized operators and functions on the Heisenberg group."""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
import sympy

from ..core.errors import BoxSizeError, DomainError
from .functions import GridSpec

P_SYM, Q_SYM = sympy.symbols("p q", real=True)


@dataclass
class PhaseSymbol:
    """
    A polynomial symbol sum c_mn p^m q^n, optionally times a Gaussian window.

    The window is exp(-v^T W v / 2) with v = (p, q) and W symmetric positive
    definite; ``window=None`` means no window.
    """

    coeffs: dict[tuple[int, int], complex]
    window: Optional[np.ndarray] = None
    degree_cap: int = 6

    def __post_init__(self) -> None:
        self.coeffs = {
            (int(m), int(n)): complex(c) for (m, n), c in self.coeffs.items() if c != 0
        }
        if self.window is not None:
            self.window = np.asarray(self.window, dtype=float)
        if not self.validate():
            raise DomainError(
                f"Symbol degree {self.degree} exceeds cap {self.degree_cap}"
                " or window is not symmetric positive definite"
            )

    def validate(self) -> bool:
        if self.degree > self.degree_cap:
            return False
        if self.window is None:
            return True
        w = self.window
        return (
            w.shape == (2, 2)
            and bool(np.allclose(w, w.T))
            and bool(np.all(np.linalg.eigvalsh(w) > 0.0))
        )

    @property
    def degree(self) -> int:
        return max((m + n for m, n in self.coeffs), default=0)

    @property
    def is_real(self) -> bool:
        return all(abs(c.imag) == 0.0 for c in self.coeffs.values())

    def to_sympy(self) -> sympy.Expr:
        """The polynomial part as a sympy expression in p, q."""
        return sympy.Add(
            *(
                (
                    sympy.nsimplify(c.real, rational=True)
                    + sympy.I * sympy.nsimplify(c.imag, rational=True)
                )
                * P_SYM**m
                * Q_SYM**n
                for (m, n), c in self.coeffs.items()
            )
        )

    def evaluate(self, p: np.ndarray, q: np.ndarray) -> np.ndarray:
        value = np.zeros(np.broadcast(p, q).shape, dtype=complex)
        for (m, n), c in self.coeffs.items():
            value = value + c * p**m * q**n
        if self.window is not None:
            w = self.window
            value = value * np.exp(-0.5 * (w[0, 0] * p**2 + 2 * w[0, 1] * p * q + w[1, 1] * q**2))
        return value

    @classmethod
    def from_sympy(
        cls, expr: sympy.Expr, window: Optional[np.ndarray] = None, degree_cap: int = 6
    ) -> "PhaseSymbol":
        poly = sympy.Poly(sympy.expand(expr), P_SYM, Q_SYM)
        coeffs = {
            (int(m), int(n)): complex(sympy.N(c)) for (m, n), c in poly.terms()
        }
        return cls(coeffs, window, degree_cap)

    @classmethod
    def monomial(cls, m: int, n: int, coeff: complex = 1.0) -> "PhaseSymbol":
        return cls({(m, n): coeff})

    @staticmethod
    def isotropic_window(width: float) -> np.ndarray:
        """W for the window exp(-(p^2 + q^2) / (2 width^2))."""
        return np.eye(2) / width**2


@dataclass
class LineOperator:
    """A dense matrix acting on samples of a line grid."""

    matrix: np.ndarray
    grid: GridSpec
    hbar: float

    def __post_init__(self) -> None:
        self.matrix = np.asarray(self.matrix, dtype=complex)
        if self.matrix.shape != (self.grid.n, self.grid.n):
            raise DomainError(
                f"Operator shape {self.matrix.shape} does not match grid size {self.grid.n}"
            )

    def validate(self) -> bool:
        return bool(np.all(np.isfinite(self.matrix)))

    def __matmul__(self, other: "LineOperator") -> "LineOperator":
        return LineOperator(self.matrix @ other.matrix, self.grid, self.hbar)

    def __sub__(self, other: "LineOperator") -> "LineOperator":
        return LineOperator(self.matrix - other.matrix, self.grid, self.hbar)

    def adjoint(self) -> "LineOperator":
        return LineOperator(self.matrix.conj().T, self.grid, self.hbar)

    def apply(self, samples: np.ndarray) -> np.ndarray:
        return self.matrix @ samples


@dataclass
class HFn:
    """
    Samples of k(s, x, y) on the box [-Ls, Ls) x [-Lx, Lx) x [-Ly, Ly).

    Nodes along each axis are (j - N/2) h with h = 2L / N. The samples must
    decay below DECAY_TOL (relative to the peak) on every face of the box.
    """

    samples: np.ndarray
    half_widths: tuple[float, float, float]
    check_decay: bool = field(default=True, repr=False)

    DECAY_TOL = 1e-12

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.ndim != 3 or min(self.samples.shape) < 4:
            raise DomainError(f"Heisenberg samples need 3 axes, got {self.samples.shape}")
        if self.check_decay:
            edge = self.boundary_max()
            peak = float(np.max(np.abs(self.samples)))
            if edge > self.DECAY_TOL * max(1.0, peak):
                raise BoxSizeError(
                    f"Function does not decay in its box: boundary {edge:.3e},"
                    f" peak {peak:.3e}"
                )

    def validate(self) -> bool:
        return bool(np.all(np.isfinite(self.samples)))

    def boundary_max(self) -> float:
        k = np.abs(self.samples)
        return float(
            max(
                k[0].max(), k[-1].max(),
                k[:, 0].max(), k[:, -1].max(),
                k[:, :, 0].max(), k[:, :, -1].max(),
            )
        )

    @property
    def shape(self) -> tuple[int, int, int]:
        ns, nx, ny = self.samples.shape
        return int(ns), int(nx), int(ny)

    @property
    def steps(self) -> tuple[float, float, float]:
        return tuple(  # type: ignore[return-value]
            2.0 * half / count for half, count in zip(self.half_widths, self.shape)
        )

    def axes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return tuple(  # type: ignore[return-value]
            (np.arange(count) - count // 2) * step
            for count, step in zip(self.shape, self.steps)
        )

    def cell(self) -> float:
        hs, hx, hy = self.steps
        return hs * hx * hy

    def integral(self) -> complex:
        return complex(np.sum(self.samples) * self.cell())

    def like(self, samples: np.ndarray, check_decay: bool = True) -> "HFn":
        return HFn(samples, self.half_widths, check_decay)

    @classmethod
    def from_function(
        cls,
        fn: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray],
        half_widths: tuple[float, float, float],
        shape: tuple[int, int, int],
    ) -> "HFn":
        axes = [
            (np.arange(count) - count // 2) * (2.0 * half / count)
            for half, count in zip(half_widths, shape)
        ]
        s, x, y = np.meshgrid(*axes, indexing="ij")
        return cls(fn(s, x, y), half_widths)


def gaussian(t: np.ndarray, width: float) -> np.ndarray:
    """Unit-mass Gaussian of the given standard deviation."""
    return np.exp(-0.5 * (t / width) ** 2) / (width * math.sqrt(2.0 * math.pi))


@dataclass(frozen=True)
class SchrodingerTarget:
    """The Schroedinger representation with Planck constant hbar on a line grid."""

    hbar: float
    grid: GridSpec

    def validate(self) -> bool:
        return self.hbar > 0.0 and self.grid.validate()


@dataclass(frozen=True)
class OneDimTarget:
    """The character (s, x, y) -> exp(i (x p + y q))."""

    p: float
    q: float


RepTarget = Union[SchrodingerTarget, OneDimTarget]

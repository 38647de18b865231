"""Finite-difference residuals of the Dirac and Laplace operators on plane grids."""

import logging
from enum import Enum
from typing import Union

import numpy as np

from ..models.functions import Cliff11GridFn, PlaneGridFn, TaylorSeries
from .errors import DomainError

LOGGER = logging.getLogger(__name__)

BOUNDARY_LAYER = 2

GridLike = Union[PlaneGridFn, Cliff11GridFn]


class DiracKind(Enum):
    """Concrete Dirac operators."""

    PLANE_LITERAL = "plane_literal"
    PLANE_HOLO = "plane_holo"
    DISK_INVARIANT = "disk_invariant"
    HYPERBOLIC = "hyperbolic"


class LaplaceKind(Enum):
    """Concrete second-order operators."""

    PLANE = "plane"
    DISK_INVARIANT = "disk_invariant"
    WAVE = "wave"


def first_derivative(samples: np.ndarray, step: float, axis: int) -> np.ndarray:
    """Fourth-order centered first derivative, valid on the interior only."""
    f = np.moveaxis(samples, axis, 0)
    d = (-f[4:] + 8.0 * f[3:-1] - 8.0 * f[1:-3] + f[:-4]) / (12.0 * step)
    return np.moveaxis(d, 0, axis)


def second_derivative(samples: np.ndarray, step: float, axis: int) -> np.ndarray:
    """Fourth-order centered second derivative, valid on the interior only."""
    f = np.moveaxis(samples, axis, 0)
    d = (-f[4:] + 16.0 * f[3:-1] - 30.0 * f[2:-2] + 16.0 * f[1:-3] - f[:-4]) / (
        12.0 * step**2
    )
    return np.moveaxis(d, 0, axis)


def _interior(values: np.ndarray, axis: int) -> np.ndarray:
    """Drop the boundary layer along the other plane axis."""
    other = 1 - axis
    f = np.moveaxis(values, other, 0)[BOUNDARY_LAYER:-BOUNDARY_LAYER]
    return np.moveaxis(f, 0, other)


def _partials(samples: np.ndarray, steps: tuple[float, float]) -> tuple[np.ndarray, np.ndarray]:
    d1 = _interior(first_derivative(samples, steps[0], 0), 0)
    d2 = _interior(first_derivative(samples, steps[1], 1), 1)
    return d1, d2


def _second_partials(
    samples: np.ndarray, steps: tuple[float, float]
) -> tuple[np.ndarray, np.ndarray]:
    d11 = _interior(second_derivative(samples, steps[0], 0), 0)
    d22 = _interior(second_derivative(samples, steps[1], 1), 1)
    return d11, d22


def _interior_y(f: GridLike) -> np.ndarray:
    """The second coordinate on interior points, rejecting grids that reach y = 0."""
    _, x2 = f.axes()
    if np.min(x2) <= 0.0 <= np.max(x2):
        raise DomainError(
            f"Grid spans y in [{np.min(x2):.4g}, {np.max(x2):.4g}] and touches y = 0;"
            " y-weighted operators need a half-plane grid"
        )
    return x2[BOUNDARY_LAYER:-BOUNDARY_LAYER][np.newaxis, :]


def _e1_times(b: np.ndarray) -> np.ndarray:
    """Left multiplication by e1 on (c0, c1, c2, c12) arrays."""
    return np.stack([-b[..., 1], b[..., 0], -b[..., 3], b[..., 2]], axis=-1)


def _e2_times(b: np.ndarray) -> np.ndarray:
    """Left multiplication by e2 on (c0, c1, c2, c12) arrays."""
    return np.stack([b[..., 2], -b[..., 3], b[..., 0], -b[..., 1]], axis=-1)


def dirac_residual(f: GridLike, kind: DiracKind) -> float:
    """
    Max-norm of a Dirac operator applied to grid samples, boundary layer excluded.

    Args:
        f: Complex samples, or Cl(1,1) samples for the hyperbolic operator.
        kind: PLANE_LITERAL d1 - i d2, PLANE_HOLO d1 + i d2,
            DISK_INVARIANT y (d1 + i d2), HYPERBOLIC 2 y (e1 d1 + e2 d2).

    Returns:
        The largest residual magnitude over interior points.

    Raises:
        DomainError: If the value type does not fit the operator, or a
            y-weighted operator meets a grid touching y = 0.
    """
    if kind is DiracKind.HYPERBOLIC:
        if not isinstance(f, Cliff11GridFn):
            raise DomainError("The hyperbolic Dirac operator acts on Cl(1,1)-valued grids")
        y = _interior_y(f)[..., np.newaxis]
        d1, d2 = _partials(f.samples, f.steps)
        residual = 2.0 * y * (_e1_times(d1) + _e2_times(d2))
        return float(np.max(np.linalg.norm(residual, axis=-1)))

    if not isinstance(f, PlaneGridFn):
        raise DomainError(f"The {kind.value} Dirac operator acts on complex grids")
    d1, d2 = _partials(f.samples, f.steps)
    if kind is DiracKind.PLANE_LITERAL:
        residual = d1 - 1j * d2
    elif kind is DiracKind.PLANE_HOLO:
        residual = d1 + 1j * d2
    else:
        residual = _interior_y(f) * (d1 + 1j * d2)
    return float(np.max(np.abs(residual)))


def laplace_residual(f: PlaneGridFn, kind: LaplaceKind) -> float:
    """
    Max-norm of a Laplace-type operator applied to grid samples.

    PLANE is d1^2 + d2^2, DISK_INVARIANT is y^2 (d1^2 + d2^2) and WAVE is
    y^2 (d1^2 - d2^2).

    Raises:
        DomainError: If a y-weighted operator meets a grid touching y = 0.
    """
    d11, d22 = _second_partials(f.samples, f.steps)
    if kind is LaplaceKind.PLANE:
        residual = d11 + d22
    elif kind is LaplaceKind.DISK_INVARIANT:
        residual = _interior_y(f) ** 2 * (d11 + d22)
    else:
        residual = _interior_y(f) ** 2 * (d11 - d22)
    return float(np.max(np.abs(residual)))


def extend_into_disk(
    series: TaylorSeries, half_width: float = 0.6, points: int = 41
) -> PlaneGridFn:
    """Sample the sum of a Taylor series on a square inside the unit disk."""
    step = 2.0 * half_width / (points - 1)
    LOGGER.debug("Disk extension on %d^2 points, step %.4g", points, step)
    return PlaneGridFn.from_function(
        lambda x1, x2: np.polynomial.polynomial.polyval(x1 + 1j * x2, series.coeffs),
        (-half_width, -half_width),
        (step, step),
        (points, points),
    )

"""
Reduced wavelet transforms for the Fourier, Segal-Bargmann and Hardy systems.

Line functions live on uniform grids and circle functions on equispaced
angles; every integral is a trapezoid sum except the disk integrals of the
Fock space, which use a polar Gauss-Legendre grid.
"""

import logging
import math
from enum import Enum
from typing import Optional

import numpy as np

from ..models.elements import DiskLike, HeisPoint, SL2Elt, as_disk_point
from ..models.functions import (
    CircleFn,
    FockFn,
    GridFn,
    GridSpec,
    PolarGrid,
    SeriesValue,
    TaylorSeries,
    WaveletKind,
    WaveletSystem,
)
from .errors import DomainError, UnsupportedSystemError
from .groups import heis_inv, sl2_decompose, sl2_section

LOGGER = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
ADMISSIBILITY_BOX = 6.0


class TransformDirection(Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


def _fourier_kernel(spec: GridSpec, direction: TransformDirection) -> np.ndarray:
    x = spec.points
    if direction is TransformDirection.FORWARD:
        return spec.h / math.sqrt(2.0 * math.pi) * np.exp(1j * SQRT2 * np.outer(x, x))
    return SQRT2 * spec.h / math.sqrt(2.0 * math.pi) * np.exp(-1j * SQRT2 * np.outer(x, x))


def fourier_wavelet(
    f: GridFn, direction: TransformDirection = TransformDirection.FORWARD
) -> GridFn:
    """
    Wavelet transform of the Heisenberg group over R^2: a rescaled Fourier transform.

    The forward map is (2 pi)^{-1/2} int exp(i sqrt(2) x y) f(y) dy, the
    inverse carries the extra sqrt(2) of the image measure. Both are
    evaluated on the grid of ``f``; on ``GridSpec.fourier_grid`` they are
    exact inverses of each other.

    Args:
        f: Samples of a smooth function decaying inside the grid.
        direction: Forward transform or its inverse.

    Returns:
        Samples of the image on the same grid.
    """
    kernel = _fourier_kernel(f.spec, direction)
    return f.with_samples(kernel @ f.samples)


def fourier_inner(big_f: GridFn, big_g: GridFn) -> complex:
    """Image-side inner product under which the Fourier wavelet transform is isometric."""
    return complex(SQRT2 * big_f.h * np.sum(big_f.samples * np.conj(big_g.samples)))


def line_inner(f: GridFn, g: GridFn) -> complex:
    return complex(f.h * np.sum(f.samples * np.conj(g.samples)))


def spectral_shift(samples: np.ndarray, h: float, delta: float, axis: int = 0) -> np.ndarray:
    """Band-limited interpolant of the samples evaluated at x - delta, along one axis."""
    n = samples.shape[axis]
    spectrum = np.fft.fft(samples, axis=axis)
    k = 2.0 * np.pi * np.fft.fftfreq(n, h)
    factor = np.exp(-1j * k * delta)
    factor[n // 2] = math.cos(math.pi * delta / h)
    shape = [1] * samples.ndim
    shape[axis] = n
    return np.fft.ifft(spectrum * factor.reshape(shape), axis=axis)


def _upper_band_fraction(samples: np.ndarray) -> float:
    """Relative spectral mass in the top quarter of the band."""
    spectrum = np.abs(np.fft.fftshift(np.fft.fft(samples))) ** 2
    total = float(np.sum(spectrum))
    if total == 0.0:
        return 0.0
    n = samples.shape[0]
    edge = n // 8
    return float(math.sqrt((np.sum(spectrum[:edge]) + np.sum(spectrum[n - edge :])) / total))


def schrodinger_act(g: HeisPoint, f: GridFn, hbar: float = 1.0) -> GridFn:
    """
    Schroedinger representation with Planck constant hbar.

    [rho(s, u, v) f](y) = exp(i (2 s hbar - sqrt(2 hbar) v y + hbar u v)) f(y - sqrt(2 hbar) u)

    Args:
        g: Heisenberg group element (s, u, v).
        f: Grid samples; fractional shifts use trigonometric interpolation.
        hbar: Positive Planck constant.

    Returns:
        The transformed samples with the interpolation error estimate attached.

    Raises:
        DomainError: If hbar <= 0 or the shift exceeds half the grid extent.
    """
    if hbar <= 0.0:
        raise DomainError(f"Planck constant must be positive, got {hbar}")
    delta = math.sqrt(2.0 * hbar) * g.x
    if abs(delta) > 0.5 * f.spec.extent:
        raise DomainError(
            f"Shift {delta:.4g} exceeds half the grid extent {0.5 * f.spec.extent:.4g}"
        )
    shifted = f.samples if delta == 0.0 else spectral_shift(f.samples, f.h, delta)
    y = f.x
    phase = np.exp(
        1j * (2.0 * g.s * hbar - math.sqrt(2.0 * hbar) * g.y * y + hbar * g.x * g.y)
    )
    bound = 0.0 if delta == 0.0 else _upper_band_fraction(f.samples) * f.norm()
    return f.with_samples(phase * shifted, error_bound=bound)


def hermite_functions(x: np.ndarray, count: int) -> np.ndarray:
    """
    Orthonormal Hermite functions h_0..h_{count-1} at the points x.

    Uses the three-term recurrence, stable for large orders.
    """
    x = np.asarray(x, dtype=float)
    values = np.zeros((max(count, 1), x.shape[0]))
    values[0] = math.pi**-0.25 * np.exp(-0.5 * x**2)
    if count > 1:
        values[1] = SQRT2 * x * values[0]
    for n in range(1, count - 1):
        values[n + 1] = (
            math.sqrt(2.0 / (n + 1)) * x * values[n]
            - math.sqrt(n / (n + 1)) * values[n - 1]
        )
    return values[:count]


def bargmann_kernel(z: np.ndarray, x: np.ndarray) -> np.ndarray:
    """pi^{-1/4} exp(-(z^2 + x^2) / 2 + sqrt(2) z x), one row per z."""
    z = np.asarray(z, dtype=complex)[:, np.newaxis]
    x = np.asarray(x, dtype=float)[np.newaxis, :]
    return math.pi**-0.25 * np.exp(-0.5 * (z**2 + x**2) + SQRT2 * z * x)


def segal_bargmann(f: GridFn, modes: int = 16, disk: Optional[PolarGrid] = None) -> FockFn:
    """
    Segal-Bargmann transform, returned in the orthonormal basis z^n / sqrt(n!).

    F(z) = int f(x) A(z, x) dx with the Bargmann kernel A is summed by the
    trapezoid rule at the nodes of a polar grid, one ring at a time, and the
    samples are projected onto the first ``modes`` basis functions.
    """
    disk = disk or PolarGrid.for_modes(modes)
    LOGGER.debug(
        "Bargmann kernel quadrature: %d line points onto radius %.2f", f.x.shape[0], disk.radius
    )
    rings = disk.points().reshape(disk.radial_nodes, disk.angular_nodes)
    samples = np.concatenate([f.h * (bargmann_kernel(ring, f.x) @ f.samples) for ring in rings])
    return fock_project(samples, disk, modes)


def segal_bargmann_inv(big_f: FockFn, grid: GridSpec) -> GridFn:
    """
    Inverse Segal-Bargmann transform by quadrature over a disk.

    f(x) = pi^{-5/4} int F(z) exp(-(conj(z)^2 + x^2) / 2 + sqrt(2) conj(z) x) exp(-|z|^2) d^2z

    The disk radius is picked so exp(-R^2) R^(2M) <= 1e-16 for M modes.
    """
    disk = PolarGrid.for_modes(big_f.modes)
    LOGGER.debug(
        "Inverse Bargmann quadrature: radius %.2f, %d x %d nodes",
        disk.radius,
        disk.radial_nodes,
        disk.angular_nodes,
    )
    z = disk.points()
    weighted = big_f.evaluate(z) * disk.weights() * np.exp(-np.abs(z) ** 2)
    kernel = bargmann_kernel(np.conj(z), grid.points)
    samples = (kernel.T @ weighted) / math.pi
    return GridFn(samples, grid.x0, grid.h)


def fock_project(samples: np.ndarray, grid: PolarGrid, modes: int = 16) -> FockFn:
    """
    Orthogonal projection of disk samples onto the analytic (Fock) subspace.

    c_n = int F(z) conj(z)^n / sqrt(n!) exp(-|z|^2) d^2z / pi

    Args:
        samples: Values at ``grid.points()``.
        grid: Polar quadrature grid.
        modes: Number of retained basis functions.
    """
    z = grid.points()
    measure = grid.weights() * np.exp(-np.abs(z) ** 2) / math.pi
    weighted = np.asarray(samples, dtype=complex) * measure
    coeffs = np.empty(modes, dtype=complex)
    power = np.ones_like(z)
    for n in range(modes):
        coeffs[n] = np.sum(weighted * np.conj(power)) / math.sqrt(math.factorial(n))
        power = power * z
    return FockFn(coeffs)


def fock_kernel(z: np.ndarray | complex, w: np.ndarray | complex) -> np.ndarray:
    """Reproducing kernel exp((-|z|^2 - |w|^2) / 2 + w conj(z)) of the unweighted picture."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return np.exp(0.5 * (-np.abs(z) ** 2 - np.abs(w) ** 2) + w * np.conj(z))


def kernel_project(
    samples: np.ndarray, grid: PolarGrid, points: np.ndarray
) -> np.ndarray:
    """
    Project F(w) exp(-|w|^2 / 2) samples with the integral kernel, at the given points.

    Returns (P F)(z) = int K(w, z) F(w) d^2w / pi; analytic inputs are reproduced.
    """
    w = grid.points()
    points = np.asarray(points, dtype=complex)
    kernel = fock_kernel(w[np.newaxis, :], points[:, np.newaxis])
    return kernel @ (np.asarray(samples, dtype=complex) * grid.weights()) / math.pi


def _nonnegative_coefficients(f: CircleFn, count: int) -> np.ndarray:
    return f.coefficients()[:count]


def hardy_transform(f: CircleFn, a: DiskLike) -> complex:
    """
    Cauchy-type wavelet transform on the disk.

    Computed as sqrt(1 - |a|^2) sum_{k >= 0} c_k a^k from the nonnegative
    Fourier coefficients, frequencies at or above N/2 excluded.

    Raises:
        DomainError: If |a| >= 1.
    """
    point = as_disk_point(a)
    coeffs = _nonnegative_coefficients(f, f.size // 2)
    series = complex(np.polynomial.polynomial.polyval(point, coeffs))
    return math.sqrt(1.0 - abs(point) ** 2) * series


def cauchy_integral_literal(f: CircleFn, a: DiskLike) -> complex:
    """
    sqrt(1 - |a|^2) times the contour integral of f(z) / (a + z) dz over the unit circle.

    Equal to 2 pi i hardy_transform(f, -a).
    """
    point = as_disk_point(a)
    z = np.exp(1j * f.angles)
    integrand = f.samples * z / (point + z)
    return (
        math.sqrt(1.0 - abs(point) ** 2)
        * 1j
        * 2.0
        * math.pi
        * complex(np.mean(integrand))
    )


def szego_project(f: CircleFn) -> CircleFn:
    """Zero every negative frequency (and the Nyquist mode)."""
    spectrum = np.fft.fft(f.samples)
    spectrum[f.size // 2 :] = 0.0
    return CircleFn(np.fft.ifft(spectrum))


def taylor_decompose(f: CircleFn, count: int) -> TaylorSeries:
    """
    Coefficients of the Taylor expansion of the analytic part of f.

    Raises:
        DomainError: If more coefficients are requested than the circle has samples.
    """
    if count > f.size:
        raise DomainError(f"Requested {count} coefficients from {f.size} samples")
    coeffs = _nonnegative_coefficients(f, count)
    if count > f.size // 2:
        coeffs = coeffs.copy()
        coeffs[f.size // 2 :] = 0.0
    return TaylorSeries(coeffs)


def coherent_state(a: DiskLike, size: int = 256) -> CircleFn:
    """f_a(phi) = sqrt(1 - |a|^2) / (1 - conj(a) exp(i phi)), Taylor coefficients sqrt(1 - |a|^2) conj(a)^k."""
    point = as_disk_point(a)
    return CircleFn.from_function(
        lambda phi: math.sqrt(1.0 - abs(point) ** 2)
        / (1.0 - point.conjugate() * np.exp(1j * phi)),
        size,
    )


def trig_interpolate(f: CircleFn, theta: np.ndarray) -> np.ndarray:
    """Evaluate the trigonometric interpolant of f at arbitrary angles."""
    n = f.size
    coeffs = f.coefficients()
    freqs = np.fft.fftfreq(n, 1.0 / n)
    theta = np.asarray(theta, dtype=float)
    waves = np.exp(1j * np.outer(theta, freqs))
    waves[:, n // 2] = np.cos(0.5 * n * theta)
    return waves @ coeffs


def rho1_act(g: SL2Elt, f: CircleFn) -> CircleFn:
    """
    Mock discrete series of SU(1,1) on the circle.

    [rho_1(g) f](e^{i phi}) = f(M(e^{i phi})) / (conj(beta) e^{i phi} + conj(alpha)),
    M(z) = (alpha z + beta) / (conj(beta) z + conj(alpha)).

    rho_1(g) rho_1(h) = rho_1(h g), matching the right action of ``mobius_disk``.
    """
    z = np.exp(1j * f.angles)
    den = g.beta.conjugate() * z + g.alpha.conjugate()
    image = (g.alpha * z + g.beta) / den
    values = trig_interpolate(f, np.angle(image))
    return CircleFn(values / den)


def lambda_disk_act(g: SL2Elt, big_f: TaylorSeries, a: DiskLike) -> SeriesValue:
    """
    Induced representation on functions of the disk.

    The Hardy image F(a) = sqrt(1 - |a|^2) sum c_k a^k is stored through its
    Taylor coefficients. With g s(a) = s(w) h_psi the result is
    exp(i psi) F(w), so that hardy_transform(rho1_act(g, f), a) equals
    lambda_disk_act(g, taylor(f), a).

    Returns:
        The value, the size of the last retained term at w and a warning
        when that term is not negligible.
    """
    point = as_disk_point(a)
    w_point, psi = sl2_decompose(g * sl2_section(point))
    w = w_point.z
    value = (
        complex(math.cos(psi), math.sin(psi))
        * math.sqrt(1.0 - abs(w) ** 2)
        * big_f.evaluate(w)
    )
    tail = big_f.tail_bound(w)
    warning = None
    if tail > 1e-8 * max(1.0, abs(value)):
        warning = (
            f"Series truncated at {big_f.size} terms is unreliable at |w| = {abs(w):.4f}"
            f" (last term {tail:.2e})"
        )
        LOGGER.warning(warning)
    return SeriesValue(value, tail, warning)


def _vacuum(spec: GridSpec) -> GridFn:
    return GridFn.from_function(
        lambda y: math.pi**-0.25 * np.exp(-0.5 * y**2), spec
    )


def admissibility_defect(system: WaveletSystem, grid_size: int = 256) -> float:
    """
    Quadrature check of the coherent-state reproducing identity.

    Integrates <rho(x^{-1}) b0, l0> <rho(x) b0, l0> over (u, v) in [-6, 6]^2
    with the measure hbar / pi and trapezoid weights on ``system.quadrature``
    nodes per axis, then compares with <b0, l0>.

    Raises:
        UnsupportedSystemError: For anything but the Bargmann system.
    """
    if system.kind is not WaveletKind.BARGMANN:
        raise UnsupportedSystemError(
            f"Admissibility is only realized for the Bargmann system, not {system.kind.value}"
        )
    hbar = system.hbar
    spec = GridSpec.fourier_grid(grid_size)
    vacuum = _vacuum(spec)
    nodes = np.linspace(-ADMISSIBILITY_BOX, ADMISSIBILITY_BOX, system.quadrature)
    weights = np.full(system.quadrature, nodes[1] - nodes[0])
    weights[[0, -1]] *= 0.5
    LOGGER.debug("Admissibility quadrature: %d nodes per axis", system.quadrature)
    total = 0j
    for u, wu in zip(nodes, weights):
        for v, wv in zip(nodes, weights):
            x = HeisPoint(0.0, float(u), float(v))
            forward = line_inner(schrodinger_act(x, vacuum, hbar), vacuum)
            backward = line_inner(schrodinger_act(heis_inv(x), vacuum, hbar), vacuum)
            total += wu * wv * forward * backward
    total *= hbar / math.pi
    return float(abs(total - line_inner(vacuum, vacuum)))

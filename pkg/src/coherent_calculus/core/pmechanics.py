"""
Functions on the Heisenberg group and their p-mechanical brackets.

Group convolution is evaluated in the Fourier domain of s: on each slice
the central shift becomes the phase exp(-i sigma (x' y - y' x) / 2), so the
(x, y) sum is a twisted lattice convolution. Images under the Schroedinger
representation are dense matrices on a line grid; images under the
one-dimensional representations are complex numbers.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Union

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..models.phase_space import (
    HFn,
    LineOperator,
    OneDimTarget,
    RepTarget,
    SchrodingerTarget,
    gaussian,
)
from .errors import BoxSizeError, DomainError, PreconditionError
from .quant import hermite_probes, relative_probe_defect
from .wavelets import spectral_shift

LOGGER = logging.getLogger(__name__)

LOST_MASS_TOL = 1e-8
PRIMITIVE_TOL = 1e-8
SKIP_TOL = 1e-15
DIFF_STEP = 1e-4

# sigma(A f) = -(1 / (2 i hbar)) sigma(f) for f with zero s-integrals.
SCHRODINGER_BRACKET_CONSTANT = -0.5
ONEDIM_BRACKET_CONSTANT = 1.0

Box = tuple[float, float, float]
Shape = tuple[int, int, int]


def gaussian_observable(
    half_widths: Box,
    shape: Shape,
    widths: Box,
    moment: tuple[int, int, int] = (0, 0, 0),
) -> HFn:
    """Unit-mass Gaussian with the given widths, times s^a x^b y^c."""
    a, b, c = moment
    ws, wx, wy = widths
    return HFn.from_function(
        lambda s, x, y: s**a
        * x**b
        * y**c
        * gaussian(s, ws)
        * gaussian(x, wx)
        * gaussian(y, wy),
        half_widths,
        shape,
    )


def approximate_identity(half_widths: Box, shape: Shape, fraction: float = 0.25) -> HFn:
    """A Gaussian bump at the identity, widths a fraction of the steps, with unit discrete mass."""
    widths = tuple(fraction * 2.0 * half / count for half, count in zip(half_widths, shape))
    bump = gaussian_observable(half_widths, shape, widths)  # type: ignore[arg-type]
    return bump.like(bump.samples / bump.integral())


def _check_same_box(k1: HFn, k2: HFn) -> None:
    if k1.shape != k2.shape or not np.allclose(k1.half_widths, k2.half_widths):
        raise DomainError(
            f"Boxes differ: {k1.shape} on {k1.half_widths} and {k2.shape} on {k2.half_widths}"
        )


def heis_convolve(k1: HFn, k2: HFn, threads: int = 1) -> HFn:
    """
    Group convolution (k1 * k2)(g) = int k1(h) k2(h^{-1} g) dh.

    The s-axis is zero-padded to a ring of twice its length and the result
    is cropped back to the box. Slices of the s-spectrum are independent and
    are split across ``threads`` workers.

    Raises:
        DomainError: If the boxes differ.
        BoxSizeError: If the product spills out of the box.
    """
    _check_same_box(k1, k2)
    ns, nx, ny = k1.shape
    hs, hx, hy = k1.steps
    _, x, y = k1.axes()
    ring = 2 * ns

    f1 = np.fft.fft(k1.samples, n=ring, axis=0)
    f2 = np.fft.fft(k2.samples, n=ring, axis=0)
    sigma = 2.0 * np.pi * np.fft.fftfreq(ring, hs)
    padded = np.zeros((ring, 3 * nx, 3 * ny), dtype=complex)
    padded[:, nx : 2 * nx, ny : 2 * ny] = f2

    # exp(-i sigma x' y / 2) per x' and exp(i sigma y' x / 2) per y'
    twist_x = np.exp(-0.5j * sigma[np.newaxis, :, np.newaxis] * x[:, None, None] * y[None, None, :])
    twist_y = np.exp(0.5j * sigma[np.newaxis, :, np.newaxis] * y[:, None, None] * x[None, None, :])

    weight = np.max(np.abs(f1), axis=0)
    active = np.argwhere(weight > SKIP_TOL * float(np.max(weight)))

    def accumulate(rows: np.ndarray) -> np.ndarray:
        out = np.zeros((rows.size, nx, ny), dtype=complex)
        for i, j in active:
            i0, j0 = 3 * nx // 2 - i, 3 * ny // 2 - j
            block = padded[rows, i0 : i0 + nx, j0 : j0 + ny]
            phase = twist_x[i][rows][:, np.newaxis, :] * twist_y[j][rows][:, :, np.newaxis]
            out += f1[rows, i, j][:, np.newaxis, np.newaxis] * block * phase
        return out

    chunks = [c for c in np.array_split(np.arange(ring), max(1, threads)) if c.size]
    LOGGER.debug(
        "Convolving %s boxes: %d active shifts, %d slice chunks", k1.shape, len(active), len(chunks)
    )
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(accumulate, chunks))

    spectrum = np.concatenate(parts, axis=0) * (hx * hy)
    full = np.fft.ifft(spectrum, axis=0) * hs
    start = ns // 2
    kept = full[start : start + ns]
    total = float(np.sum(np.abs(full)))
    lost = total - float(np.sum(np.abs(kept)))
    if total > 0.0 and lost > LOST_MASS_TOL * total:
        raise BoxSizeError(
            f"Convolution loses {lost / total:.3e} of its mass outside the s-range;"
            " enlarge the box"
        )
    return k1.like(kept)


def antiderivative_s(k: HFn) -> HFn:
    """
    Primitive in s vanishing at the left edge of the box.

    Raises:
        PreconditionError: If some s-integral is nonzero, so the primitive
            would not vanish at the right edge.
    """
    hs = k.steps[0]
    totals = np.sum(k.samples, axis=0) * hs
    peak = float(np.max(np.abs(k.samples)))
    worst = float(np.max(np.abs(totals)))
    if worst > PRIMITIVE_TOL * max(1.0, peak):
        raise PreconditionError(
            f"s-integral {worst:.3e} is not zero; the primitive would leave the box"
        )
    primitive = cumulative_trapezoid(k.samples, dx=hs, axis=0, initial=0)
    return k.like(primitive, check_decay=False)


def pmech_bracket(k1: HFn, k2: HFn, threads: int = 1) -> HFn:
    """The p-mechanical bracket A(k1 * k2 - k2 * k1)."""
    forward = heis_convolve(k1, k2, threads)
    backward = heis_convolve(k2, k1, threads)
    return antiderivative_s(forward.like(forward.samples - backward.samples, check_decay=False))


def _onedim_image(k: HFn, p: float, q: float) -> complex:
    _, x, y = k.axes()
    hs, hx, hy = k.steps
    marginal = np.sum(k.samples, axis=0) * hs
    character = np.exp(1j * (x[:, np.newaxis] * p + y[np.newaxis, :] * q))
    return complex(np.sum(marginal * character) * hx * hy)


def _schrodinger_image(k: HFn, target: SchrodingerTarget) -> LineOperator:
    hbar, grid = target.hbar, target.grid
    if hbar <= 0.0:
        raise DomainError(f"Planck constant must be positive, got {hbar}")
    s, u, v = k.axes()
    hs, hu, hv = k.steps
    scale = math.sqrt(2.0 * hbar)
    reach = 0.5 * grid.extent
    central = np.tensordot(np.exp(2j * hbar * s), k.samples, axes=(0, 0)) * hs
    y = grid.points
    identity = np.eye(grid.n, dtype=complex)
    floor = SKIP_TOL * float(np.max(np.abs(central)))
    matrix = np.zeros((grid.n, grid.n), dtype=complex)
    for i, ui in enumerate(u):
        row = central[i]
        if float(np.max(np.abs(row))) <= floor:
            continue
        delta = scale * ui
        if abs(delta) > reach:
            raise DomainError(
                f"Shift {delta:.4g} exceeds half the line grid extent {reach:.4g}"
            )
        modulation = np.exp(1j * (-scale * np.outer(y, v) + hbar * ui * v[np.newaxis, :]))
        profile = modulation @ row * hv
        matrix += profile[:, np.newaxis] * spectral_shift(identity, grid.h, delta, axis=0) * hu
    return LineOperator(matrix, grid, hbar)


def rep_image(k: HFn, target: RepTarget) -> Union[LineOperator, complex]:
    """
    Integrate k against a representation of the Heisenberg group.

    Schroedinger targets give int k(s, x, y) sigma_hbar(s, x, y) as an
    operator on the target's line grid; one-dimensional targets give
    int k(s, x, y) exp(i (x p + y q)).

    Raises:
        DomainError: If hbar <= 0 or a shift leaves the line grid.
    """
    if isinstance(target, OneDimTarget):
        return _onedim_image(k, target.p, target.q)
    return _schrodinger_image(k, target)


def dual_poisson_bracket(k1: HFn, k2: HFn, p: float, q: float, step: float = DIFF_STEP) -> complex:
    """
    {k1^, k2^}(p, q) = d_p k1^ d_q k2^ - d_q k1^ d_p k2^ of the one-dimensional
    images, by centered differences.
    """

    def partials(k: HFn) -> tuple[complex, complex]:
        dp = (_onedim_image(k, p + step, q) - _onedim_image(k, p - step, q)) / (2.0 * step)
        dq = (_onedim_image(k, p, q + step) - _onedim_image(k, p, q - step)) / (2.0 * step)
        return dp, dq

    dp1, dq1 = partials(k1)
    dp2, dq2 = partials(k2)
    return dp1 * dq2 - dq1 * dp2


def _schrodinger_sides(
    k1: HFn, k2: HFn, target: SchrodingerTarget, bracket: HFn
) -> tuple[np.ndarray, np.ndarray]:
    """sigma(bracket) and (1/(i hbar)) [sigma(k1), sigma(k2)]."""
    a1 = _schrodinger_image(k1, target).matrix
    a2 = _schrodinger_image(k2, target).matrix
    commutator = (a1 @ a2 - a2 @ a1) / (1j * target.hbar)
    return _schrodinger_image(bracket, target).matrix, commutator


def bracket_repr_defect(
    k1: HFn,
    k2: HFn,
    target: RepTarget,
    bracket: Optional[HFn] = None,
    threads: int = 1,
    probes: int = 4,
) -> float:
    """
    Defect of the bracket in a representation.

    Schroedinger targets: relative probe-space norm of
    sigma(bracket) - c (1/(i hbar)) [sigma(k1), sigma(k2)] with c = -1/2.
    One-dimensional targets: |rho(bracket) - {k1^, k2^}(p, q)|.

    Args:
        k1: First function.
        k2: Second function.
        target: Representation to evaluate in.
        bracket: Precomputed bracket of k1 and k2, reused across targets.
        threads: Workers for the convolutions.
        probes: Hermite probes for Schroedinger norms.

    Returns:
        The defect.
    """
    if bracket is None:
        bracket = pmech_bracket(k1, k2, threads)
    if isinstance(target, OneDimTarget):
        value = _onedim_image(bracket, target.p, target.q)
        expected = ONEDIM_BRACKET_CONSTANT * dual_poisson_bracket(k1, k2, target.p, target.q)
        return abs(value - expected)
    lhs, commutator = _schrodinger_sides(k1, k2, target, bracket)
    expected = SCHRODINGER_BRACKET_CONSTANT * commutator
    return relative_probe_defect(
        lhs - expected, expected, hermite_probes(target.grid, target.hbar, probes)
    )


def measured_bracket_constant(
    k1: HFn,
    k2: HFn,
    target: SchrodingerTarget,
    bracket: Optional[HFn] = None,
    threads: int = 1,
    probes: int = 4,
) -> complex:
    """Least-squares c with sigma(bracket) = c (1/(i hbar)) [sigma(k1), sigma(k2)] on the probes."""
    if bracket is None:
        bracket = pmech_bracket(k1, k2, threads)
    lhs, commutator = _schrodinger_sides(k1, k2, target, bracket)
    v = hermite_probes(target.grid, target.hbar, probes)
    x = v.conj().T @ lhs @ v
    y = v.conj().T @ commutator @ v
    scale = np.vdot(y, y)
    if scale == 0.0:
        return 0j
    return complex(np.vdot(y, x) / scale)

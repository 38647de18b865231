"""Tests for the Fourier, Segal-Bargmann and Hardy wavelet transforms."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coherent_calculus.core.errors import DomainError, UnsupportedSystemError
from coherent_calculus.core.wavelets import (
    TransformDirection,
    admissibility_defect,
    cauchy_integral_literal,
    coherent_state,
    fock_kernel,
    fock_project,
    fourier_inner,
    fourier_wavelet,
    hardy_transform,
    hermite_functions,
    kernel_project,
    lambda_disk_act,
    line_inner,
    rho1_act,
    schrodinger_act,
    segal_bargmann,
    segal_bargmann_inv,
    szego_project,
    taylor_decompose,
)
from coherent_calculus.models.elements import HeisPoint, SL2Elt
from coherent_calculus.models.functions import (
    CircleFn,
    FockFn,
    GridFn,
    GridSpec,
    PolarGrid,
    TaylorSeries,
    WaveletSystem,
)

GRID = GridSpec.fourier_grid(256)
QUARTER_PI = math.pi**0.25


def gaussian_fn(center: float = 0.0) -> GridFn:
    return GridFn.from_function(lambda y: np.exp(-0.5 * (y - center) ** 2), GRID)


def trig_poly(rng: np.random.Generator, degree: int = 4) -> CircleFn:
    coeffs = {
        k: complex(rng.normal(), rng.normal()) for k in range(-degree, degree + 1)
    }
    return CircleFn.from_coefficients(coeffs)


def random_boost(rng: np.random.Generator, max_t: float = 0.5) -> SL2Elt:
    return SL2Elt.boost(
        rng.uniform(0.0, max_t), rng.uniform(-math.pi, math.pi), rng.uniform(-math.pi, math.pi)
    )


def random_disk_point(rng: np.random.Generator, max_r: float = 0.8) -> complex:
    return cmath.rect(rng.uniform(0.0, max_r), rng.uniform(-math.pi, math.pi))


class TestFourierWavelet:
    """Test the rescaled Fourier transform of the Heisenberg system."""

    def test_zero_maps_to_zero(self):
        """Test the transform is linear at the origin."""
        result = fourier_wavelet(GridFn.zeros(GRID))
        assert np.all(result.samples == 0)

    def test_gaussian_image(self):
        """Test exp(-y^2/2) is sent to exp(-x^2)."""
        result = fourier_wavelet(gaussian_fn())
        np.testing.assert_allclose(result.samples, np.exp(-GRID.points**2), atol=1e-10)

    def test_shift_theorem(self):
        """Test translation becomes modulation."""
        c = 0.7
        plain = fourier_wavelet(gaussian_fn())
        shifted = fourier_wavelet(gaussian_fn(c))
        expected = np.exp(1j * math.sqrt(2.0) * GRID.points * c) * plain.samples
        np.testing.assert_allclose(shifted.samples, expected, atol=1e-10)

    def test_inverse_reconstructs(self):
        """Test inverse after forward is the identity on the self-dual grid."""
        f = GridFn.from_function(
            lambda y: (1.0 + 0.3 * y - 0.1j * y**2) * np.exp(-0.5 * (y - 0.4) ** 2), GRID
        )
        image = fourier_wavelet(f, TransformDirection.FORWARD)
        back = fourier_wavelet(image, TransformDirection.INVERSE)
        np.testing.assert_allclose(back.samples, f.samples, atol=1e-10)

    def test_plancherel(self):
        """Test the image inner product matches the line inner product."""
        f = gaussian_fn(0.5)
        g = GridFn.from_function(lambda y: y * np.exp(-0.5 * y**2), GRID)
        lhs = fourier_inner(fourier_wavelet(f), fourier_wavelet(g))
        assert abs(lhs - line_inner(f, g)) <= 1e-8


class TestSchrodinger:
    """Test the Schroedinger representation on grid functions."""

    def test_identity(self):
        """Test the unit element acts trivially."""
        f = gaussian_fn()
        result = schrodinger_act(HeisPoint.identity(), f, hbar=1.0)
        np.testing.assert_allclose(result.samples, f.samples, atol=1e-15)

    @pytest.mark.parametrize("hbar", [0.5, 1.0, 2.0])
    def test_center_acts_by_phase(self, hbar):
        """Test (s, 0, 0) multiplies by exp(2 i s hbar)."""
        f = gaussian_fn()
        result = schrodinger_act(HeisPoint(0.3, 0.0, 0.0), f, hbar=hbar)
        np.testing.assert_allclose(
            result.samples, cmath.exp(2j * 0.3 * hbar) * f.samples, atol=1e-15
        )

    def test_translation(self):
        """Test (0, u, 0) translates by sqrt(2 hbar) u."""
        u = 0.37
        result = schrodinger_act(HeisPoint(0.0, u, 0.0), gaussian_fn(), hbar=1.0)
        expected = gaussian_fn(math.sqrt(2.0) * u)
        np.testing.assert_allclose(result.samples, expected.samples, atol=1e-10)
        assert result.error_bound < 1e-10

    def test_shift_beyond_grid_rejected(self):
        """Test shifts past half the extent raise a domain error."""
        with pytest.raises(DomainError, match="exceeds half the grid"):
            schrodinger_act(HeisPoint(0.0, 100.0, 0.0), gaussian_fn(), hbar=1.0)

    def test_nonpositive_hbar_rejected(self):
        """Test hbar must be positive."""
        with pytest.raises(DomainError):
            schrodinger_act(HeisPoint.identity(), gaussian_fn(), hbar=0.0)


@settings(max_examples=50, deadline=None)
@given(
    s=st.floats(min_value=-5.0, max_value=5.0),
    u=st.floats(min_value=-3.0, max_value=3.0),
    v=st.floats(min_value=-3.0, max_value=3.0),
)
def test_schrodinger_preserves_norm(s, u, v):
    """Property: the Schroedinger operators are unitary on decaying samples."""
    f = gaussian_fn()
    result = schrodinger_act(HeisPoint(s, u, v), f, hbar=1.0)
    assert abs(result.norm() - f.norm()) <= 1e-10


class TestSegalBargmann:
    """Test the Segal-Bargmann transform and its inverse."""

    def test_zero(self):
        """Test the zero function has zero coefficients."""
        assert np.all(segal_bargmann(GridFn.zeros(GRID), 8).coeffs == 0)

    def test_vacuum(self):
        """Test the Gaussian maps to the constant pi^(1/4)."""
        coeffs = segal_bargmann(gaussian_fn(), 8).coeffs
        assert abs(coeffs[0] - QUARTER_PI) <= 1e-10
        assert np.max(np.abs(coeffs[1:])) <= 1e-10

    def test_first_excited_state(self):
        """Test sqrt(2) x exp(-x^2/2) maps to pi^(1/4) z."""
        f = GridFn.from_function(lambda x: math.sqrt(2.0) * x * np.exp(-0.5 * x**2), GRID)
        coeffs = segal_bargmann(f, 8).coeffs
        assert abs(coeffs[1] - QUARTER_PI) <= 1e-10
        assert np.max(np.abs(np.delete(coeffs, 1))) <= 1e-10

    @pytest.mark.parametrize("order", range(6))
    def test_hermite_functions_map_to_single_modes(self, order):
        """Test the n-th Hermite function has a single nonzero coefficient."""
        samples = hermite_functions(GRID.points, order + 1)[order]
        coeffs = segal_bargmann(GridFn(samples, GRID.x0, GRID.h), 10).coeffs
        expected = np.zeros(10)
        expected[order] = 1.0
        np.testing.assert_allclose(coeffs, expected, atol=1e-8)

    def test_kernel_matches_hermite_overlaps(self):
        """Test the kernel integral agrees with direct Hermite overlaps on a skewed input."""
        f = GridFn.from_function(
            lambda x: (1.0 + 0.5j * x - 0.2 * x**3) * np.exp(-0.6 * (x - 0.4) ** 2), GRID
        )
        overlaps = GRID.h * (hermite_functions(GRID.points, 12) @ f.samples)
        np.testing.assert_allclose(segal_bargmann(f, 12).coeffs, overlaps, atol=1e-9)

    def test_shifted_gaussian(self):
        """Test exp(-(x - c)^2 / 2) maps to pi^(1/4) exp(-c^2 / 4 + c z / sqrt(2))."""
        c = 1.5
        coeffs = segal_bargmann(gaussian_fn(c), 10).coeffs
        n = np.arange(10)
        factorials = np.array([math.factorial(k) for k in n], dtype=float)
        expected = QUARTER_PI * math.exp(-(c**2) / 4.0) * (c / math.sqrt(2.0)) ** n / np.sqrt(factorials)
        np.testing.assert_allclose(coeffs, expected, atol=1e-10)

    def test_hermite_functions_orthonormal(self):
        """Test the recurrence produces an orthonormal family."""
        basis = hermite_functions(GRID.points, 12)
        gram = GRID.h * basis @ basis.T
        np.testing.assert_allclose(gram, np.eye(12), atol=1e-10)

    def test_inverse_of_zero(self):
        """Test the inverse sends zero to zero."""
        result = segal_bargmann_inv(FockFn(np.zeros(4)), GRID)
        assert np.max(np.abs(result.samples)) == 0.0

    def test_inverse_of_vacuum(self):
        """Test the constant pi^(1/4) returns to the Gaussian."""
        result = segal_bargmann_inv(FockFn([QUARTER_PI]), GRID)
        np.testing.assert_allclose(
            result.samples, np.exp(-0.5 * GRID.points**2), atol=1e-8
        )

    def test_round_trip(self, rng):
        """Test inverse after forward on a random degree-5 Hermite combination."""
        weights = rng.normal(size=6) + 1j * rng.normal(size=6)
        samples = weights @ hermite_functions(GRID.points, 6)
        f = GridFn(samples, GRID.x0, GRID.h)
        back = segal_bargmann_inv(segal_bargmann(f, 6), GRID)
        np.testing.assert_allclose(back.samples, f.samples, atol=1e-8)


class TestFockProjection:
    """Test the orthogonal projection onto the Fock space."""

    def setup_method(self):
        """Set up the polar quadrature grid."""
        self.grid = PolarGrid.for_modes(8)
        self.z = self.grid.points()

    def test_analytic_input_unchanged(self):
        """Test z keeps its single coefficient."""
        coeffs = fock_project(self.z, self.grid, 6).coeffs
        expected = np.zeros(6)
        expected[1] = 1.0
        np.testing.assert_allclose(coeffs, expected, atol=1e-10)

    def test_antianalytic_input_annihilated(self):
        """Test conj(z) projects to zero."""
        coeffs = fock_project(np.conj(self.z), self.grid, 6).coeffs
        assert np.max(np.abs(coeffs)) <= 1e-10

    def test_modulus_squared(self):
        """Test |z|^2 projects to the constant 1."""
        coeffs = fock_project(np.abs(self.z) ** 2, self.grid, 6).coeffs
        assert abs(coeffs[0] - 1.0) <= 1e-10
        assert np.max(np.abs(coeffs[1:])) <= 1e-10

    def test_idempotent(self, rng):
        """Test projecting an already projected function changes nothing."""
        samples = rng.normal(size=self.z.shape) * np.exp(-0.1 * np.abs(self.z) ** 2)
        first = fock_project(samples, self.grid, 6)
        second = fock_project(first.evaluate(self.z), self.grid, 6)
        np.testing.assert_allclose(second.coeffs, first.coeffs, atol=1e-9)

    def test_kernel_reproduces_analytic_functions(self):
        """Test the integral kernel agrees with the coefficient projection."""
        analytic = 1.0 + 0.5 * self.z - 0.25 * self.z**2
        samples = analytic * np.exp(-0.5 * np.abs(self.z) ** 2)
        points = np.array([0.0, 0.3 + 0.4j, -0.8j])
        expected = (1.0 + 0.5 * points - 0.25 * points**2) * np.exp(
            -0.5 * np.abs(points) ** 2
        )
        np.testing.assert_allclose(
            kernel_project(samples, self.grid, points), expected, atol=1e-8
        )

    def test_kernel_on_diagonal(self):
        """Test K(z, z) = 1."""
        z = np.array([0.0, 1.0 + 1.0j, -2.0])
        np.testing.assert_allclose(fock_kernel(z, z), np.ones(3), atol=1e-14)


class TestHardyTransform:
    """Test the Cauchy-type transform and the Szegoe projection."""

    @pytest.mark.parametrize("a", [0.0, 0.5, 0.3 - 0.6j, -0.9])
    def test_constant(self, a):
        """Test f = 1 maps to sqrt(1 - |a|^2)."""
        f = CircleFn.from_function(lambda phi: np.ones_like(phi))
        assert abs(hardy_transform(f, a) - math.sqrt(1.0 - abs(a) ** 2)) <= 1e-12

    def test_first_harmonic(self):
        """Test e^{i phi} maps to sqrt(1 - |a|^2) a."""
        a = 0.4 + 0.2j
        f = CircleFn.from_coefficients({1: 1.0})
        assert abs(hardy_transform(f, a) - math.sqrt(1.0 - abs(a) ** 2) * a) <= 1e-12

    def test_antianalytic_harmonic(self):
        """Test e^{-i phi} is annihilated."""
        assert abs(hardy_transform(CircleFn.from_coefficients({-1: 1.0}), 0.6j)) <= 1e-12

    def test_outside_disk_rejected(self):
        """Test |a| >= 1 raises a domain error."""
        with pytest.raises(DomainError):
            hardy_transform(CircleFn.from_coefficients({0: 1.0}), 1.0)

    def test_literal_contour_integral(self, rng):
        """Test the contour integral equals 2 pi i times the transform at -a."""
        f = trig_poly(rng)
        for _ in range(5):
            a = random_disk_point(rng)
            literal = cauchy_integral_literal(f, a)
            assert abs(literal - 2j * math.pi * hardy_transform(f, -a)) <= 1e-10

    def test_szego_examples(self):
        """Test positive frequencies survive and negative ones vanish."""
        plus = CircleFn.from_coefficients({1: 1.0})
        minus = CircleFn.from_coefficients({-1: 1.0})
        both = CircleFn.from_coefficients({1: 1.0, -1: 1.0})
        np.testing.assert_allclose(szego_project(plus).samples, plus.samples, atol=1e-14)
        np.testing.assert_allclose(szego_project(minus).samples, 0.0, atol=1e-14)
        np.testing.assert_allclose(szego_project(both).samples, plus.samples, atol=1e-14)

    def test_szego_idempotent(self, rng):
        """Test projecting twice equals projecting once."""
        f = CircleFn(rng.normal(size=64) + 1j * rng.normal(size=64))
        once = szego_project(f)
        np.testing.assert_allclose(szego_project(once).samples, once.samples, atol=1e-14)


class TestTaylorDecompose:
    """Test Taylor coefficients of the analytic part."""

    def test_coherent_state(self):
        """Test the coherent state has coefficients sqrt(1 - |a|^2) conj(a)^k."""
        a = 0.5 + 0.3j
        series = taylor_decompose(coherent_state(a), 12)
        expected = math.sqrt(1.0 - abs(a) ** 2) * np.conj(a) ** np.arange(12)
        np.testing.assert_allclose(series.coeffs, expected, atol=1e-12)

    def test_constant(self):
        """Test f = 1 has the single coefficient 1."""
        series = taylor_decompose(CircleFn.from_coefficients({0: 1.0}), 4)
        np.testing.assert_allclose(series.coeffs, [1, 0, 0, 0], atol=1e-14)

    def test_second_harmonic(self):
        """Test e^{2 i phi} has coefficient 1 at index 2."""
        series = taylor_decompose(CircleFn.from_coefficients({2: 1.0}), 4)
        np.testing.assert_allclose(series.coeffs, [0, 0, 1, 0], atol=1e-14)

    def test_too_many_coefficients(self):
        """Test requesting more than N coefficients fails."""
        with pytest.raises(DomainError):
            taylor_decompose(CircleFn.from_coefficients({0: 1.0}, size=16), 17)


class TestMockDiscreteSeries:
    """Test rho_1 and the induced representation it intertwines with."""

    def test_identity(self, rng):
        """Test the unit element acts trivially."""
        f = trig_poly(rng)
        np.testing.assert_allclose(
            rho1_act(SL2Elt.identity(), f).samples, f.samples, atol=1e-12
        )

    @pytest.mark.parametrize("psi", [0.0, 0.7, -2.0, math.pi])
    def test_vacuum_is_eigenvector(self, psi):
        """Test h_psi multiplies the vacuum by exp(i psi)."""
        vacuum = CircleFn.from_coefficients({0: 1.0})
        result = rho1_act(SL2Elt.rotation(psi), vacuum)
        np.testing.assert_allclose(
            result.samples, cmath.exp(1j * psi) * vacuum.samples, atol=1e-12
        )

    def test_unitary(self, rng):
        """Test rho_1 preserves the L^2 norm."""
        for _ in range(10):
            f = trig_poly(rng)
            g = random_boost(rng)
            assert abs(rho1_act(g, f).norm() - f.norm()) <= 1e-8

    def test_lambda_identity(self):
        """Test the unit element evaluates F at a."""
        series = TaylorSeries([1.0, 0.5, 0.25])
        a = 0.3 + 0.1j
        result = lambda_disk_act(SL2Elt.identity(), series, a)
        expected = math.sqrt(1.0 - abs(a) ** 2) * series.evaluate(a)
        assert abs(result.value - expected) <= 1e-14
        assert result.warning is None

    def test_lambda_rotation_multiplier(self):
        """Test F = 1 under a rotation picks up a unimodular factor."""
        result = lambda_disk_act(SL2Elt.rotation(1.1), TaylorSeries([1.0]), 0.0)
        assert abs(abs(result.value) - 1.0) <= 1e-14

    def test_intertwining(self, rng):
        """Test hardy_transform(rho1 f) equals lambda applied to the transform."""
        f = trig_poly(rng)
        series = taylor_decompose(f, f.size // 2)
        for _ in range(20):
            g = random_boost(rng)
            a = random_disk_point(rng)
            lhs = hardy_transform(rho1_act(g, f), a)
            rhs = lambda_disk_act(g, series, a).value
            assert abs(lhs - rhs) <= 1e-7

    def test_truncation_warning(self):
        """Test a slowly decaying series near the boundary is flagged."""
        series = TaylorSeries(np.ones(8))
        result = lambda_disk_act(SL2Elt.identity(), series, 0.95)
        assert result.warning is not None
        assert result.tail_bound > 0.5


class TestAdmissibility:
    """Test the coherent-state reproducing identity for the Bargmann system."""

    def test_default_quadrature_is_admissible(self):
        """Test the defect is tiny at 32 nodes per axis."""
        assert admissibility_defect(WaveletSystem.bargmann(32)) <= 1e-6

    def test_defect_grows_as_nodes_shrink(self):
        """Test coarser quadrature gives monotonically larger defects."""
        defects = [admissibility_defect(WaveletSystem.bargmann(n)) for n in (32, 16, 8, 4)]
        assert defects == sorted(defects)
        assert defects[-1] > 0.5

    @pytest.mark.parametrize("hbar", [0.5, 2.0])
    def test_other_planck_constants(self, hbar):
        """Test the hbar / pi measure keeps the identity for other hbar."""
        assert admissibility_defect(WaveletSystem.bargmann(32, hbar=hbar)) <= 1e-6

    def test_fourier_system_unsupported(self):
        """Test the Fourier system has no admissibility check."""
        with pytest.raises(UnsupportedSystemError):
            admissibility_defect(WaveletSystem.fourier())

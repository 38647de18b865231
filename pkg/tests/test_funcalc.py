"""Tests for the analytic functional calculus of matrices."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coherent_calculus.core.errors import (
    ClusterResolutionError,
    DiskViolationError,
    DomainError,
    SpectralDomainError,
)
from coherent_calculus.core.funcalc import (
    calculus_intertwining_defect,
    compare_spectra,
    dunford_riesz,
    evaluate_polynomial,
    jet_prolong,
    jet_spectrum,
    jordan_block,
    jordan_matrix,
    matrix_resolvent,
    mobius_matrix,
    random_similarity,
    rho_a_act,
    rho_a_section,
    spectral_map_oracle,
    spectral_map_literal,
    verify_jet_equivalence,
)
from coherent_calculus.core.groups import mobius_disk
from coherent_calculus.models.elements import SL2Elt
from coherent_calculus.models.operators import (
    Agreement,
    CMatrix,
    Contour,
    HoloMap,
    JetSpectrum,
    VectorSeries,
)

SQUARE = HoloMap.power(2)
BLOCK_ANGLES = np.linspace(0.15, 2.95, 8)


def random_boost(rng: np.random.Generator, max_t: float = 1.0) -> SL2Elt:
    return SL2Elt.boost(
        rng.uniform(0.0, max_t), rng.uniform(-math.pi, math.pi), rng.uniform(-math.pi, math.pi)
    )


def random_contraction(rng: np.random.Generator, n: int = 4, norm: float = 0.8) -> CMatrix:
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return CMatrix(norm * m / np.linalg.norm(m, 2))


def random_disk_matrix(
    rng: np.random.Generator, n: int = 5, radius: float = 0.9, cond: float = 10.0
) -> CMatrix:
    eigenvalues = radius * np.sqrt(rng.uniform(size=n)) * np.exp(
        2j * np.pi * rng.uniform(size=n)
    )
    t = random_similarity(n, cond, rng)
    return CMatrix(t @ np.diag(eigenvalues) @ np.linalg.inv(t))


def random_jordan_instance(
    rng: np.random.Generator,
    max_block: int,
    radii: tuple[float, float] = (0.5, 0.75),
    cond: float = 10.0,
) -> tuple[CMatrix, list[tuple[complex, int]]]:
    """
    A Jordan matrix of random size 1..8 under a random similarity.

    Eigenvalues sit in the upper half disk at angles at least 0.4 apart, so
    they and their squares stay well separated.
    """
    n = int(rng.integers(1, 9))
    sizes: list[int] = []
    while sum(sizes) < n:
        sizes.append(int(rng.integers(1, min(n - sum(sizes), max_block) + 1)))
    angles = rng.permutation(BLOCK_ANGLES)[: len(sizes)]
    moduli = rng.uniform(*radii, size=len(sizes))
    blocks = [(complex(cmath.rect(r, theta)), k) for r, theta, k in zip(moduli, angles, sizes)]
    t = random_similarity(n, cond, rng)
    return CMatrix(t @ jordan_matrix(blocks).array @ np.linalg.inv(t)), blocks


class TestMatrixMobius:
    """Test the linear-fractional action on matrices."""

    def test_identity_element(self, rng):
        """Test the unit element fixes every matrix."""
        a = random_contraction(rng)
        np.testing.assert_allclose(
            mobius_matrix(SL2Elt.identity(), a).array, a.array, atol=1e-14
        )

    def test_scalar_consistency(self, rng):
        """Test lam I is sent to mobius_disk(g, lam) I."""
        for _ in range(10):
            g = random_boost(rng)
            lam = cmath.rect(rng.uniform(0.0, 0.9), rng.uniform(-math.pi, math.pi))
            result = mobius_matrix(g, CMatrix(lam * np.eye(3)))
            expected = mobius_disk(g, lam).z * np.eye(3)
            np.testing.assert_allclose(result.array, expected, atol=1e-12)

    def test_action_property(self, rng):
        """Test g then h composes as the product h g."""
        for _ in range(20):
            g, h = random_boost(rng), random_boost(rng)
            a = random_contraction(rng)
            lhs = mobius_matrix(g, mobius_matrix(h, a))
            rhs = mobius_matrix(h * g, a)
            np.testing.assert_allclose(lhs.array, rhs.array, atol=1e-10)

    def test_resolvent_identity(self, rng):
        """Test the unit element has resolvent I."""
        a = random_contraction(rng)
        np.testing.assert_allclose(
            matrix_resolvent(SL2Elt.identity(), a).array, np.eye(4), atol=1e-14
        )

    def test_resolvent_rotation(self, rng):
        """Test beta = 0 gives conj(alpha)^{-1} I."""
        g = SL2Elt.rotation(0.9)
        a = random_contraction(rng)
        expected = np.eye(4) / g.alpha.conjugate()
        np.testing.assert_allclose(matrix_resolvent(g, a).array, expected, atol=1e-14)

    def test_resolvent_inverse_contract(self, rng):
        """Test the resolvent inverts conj(alpha) e - conj(beta) a."""
        g = random_boost(rng)
        a = random_contraction(rng)
        den = g.alpha.conjugate() * np.eye(4) - g.beta.conjugate() * a.array
        np.testing.assert_allclose(
            matrix_resolvent(g, a).array @ den, np.eye(4), atol=1e-12
        )

    def test_resolvent_outside_disk(self):
        """Test a spectral radius of 1 is rejected."""
        with pytest.raises(SpectralDomainError):
            matrix_resolvent(SL2Elt.identity(), CMatrix(np.eye(2)))


@settings(max_examples=40, deadline=None)
@given(
    t1=st.floats(min_value=0.0, max_value=1.0),
    t2=st.floats(min_value=0.0, max_value=1.0),
    theta=st.floats(min_value=-math.pi, max_value=math.pi),
    lam=st.floats(min_value=-0.9, max_value=0.9),
)
def test_mobius_matrix_on_jordan_block(t1, t2, theta, lam):
    """Property: the right-action law holds on non-normal Jordan blocks."""
    g, h = SL2Elt.boost(t1, theta, 0.0), SL2Elt.boost(t2, 0.0, theta)
    a = jordan_block(lam, 3)
    lhs = mobius_matrix(g, mobius_matrix(h, a))
    np.testing.assert_allclose(lhs.array, mobius_matrix(h * g, a).array, atol=1e-9)


class TestRhoA:
    """Test the representation on vector-valued functions of a matrix."""

    def test_identity(self, rng):
        """Test the unit element evaluates F at z a."""
        a = random_contraction(rng, 3)
        series = VectorSeries(rng.normal(size=(4, 3)) + 0j)
        result = rho_a_act(SL2Elt.identity(), series, a, 0.5)
        np.testing.assert_allclose(result, series.at_matrix(0.5 * a.array), atol=1e-14)

    def test_scalar_reduction(self, rng):
        """Test a = lam I with F = x tensor 1 gives the scalar multiplier."""
        g = random_boost(rng)
        lam, z = 0.4 - 0.2j, 0.3 + 0.1j
        x = np.array([1.0, -2.0j, 0.5])
        result = rho_a_act(g, VectorSeries.constant(x), CMatrix(lam * np.eye(3)), z)
        expected = x / (g.beta.conjugate() * z * lam + g.alpha.conjugate())
        np.testing.assert_allclose(result, expected, atol=1e-14)

    def test_multiplier_is_resolvent(self, rng):
        """Test a constant section picks up the resolvent at -z a."""
        a = random_contraction(rng, 3)
        x = rng.normal(size=3) + 1j * rng.normal(size=3)
        for _ in range(5):
            g = random_boost(rng)
            result = rho_a_act(g, VectorSeries.constant(x), a, 0.4j)
            expected = matrix_resolvent(g, CMatrix(-0.4j * a.array)).array @ x
            np.testing.assert_allclose(result, expected, atol=1e-12)

    def test_section_outside_disk_rejected(self):
        """Test sections refuse matrices with spectral radius 1."""
        section = rho_a_section(SL2Elt.rotation(0.3), VectorSeries.constant([1.0, 0.0]))
        with pytest.raises(SpectralDomainError):
            section(np.diag([0.2, -1.0]))

    def test_action_property(self, rng):
        """Test rho_a(g) rho_a(h) = rho_a(h g) on random pairs."""
        a = random_contraction(rng, 3, 0.7)
        series = VectorSeries(rng.normal(size=(5, 3)) + 1j * rng.normal(size=(5, 3)))
        for _ in range(10):
            g, h = random_boost(rng), random_boost(rng)
            nested = rho_a_section(g, rho_a_section(h, series))
            direct = rho_a_section(h * g, series)
            np.testing.assert_allclose(nested(0.6 * a.array), direct(0.6 * a.array), atol=1e-9)

    def test_outside_disk_rejected(self, rng):
        """Test |z| >= 1 and spectral radius >= 1 are rejected."""
        series = VectorSeries.constant([1.0, 0.0])
        with pytest.raises(DomainError):
            rho_a_act(SL2Elt.identity(), series, random_contraction(rng, 2), 1.0)
        with pytest.raises(SpectralDomainError):
            rho_a_act(SL2Elt.identity(), series, CMatrix(2.0 * np.eye(2)), 0.0)

    def test_intertwines_with_circle_action(self, rng, four_block_matrix):
        """Test Phi rho_1(g) = rho_a(g) Phi for ten random elements."""
        a = CMatrix(four_block_matrix)
        x = rng.normal(size=a.n) + 1j * rng.normal(size=a.n)
        for _ in range(10):
            g = random_boost(rng, 0.5)
            f = rng.normal(size=4) + 1j * rng.normal(size=4)
            assert calculus_intertwining_defect(g, f, a, x, 0.5) <= 1e-9


class TestDunfordRiesz:
    """Test the contour-integral calculus."""

    def test_constant_gives_identity(self, rng):
        """Test f = 1 returns e."""
        a = random_disk_matrix(rng)
        np.testing.assert_allclose(
            dunford_riesz(HoloMap.constant(1.0), a).array, np.eye(a.n), atol=1e-10
        )

    def test_identity_on_jordan_block(self):
        """Test f(z) = z reproduces J_2(lam)."""
        a = jordan_block(0.5j, 2)
        np.testing.assert_allclose(
            dunford_riesz(HoloMap.identity(), a).array, a.array, atol=1e-12
        )

    def test_square_on_jordan_block(self):
        """Test f(z) = z^2 on J_2(lam) gives [[lam^2, 2 lam], [0, lam^2]]."""
        lam = 0.3 - 0.4j
        expected = np.array([[lam**2, 2 * lam], [0.0, lam**2]])
        result = dunford_riesz(SQUARE, jordan_block(lam, 2))
        np.testing.assert_allclose(result.array, expected, atol=1e-12)

    def test_polynomials_match_direct_evaluation(self, rng):
        """Test contour quadrature agrees with Horner on 50 random instances."""
        for trial in range(50):
            if trial % 2:
                a, _ = random_jordan_instance(rng, max_block=4, radii=(0.3, 0.7), cond=3.0)
            else:
                a = random_disk_matrix(rng, n=int(rng.integers(1, 9)), radius=0.88, cond=3.0)
            degree = int(rng.integers(0, 9))
            f = HoloMap.polynomial(rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1))
            direct = evaluate_polynomial(f, a).array
            contour = dunford_riesz(f, a, Contour(256, 1.0)).array
            assert np.linalg.norm(contour - direct) <= 1e-10 * max(1.0, np.linalg.norm(direct))

    def test_multiplicative(self, rng):
        """Test (f g)(a) = f(a) g(a)."""
        a = random_disk_matrix(rng)
        f = HoloMap.polynomial([0.2, -1.0, 0.5j])
        g = HoloMap.rational([1.0, 0.3], [1.0, -0.2])
        product = dunford_riesz(f * g, a).array
        np.testing.assert_allclose(
            product, dunford_riesz(f, a).array @ dunford_riesz(g, a).array, atol=1e-9
        )

    def test_spectrum_outside_contour(self):
        """Test the spectral radius must stay inside the contour."""
        with pytest.raises(SpectralDomainError):
            dunford_riesz(HoloMap.identity(), CMatrix(np.diag([0.5, 1.2])))

    def test_pole_inside_contour(self):
        """Test maps with poles in the disk are rejected."""
        with pytest.raises(SpectralDomainError, match="pole"):
            dunford_riesz(HoloMap.rational([1.0], [-0.5, 1.0]), jordan_block(0.1, 2))


class TestJetSpectrum:
    """Test recovery of eigenvalues with Jordan block lengths."""

    def test_diagonal(self):
        """Test a diagonal matrix has blocks of length one."""
        result = jet_spectrum(CMatrix(np.diag([0.1, 0.2, 0.3])))
        expected = JetSpectrum.from_pairs([(0.1, 1), (0.2, 1), (0.3, 1)])
        assert result.matches(expected, 1e-9)

    def test_eight_distinct_eigenvalues(self):
        """Test eigenvalues 0.1 apart resolve as simple pairs at n = 8."""
        values = [0.1 * (i + 1) for i in range(8)]
        result = jet_spectrum(CMatrix(np.diag(values)), 1e-6)
        assert result.matches(JetSpectrum.from_pairs((v, 1) for v in values), 1e-12)

    def test_tolerance_sets_simple_radius(self):
        """Test simple eigenvalues 2e-5 apart split at tol 1e-6 and clash at 5e-6."""
        a = CMatrix(np.diag([0.1, 0.1 + 2e-5, -0.3j]))
        assert [k for _, k in jet_spectrum(a, 1e-6).pairs] == [1, 1, 1]
        with pytest.raises(ClusterResolutionError):
            jet_spectrum(a, 5e-6)

    def test_random_diagonalizable_instances(self, rng):
        """Test 50 conjugated diagonal matrices of size 1..8 give only simple pairs."""
        for _ in range(50):
            a, blocks = random_jordan_instance(rng, max_block=1, radii=(0.1, 0.9))
            assert jet_spectrum(a, 1e-6).matches(JetSpectrum.from_pairs(blocks), 1e-6)

    def test_random_jordan_instances(self, rng):
        """Test 50 conjugated Jordan matrices of size 1..8 give back their blocks."""
        for _ in range(50):
            a, blocks = random_jordan_instance(rng, max_block=4)
            assert jet_spectrum(a, 1e-6).matches(JetSpectrum.from_pairs(blocks), 1e-6)

    def test_four_block_example(self, four_block_matrix):
        """Test the four-block example is recovered exactly."""
        result = jet_spectrum(CMatrix(four_block_matrix))
        expected = JetSpectrum.from_pairs(
            [
                (0.75 * cmath.exp(1j * math.pi / 4), 3),
                (2.0 / 3.0 * cmath.exp(5j * math.pi / 6), 4),
                (0.4 * cmath.exp(-3j * math.pi / 4), 1),
                (0.6 * cmath.exp(-1j * math.pi / 3), 2),
            ]
        )
        assert result.matches(expected, 1e-9)
        assert result.n == 10

    def test_similarity_invariance(self, rng, four_block_matrix):
        """Test T a T^{-1} with condition number 50 keeps the jet spectrum."""
        expected = jet_spectrum(CMatrix(four_block_matrix))
        for _ in range(3):
            t = random_similarity(10, 50.0, rng)
            conjugated = CMatrix(t @ four_block_matrix @ np.linalg.inv(t))
            assert jet_spectrum(conjugated, 1e-6).matches(expected, 1e-6)

    def test_repeated_eigenvalue_with_split_blocks(self):
        """Test J_2(0.5) + J_2(0.5) + J_1(0.5) gives three pairs at 0.5."""
        a = jordan_matrix([(0.5, 2), (0.5, 2), (0.5, 1)])
        result = jet_spectrum(a)
        assert result.matches(JetSpectrum.from_pairs([(0.5, 2), (0.5, 2), (0.5, 1)]))

    def test_unresolvable_clusters(self):
        """Test nearly coincident eigenvalues raise a resolution error."""
        with pytest.raises(ClusterResolutionError, match="smaller tolerance"):
            jet_spectrum(CMatrix(np.diag([0.1, 0.1 + 5e-6])), tol=1e-6)

    def test_eigenvalue_outside_disk(self):
        """Test eigenvalues must lie in the open unit disk."""
        with pytest.raises(SpectralDomainError):
            jet_spectrum(CMatrix(np.diag([0.1, 1.5])))


class TestJetProlong:
    """Test exact derivatives of polynomial and rational maps."""

    def test_constant(self):
        """Test a constant has vanishing derivatives."""
        np.testing.assert_allclose(
            jet_prolong(HoloMap.constant(2.5), 3, 0.4j), [2.5, 0, 0, 0], atol=1e-15
        )

    def test_cube(self):
        """Test w^3 at 1 gives (1, 3, 6)."""
        np.testing.assert_allclose(jet_prolong(HoloMap.power(3), 2, 1.0), [1, 3, 6])

    def test_rational(self):
        """Test 1 / (1 - w) at 0 gives k!."""
        f = HoloMap.rational([1.0], [1.0, -1.0])
        np.testing.assert_allclose(jet_prolong(f, 4, 0.0), [1, 1, 2, 6, 24], atol=1e-12)

    def test_affine_chain_rule(self, rng):
        """Test jets of f(s w + t) are s^k f^(k)(s z + t)."""
        for _ in range(10):
            f = HoloMap.rational(
                rng.normal(size=4) + 1j * rng.normal(size=4), [2.0, 0.3 - 0.1j]
            )
            s, t = complex(rng.normal(), rng.normal()), complex(rng.normal(), rng.normal())
            z = complex(rng.normal(), rng.normal()) * 0.3
            composed = jet_prolong(f.compose_affine(s, t), 4, z)
            expected = jet_prolong(f, 4, s * z + t) * s ** np.arange(5)
            np.testing.assert_allclose(composed, expected, rtol=1e-10, atol=1e-10)

    def test_pole(self):
        """Test evaluation at a pole raises a domain error."""
        with pytest.raises(DomainError, match="pole"):
            jet_prolong(HoloMap.rational([1.0], [-0.5, 1.0]), 2, 0.5)


class TestSpectralMapping:
    """Test the literal spectral mapping formula against the Jordan oracle."""

    def test_literal_identity(self):
        """Test the identity map keeps the pair."""
        assert spectral_map_literal(HoloMap.identity(), (0.3j, 3)) == (0.3j, 3)

    def test_literal_square_off_zero(self):
        """Test z^2 at 0.5 keeps the length."""
        value, k = spectral_map_literal(SQUARE, (0.5, 3))
        assert value == pytest.approx(0.25)
        assert k == 3

    def test_literal_square_at_zero(self):
        """Test z^2 at 0 halves the length."""
        assert spectral_map_literal(SQUARE, (0.0, 4)) == (0.0, 2)

    def test_literal_disk_violation(self):
        """Test images outside the unit disk are rejected."""
        with pytest.raises(DiskViolationError):
            spectral_map_literal(HoloMap.polynomial([0.0, 2.0]), (0.9, 1))

    def test_oracle_identity(self, four_block_matrix):
        """Test the identity map keeps the whole spectrum."""
        spec = jet_spectrum(CMatrix(four_block_matrix))
        assert spectral_map_oracle(HoloMap.identity(), spec).matches(spec)

    @pytest.mark.parametrize(
        "k, expected",
        [(4, [(0.0, 2), (0.0, 2)]), (3, [(0.0, 2), (0.0, 1)]), (5, [(0.0, 3), (0.0, 2)])],
    )
    def test_oracle_square_at_zero(self, k, expected):
        """Test nilpotent blocks split under z^2."""
        result = spectral_map_oracle(SQUARE, JetSpectrum.from_pairs([(0.0, k)]))
        assert result.matches(JetSpectrum.from_pairs(expected))

    @pytest.mark.parametrize(
        "phi, pairs",
        [
            (SQUARE, [(0.0, 4), (0.5, 3)]),
            (SQUARE, [(0.0, 3), (-0.4j, 2)]),
            (HoloMap.power(3), [(0.0, 5), (0.6, 1)]),
            (HoloMap.rational([0.3, 1.0], [1.0, 0.3]), [(0.2, 3), (-0.5j, 2)]),
            (HoloMap.polynomial([0.1, 0.0, 0.5]), [(0.0, 4), (0.6, 2)]),
        ],
    )
    def test_oracle_matches_calculus(self, phi, pairs):
        """Test jet_spectrum(phi(a)) equals the oracle applied to jet_spectrum(a)."""
        a = jordan_matrix(pairs)
        computed = jet_spectrum(dunford_riesz(phi, a))
        predicted = spectral_map_oracle(phi, jet_spectrum(a))
        assert computed.matches(predicted, 1e-6)

    def test_oracle_matches_calculus_on_random_instances(self, rng):
        """Test the oracle against jet_spectrum(phi(a)) on 50 conjugated matrices."""
        for trial in range(50):
            a, blocks = random_jordan_instance(rng, max_block=1 if trial % 2 else 4)
            source = jet_spectrum(a, 1e-6)
            assert source.matches(JetSpectrum.from_pairs(blocks), 1e-6)
            computed = jet_spectrum(dunford_riesz(SQUARE, a), 1e-6)
            assert computed.matches(spectral_map_oracle(SQUARE, source), 1e-6)

    def test_compare_spectra_classification(self):
        """Test each pair is labelled by how the two rules relate."""
        spec = JetSpectrum.from_pairs([(0.0, 4), (0.0, 3), (0.5, 2)])
        rows = {row.source: row for row in compare_spectra(SQUARE, spec)}
        assert rows[(0j, 4)].agreement is Agreement.SET_LEVEL
        assert rows[(0j, 3)].agreement is Agreement.DISAGREE
        assert rows[(0.5 + 0j, 2)].agreement is Agreement.MULTISET
        assert rows[(0j, 3)].literal == (0j, 1)
        assert rows[(0j, 3)].oracle == ((0j, 2), (0j, 1))


class TestJetEquivalence:
    """Test rho_a on a Jordan block against the prolonged scalar action."""

    def test_scalar_case(self, rng):
        """Test k = 1 reduces to the scalar multiplier."""
        assert verify_jet_equivalence(random_boost(rng), 0.3 + 0.2j, 1) <= 1e-10

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_random_elements(self, rng, k):
        """Test the defect is small for random group elements."""
        for _ in range(5):
            lam = cmath.rect(rng.uniform(0.0, 0.8), rng.uniform(-math.pi, math.pi))
            assert verify_jet_equivalence(random_boost(rng), lam, k) <= 1e-7

    def test_similarity_invariance(self, rng):
        """Test a change of basis does not change the defect."""
        g = random_boost(rng)
        plain = verify_jet_equivalence(g, 0.4j, 3)
        conjugated = verify_jet_equivalence(g, 0.4j, 3, random_similarity(3, 10.0, rng))
        assert abs(plain - conjugated) <= 1e-9

    def test_outside_disk(self):
        """Test |lam| >= 1 is rejected."""
        with pytest.raises(DomainError):
            verify_jet_equivalence(SL2Elt.identity(), 1.0, 2)

"""
Analytic functional calculus of non-normal matrices.

The calculus is built from the SU(1,1) action on matrices with spectrum in
the unit disk. Conventions follow ``groups.mobius_disk``: an element g acts
through the entries of its inverse, so every action here is a right action,
``mobius_matrix(g, mobius_matrix(h, a)) == mobius_matrix(h * g, a)``.
"""

import logging
import math
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

import numpy as np
import scipy.linalg
from numpy.polynomial import Polynomial
from scipy.cluster.hierarchy import fcluster, linkage

from ..models.elements import DiskLike, SL2Elt, as_disk_point
from ..models.functions import CircleFn
from ..models.operators import (
    Agreement,
    CMatrix,
    Contour,
    HoloMap,
    JetSpectrum,
    PairComparison,
    VectorSeries,
)
from .errors import (
    ClusterResolutionError,
    DiskViolationError,
    DomainError,
    SpectralDomainError,
)
from .wavelets import rho1_act, taylor_decompose

LOGGER = logging.getLogger(__name__)

POLE_TOL = 1e-14
DEGREE_TOL = 1e-12
CONDITION_LIMIT = 1e14
CLUSTER_SEPARATION = 10.0
CLUSTER_FACTOR = 16.0

Section = Callable[[np.ndarray], np.ndarray]
SectionLike = Union[VectorSeries, Section]


def jordan_block(lam: complex, k: int) -> CMatrix:
    """J_k(lam): lam on the diagonal, ones on the superdiagonal."""
    return CMatrix(lam * np.eye(k, dtype=complex) + np.eye(k, k=1, dtype=complex))


def jordan_matrix(pairs: Iterable[tuple[complex, int]]) -> CMatrix:
    """Block-diagonal direct sum of Jordan blocks."""
    blocks = [jordan_block(lam, k).array for lam, k in pairs]
    return CMatrix(scipy.linalg.block_diag(*blocks))


def random_similarity(
    n: int, cond: float, rng: np.random.Generator
) -> np.ndarray:
    """Random complex matrix with 2-norm condition number ``cond``."""
    def unitary() -> np.ndarray:
        q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
        return q * (np.diag(r) / np.abs(np.diag(r)))

    singular = np.geomspace(1.0, cond, n) if n > 1 else np.ones(1)
    return unitary() @ np.diag(singular) @ unitary()


def _solve_checked(denominator: np.ndarray, rhs: np.ndarray, what: str) -> np.ndarray:
    cond = np.linalg.cond(denominator)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SpectralDomainError(
            f"{what} is singular (condition number {cond:.3e})"
        )
    return scipy.linalg.solve(denominator, rhs)


def _require_disk_spectrum(a: CMatrix, radius: float = 1.0) -> None:
    rho = a.spectral_radius()
    if rho >= radius:
        raise SpectralDomainError(
            f"Spectral radius {rho:.6g} is not below {radius:.6g}"
        )


def mobius_matrix(g: SL2Elt, a: CMatrix) -> CMatrix:
    """
    Linear-fractional action on matrices.

    Returns (conj(alpha) a - beta e)(alpha e - conj(beta) a)^{-1}; on
    a = lam I this is ``mobius_disk(g, lam) I``.

    Raises:
        SpectralDomainError: If the denominator is singular.
    """
    e = np.eye(a.n, dtype=complex)
    num = g.alpha.conjugate() * a.array - g.beta * e
    den = g.alpha * e - g.beta.conjugate() * a.array
    return CMatrix(_solve_checked(den, num, "Moebius denominator"))


def matrix_resolvent(g: SL2Elt, a: CMatrix) -> CMatrix:
    """
    The multiplier (conj(alpha) e - conj(beta) a)^{-1}.

    Raises:
        SpectralDomainError: If the spectral radius of a is not below 1.
    """
    _require_disk_spectrum(a)
    e = np.eye(a.n, dtype=complex)
    den = g.alpha.conjugate() * e - g.beta.conjugate() * a.array
    return CMatrix(_solve_checked(den, e, "Resolvent"))


def _as_section(section: SectionLike) -> Section:
    if isinstance(section, VectorSeries):
        return section.at_matrix
    return section


def rho_a_section(g: SL2Elt, section: SectionLike) -> Section:
    """
    Representation on C^n-valued functions of a matrix argument.

    [rho_a(g) F](b) = (conj(beta) b + conj(alpha) e)^{-1} F[(alpha b + beta)(conj(beta) b + conj(alpha) e)^{-1}]

    It is the matrix counterpart of ``wavelets.rho1_act`` and composes the
    same way: rho_a(g) rho_a(h) = rho_a(h g). The returned section raises
    SpectralDomainError at matrices b whose spectral radius is not below 1.
    """
    inner = _as_section(section)

    def transformed(b: np.ndarray) -> np.ndarray:
        b = np.asarray(b, dtype=complex)
        e = np.eye(b.shape[0], dtype=complex)
        # (conj(beta) b + conj(alpha) e)^{-1} is the resolvent at -b
        multiplier = matrix_resolvent(g, CMatrix(-b)).array
        image = multiplier @ (g.alpha * b + g.beta * e)
        return multiplier @ inner(image)

    return transformed


def rho_a_act(
    g: SL2Elt, big_f: SectionLike, a: CMatrix, z: DiskLike
) -> np.ndarray:
    """
    Evaluate rho_a(g) F at the matrix z a.

    The unit element gives F(z a), the value at z of the function z -> F(z a).

    Args:
        g: Element of SU(1,1).
        big_f: C^n-valued power series (or any section) of a matrix argument.
        a: Matrix with spectrum in the unit disk.
        z: Point of the unit disk.

    Returns:
        The resulting vector of C^n.

    Raises:
        SpectralDomainError: If the spectral radius of a is not below 1.
        DomainError: If |z| >= 1.
    """
    _require_disk_spectrum(a)
    point = as_disk_point(z)
    return rho_a_section(g, big_f)(point * a.array)


def calculus_intertwining_defect(
    g: SL2Elt,
    f: Sequence[complex],
    a: CMatrix,
    x: Sequence[complex],
    z: DiskLike = 0.5,
    size: int = 256,
) -> float:
    """
    Relative defect of Phi rho_1(g) = rho_a(g) Phi with Phi f = f(z a) x.

    The left side transforms the scalar polynomial f on the circle with
    ``rho1_act`` and sums its Taylor series at z a; the right side applies
    ``rho_a_act`` to x tensor f.
    """
    coeffs = np.asarray(f, dtype=complex)
    circle = CircleFn.from_function(
        lambda phi: np.polynomial.polynomial.polyval(np.exp(1j * phi), coeffs), size
    )
    transformed = taylor_decompose(rho1_act(g, circle), size // 2)
    point = as_disk_point(z)
    left = VectorSeries.scalar_times(transformed.coeffs, x).at_matrix(point * a.array)
    right = rho_a_act(g, VectorSeries.scalar_times(coeffs, x), a, point)
    return float(np.linalg.norm(left - right) / max(1.0, np.linalg.norm(right)))


def dunford_riesz(f: HoloMap, a: CMatrix, contour: Optional[Contour] = None) -> CMatrix:
    """
    Cauchy integral (2 pi i)^{-1} int f(t) (t e - a)^{-1} dt by the trapezoid rule.

    Args:
        f: Holomorphic map without poles on the closed contour disk.
        a: Matrix whose spectrum lies inside the contour.
        contour: Circle and node count; defaults to the unit circle with 256 nodes.

    Returns:
        f(a).

    Raises:
        SpectralDomainError: If the spectral radius reaches the contour or f
            has a pole inside it.
    """
    contour = contour or Contour()
    _require_disk_spectrum(a, contour.radius)
    if not f.validate(contour.radius):
        raise SpectralDomainError(
            f"Map has a pole inside the contour of radius {contour.radius}"
        )
    e = np.eye(a.n, dtype=complex)
    total = np.zeros((a.n, a.n), dtype=complex)
    points = contour.points()
    for t, value in zip(points, f(points)):
        total += value * t * scipy.linalg.solve(t * e - a.array, e)
    return CMatrix(total / contour.nodes)


def evaluate_polynomial(f: HoloMap, a: CMatrix) -> CMatrix:
    """Direct Horner evaluation of a polynomial map at a matrix."""
    if not f.is_polynomial:
        raise DomainError("Direct evaluation needs a polynomial map")
    coeffs = f.numerator.coef / f.denominator.coef[0]
    result = np.zeros((a.n, a.n), dtype=complex)
    e = np.eye(a.n, dtype=complex)
    for coeff in coeffs[::-1]:
        result = result @ a.array + coeff * e
    return CMatrix(result)


def _rounding_scale(a: CMatrix, eigenvalues: np.ndarray, factor: float) -> tuple[float, float]:
    """Backward error of the eigensolver and the departure from normality of a."""
    norm = float(np.linalg.norm(a.array, 2))
    departure_sq = np.linalg.norm(a.array, "fro") ** 2 - np.sum(np.abs(eigenvalues) ** 2)
    departure = math.sqrt(max(float(departure_sq), 0.0))
    backward = factor * a.n * np.finfo(float).eps * max(norm, 1e-300)
    return backward, max(departure, norm)


def _cluster_radius(m: int, tol: float, backward: float, departure: float) -> float:
    """
    Radius for a cluster of m eigenvalues.

    A perturbation eps of a block with nilpotent part N moves its m
    eigenvalues by about (eps ||N||^{m-1})^{1/m}; a simple eigenvalue gets tol.
    """
    if m == 1:
        return tol
    return max(tol, (backward * departure ** (m - 1)) ** (1.0 / m))


def _spread(members: np.ndarray) -> float:
    return float(np.max(np.abs(members - np.mean(members))))


def _cuts(eigenvalues: np.ndarray) -> Iterator[list[np.ndarray]]:
    """Single-linkage partitions from singletons up, one per merge height."""
    yield [eigenvalues[i : i + 1] for i in range(eigenvalues.shape[0])]
    if eigenvalues.shape[0] == 1:
        return
    points = np.column_stack([eigenvalues.real, eigenvalues.imag])
    tree = linkage(points, method="single")
    for height in tree[:, 2]:
        labels = fcluster(tree, t=height, criterion="distance")
        yield [eigenvalues[labels == label] for label in np.unique(labels)]


def _conflict(
    centers: Sequence[complex], radii: Sequence[float]
) -> Optional[tuple[complex, complex, float]]:
    for i, lam in enumerate(centers):
        for mu, other in zip(centers[i + 1 :], radii[i + 1 :]):
            limit = CLUSTER_SEPARATION * max(radii[i], other)
            if abs(lam - mu) < limit:
                return lam, mu, limit
    return None


def _clusters(
    eigenvalues: np.ndarray, tol: float, backward: float, departure: float
) -> tuple[list[np.ndarray], list[float]]:
    """
    The finest single-linkage cut whose clusters fit their radii and lie
    ten radii apart.

    Raises:
        ClusterResolutionError: If no cut qualifies; the message names the
            closest pair of simple eigenvalues.
    """
    first: Optional[tuple[complex, complex, float]] = None
    for candidate in _cuts(eigenvalues):
        radii = [_cluster_radius(c.shape[0], tol, backward, departure) for c in candidate]
        if any(_spread(c) > r for c, r in zip(candidate, radii)):
            continue
        found = _conflict([complex(np.mean(c)) for c in candidate], radii)
        if found is None:
            return candidate, radii
        first = first or found
    assert first is not None, "singletons always fit their radius"
    lam, mu, limit = first
    raise ClusterResolutionError(
        f"Eigenvalue clusters {lam:.6g} and {mu:.6g} are closer than"
        f" {limit:.3e}; use a smaller tolerance or exact input"
    )


def _rank(m: np.ndarray, threshold: float) -> int:
    if m.size == 0:
        return 0
    return int(np.sum(scipy.linalg.svdvals(m) > threshold))


def _block_sizes(t11: np.ndarray, lam: complex, scale: float, tol: float) -> list[int]:
    """Jordan block sizes at lam from the rank sequence of (T11 - lam)^j."""
    m = t11.shape[0]
    shifted = t11 - lam * np.eye(m, dtype=complex)
    ranks = [m]
    power = np.eye(m, dtype=complex)
    while ranks[-1] > 0 and len(ranks) <= m:
        power = power @ shifted
        top = scipy.linalg.svdvals(power)[0] if m else 0.0
        ranks.append(_rank(power, tol * max(top, scale)))
    ranks.append(0)
    sizes: list[int] = []
    for j in range(1, len(ranks) - 1):
        at_least_j = ranks[j - 1] - ranks[j]
        at_least_next = ranks[j] - ranks[j + 1]
        sizes.extend([j] * (at_least_j - at_least_next))
    if sum(sizes) != m:
        raise ClusterResolutionError(
            f"Rank sequence {ranks[:-1]} at {lam:.6g} does not resolve {m} eigenvalues"
        )
    return sizes


def jet_spectrum(
    a: CMatrix, tol: float = 1e-6, cluster_factor: float = CLUSTER_FACTOR
) -> JetSpectrum:
    """
    The multiset of (eigenvalue, Jordan block length) pairs of a.

    Eigenvalues are grouped by single linkage. A simple eigenvalue has
    radius tol; a cluster of m eigenvalues may spread up to
    max(tol, (cluster_factor n eps ||a|| dep(a)^{m-1})^{1/m}), the cloud a
    Jordan block of size m turns into under rounding, where dep(a) is the
    departure from normality. The finest grouping whose clusters fit their
    radii and lie ten radii apart is kept. Each cluster is moved to the leading block of a reordered
    Schur form and its block sizes are read off the rank sequence of
    (T11 - lam)^j, thresholded at tol times the largest singular value.

    Raises:
        ClusterResolutionError: If two clusters are closer than ten times
            the larger of their radii.
        SpectralDomainError: If an eigenvalue leaves the open unit disk.
    """
    eigenvalues = np.linalg.eigvals(a.array)
    backward, departure = _rounding_scale(a, eigenvalues, cluster_factor)
    clusters, radii = _clusters(eigenvalues, tol, backward, departure)
    centers = [complex(np.mean(c)) for c in clusters]
    LOGGER.debug(
        "%d clusters, radii %s", len(centers), ", ".join(f"{r:.3e}" for r in radii)
    )
    for lam in centers:
        if abs(lam) >= 1.0:
            raise SpectralDomainError(f"Eigenvalue {lam:.6g} lies outside the unit disk")

    scale = float(scipy.linalg.svdvals(a.array)[0])
    pairs: list[tuple[complex, int]] = []
    for lam, radius, members in zip(centers, radii, clusters):
        reach = 3.0 * max(radius, _spread(members))
        t, _, sdim = scipy.linalg.schur(
            a.array, output="complex", sort=lambda x, lam=lam, reach=reach: abs(x - lam) <= reach
        )
        if sdim != members.shape[0]:
            raise ClusterResolutionError(
                f"Schur reordering kept {sdim} eigenvalues for a cluster of"
                f" {members.shape[0]} at {lam:.6g}"
            )
        sizes = _block_sizes(t[:sdim, :sdim], lam, scale, tol)
        pairs.extend((lam, k) for k in sizes)
    return JetSpectrum.from_pairs(pairs)


def taylor_coefficients(f: HoloMap, n: int, z: complex) -> np.ndarray:
    """
    Taylor coefficients t_0..t_n of f at z, exact for polynomial and rational maps.

    Raises:
        DomainError: If z is a pole of f.
    """
    shift = Polynomial([z, 1.0])
    num = np.zeros(n + 1, dtype=complex)
    den = np.zeros(n + 1, dtype=complex)
    num_coef = f.numerator(shift).coef[: n + 1]
    den_coef = f.denominator(shift).coef[: n + 1]
    num[: num_coef.shape[0]] = num_coef
    den[: den_coef.shape[0]] = den_coef
    if abs(den[0]) < POLE_TOL:
        raise DomainError(f"Map has a pole at {z!r}")
    out = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        out[k] = (num[k] - np.dot(den[1 : k + 1], out[k - 1 :: -1][:k])) / den[0]
    return out


def jet_prolong(f: HoloMap, n: int, z: complex) -> np.ndarray:
    """
    The n-jet (f(z), f'(z), ..., f^(n)(z)).

    Raises:
        DomainError: If z is a pole of f.
    """
    coeffs = taylor_coefficients(f, n, z)
    return coeffs * np.array([math.factorial(k) for k in range(n + 1)], dtype=float)


def zero_order(phi: HoloMap, lam: complex, limit: int) -> int:
    """
    Order of the zero of phi - phi(lam) at lam, capped at limit + 1.

    The cap stands for a locally constant map.
    """
    coeffs = taylor_coefficients(phi, limit, lam)
    for j in range(1, limit + 1):
        if abs(coeffs[j]) > DEGREE_TOL:
            return j
    return limit + 1


def _image(phi: HoloMap, lam: complex) -> complex:
    if abs(lam) >= 1.0:
        raise DomainError(f"Eigenvalue {lam:.6g} lies outside the unit disk")
    value = complex(phi(lam))
    if abs(value) > 1.0:
        raise DiskViolationError(
            f"Map sends {lam:.6g} to {value:.6g}, outside the closed unit disk"
        )
    return value


def require_disk_map(phi: HoloMap, samples: int = 256) -> None:
    """
    Check |phi| <= 1 on equispaced points of the unit circle.

    Raises:
        DiskViolationError: If some sample leaves the closed disk.
        SpectralDomainError: If phi has a pole on the closed disk.
    """
    if not phi.validate(1.0):
        raise SpectralDomainError("Map has a pole on the closed unit disk")
    values = np.abs(phi(np.exp(2j * np.pi * np.arange(samples) / samples)))
    worst = int(np.argmax(values))
    if values[worst] > 1.0 + DEGREE_TOL:
        raise DiskViolationError(
            f"Map reaches |phi| = {values[worst]:.6g} at angle"
            f" {2.0 * np.pi * worst / samples:.4f}, outside the closed unit disk"
        )


def spectral_map_literal(phi: HoloMap, pair: tuple[complex, int]) -> tuple[complex, int]:
    """
    Literal spectral mapping: (phi(lam), floor(k / d)) with d the zero order at lam.

    Raises:
        DiskViolationError: If |phi(lam)| > 1.
    """
    lam, k = pair
    value = _image(phi, lam)
    return value, k // zero_order(phi, lam, k)


def _split(value: complex, k: int, d: int) -> list[tuple[complex, int]]:
    big, small = -(-k // d), k // d
    remainder = k % d
    blocks = [(value, big)] * remainder + [(value, small)] * (d - remainder)
    return [(mu, size) for mu, size in blocks if size > 0]


def spectral_map_oracle(phi: HoloMap, spec: JetSpectrum) -> JetSpectrum:
    """
    Jordan structure of phi(a) from that of a.

    A block (lam, k) with zero order d splits into k mod d blocks of size
    ceil(k / d) and d - k mod d blocks of size floor(k / d) at phi(lam).

    Raises:
        DiskViolationError: If some |phi(lam)| > 1.
    """
    pairs: list[tuple[complex, int]] = []
    for lam, k in spec.pairs:
        pairs.extend(_split(_image(phi, lam), k, zero_order(phi, lam, k)))
    return JetSpectrum.from_pairs(pairs)


def compare_spectra(phi: HoloMap, spec: JetSpectrum) -> list[PairComparison]:
    """Classify, pair by pair, how the literal formula matches the Jordan splitting."""
    rows: list[PairComparison] = []
    for lam, k in spec.pairs:
        d = zero_order(phi, lam, k)
        value = _image(phi, lam)
        literal = (value, k // d)
        oracle = tuple(_split(value, k, d))
        if list(oracle) == [literal]:
            agreement = Agreement.MULTISET
        elif set(oracle) == {literal}:
            agreement = Agreement.SET_LEVEL
        else:
            agreement = Agreement.DISAGREE
        rows.append(PairComparison((lam, k), literal, oracle, d, agreement))
    return rows


def _series_mul(a: np.ndarray, b: np.ndarray, k: int) -> np.ndarray:
    return np.convolve(a, b)[:k]


def verify_jet_equivalence(
    g: SL2Elt,
    lam: complex,
    k: int,
    similarity: Optional[np.ndarray] = None,
) -> float:
    """
    Compare rho_a on a Jordan block with the k-jet prolongation of rho_1.

    With a = J_k(lam), x = e_k and the sections p_i(w) = (w - mu)^i,
    mu = M(lam), the matrix columns rho_a(g)(x p_i)(a) are compared with
    the Taylor coefficients at lam of m(w) (M(w) - mu)^i, where
    M(w) = (alpha w + beta) / (conj(beta) w + conj(alpha)) and
    m(w) = 1 / (conj(beta) w + conj(alpha)).

    Args:
        g: Element of SU(1,1).
        lam: Eigenvalue inside the unit disk.
        k: Block size.
        similarity: Optional change of basis T; the block becomes T a T^{-1}.

    Returns:
        Spectral norm of the difference of the two k x k matrices.
    """
    if abs(lam) >= 1.0:
        raise DomainError(f"Eigenvalue {lam:.6g} lies outside the unit disk")
    a = jordan_block(lam, k).array
    x = np.zeros(k, dtype=complex)
    x[-1] = 1.0
    transform = np.eye(k, dtype=complex) if similarity is None else np.asarray(similarity)
    a_basis = transform @ a @ np.linalg.inv(transform)
    x_basis = transform @ x

    mobius = HoloMap.rational([g.beta, g.alpha], [g.alpha.conjugate(), g.beta.conjugate()])
    multiplier = HoloMap.rational([1.0], [g.alpha.conjugate(), g.beta.conjugate()])
    mu = complex(mobius(lam))

    left = np.zeros((k, k), dtype=complex)
    for i in range(k):
        poly = (Polynomial([-mu, 1.0]) ** i).coef
        section = rho_a_section(g, VectorSeries.scalar_times(poly, x_basis))
        left[:, i] = scipy.linalg.solve(transform, section(a_basis))

    m_coeffs = taylor_coefficients(multiplier, k - 1, lam)
    shifted = taylor_coefficients(mobius, k - 1, lam)
    shifted[0] -= mu
    right = np.zeros((k, k), dtype=complex)
    power = np.zeros(k, dtype=complex)
    power[0] = 1.0
    for i in range(k):
        jet = _series_mul(m_coeffs, power, k)
        right[k - 1 - np.arange(k), i] = jet
        power = _series_mul(power, shifted, k)

    return float(np.linalg.norm(left - right, 2))

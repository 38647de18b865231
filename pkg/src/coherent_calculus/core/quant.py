"""
Weyl quantization of phase-space symbols on line grids.

Operators act on grid samples. Q is multiplication by x and P is -i hbar
times the spectral derivative with the Nyquist mode zeroed, so both are
Hermitian matrices. Operator norms are taken on the span of the first few
Hermite functions, where the grid resolves the canonical commutation
relation to machine precision.
"""

import itertools
import logging
import math
from enum import Enum
from typing import Optional

import numpy as np
import sympy
from scipy.linalg import eigh

from ..models.elements import HeisPoint, SympElt
from ..models.functions import GridFn, GridSpec
from ..models.phase_space import P_SYM, Q_SYM, LineOperator, PhaseSymbol
from .errors import DecompositionRequiredError, DomainError
from .groups import heis_auto
from .wavelets import hermite_functions, schrodinger_act

LOGGER = logging.getLogger(__name__)

# Windows are cut where exp(-v^T W v / 2) drops below exp(-KERNEL_DECAY).
KERNEL_DECAY = 50.0
GENERATOR_TOL = 1e-12
DEFAULT_PROBES = 8

X_SYM = sympy.Symbol("x", real=True)
HBAR_SYM = sympy.Symbol("hbar", positive=True)


class GeneratorKind(Enum):
    """One-parameter families the metaplectic operator is built for."""

    IDENTITY = "identity"
    ROTATION = "rotation"
    SCALING = "scaling"
    SHEAR = "shear"


def _check_hbar(hbar: float) -> None:
    if hbar <= 0.0:
        raise DomainError(f"Planck constant must be positive, got {hbar}")


def _check_resolution(grid: GridSpec, hbar: float) -> None:
    limit = 0.25 * math.sqrt(hbar)
    if grid.h > limit:
        LOGGER.warning(
            "Grid step %.4g exceeds sqrt(hbar)/4 = %.4g; low Hermite modes are under-resolved",
            grid.h,
            limit,
        )


def position_matrix(grid: GridSpec) -> np.ndarray:
    return np.diag(grid.points.astype(complex))


def momentum_matrix(grid: GridSpec, hbar: float) -> np.ndarray:
    """-i hbar d/dx as a dense spectral differentiation matrix."""
    n = grid.n
    k = 2.0 * np.pi * np.fft.fftfreq(n, grid.h)
    k[n // 2] = 0.0
    spectrum = np.fft.fft(np.eye(n), axis=0)
    derivative = np.fft.ifft(1j * k[:, np.newaxis] * spectrum, axis=0).real
    derivative = 0.5 * (derivative - derivative.T)
    return -1j * hbar * derivative


def _symmetrized(m: int, n: int, p_mat: np.ndarray, q_diag: np.ndarray) -> np.ndarray:
    """Average of all words with m copies of P and n copies of Q."""
    total = m + n
    size = p_mat.shape[0]
    if total == 0:
        return np.eye(size, dtype=complex)
    acc = np.zeros((size, size), dtype=complex)
    for positions in itertools.combinations(range(total), m):
        word: Optional[np.ndarray] = None
        for slot in range(total):
            if word is None:
                word = p_mat.copy() if slot in positions else np.diag(q_diag)
            elif slot in positions:
                word = word @ p_mat
            else:
                word = word * q_diag[np.newaxis, :]
        acc += word
    return acc / math.comb(total, m)


def _windowed_kernel(sym: PhaseSymbol, hbar: float, grid: GridSpec) -> np.ndarray:
    """
    Weyl kernel h/(2 pi hbar) int a(p, (x+y)/2) exp(i p (x-y)/hbar) dp by trapezoid in p.

    The p-range covers the window down to exp(-KERNEL_DECAY); the p-step
    keeps the aliased copies of the kernel off the grid's x - y range.
    """
    spectrum = np.linalg.eigvalsh(sym.window)
    reach = math.sqrt(2.0 * KERNEL_DECAY / spectrum[0])
    kernel_reach = hbar * math.sqrt(2.0 * KERNEL_DECAY * spectrum[-1])
    dp = 2.0 * math.pi * hbar / (2.0 * grid.extent + kernel_reach)
    count = 2 * math.ceil(reach / dp) + 1
    momenta = dp * (np.arange(count) - count // 2)
    LOGGER.debug("Weyl kernel: %d momentum nodes, step %.4g", count, dp)

    x = grid.points
    mid = 0.5 * (x[:, np.newaxis] + x[np.newaxis, :])
    diff = x[:, np.newaxis] - x[np.newaxis, :]
    kernel = np.zeros((grid.n, grid.n), dtype=complex)
    for p in momenta:
        kernel += sym.evaluate(np.full_like(mid, p), mid) * np.exp(1j * p * diff / hbar)
    return kernel * dp * grid.h / (2.0 * math.pi * hbar)


def weyl_quantize(sym: PhaseSymbol, hbar: float, grid: GridSpec) -> LineOperator:
    """
    Weyl quantization of a polynomial or Gaussian-windowed symbol.

    Polynomials map monomial by monomial to the symmetrized words in P and
    Q. Windowed symbols go through the Weyl kernel with quadrature in p.

    Args:
        sym: The symbol.
        hbar: Positive Planck constant.
        grid: Line grid the operator acts on.

    Returns:
        The quantized operator.

    Raises:
        DomainError: If hbar <= 0.
    """
    _check_hbar(hbar)
    _check_resolution(grid, hbar)
    if sym.window is not None:
        return LineOperator(_windowed_kernel(sym, hbar, grid), grid, hbar)
    p_mat = momentum_matrix(grid, hbar)
    q_diag = grid.points.astype(complex)
    matrix = np.zeros((grid.n, grid.n), dtype=complex)
    for (m, n), c in sym.coeffs.items():
        matrix += c * _symmetrized(m, n, p_mat, q_diag)
    return LineOperator(matrix, grid, hbar)


def hermite_probes(grid: GridSpec, hbar: float, count: int = DEFAULT_PROBES) -> np.ndarray:
    """Orthonormal columns spanning the first ``count`` Hermite functions of width sqrt(hbar)."""
    values = hermite_functions(grid.points / math.sqrt(hbar), count).T
    columns = values * hbar**-0.25 * math.sqrt(grid.h)
    q, _ = np.linalg.qr(columns.astype(complex))
    return q


def probe_norm(matrix: np.ndarray, probes: np.ndarray) -> float:
    """Spectral norm of the operator compressed to the probe span."""
    return float(np.linalg.norm(probes.conj().T @ matrix @ probes, 2))


def relative_probe_defect(defect: np.ndarray, reference: np.ndarray, probes: np.ndarray) -> float:
    scale = probe_norm(reference, probes)
    value = probe_norm(defect, probes)
    return value / scale if scale > 0.0 else value


def poisson_bracket(f1: PhaseSymbol, f2: PhaseSymbol) -> PhaseSymbol:
    """{f1, f2} = d_q f1 d_p f2 - d_p f1 d_q f2, so that {p, q} = -1.

    Raises:
        DomainError: If either symbol carries a window.
    """
    if f1.window is not None or f2.window is not None:
        raise DomainError("Poisson brackets are taken of polynomial symbols only")
    e1, e2 = f1.to_sympy(), f2.to_sympy()
    bracket = sympy.diff(e1, Q_SYM) * sympy.diff(e2, P_SYM) - sympy.diff(
        e1, P_SYM
    ) * sympy.diff(e2, Q_SYM)
    return PhaseSymbol.from_sympy(bracket, degree_cap=max(f1.degree + f2.degree, 1))


def compose_linear(sym: PhaseSymbol, g: SympElt) -> PhaseSymbol:
    """The symbol (p, q) -> sym(a p + b q, c p + d q); windows transform as M^T W M."""
    expr = sym.to_sympy().subs(
        {P_SYM: g.a * P_SYM + g.b * Q_SYM, Q_SYM: g.c * P_SYM + g.d * Q_SYM},
        simultaneous=True,
    )
    window = None
    if sym.window is not None:
        m = g.as_matrix()
        window = m.T @ sym.window @ m
        window = 0.5 * (window + window.T)
    return PhaseSymbol.from_sympy(expr, window, sym.degree_cap)


def classify_generator(g: SympElt) -> tuple[GeneratorKind, float]:
    """
    Identify the one-parameter family of g and its parameter.

    Raises:
        DecompositionRequiredError: If g is not a rotation, a positive
            scaling or an upper shear.
    """
    a, b, c, d = g.a, g.b, g.c, g.d
    tol = GENERATOR_TOL
    if np.allclose(g.as_matrix(), np.eye(2), rtol=0.0, atol=tol):
        return GeneratorKind.IDENTITY, 0.0
    if abs(a - d) <= tol and abs(b + c) <= tol and abs(a * a + c * c - 1.0) <= tol:
        return GeneratorKind.ROTATION, math.atan2(c, a)
    if abs(b) <= tol and abs(c) <= tol and a > 0.0:
        return GeneratorKind.SCALING, a
    if abs(a - 1.0) <= tol and abs(d - 1.0) <= tol and abs(c) <= tol:
        return GeneratorKind.SHEAR, b
    raise DecompositionRequiredError(
        f"[[{a:.4g}, {b:.4g}], [{c:.4g}, {d:.4g}]] is not a rotation, scaling or shear;"
        " decompose it into generators first"
    )


def _unitary_flow(generator: np.ndarray, time: float, hbar: float) -> np.ndarray:
    """exp(-i time G / hbar) through the eigendecomposition of the Hermitian part of G."""
    values, vectors = eigh(0.5 * (generator + generator.conj().T))
    return (vectors * np.exp(-1j * time * values / hbar)) @ vectors.conj().T


def metaplectic_op(g: SympElt, hbar: float, grid: GridSpec) -> LineOperator:
    """
    Unitary U(g) with U W(a) U^{-1} = W(a o g^{-1}) for generator elements.

    Rotations flow along W((p^2 + q^2)/2), scalings along W(-pq) for time
    ln t, and shears multiply by the chirp exp(i c x^2 / (2 hbar)). Phases
    follow from continuity at the identity.

    Raises:
        DomainError: If hbar <= 0.
        DecompositionRequiredError: If g is not a generator element.
    """
    _check_hbar(hbar)
    kind, param = classify_generator(g)
    LOGGER.debug("Metaplectic operator: %s(%.6g)", kind.value, param)
    if kind is GeneratorKind.IDENTITY:
        matrix = np.eye(grid.n, dtype=complex)
    elif kind is GeneratorKind.ROTATION:
        oscillator = PhaseSymbol({(2, 0): 0.5, (0, 2): 0.5})
        matrix = _unitary_flow(weyl_quantize(oscillator, hbar, grid).matrix, param, hbar)
    elif kind is GeneratorKind.SCALING:
        dilation = PhaseSymbol({(1, 1): -1.0})
        matrix = _unitary_flow(
            weyl_quantize(dilation, hbar, grid).matrix, math.log(param), hbar
        )
    else:
        matrix = np.diag(np.exp(1j * param * grid.points**2 / (2.0 * hbar)))
    return LineOperator(matrix, grid, hbar)


def covariance_defect(
    g: SympElt,
    sym: PhaseSymbol,
    hbar: float,
    grid: GridSpec,
    probes: int = DEFAULT_PROBES,
) -> float:
    """
    Relative defect of W(sym o g^{-1}) against U(g) W(sym) U(g)^{-1}.

    Raises:
        DecompositionRequiredError: If g is not a generator element.
    """
    u = metaplectic_op(g, hbar, grid).matrix
    base = weyl_quantize(sym, hbar, grid).matrix
    moved = weyl_quantize(compose_linear(sym, g.inverse()), hbar, grid).matrix
    conjugated = u @ base @ u.conj().T
    return relative_probe_defect(moved - conjugated, base, hermite_probes(grid, hbar, probes))


def dual_element(g: SympElt, hbar: float) -> SympElt:
    """
    The element g' with U(g) sigma(h) U(g)^{-1} = sigma(alpha(g') h).

    sigma(0, u, v) is the Weyl quantization of exp(-i sqrt(2 hbar) (u p / hbar + v q)),
    so (u, v) transforms by D^{-1} g^{-T} D with D = diag(1/hbar, 1).
    """
    return SympElt(g.d, -hbar * g.c, -g.b / hbar, g.a)


def _sigma_columns(h: HeisPoint, columns: np.ndarray, grid: GridSpec, hbar: float) -> np.ndarray:
    return np.stack(
        [
            schrodinger_act(h, GridFn(columns[:, j], grid.x0, grid.h), hbar).samples
            for j in range(columns.shape[1])
        ],
        axis=1,
    )


def heisenberg_conjugation_defect(
    g: SympElt,
    h: HeisPoint,
    hbar: float,
    grid: GridSpec,
    probes: int = DEFAULT_PROBES,
) -> float:
    """Probe-space norm of U(g) sigma(h) U(g)^{-1} - sigma(alpha(g') h), g' the dual element."""
    u = metaplectic_op(g, hbar, grid).matrix
    v = hermite_probes(grid, hbar, probes)
    lhs = u @ _sigma_columns(h, u.conj().T @ v, grid, hbar)
    rhs = _sigma_columns(heis_auto(dual_element(g, hbar), h), v, grid, hbar)
    return float(np.linalg.norm(v.conj().T @ (lhs - rhs), 2))


def dirac_rule_defect(
    f1: PhaseSymbol,
    f2: PhaseSymbol,
    hbar: float,
    grid: GridSpec,
    probes: int = 4,
) -> tuple[float, float]:
    """
    Relative defects of the product and bracket rules under Weyl quantization.

    product_defect compares W(f1 f2) with the symmetric product of W(f1) and
    W(f2); bracket_defect compares W({f1, f2}) with (1/(i hbar)) [W(f1), W(f2)].

    Returns:
        Tuple of (product_defect, bracket_defect).

    Raises:
        DomainError: If a symbol carries a window or hbar <= 0.
    """
    if f1.window is not None or f2.window is not None:
        raise DomainError("Dirac-rule defects take polynomial symbols only")
    cap = max(f1.degree + f2.degree, 1)
    w1 = weyl_quantize(f1, hbar, grid).matrix
    w2 = weyl_quantize(f2, hbar, grid).matrix
    product = weyl_quantize(
        PhaseSymbol.from_sympy(f1.to_sympy() * f2.to_sympy(), degree_cap=cap), hbar, grid
    ).matrix
    bracket = weyl_quantize(poisson_bracket(f1, f2), hbar, grid).matrix
    jordan = 0.5 * (w1 @ w2 + w2 @ w1)
    commutator = (w1 @ w2 - w2 @ w1) / (1j * hbar)
    v = hermite_probes(grid, hbar, probes)
    product_defect = relative_probe_defect(product - jordan, product, v)
    bracket_defect = relative_probe_defect(bracket - commutator, bracket, v)
    LOGGER.info(
        "Dirac rule for degrees (%d, %d): product %.3e, bracket %.3e",
        f1.degree,
        f2.degree,
        product_defect,
        bracket_defect,
    )
    return product_defect, bracket_defect


def _exact(c: complex) -> sympy.Expr:
    return sympy.nsimplify(c.real, rational=True) + sympy.I * sympy.nsimplify(
        c.imag, rational=True
    )


def symbolic_weyl_apply(sym: PhaseSymbol, psi: sympy.Expr) -> sympy.Expr:
    """Apply the symmetrized words of a polynomial symbol to an expression in x."""
    result = sympy.Integer(0)
    for (m, n), c in sym.coeffs.items():
        total = m + n
        acc = sympy.Integer(0)
        for positions in itertools.combinations(range(total), m):
            value = psi
            for slot in reversed(range(total)):
                if slot in positions:
                    value = -sympy.I * HBAR_SYM * sympy.diff(value, X_SYM)
                else:
                    value = X_SYM * value
            acc += value
        result += _exact(c) * acc / math.comb(total, m)
    return sympy.expand(result)


def symbolic_bracket_residual(f1: PhaseSymbol, f2: PhaseSymbol) -> sympy.Expr:
    """
    Exact W({f1, f2}) - (1/(i hbar)) [W(f1), W(f2)] acting on a generic psi(x),
    divided by psi(x). A constant result means the residual is a multiple of
    the identity.
    """
    psi = sympy.Function("psi")(X_SYM)
    bracket = symbolic_weyl_apply(poisson_bracket(f1, f2), psi)
    forward = symbolic_weyl_apply(f1, symbolic_weyl_apply(f2, psi))
    backward = symbolic_weyl_apply(f2, symbolic_weyl_apply(f1, psi))
    residual = sympy.expand(bracket - (forward - backward) / (sympy.I * HBAR_SYM))
    return sympy.simplify(residual / psi)

"""Heisenberg group, SU(1,1) and Cl(1,1) arithmetic with their Moebius actions.

Both Moebius actions evaluate the inverse element on the point, so
``mobius_disk(g, mobius_disk(h, z)) == mobius_disk(h * g, z)``.
"""

import logging
import math
from typing import Tuple

from ..models.elements import (
    Cliff11,
    Cliff11Matrix,
    DiskLike,
    DiskPoint,
    HeisPoint,
    HypPoint,
    SL2Elt,
    SympElt,
    as_disk_point,
)
from .errors import DomainError, LightConeSingularityError, SingularityError

LOGGER = logging.getLogger(__name__)

SINGULAR_TOL = 1e-14


def heis_mul(g: HeisPoint, h: HeisPoint) -> HeisPoint:
    """Group law (s, z)(s', z') = (s + s' + Im(conj(z) z') / 2, z + z')."""
    twist = 0.5 * (g.x * h.y - g.y * h.x)
    return HeisPoint(g.s + h.s + twist, g.x + h.x, g.y + h.y)


def heis_inv(g: HeisPoint) -> HeisPoint:
    """Inverse (-s, -z); the twist term vanishes for collinear z."""
    return HeisPoint(-g.s, -g.x, -g.y)


def sl2_mul(g: SL2Elt, h: SL2Elt) -> SL2Elt:
    return g * h


def sl2_inv(g: SL2Elt) -> SL2Elt:
    return g.inverse()


def h_psi(psi: float) -> SL2Elt:
    return SL2Elt.rotation(psi)


def sl2_section(a: DiskLike) -> SL2Elt:
    """
    Coset representative s(a) = (1 - |a|^2)^{-1/2} [[1, a], [conj(a), 1]].

    Args:
        a: Point of the unit disk.

    Returns:
        The section element.

    Raises:
        DomainError: If |a| >= 1.
    """
    z = as_disk_point(a)
    scale = 1.0 / math.sqrt(1.0 - abs(z) ** 2)
    return SL2Elt(scale, scale * z)


def sl2_decompose(g: SL2Elt) -> Tuple[DiskPoint, float]:
    """
    Split g = s(a) h_psi into its disk point and rotation angle.

    psi is the principal value of arg(alpha), in (-pi, pi].

    Args:
        g: Element of SU(1,1).

    Returns:
        Tuple of (a, psi).
    """
    a = g.beta / g.alpha.conjugate()
    psi = math.atan2(g.alpha.imag, g.alpha.real)
    if psi == -math.pi:
        psi = math.pi
    return DiskPoint(a), psi


def mobius_disk(g: SL2Elt, z: DiskLike) -> DiskPoint:
    """
    Fraction-linear action of SU(1,1) on the unit disk.

    With g^{-1} = [[A, B], [conj(B), conj(A)]] the result is
    (A z + B) / (conj(B) z + conj(A)).

    Raises:
        DomainError: If |z| >= 1.
        SingularityError: If the denominator falls below 1e-14.
    """
    w = as_disk_point(z)
    inv = g.inverse()
    den = inv.beta.conjugate() * w + inv.alpha.conjugate()
    if abs(den) < SINGULAR_TOL:
        raise SingularityError(f"Moebius denominator {abs(den):.3e} vanishes")
    return DiskPoint((inv.alpha * w + inv.beta) / den)


def cliff11_mul(u: Cliff11, v: Cliff11) -> Cliff11:
    """Product in Cl(1,1) with e1^2 = -1, e2^2 = +1, e1e2 = -e2e1."""
    a0, a1, a2, a3 = u.c0, u.c1, u.c2, u.c12
    b0, b1, b2, b3 = v.c0, v.c1, v.c2, v.c12
    return Cliff11(
        a0 * b0 - a1 * b1 + a2 * b2 + a3 * b3,
        a0 * b1 + a1 * b0 - a2 * b3 + a3 * b2,
        a0 * b2 + a2 * b0 - a1 * b3 + a3 * b1,
        a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
    )


def cliff11_conj(u: Cliff11) -> Cliff11:
    """Clifford conjugation: negates every non-scalar component."""
    return Cliff11(u.c0, -u.c1, -u.c2, -u.c12)


def cliff11_norm(u: Cliff11) -> float:
    """The multiplicative quadratic norm u * conj(u) = c0^2 + c1^2 - c2^2 - c12^2."""
    return u.c0**2 + u.c1**2 - u.c2**2 - u.c12**2


def cliff11_inv(u: Cliff11) -> Cliff11:
    """
    Inverse conj(u) / N(u).

    Raises:
        LightConeSingularityError: If the Clifford norm vanishes.
    """
    norm = cliff11_norm(u)
    if abs(norm) < SINGULAR_TOL:
        raise LightConeSingularityError(
            f"Clifford norm {norm:.3e} vanishes; element lies on the light cone"
        )
    return Cliff11.from_array(cliff11_conj(u).as_array() / norm)


def hyp_section(u: HypPoint) -> Cliff11Matrix:
    """
    Hyperbolic coset representative with a = (1 + u^2)^{-1/2}, b = u a.

    Raises:
        DomainError: If 1 + u^2 <= 0.
    """
    q = u.one_plus_square()
    if q <= 0.0:
        raise DomainError(f"1 + u^2 = {q:.6g} must be positive for a section")
    scale = 1.0 / math.sqrt(q)
    return Cliff11Matrix(
        Cliff11(c0=scale), Cliff11(c1=scale * u.u1, c2=scale * u.u2)
    )


def hyp_rotation(tau: float) -> Cliff11Matrix:
    """a = exp(e1e2 tau) = cosh(tau) + e1e2 sinh(tau), b = 0."""
    return Cliff11Matrix(Cliff11(c0=math.cosh(tau), c12=math.sinh(tau)), Cliff11())


def hyp_determinant(g: Cliff11Matrix) -> float:
    """The scalar part of conj(a) a - conj(b) b, which must equal 1."""
    return (
        cliff11_mul(cliff11_conj(g.a), g.a) - cliff11_mul(cliff11_conj(g.b), g.b)
    ).c0


def mobius_hyp(g: Cliff11Matrix, u: HypPoint) -> HypPoint:
    """
    Hyperbolic Moebius map u -> (a u + b)(-b u + a)^{-1} on R^{1,1}.

    Args:
        g: Clifford matrix with conj(a) a - conj(b) b = 1.
        u: Vector of R^{1,1}.

    Returns:
        The image vector.

    Raises:
        DomainError: If the determinant condition fails.
        LightConeSingularityError: If -b u + a has zero Clifford norm.
    """
    det = hyp_determinant(g)
    if abs(det - 1.0) > 1e-12:
        raise DomainError(f"Clifford matrix determinant {det!r} differs from 1")
    vec = u.as_cliff()
    num = cliff11_mul(g.a, vec) + g.b
    den = cliff11_mul(-g.b, vec) + g.a
    image = cliff11_mul(num, cliff11_inv(den))
    residual = max(abs(image.c0), abs(image.c12))
    if residual > 1e-9 * max(1.0, abs(image.c1), abs(image.c2)):
        LOGGER.warning("Hyperbolic image has non-vector part %.3e", residual)
    return HypPoint(image.c1, image.c2)


def is_hyperbolic_unit(u: HypPoint) -> bool:
    """A vector lies in the hyperbolic unit disk when 1 + u^2 > 0."""
    return u.one_plus_square() > 0.0


def symplecto_act(g: SympElt, pq: Tuple[float, float]) -> Tuple[float, float]:
    """Linear action (p, q) -> (a p + b q, c p + d q)."""
    p, q = pq
    return g.a * p + g.b * q, g.c * p + g.d * q


def heis_auto(g: SympElt, h: HeisPoint) -> HeisPoint:
    """Automorphism (s, x, y) -> (s, a x + b y, c x + d y); the centre is fixed."""
    x, y = symplecto_act(g, (h.x, h.y))
    return HeisPoint(h.s, x, y)

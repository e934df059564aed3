"""
harmconv - Closed-form dilatations of f0 * f

For a sheared map f with dilatation omega and slant gamma, the dilatation
of f0 * f is

    -z e^{-i gamma} (omega^2 + e^{2i gamma}[omega - z omega'/2] + e^{i gamma} omega'/2)
                  / (1 + e^{-2i gamma}[omega - z omega'/2] + e^{-i gamma} z^2 omega'/2)

Writing omega = p/q, both brackets are multiplied through by q^2 so the
result is assembled over polynomial coefficients. Shared roots of the
numerator and denominator are divided out afterwards.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateMoebius, DilatationNotSchlicht
from .polyrat import Polynomial, RationalMap, cancel_common_roots, poly_roots, poly_star

logger = logging.getLogger('harmconv')


@dataclass(frozen=True)
class MoebiusFactorization:
    """omega~ = -z e^{-i(gamma - phi)} (z+A)(z+B) / ((1+conj(A) z)(1+conj(B) z))."""

    phi: float
    A: complex
    B: complex
    t_coeffs: Polynomial

    @property
    def ab_modulus(self) -> float:
        return abs(self.A * self.B)


@dataclass(frozen=True)
class MoebiusResult:
    map: RationalMap
    fact: MoebiusFactorization


def _reduce(num: Polynomial, den: Polynomial, unit: complex, power: int) -> RationalMap:
    """unit z^power num/den with z factors stripped and common roots cancelled."""
    if num.is_zero():
        return RationalMap.zero()
    stripped = RationalMap.from_fraction(num.shift(power), den, unit=unit)
    reduced_num, reduced_den, cancelled = cancel_common_roots(stripped.num, stripped.den)
    if cancelled:
        logger.debug(f'Cancelled {cancelled} common root(s) between numerator and denominator')
    return RationalMap(num=reduced_num, den=reduced_den, power=stripped.power, unit=unit)


def _cleared_parts(omega: RationalMap):
    """(p, q, W, bracket) with omega = p/q, W = p'q - pq' and bracket = pq - zW/2."""
    p, q = omega.expanded()
    w = p.derivative() * q - p * q.derivative()
    z = Polynomial([0.0, 1.0])
    bracket = p * q - (z * w).scale(0.5)
    return p, q, w, bracket


def tilde_omega_general(gamma: float, omega: RationalMap) -> RationalMap:
    """
    Dilatation of f0 * f for a sheared f with slant ``gamma`` and dilatation ``omega``.

    Raises:
        DegenerateDenominator: if the assembled denominator vanishes identically
    """
    rot = np.exp(1j * gamma)
    p, q, w, bracket = _cleared_parts(omega)
    z_sq = Polynomial([0.0, 0.0, 1.0])

    num = p * p + bracket.scale(rot ** 2) + w.scale(rot / 2)
    den = q * q + bracket.scale(rot ** -2) + (z_sq * w).scale(1 / (2 * rot))

    result = _reduce(num, den, unit=-1 / rot, power=1)
    logger.info(
        f'Dilatation assembled: gamma={gamma:.6f} numerator degree {result.num.degree}, '
        f'denominator degree {result.den.degree}, power {result.power}'
    )
    return result


def tilde_omega_left_halfplane(omega: RationalMap) -> RationalMap:
    """The gamma = pi case: z(omega^2 + [omega - z omega'/2] - omega'/2) / (1 + [omega - z omega'/2] - z^2 omega'/2)."""
    p, q, w, bracket = _cleared_parts(omega)
    z_sq = Polynomial([0.0, 0.0, 1.0])

    num = p * p + bracket - w.scale(0.5)
    den = q * q + bracket - (z_sq * w).scale(0.5)
    return _reduce(num, den, unit=1.0, power=1)


def monomial_numerator_factor(gamma: float, theta: float, n: int) -> Polynomial:
    """z^{n+1} + e^{(2 gamma - theta)i}(1 - n/2) z + (n/2) e^{(gamma - theta)i}."""
    coeffs = np.zeros(n + 2, dtype=np.complex128)
    coeffs[n + 1] = 1.0
    coeffs[1] += np.exp(1j * (2 * gamma - theta)) * (1 - n / 2)
    coeffs[0] = (n / 2) * np.exp(1j * (gamma - theta))
    return Polynomial(coeffs)


def tilde_omega_monomial(gamma: float, theta: float, n: int) -> RationalMap:
    """
    Dilatation of f0 * f for omega = e^{i theta} z^n.

    The denominator is the star adjoint of the numerator factor, so the
    result is unimodular on the unit circle.
    """
    if n < 1:
        raise DilatationNotSchlicht(f'Monomial dilatation needs n >= 1, got {n}')
    factor = monomial_numerator_factor(gamma, theta, n)
    unit = -np.exp(1j * (2 * theta - gamma))
    return _reduce(factor, poly_star(factor), unit=unit, power=n)


def tilde_omega_moebius(gamma: float, a: complex) -> MoebiusResult:
    """
    Dilatation of f0 * f for omega = (z + a)/(1 + conj(a) z), in factored form.

    Raises:
        DilatationNotSchlicht: if |a| >= 1
        DegenerateMoebius: if |1 + conj(a) e^{2i gamma}| < 1e-12
    """
    a = complex(a)
    if abs(a) >= 1:
        raise DilatationNotSchlicht(f'Moebius parameter |a| = {abs(a):.6g} must be below 1')

    rot = np.exp(1j * gamma)
    scale = 1 + np.conj(a) * rot ** 2
    if abs(scale) < 1e-12:
        raise DegenerateMoebius('1 + conj(a) exp(2i gamma) vanishes')

    mod_sq = abs(a) ** 2
    t1 = (4 * a + rot ** 2 * (1 + 3 * mod_sq)) / (2 * scale)
    t0 = (2 * a ** 2 + 2 * a * rot ** 2 + rot * (1 - mod_sq)) / (2 * scale)
    t = Polynomial([t0, t1, 1.0])

    roots = poly_roots(t).roots
    phi = float(np.angle(scale / np.conj(scale)))
    fact = MoebiusFactorization(phi=phi, A=-roots[0], B=-roots[1], t_coeffs=t)

    unit = -np.exp(-1j * (gamma - phi))
    result = RationalMap(num=t, den=poly_star(t), power=1, unit=unit)
    return MoebiusResult(map=result, fact=fact)

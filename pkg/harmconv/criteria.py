"""
harmconv - Univalence and convexity criteria

Scalar criteria deciding when f0 * f is univalent and convex in the
direction -gamma:

- monomial dilatations e^{i theta} z^n (n = 1, 2) via Cohn reduction;
- Moebius dilatations (z + a)/(1 + conj(a) z) via the region
  |a|^2 (cos^2(theta - gamma/2) + 9 sin^2(theta - gamma/2)) <= 1,
  together with the quantities u(a), v(a), z0 used to locate the zeros of
  the factor t(z) = (z + A)(z + B);
- the special-angle corollaries;
- the Blaschke counterexample for n >= 3.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .dilatation import monomial_numerator_factor, tilde_omega_moebius, tilde_omega_monomial
from .exceptions import BoundaryCase, DegenerateMoebius, HarmconvError, WitnessNotFound
from .polyrat import (
    Polynomial,
    RationalMap,
    cohn_reduce,
    poly_roots,
    poly_star,
    zeros_in_closed_disk,
)

logger = logging.getLogger('harmconv')

TWO_PI = 2 * math.pi
ANGLE_TOL = 1e-12
COND_TOL = 1e-10
Z0_TOL = 1e-9


def _angle_is(gamma: float, target: float) -> bool:
    diff = (gamma - target) % TWO_PI
    return min(diff, TWO_PI - diff) <= ANGLE_TOL


@dataclass(frozen=True)
class MoebiusParams:
    """Parameters of the Moebius dilatation; theta = arg(a), and 0 when a = 0."""

    a: complex
    gamma: float
    theta: float = field(init=False)

    def __post_init__(self):
        a = complex(self.a)
        if abs(a) >= 1:
            raise HarmconvError(f'Moebius parameter |a| = {abs(a):.6g} must be below 1', 'invalid_parameter')
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'gamma', float(self.gamma) % TWO_PI)
        object.__setattr__(self, 'theta', float(np.angle(a)) if a != 0 else 0.0)

    @classmethod
    def from_polar(cls, modulus: float, theta: float, gamma: float) -> 'MoebiusParams':
        return cls(a=modulus * np.exp(1j * theta), gamma=gamma)

    @property
    def modulus(self) -> float:
        return abs(self.a)


@dataclass(frozen=True)
class CorollaryFlags:
    c31: bool
    c32: bool
    c33: bool

    def any(self) -> bool:
        return self.c31 or self.c32 or self.c33


@dataclass(frozen=True)
class CriterionReport:
    a: complex
    gamma: float
    theta: float
    v: float
    u: complex
    z0_closed: Optional[complex]
    z0_roots: Optional[complex]
    A: complex
    B: complex
    phi: float
    AB_modulus: float
    cond_10a: bool
    cond_11: bool
    theorem2_applicable: bool
    corollary_flags: CorollaryFlags
    b1_warning: bool
    roots_in_closed_disk: bool
    root_strictly_inside: bool


@dataclass(frozen=True)
class Theorem1Result:
    applicable: bool
    witness: Optional[complex]
    all_roots_in_disk: bool
    sup_boundary: float
    omega_tilde: RationalMap


@dataclass(frozen=True)
class BlaschkeWitness:
    root_moduli_product: float
    witness: complex
    witness_modulus_of_omega_tilde: float
    omega_tilde: RationalMap


# ============================================
# Moebius-case scalars
# ============================================

def v_value(p: MoebiusParams) -> float:
    r, th, g = p.modulus, p.theta, p.gamma
    return (
        4 * r ** 2 * math.cos(2 * th - g)
        + 4 * r * math.cos(th + g)
        - 8 * r * math.cos(th - 2 * g)
        - 3
        - 5 * r ** 2
    )


def v_value_completed_square(p: MoebiusParams) -> float:
    r, half = p.modulus, p.theta - p.gamma / 2
    return (
        -(r * math.cos(half) + 2 * math.cos(1.5 * p.gamma)) ** 2
        - (3 * r * math.sin(half) + 2 * math.sin(1.5 * p.gamma)) ** 2
        + 1
    )


def u_value(p: MoebiusParams) -> complex:
    a, g = p.a, p.gamma
    return complex(
        6 * a ** 2 * np.exp(-1j * g)
        + 8 * a * np.exp(1j * g)
        - 4 * np.conj(a) * np.exp(2j * g)
        - 3 * abs(a) ** 2
        + 2 * np.exp(3j * g)
        - 1
    )


def _ellipse_form(p: MoebiusParams) -> float:
    half = p.theta - p.gamma / 2
    return p.modulus ** 2 * (math.cos(half) ** 2 + 9 * math.sin(half) ** 2)


def cond_10a(p: MoebiusParams) -> bool:
    """|a|^2 (cos^2(theta - gamma/2) + 9 sin^2(theta - gamma/2)) <= 1, up to 1e-12."""
    return _ellipse_form(p) <= 1 + 1e-12


def cond_11(p: MoebiusParams) -> bool:
    """The equality locus |AB| = 1."""
    half = p.theta - p.gamma / 2
    first = p.modulus * math.cos(half) + math.cos(1.5 * p.gamma)
    second = 3 * p.modulus * math.sin(half) + math.sin(1.5 * p.gamma)
    return abs(first) <= COND_TOL and abs(second) <= COND_TOL


def ab_modulus(p: MoebiusParams) -> float:
    """
    |AB| for the factor t(z) = (z + A)(z + B).

    Raises:
        DegenerateMoebius: if |1 + conj(a) e^{2i gamma}| <= 1e-12
    """
    a, rot = p.a, np.exp(1j * p.gamma)
    scale = 1 + np.conj(a) * rot ** 2
    if abs(scale) <= 1e-12:
        raise DegenerateMoebius('1 + conj(a) exp(2i gamma) vanishes')
    product = (2 * a ** 2 + 2 * a * rot ** 2 + rot * (1 - abs(a) ** 2)) / (2 * scale)
    return float(abs(product))


def z0_closed(p: MoebiusParams) -> complex:
    """
    e^{-i gamma} u(a)/v(a).

    Raises:
        BoundaryCase: if |v(a)| <= 1e-12
    """
    v = v_value(p)
    if abs(v) <= 1e-12:
        raise BoundaryCase(f'v(a) = {v:.3e} lies on the |AB| = 1 locus')
    return complex(np.exp(-1j * p.gamma) * u_value(p) / v)


def z0_from_roots(A: complex, B: complex) -> complex:
    """
    (A(|B|^2 - 1) + B(|A|^2 - 1)) / (1 - |AB|^2), the zero of the Cohn-reduced factor.

    Raises:
        BoundaryCase: if |1 - |AB|^2| <= 1e-12
    """
    denom = 1 - abs(A * B) ** 2
    if abs(denom) <= 1e-12:
        raise BoundaryCase('|AB| = 1, the reduced factor has no zero')
    return complex((A * (abs(B) ** 2 - 1) + B * (abs(A) ** 2 - 1)) / denom)


def z0_agreement_tolerance(v: float, z0: complex) -> float:
    """
    Allowed gap between z0_closed and z0_from_roots.

    Both routes divide by a quantity that vanishes with v (1 - |AB|^2 on the
    roots side), so |z0| grows like 1/|v| and root-finding error in A, B is
    amplified by another 1/|v|. The bound is 1e-9 max(1, |z0|) for |v| >= 1
    and widens by 1/|v| inside the band |v| < 1.
    """
    return Z0_TOL * max(1.0, abs(z0)) / min(1.0, max(abs(v), 1e-300))


def factorization_residual(p: MoebiusParams) -> float:
    """Difference between |u|^2 - |v|^2 and its factored form."""
    half = p.theta - p.gamma / 2
    lhs = abs(u_value(p)) ** 2 - v_value(p) ** 2
    rhs = 8 * (p.modulus * math.cos(half) + math.cos(1.5 * p.gamma)) ** 2 * (_ellipse_form(p) - 1)
    return abs(lhs - rhs)


def claim_a_identity_residual(A: complex, B: complex) -> float:
    """
    Difference of the two sides of
    |A(|B|^2-1) + B(|A|^2-1)|^2 - (1-|AB|^2)^2 = -(1-|A|^2)(1-|B|^2)|1 - A conj(B)|^2.
    """
    ma, mb = abs(A) ** 2, abs(B) ** 2
    lhs = abs(A * (mb - 1) + B * (ma - 1)) ** 2 - (1 - ma * mb) ** 2
    rhs = -(1 - ma) * (1 - mb) * abs(1 - A * np.conj(B)) ** 2
    return float(abs(lhs - rhs))


def blaschke_sup_on_circle(factor: Polynomial, samples: int = 4096) -> float:
    """
    Max over the unit circle of |factor| / |factor*|.

    Unit and monomial prefactors of a monomial dilatation are unimodular on
    the circle, so this is sup |omega~| there. Evaluating the quotient
    pointwise keeps roots close to the circle from showing up as poles.
    Samples where both sides underflow are skipped.
    """
    z = np.exp(2j * np.pi * np.arange(samples) / samples)
    top = np.abs(factor(z))
    bottom = np.abs(poly_star(factor)(z))
    usable = bottom > 1e-300
    if not np.any(usable):
        return float('nan')
    return float(np.max(top[usable] / bottom[usable]))


# ============================================
# Theorem checks
# ============================================

def theorem1_check(gamma: float, theta: float, n: int) -> Theorem1Result:
    """
    Monomial criterion for omega = e^{i theta} z^n.

    Applicable for n = 1, 2. For n = 1 the witness is the zero of the
    Cohn-reduced numerator factor.
    """
    if n < 1:
        raise HarmconvError(f'Monomial exponent must be >= 1, got {n}', 'invalid_parameter')

    applicable = n in (1, 2)
    factor = monomial_numerator_factor(gamma, theta, n)
    all_roots_in_disk = zeros_in_closed_disk(factor).all_inside
    omega_tilde = tilde_omega_monomial(gamma, theta, n)

    witness = None
    if n == 1:
        reduced = cohn_reduce(factor)
        witness = complex(-reduced.coeffs[0] / reduced.coeffs[1])
        if abs(witness) > 1 + 1e-12:
            logger.warning(f'Cohn witness {witness:.6g} lies outside the closed disk')

    sup_boundary = blaschke_sup_on_circle(factor)
    if applicable and sup_boundary > 1 + 1e-9:
        logger.warning(f'sup |omega~| on the circle is {sup_boundary:.12f} for an applicable case')

    logger.info(
        f'Monomial criterion: gamma={gamma:.6f} theta={theta:.6f} n={n} '
        f'applicable={applicable} roots_in_disk={all_roots_in_disk}'
    )
    return Theorem1Result(
        applicable=applicable,
        witness=witness,
        all_roots_in_disk=all_roots_in_disk,
        sup_boundary=sup_boundary,
        omega_tilde=omega_tilde,
    )


def corollary_checks(p: MoebiusParams) -> CorollaryFlags:
    re_a, im_a = p.a.real, p.a.imag
    c31 = any(_angle_is(p.gamma, t) for t in (0.0, TWO_PI / 3, 2 * TWO_PI / 3)) and cond_10a(p)
    c32 = _angle_is(p.gamma, 0.0) and re_a ** 2 + 9 * im_a ** 2 <= 1
    c33 = _angle_is(p.gamma, math.pi) and abs(im_a) > ANGLE_TOL and 9 * re_a ** 2 + im_a ** 2 <= 1
    return CorollaryFlags(c31=c31, c32=c32, c33=c33)


def theorem2_check(p: MoebiusParams) -> CriterionReport:
    """
    Moebius criterion: applicable iff the ellipse condition holds off the
    |AB| = 1 locus.

    Raises:
        DegenerateMoebius: propagated from the factorization
    """
    result = tilde_omega_moebius(p.gamma, p.a)
    fact = result.fact

    first = cond_10a(p)
    second = cond_11(p)
    applicable = first and not second

    try:
        z0_c = z0_closed(p)
    except BoundaryCase:
        z0_c = None
    try:
        z0_r = z0_from_roots(fact.A, fact.B)
    except BoundaryCase:
        z0_r = None
    if z0_c is not None and z0_r is not None and abs(z0_c - z0_r) > z0_agreement_tolerance(v_value(p), z0_c):
        logger.warning(f'z0 routes disagree: closed {z0_c:.9g} vs roots {z0_r:.9g}')

    location = zeros_in_closed_disk(fact.t_coeffs)
    moduli = poly_roots(fact.t_coeffs).moduli()
    strictly_inside = bool(np.any(moduli < 1 - 1e-9))
    if applicable and not (location.all_inside and strictly_inside):
        logger.warning(f'Criterion applies at a={p.a:.6g} gamma={p.gamma:.6f} but t(z) roots are {moduli}')

    flags = corollary_checks(p)
    if flags.any() and not applicable:
        logger.warning(f'Corollary flags {flags} hold without the main criterion at a={p.a:.6g}')

    report = CriterionReport(
        a=p.a,
        gamma=p.gamma,
        theta=p.theta,
        v=v_value(p),
        u=u_value(p),
        z0_closed=z0_c,
        z0_roots=z0_r,
        A=fact.A,
        B=fact.B,
        phi=fact.phi,
        AB_modulus=ab_modulus(p),
        cond_10a=first,
        cond_11=second,
        theorem2_applicable=applicable,
        corollary_flags=flags,
        b1_warning=abs(p.a) > 1e-12,
        roots_in_closed_disk=location.all_inside,
        root_strictly_inside=strictly_inside,
    )
    logger.info(
        f'Moebius criterion: a={p.a:.6g} gamma={p.gamma:.6f} cond_10a={first} '
        f'cond_11={second} applicable={applicable}'
    )
    return report


# ============================================
# Counterexample search
# ============================================

def _ascend(omega_tilde: RationalMap, r: float, t: float, dr: float, dt: float, steps: int = 20) -> Tuple[float, float, float]:
    """Coordinate ascent of |omega~(r e^{it})| with halving steps; r stays below 1."""

    def modulus(rr, tt):
        value = abs(omega_tilde.values(rr * np.exp(1j * tt)))
        return value if np.isfinite(value) else -1.0

    best = modulus(r, t)
    for _ in range(steps):
        for cand_r, cand_t in ((r + dr, t), (r - dr, t), (r, t + dt), (r, t - dt)):
            if not 0 < cand_r < 1:
                continue
            value = modulus(cand_r, cand_t)
            if value > best:
                best, r, t = value, cand_r, cand_t
        dr, dt = dr / 2, dt / 2
    return r, t, best


def blaschke_counterexample(
    n: int,
    gamma: float,
    theta: float = math.pi,
    grid: int = 400,
    r_max: float = 0.999,
) -> BlaschkeWitness:
    """
    For omega = e^{i theta} z^n with n >= 3 (by default -z^n), exhibit a
    point of the disk where |omega~| > 1.

    The numerator factor has constant term of modulus n/2 > 1, so some zero
    lies outside the disk and the star-paired denominator has a pole inside.

    Raises:
        WitnessNotFound: if no grid point exceeds modulus 1
    """
    if n < 3:
        raise HarmconvError(f'The counterexample needs n >= 3, got {n}', 'invalid_parameter')

    factor = monomial_numerator_factor(gamma, theta, n)
    product = float(np.prod(poly_roots(factor).moduli()))
    omega_tilde = tilde_omega_monomial(gamma, theta, n)

    radii = np.linspace(r_max / grid, r_max, grid)
    angles = TWO_PI * np.arange(grid) / grid
    points = radii[:, None] * np.exp(1j * angles[None, :])
    values = np.abs(omega_tilde.values(points))
    values = np.where(np.isfinite(values), values, -1.0)

    i, j = np.unravel_index(int(np.argmax(values)), values.shape)
    if values[i, j] <= 1:
        raise WitnessNotFound(f'No point with |omega~| > 1 found for n={n}, gamma={gamma:.6f}')

    r, t, best = _ascend(omega_tilde, radii[i], angles[j], r_max / grid, TWO_PI / grid)
    witness = complex(r * np.exp(1j * t))
    logger.info(f'Counterexample n={n} gamma={gamma:.6f}: |omega~({witness:.6g})| = {best:.6f}')
    return BlaschkeWitness(
        root_moduli_product=product,
        witness=witness,
        witness_modulus_of_omega_tilde=float(best),
        omega_tilde=omega_tilde,
    )

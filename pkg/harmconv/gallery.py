"""
harmconv - Worked examples in closed form

Three sheared maps with explicit formulas for h, g, h0 * h, g0 * g and the
dilatation of f0 * f. They serve as independent oracles for the series,
kernel and dilatation pipelines.

    1: gamma = pi/2, omega = z
    2: gamma = pi,   omega = z
    3: gamma = pi,   omega = -z^2
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dilatation import tilde_omega_general
from .exceptions import HarmconvError, OnSlitPoint, UnknownCase
from .mappings import convolve_f0, convolved_dilatation, eval_parts, series_dilatation, shear_slanted
from .polyrat import Polynomial, RationalMap
from .series import ps_eval

logger = logging.getLogger('harmconv')

ClosedForm = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class GalleryCase:
    id: int
    gamma: float
    omega: RationalMap
    closed_h: ClosedForm
    closed_g: ClosedForm
    closed_conv_h: ClosedForm
    closed_conv_g: ClosedForm
    expected_tilde_omega: RationalMap
    re_display: ClosedForm
    im_display: ClosedForm


def _z(z) -> np.ndarray:
    return np.asarray(z, dtype=np.complex128)


def log_argument(case_id: int, z):
    """Argument of the logarithm in the closed forms of cases 1 and 3."""
    z = _z(z)
    if case_id == 1:
        return (1 - 1j * z) / (1 - z)
    if case_id == 3:
        return (1 + z) / (1 - z)
    raise UnknownCase(f'Case {case_id} has no logarithmic term')


# Case 1: gamma = pi/2, omega = z

def _h1(z):
    z = _z(z)
    return 0.5j * np.log(log_argument(1, z)) + (1 - 1j) / 2 * z / (1 - 1j * z)


def _g1(z):
    z = _z(z)
    return 0.5j * np.log(log_argument(1, z)) - (1 + 1j) / 2 * z / (1 - 1j * z)


def _conv_h1(z):
    z = _z(z)
    return (
        0.25j * np.log(log_argument(1, z))
        + (1 - 1j) / 4 * z / (1 - 1j * z)
        + z / (2 * (1 - z) * (1 - 1j * z) ** 2)
    )


def _conv_g1(z):
    z = _z(z)
    return (
        0.25j * np.log(log_argument(1, z))
        - (1 + 1j) / 4 * z / (1 - 1j * z)
        - z ** 2 / (2 * (1 - z) * (1 - 1j * z) ** 2)
    )


def _re1(z):
    z = _z(z)
    return np.real(0.5j * np.log(log_argument(1, z)) + z * (1 - 1j - z) / (2 * (1 - 1j * z) ** 2))


def _im1(z):
    z = _z(z)
    return np.imag(z / (2 * (1 - 1j * z)) + (z + z ** 2) / (2 * (1 - z) * (1 - 1j * z) ** 2))


# Case 2: gamma = pi, omega = z

def _h2(z):
    z = _z(z)
    return (z ** 2 + 2 * z) / (2 * (1 + z) ** 2)


def _g2(z):
    z = _z(z)
    return z ** 2 / (2 * (1 + z) ** 2)


def _conv_h2(z):
    z = _z(z)
    return z * (z ** 2 + 3 * z + 4) / (4 * (1 + z) ** 3)


def _conv_g2(z):
    z = _z(z)
    return -z ** 2 * (1 - z) / (4 * (1 + z) ** 3)


def _re2(z):
    z = _z(z)
    return np.real(z * (z ** 2 + z + 2) / (2 * (1 + z) ** 3))


def _im2(z):
    z = _z(z)
    return np.imag(z / (1 + z) ** 2)


# Case 3: gamma = pi, omega = -z^2

def _h3(z):
    z = _z(z)
    return np.log(log_argument(3, z)) / 8 + (z / (1 + z) - 1 / (1 + z) ** 2 + 1) / 4


def _g3(z):
    z = _z(z)
    return -np.log(log_argument(3, z)) / 8 + (3 * z / (1 + z) + 1 / (1 + z) ** 2 - 1) / 4


def _conv_h3(z):
    z = _z(z)
    return (
        np.log(log_argument(3, z)) / 16
        + (z / (1 + z) - 1 / (1 + z) ** 2 + 1) / 8
        + z / (2 * (1 - z) * (1 + z) ** 3)
    )


def _conv_g3(z):
    z = _z(z)
    return (
        -np.log(log_argument(3, z)) / 16
        + (3 * z / (1 + z) + 1 / (1 + z) ** 2 - 1) / 8
        + z ** 3 / (2 * (1 - z) * (1 + z) ** 3)
    )


def _re3(z):
    z = _z(z)
    # h0*h + g0*g with no extra factor 1/2 in front
    return np.real(z / (2 * (1 + z)) + z * (1 + z ** 2) / (2 * (1 - z) * (1 + z) ** 3))


def _im3(z):
    z = _z(z)
    return np.imag(
        np.log(log_argument(3, z)) / 8
        - z / (4 * (1 + z))
        - 1 / (4 * (1 + z) ** 2)
        + z / (2 * (1 + z) ** 2)
    )


def example_case(case_id: int) -> GalleryCase:
    """
    Raises:
        UnknownCase: if case_id is not 1, 2 or 3
    """
    if case_id == 1:
        return GalleryCase(
            id=1,
            gamma=math.pi / 2,
            omega=RationalMap.monomial(1.0, 1),
            closed_h=_h1,
            closed_g=_g1,
            closed_conv_h=_conv_h1,
            closed_conv_g=_conv_g1,
            expected_tilde_omega=RationalMap(
                num=Polynomial([0.5j, -0.5, 1.0]),
                den=Polynomial([1.0, -0.5, -0.5j]),
                power=1,
                unit=1j,
            ),
            re_display=_re1,
            im_display=_im1,
        )
    if case_id == 2:
        return GalleryCase(
            id=2,
            gamma=math.pi,
            omega=RationalMap.monomial(1.0, 1),
            closed_h=_h2,
            closed_g=_g2,
            closed_conv_h=_conv_h2,
            closed_conv_g=_conv_g2,
            expected_tilde_omega=RationalMap(
                num=Polynomial([-0.5, 0.5, 1.0]),
                den=Polynomial([1.0, 0.5, -0.5]),
                power=1,
            ),
            re_display=_re2,
            im_display=_im2,
        )
    if case_id == 3:
        return GalleryCase(
            id=3,
            gamma=math.pi,
            omega=RationalMap.monomial(-1.0, 2),
            closed_h=_h3,
            closed_g=_g3,
            closed_conv_h=_conv_h3,
            closed_conv_g=_conv_g3,
            expected_tilde_omega=RationalMap.monomial(1.0, 2),
            re_display=_re3,
            im_display=_im3,
        )
    raise UnknownCase(f'No worked example with id {case_id}')


def sample_points(count: int, radius: float, seed: int = 0) -> np.ndarray:
    """``count`` points uniformly distributed in the disk |z| <= radius."""
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(0, 1, count))
    t = rng.uniform(0, 2 * math.pi, count)
    return r * np.exp(1j * t)


def cross_check_case(c: GalleryCase, order: int = 128, seed: int = 0) -> float:
    """
    Largest disagreement between the closed forms of a case and the shear,
    convolution and dilatation pipelines.

    The kernel route and omega~ are compared on 128 points with |z| <= 0.8;
    truncated series are compared on |z| <= 0.5 where the tail is negligible.
    """
    if order < 64:
        raise HarmconvError(f'Cross-check needs order >= 64, got {order}', 'invalid_parameter')

    f = shear_slanted(c.gamma, c.omega, order)
    F = convolve_f0(f)
    omega_tilde = tilde_omega_general(c.gamma, c.omega)

    outer = sample_points(128, 0.8, seed)
    inner = sample_points(128, 0.5, seed + 1)

    residuals = []
    h, g, _, _ = eval_parts(f, outer)
    H, G, _, _ = eval_parts(F, outer)
    residuals += [
        np.abs(h - c.closed_h(outer)),
        np.abs(g - c.closed_g(outer)),
        np.abs(H - c.closed_conv_h(outer)),
        np.abs(G - c.closed_conv_g(outer)),
    ]
    residuals += [
        np.abs(ps_eval(f.h, inner) - c.closed_h(inner)),
        np.abs(ps_eval(f.g, inner) - c.closed_g(inner)),
        np.abs(ps_eval(F.h, inner) - c.closed_conv_h(inner)),
        np.abs(ps_eval(F.g, inner) - c.closed_conv_g(inner)),
    ]

    expected = c.expected_tilde_omega.values(outer)
    residuals += [
        np.abs(omega_tilde.values(outer) - expected),
        np.abs(convolved_dilatation(F, outer) - expected),
        np.abs(series_dilatation(F, inner) - c.expected_tilde_omega.values(inner)),
    ]

    worst = float(max(np.max(r) for r in residuals))
    logger.info(f'Worked example {c.id} cross-check at order {order}: max residual {worst:.3e}')
    return worst


def closed_form_dilatation(c: GalleryCase, z, step: float = 1e-6):
    """(g0 * g)'/(h0 * h)' from the closed forms by central differences scaled by 1 - |z|."""
    z = _z(z)
    eps = step * (1 - np.abs(z))
    dh = (c.closed_conv_h(z + eps) - c.closed_conv_h(z - eps)) / (2 * eps)
    dg = (c.closed_conv_g(z + eps) - c.closed_conv_g(z - eps)) / (2 * eps)
    return dg / dh


def example3_boundary(theta: float) -> complex:
    """
    Boundary values of the third example as displayed:
    1/2 + i(pi/16 + tan(theta/2)/4) on the upper half circle and
    1/2 + i(-pi/16 + tan(theta/2)/4) on the lower one.

    Raises:
        OnSlitPoint: if theta is 0 or pi (mod 2 pi)
    """
    t = theta % (2 * math.pi)
    if min(t, 2 * math.pi - t) <= 1e-12 or abs(t - math.pi) <= 1e-12:
        raise OnSlitPoint(f'theta = {theta} is an endpoint of the boundary arcs')
    shift = math.pi / 16 if t < math.pi else -math.pi / 16
    return complex(0.5, shift + math.tan(t / 2) / 4)


def example3_radial_limit(theta: float) -> complex:
    """
    lim_{r -> 1} f(r e^{i theta}) for the third example, computed from its
    closed form: 1/2 + i pi/8 on the upper arc and 1/2 - i pi/8 on the lower.

    Raises:
        OnSlitPoint: if theta is 0 or pi (mod 2 pi)
    """
    t = theta % (2 * math.pi)
    if min(t, 2 * math.pi - t) <= 1e-12 or abs(t - math.pi) <= 1e-12:
        raise OnSlitPoint(f'theta = {theta} is an endpoint of the boundary arcs')
    return complex(0.5, math.pi / 8 if t < math.pi else -math.pi / 8)

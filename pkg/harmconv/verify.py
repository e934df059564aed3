"""
harmconv - Numeric verification

Grid evidence for the conclusions drawn about f0 * f: |omega~| < 1 with no
poles in the disk, a positive Jacobian, range inside the slanted half-plane
and convexity of the image of |z| = r in a given direction.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .exceptions import DegenerateCurve, HarmconvError, NearPole
from .mappings import HarmonicMap, clamp_to_series, convolve_f0, image_values, jacobian_at
from .polyrat import RationalMap, poly_roots, sup_modulus_on_circle

logger = logging.getLogger('harmconv')

FLAT_TOL = 1e-9


@dataclass(frozen=True)
class LocalUnivalence:
    sup_interior: float
    sup_boundary: float
    poles_in_disk: int


@dataclass(frozen=True)
class VerificationReport:
    sup_omega_tilde_interior: float
    sup_omega_tilde_boundary: float
    poles_in_disk: int
    min_jacobian: float
    halfplane_residual: Optional[float]
    direction: float
    monotone_arc_count: int
    passed: bool
    params: Dict[str, float] = field(default_factory=dict)


def polar_grid(r_max: float, grid_r: int, grid_t: int) -> np.ndarray:
    """Radii linspace(0, r_max, grid_r) crossed with grid_t equally spaced angles."""
    radii = np.linspace(0.0, r_max, grid_r)
    angles = 2 * np.pi * np.arange(grid_t) / grid_t
    return radii[:, None] * np.exp(1j * angles[None, :])


def check_local_univalence(
    omega_tilde: RationalMap,
    r_max: float = 0.995,
    grid_r: int = 201,
    grid_t: int = 201,
    boundary_samples: int = 4096,
) -> LocalUnivalence:
    """
    sup |omega~| on a polar grid and on the unit circle, and the number of
    poles inside the disk.

    Raises:
        NoConvergence: propagated from the root finder
    """
    if not 0 < r_max < 1:
        raise HarmconvError(f'r_max must lie in (0, 1), got {r_max}', 'invalid_parameter')

    poles = 0
    if omega_tilde.den.degree >= 1:
        poles = int(np.sum(poly_roots(omega_tilde.den).moduli() < 1 - 1e-9))

    values = np.abs(omega_tilde.values(polar_grid(r_max, grid_r, grid_t)))
    sup_interior = float(np.max(np.where(np.isfinite(values), values, np.inf)))

    try:
        sup_boundary = sup_modulus_on_circle(omega_tilde, 1.0, boundary_samples)
    except NearPole:
        sup_boundary = float('inf')

    return LocalUnivalence(sup_interior=sup_interior, sup_boundary=sup_boundary, poles_in_disk=poles)


def count_monotone_arcs(s: np.ndarray, flat_tol: float = FLAT_TOL) -> int:
    """
    Number of maximal monotone arcs of a closed sampled curve.

    Steps with |ds| < flat_tol * (max s - min s) are flat and merge into
    their neighbours.
    """
    steps = np.diff(np.append(s, s[0]))
    spread = float(np.max(s) - np.min(s))
    signs = np.sign(steps[np.abs(steps) >= flat_tol * spread])
    if signs.size == 0:
        return 0
    return int(np.sum(signs != np.roll(signs, 1)))


def check_convex_in_direction(
    f: HarmonicMap,
    direction: float,
    r: float = 0.99,
    samples: int = 4096,
) -> int:
    """
    Count monotone arcs of s(t) = Im(e^{-i direction} f(r e^{it})).

    Two arcs mean every line parallel to e^{i direction} meets the image of
    |z| < r in a connected set.

    Raises:
        DegenerateCurve: if s has total variation below 1e-9
    """
    if not 0 < r < 1:
        raise HarmconvError(f'Radius must lie in (0, 1), got {r}', 'invalid_parameter')
    if samples < 1024:
        raise HarmconvError('Convexity check needs at least 1024 samples', 'invalid_samples')

    t = 2 * np.pi * np.arange(samples) / samples
    w = image_values(f, r * np.exp(1j * t))
    s = np.imag(np.exp(-1j * direction) * w)

    variation = float(np.sum(np.abs(np.diff(np.append(s, s[0])))))
    if variation < 1e-9:
        raise DegenerateCurve(f'Projection in direction {direction:.6f} is constant')
    return count_monotone_arcs(s)


def check_halfplane_range(
    f: HarmonicMap,
    gamma: float,
    r: float = 0.995,
    grid_r: int = 101,
    grid_t: int = 101,
) -> float:
    """min over a polar grid of Re(e^{i gamma} f(z)) + 1/2."""
    if not 0 < r < 1:
        raise HarmconvError(f'Radius must lie in (0, 1), got {r}', 'invalid_parameter')
    w = image_values(f, polar_grid(r, grid_r, grid_t))
    return float(np.min(np.real(np.exp(1j * gamma) * w))) + 0.5


def full_report(
    f: HarmonicMap,
    omega_tilde: RationalMap,
    direction: Optional[float] = None,
    r_max: float = 0.995,
    grid_r: int = 201,
    grid_t: int = 201,
    boundary_samples: int = 4096,
    convexity_radius: float = 0.99,
    convexity_samples: int = 4096,
    halfplane_grid: int = 101,
) -> VerificationReport:
    """
    Run every check on a sheared map f and the dilatation omega~ of f0 * f.

    Args:
        f: Sheared map; when it is already f0 * f the half-plane
            residual is left as None
        omega_tilde: Dilatation of f0 * f
        direction: Convexity direction; defaults to -gamma

    Returns:
        VerificationReport with ``passed`` set when sup |omega~| < 1 on the
        grid, no pole lies in the disk, the Jacobian stays positive and the
        projection splits into two monotone arcs
    """
    if direction is None:
        direction = (-f.gamma) % (2 * math.pi)
    convolved = f if f.convolved_with_f0 else convolve_f0(f)
    convexity_radius = clamp_to_series(convolved, convexity_radius)

    local = check_local_univalence(omega_tilde, r_max, grid_r, grid_t, boundary_samples)
    jac = jacobian_at(convolved, polar_grid(r_max, grid_r, grid_t))
    min_jacobian = float(np.min(np.where(np.isfinite(jac), jac, -np.inf)))
    residual = None
    if not f.convolved_with_f0:
        residual = check_halfplane_range(f, f.gamma, r_max, halfplane_grid, halfplane_grid)
    arcs = check_convex_in_direction(convolved, direction, convexity_radius, convexity_samples)

    passed = (
        local.sup_interior < 1
        and local.poles_in_disk == 0
        and min_jacobian > 0
        and arcs == 2
    )
    report = VerificationReport(
        sup_omega_tilde_interior=local.sup_interior,
        sup_omega_tilde_boundary=local.sup_boundary,
        poles_in_disk=local.poles_in_disk,
        min_jacobian=min_jacobian,
        halfplane_residual=residual,
        direction=float(direction),
        monotone_arc_count=arcs,
        passed=passed,
        params={'r_max': r_max, 'grid_r': grid_r, 'grid_t': grid_t, 'tol': FLAT_TOL},
    )
    log = logger.info if passed else logger.warning
    log(
        f'Verification {"passed" if passed else "failed"}: sup={local.sup_interior:.6f} '
        f'poles={local.poles_in_disk} min_jacobian={min_jacobian:.3e} arcs={arcs}'
    )
    return report

"""
harmconv - Harmonic mappings

Harmonic maps f = h + conj(g) on the unit disk: the shear construction onto
slanted half-planes, the canonical half-plane map f0, Hadamard convolution,
and evaluation of values, derivatives and the Jacobian.

A sheared map keeps its shear kernel (gamma, omega). Values near the unit
circle are then computed from the rational h' in closed form and graded
Gauss-Legendre quadrature, which stays accurate where a truncated series
does not. Maps without a kernel (general convolutions, maps read from a
file) are evaluated from their series.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from .exceptions import (
    DegenerateShear,
    DilatationNotSchlicht,
    HarmconvError,
    NearPole,
    OutsideDomain,
    SeriesTruncated,
)
from .polyrat import Polynomial, RationalMap, rat_to_series, sup_modulus_on_circle
from .series import (
    PowerSeries,
    ps_derivative,
    ps_eval,
    ps_geometric,
    ps_hadamard,
    ps_integrate,
)

logger = logging.getLogger('harmconv')

TWO_PI = 2 * math.pi
SCHLICHT_RADIUS = 1 - 1e-6
SERIES_TAIL_TOL = 1e-8


@dataclass(frozen=True)
class ShearKernel:
    """
    The data (gamma, omega) a sheared map is built from.

    h'(z) = 1/((1 + e^{-2i gamma} omega(z)) (1 - e^{i gamma} z)^2) and
    g' = omega h', so every derivative is available in closed form.
    """

    gamma: float
    omega: RationalMap

    @cached_property
    def omega_prime(self) -> RationalMap:
        return self.omega.derivative()

    def derivatives(self, z) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Return (h', h'', g', g'') at ``z``."""
        z = np.asarray(z, dtype=np.complex128)
        rot = np.exp(1j * self.gamma)
        w = self.omega.values(z)
        dw = self.omega_prime.values(z)
        d = 1 + w / rot ** 2
        lin = 1 - rot * z
        h1 = 1 / (d * lin ** 2)
        h2 = h1 * (2 * rot / lin - dw / (rot ** 2 * d))
        g1 = w * h1
        g2 = dw * h1 + w * h2
        return h1, h2, g1, g2

    def primitives(self, z, nodes: int = 16) -> Tuple[np.ndarray, np.ndarray]:
        """Return (h, g) at ``z`` by integrating h' and g' along the segment [0, z]."""

        def integrand(points):
            h1, _, g1, _ = self.derivatives(points)
            return np.stack([h1, g1])

        h, g = integrate_from_origin(integrand, z, nodes)
        return h, g


def integrate_from_origin(integrand, z, nodes: int = 16) -> np.ndarray:
    """
    Integrate analytic functions from 0 to each point of ``z``.

    ``integrand`` maps an array of points to a stack of values with shape
    (k, *points.shape). The segment is split at 1 - 2^-j so that panels
    shrink geometrically toward the end nearest the unit circle.

    Returns:
        Array of shape (k, *z.shape)
    """
    z = np.asarray(z, dtype=np.complex128)
    flat = z.reshape(-1)
    reach = float(np.max(np.abs(flat))) if flat.size else 0.0
    levels = max(1, math.ceil(math.log2(2.0 / (1.0 - reach))))
    breaks = np.concatenate([[0.0], 1.0 - 0.5 ** np.arange(1, levels + 1), [1.0]])
    x, weights = leggauss(nodes)

    total = None
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        half = 0.5 * (hi - lo)
        s = half * x + 0.5 * (hi + lo)
        values = integrand(np.outer(s, flat))
        panel = half * np.tensordot(weights, values, axes=([0], [1]))
        total = panel if total is None else total + panel
    return (total * flat).reshape((total.shape[0],) + z.shape)


@dataclass(frozen=True, eq=False)
class HarmonicMap:
    """
    f = h + conj(g) as truncated series of a common order.

    ``omega`` is the exact dilatation when known. ``kernel`` is set for
    sheared maps (and for f0 * f built from one); ``convolved_with_f0``
    marks the latter.
    """

    h: PowerSeries
    g: PowerSeries
    gamma: float = 0.0
    omega: Optional[RationalMap] = None
    kernel: Optional[ShearKernel] = None
    convolved_with_f0: bool = False
    label: str = field(default='', compare=False)

    def __post_init__(self):
        if self.h.order != self.g.order:
            raise HarmconvError(
                f'h and g must share an order ({self.h.order} != {self.g.order})', 'invalid_map'
            )
        if abs(self.h[0]) > 1e-12 or abs(self.g[0]) > 1e-12:
            raise HarmconvError('h(0) and g(0) must vanish', 'invalid_map')
        object.__setattr__(self, 'gamma', float(self.gamma) % TWO_PI)

    @property
    def order(self) -> int:
        return self.h.order

    @property
    def b1(self) -> complex:
        """First co-analytic coefficient; nonzero exactly when omega(0) != 0."""
        return self.g[1]


@dataclass(frozen=True)
class PointImage:
    w: complex
    z: complex


def _f0_weights(order: int) -> Tuple[np.ndarray, np.ndarray]:
    n = np.arange(order + 1, dtype=float)
    h_weights = (n + 1) / 2
    g_weights = (1 - n) / 2
    h_weights[0] = 0.0
    g_weights[0] = 0.0
    return h_weights, g_weights


def make_f0(order: int = 64) -> HarmonicMap:
    """
    The canonical right half-plane map f0 = h0 + conj(g0) with
    h0 + g0 = z/(1-z) and dilatation -z.
    """
    if order < 2:
        raise HarmconvError('f0 needs order >= 2', 'invalid_order')
    h_weights, g_weights = _f0_weights(order)
    omega = RationalMap.monomial(-1.0, 1)
    return HarmonicMap(
        h=PowerSeries(h_weights),
        g=PowerSeries(g_weights),
        gamma=0.0,
        omega=omega,
        kernel=ShearKernel(0.0, omega),
        label='f0',
    )


def shear_slanted(gamma: float, omega: RationalMap, order: int = 64) -> HarmonicMap:
    """
    Shear z/(1 - e^{i gamma} z) with dilatation ``omega``.

    Args:
        gamma: Slant angle of the target half-plane Re(e^{i gamma} w) > -1/2
        omega: Dilatation, analytic with |omega| < 1 on the closed disk
        order: Truncation order of h and g

    Returns:
        The sheared HarmonicMap, carrying its kernel

    Raises:
        DilatationNotSchlicht: if omega has a pole in the closed disk or
            reaches modulus 1 on |z| = 1 - 1e-6
        DegenerateShear: if 1 + e^{-2i gamma} omega(0) vanishes
    """
    if order < 1:
        raise HarmconvError('Shear needs order >= 1', 'invalid_order')

    for pole in omega.poles():
        if abs(pole) <= 1 + 1e-9:
            raise DilatationNotSchlicht(f'Dilatation has a pole at {pole:.6g} in the closed disk')
    try:
        sup = sup_modulus_on_circle(omega, SCHLICHT_RADIUS)
    except NearPole as exc:
        raise DilatationNotSchlicht(exc.message)
    if sup >= 1.0:
        raise DilatationNotSchlicht(f'sup |omega| = {sup:.9f} is not below 1 on the disk')

    rot = np.exp(1j * gamma)
    at_origin = 1 + omega.values(0.0) / rot ** 2
    if abs(at_origin) <= 1e-12:
        raise DegenerateShear('1 + exp(-2i gamma) omega(0) vanishes')

    # h' = q / ((q + e^{-2i gamma} unit z^m p) (1 - e^{i gamma} z)^2) for omega = unit z^m p / q
    p, q = omega.expanded()
    lin_sq = Polynomial([1.0, -rot]) * Polynomial([1.0, -rot])
    common = (q + p.scale(rot ** -2)) * lin_sq
    h_prime = RationalMap.from_fraction(q, common)
    g_prime = RationalMap.from_fraction(p, common)

    h = ps_integrate(rat_to_series(h_prime, order - 1))
    g = ps_integrate(rat_to_series(g_prime, order - 1))

    f = HarmonicMap(h=h, g=g, gamma=gamma, omega=omega, kernel=ShearKernel(float(gamma), omega))
    residual = shear_residual(f)
    logger.info(f'Sheared map built: gamma={gamma:.6f} order={order} shear_residual={residual:.3e}')
    if residual >= 1e-10:
        logger.warning(f'Shear identity residual {residual:.3e} exceeds 1e-10')
    return f


def shear_residual(f: HarmonicMap) -> float:
    """max_n |h_n + e^{-2i gamma} g_n - e^{i(n-1)gamma}| over the stored coefficients."""
    target = ps_geometric(f.gamma, max(f.order, 1)).coeffs[:f.order + 1]
    combined = f.h.coeffs + np.exp(-2j * f.gamma) * f.g.coeffs
    return float(np.max(np.abs(combined - target)))


def convolve(f: HarmonicMap, F: HarmonicMap) -> HarmonicMap:
    """Hadamard convolution f * F; the result has no kernel and no dilatation."""
    return HarmonicMap(
        h=ps_hadamard(f.h, F.h),
        g=ps_hadamard(f.g, F.g),
        gamma=f.gamma + F.gamma,
        label='*'.join(part for part in (f.label, F.label) if part),
    )


def convolve_f0(f: HarmonicMap) -> HarmonicMap:
    """
    f0 * f = (h + zh')/2 + conj((g - zg')/2).

    Coefficients equal those of convolve(make_f0(N), f). A sheared input
    keeps its kernel so the result can still be evaluated in closed form.
    """
    h_weights, g_weights = _f0_weights(f.order)
    kernel = f.kernel if not f.convolved_with_f0 else None
    return HarmonicMap(
        h=PowerSeries(h_weights * f.h.coeffs),
        g=PowerSeries(g_weights * f.g.coeffs),
        gamma=f.gamma,
        kernel=kernel,
        convolved_with_f0=kernel is not None,
        label=f'f0*{f.label}' if f.label else 'f0*f',
    )


def _check_domain(z) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    if z.size and np.max(np.abs(z)) >= 1.0:
        raise OutsideDomain(f'Point with |z| = {np.max(np.abs(z)):.6g} lies outside the open disk')
    return z


def series_tail_bound(f: HarmonicMap, r: float) -> float:
    """
    Estimated error of evaluating the stored series of h' and g' at |z| = r.

    The dropped coefficients are taken to be as large as the last stored
    ones, giving (|h_N| + |g_N|)(N + 1) r^N / (1 - r).
    """
    N = f.order
    m = abs(f.h[N]) + abs(f.g[N])
    if m == 0 or r <= 0:
        return 0.0
    if r >= 1:
        return float('inf')
    return float(m * (N + 1) * r ** N / (1 - r))


def reliable_radius(f: HarmonicMap, tol: float = SERIES_TAIL_TOL) -> float:
    """
    Largest radius where the series of f is trusted to ``tol``; 1.0 when f
    carries a shear kernel and is evaluated in closed form.
    """
    if f.kernel is not None:
        return 1.0
    r = np.linspace(0.0, 1.0, 100001)[:-1]
    N = f.order
    m = abs(f.h[N]) + abs(f.g[N])
    if m == 0:
        return 1.0
    bound = m * (N + 1) * r ** N / (1 - r)
    return float(r[bound <= tol].max())


def _warn_if_truncated(f: HarmonicMap, z: np.ndarray) -> None:
    if not z.size:
        return
    r = float(np.max(np.abs(z)))
    tail = series_tail_bound(f, r)
    if tail > SERIES_TAIL_TOL:
        logger.warning(
            f'Series of order {f.order} evaluated at |z| = {r:.4g}: truncation error '
            f'may reach {tail:.3e}; trusted up to |z| = {reliable_radius(f):.4g}'
        )


def clamp_to_series(f: HarmonicMap, r_max: float) -> float:
    """
    ``r_max``, reduced to the reliable radius of a kernel-less map.

    Raises:
        SeriesTruncated: if the series is not trusted at any positive radius
    """
    radius = reliable_radius(f)
    if radius >= r_max:
        return r_max
    if radius <= 0:
        raise SeriesTruncated(f'Series of order {f.order} is not accurate anywhere in the disk')
    logger.warning(f'Radius {r_max} lowered to {radius:.4g}, the reach of the order {f.order} series')
    return radius


def eval_derivatives(f: HarmonicMap, z):
    """
    Evaluate (h', g') at points of the open disk.

    Maps without a kernel are summed from their series; a warning is logged
    when the points lie beyond the series' reliable radius.

    Raises:
        OutsideDomain: if any |z| >= 1
    """
    z = _check_domain(z)
    if f.kernel is None:
        _warn_if_truncated(f, z)
        return ps_eval(ps_derivative(f.h), z), ps_eval(ps_derivative(f.g), z)

    h1, h2, g1, g2 = f.kernel.derivatives(z)
    if not f.convolved_with_f0:
        return h1, g1
    return (2 * h1 + z * h2) / 2, -z * g2 / 2


def eval_parts(f: HarmonicMap, z, nodes: int = 16):
    """
    Evaluate (h, g, h', g') at points of the open disk.

    Raises:
        OutsideDomain: if any |z| >= 1
    """
    z = _check_domain(z)
    hp, gp = eval_derivatives(f, z)
    if f.kernel is None:
        return ps_eval(f.h, z), ps_eval(f.g, z), hp, gp

    h, g = f.kernel.primitives(z, nodes)
    if not f.convolved_with_f0:
        return h, g, hp, gp
    h1, _, g1, _ = f.kernel.derivatives(z)
    return (h + z * h1) / 2, (g - z * g1) / 2, hp, gp


def image_values(f: HarmonicMap, z, nodes: int = 16):
    """Vectorized h(z) + conj(g(z))."""
    h, g, _, _ = eval_parts(f, z, nodes)
    return h + np.conj(g)


def eval_map(f: HarmonicMap, z: complex) -> PointImage:
    """
    Image of a single point.

    Raises:
        OutsideDomain: if |z| >= 1
    """
    w = complex(image_values(f, complex(z)))
    return PointImage(w=w, z=complex(z))


def jacobian_at(f: HarmonicMap, z):
    """J = |h'|^2 - |g'|^2 (scalar or array)."""
    hp, gp = eval_derivatives(f, z)
    value = np.abs(hp) ** 2 - np.abs(gp) ** 2
    return float(value) if np.ndim(value) == 0 else value


def series_dilatation(F: HarmonicMap, z):
    """g'/h' from the series coefficients of F (no kernel shortcut)."""
    z = _check_domain(z)
    return ps_eval(ps_derivative(F.g), z) / ps_eval(ps_derivative(F.h), z)


def convolved_dilatation(F: HarmonicMap, z):
    """
    Dilatation of f0 * f from the shear kernel of f.

    Raises:
        HarmconvError: if F is not f0 * f for a sheared f
    """
    if F.kernel is None or not F.convolved_with_f0:
        raise HarmconvError('Map does not carry a shear kernel for f0 * f', 'no_kernel')
    hp, gp = eval_derivatives(F, z)
    return gp / hp

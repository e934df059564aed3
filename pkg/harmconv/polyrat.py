"""
harmconv - Polynomials and rational maps

Coefficient-level polynomial and rational-map arithmetic over complex
floats, the star adjoint, a deterministic simultaneous-iteration root
finder, and unit-disk zero location by Cohn reduction backed by the roots.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from .exceptions import (
    ConstantTermNotInDisk,
    DegenerateDenominator,
    HarmconvError,
    NearPole,
    NoConvergence,
    NotMonic,
)
from .series import PowerSeries, ps_mul, ps_reciprocal

logger = logging.getLogger('harmconv')

COEFF_EPS = 1e-14
BOUNDARY_TOL = 1e-9
ROOT_SEED = 0.4 + 0.9j


# ============================================
# Polynomial
# ============================================

@dataclass(frozen=True, eq=False)
class Polynomial:
    """
    Polynomial with complex coefficients, index k holding the z**k term.

    Trailing zeros may be stored; ``degree`` ignores entries with modulus
    below 1e-14.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if coeffs.size == 0:
            coeffs = np.zeros(1, dtype=np.complex128)
        if not np.all(np.isfinite(coeffs)):
            raise HarmconvError('Polynomial coefficients must be finite', 'invalid_polynomial')
        coeffs.setflags(write=False)
        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def from_roots(cls, roots: Sequence[complex], leading: complex = 1.0) -> 'Polynomial':
        coeffs = np.array([1.0 + 0j])
        for r in roots:
            coeffs = P.polymul(coeffs, np.array([-r, 1.0], dtype=np.complex128))
        return cls(np.asarray(coeffs) * leading)

    @classmethod
    def monomial(cls, c: complex, n: int) -> 'Polynomial':
        coeffs = np.zeros(n + 1, dtype=np.complex128)
        coeffs[n] = c
        return cls(coeffs)

    @property
    def degree(self) -> int:
        nonzero = np.nonzero(np.abs(self.coeffs) >= COEFF_EPS)[0]
        return int(nonzero[-1]) if nonzero.size else 0

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[self.degree])

    @property
    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (0 for the zero polynomial)."""
        nonzero = np.nonzero(np.abs(self.coeffs) >= COEFF_EPS)[0]
        return int(nonzero[0]) if nonzero.size else 0

    def is_zero(self) -> bool:
        return not np.any(np.abs(self.coeffs) >= COEFF_EPS)

    def trimmed(self) -> 'Polynomial':
        return Polynomial(self.coeffs[:self.degree + 1])

    def __call__(self, z):
        value = P.polyval(np.asarray(z, dtype=np.complex128), self.coeffs)
        return complex(value) if np.ndim(value) == 0 else value

    def __add__(self, other: 'Polynomial') -> 'Polynomial':
        return Polynomial(P.polyadd(self.coeffs, other.coeffs))

    def __sub__(self, other: 'Polynomial') -> 'Polynomial':
        return Polynomial(P.polysub(self.coeffs, other.coeffs))

    def __mul__(self, other: 'Polynomial') -> 'Polynomial':
        return Polynomial(P.polymul(self.coeffs, other.coeffs))

    def __neg__(self) -> 'Polynomial':
        return Polynomial(-self.coeffs)

    def scale(self, c: complex) -> 'Polynomial':
        return Polynomial(self.coeffs * c)

    def shift(self, k: int) -> 'Polynomial':
        """Multiply by z**k (k >= 0) or drop the k lowest coefficients (k < 0)."""
        if k >= 0:
            return Polynomial(np.concatenate([np.zeros(k, dtype=np.complex128), self.coeffs]))
        return Polynomial(self.coeffs[-k:])

    def derivative(self) -> 'Polynomial':
        return Polynomial(P.polyder(self.coeffs))

    def as_list(self):
        return [[float(c.real), float(c.imag)] for c in self.trimmed().coeffs]

    def __repr__(self):
        return f'Polynomial(degree={self.degree})'


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicity, sorted lexicographically by (re, im)."""

    roots: Tuple[complex, ...]
    residual: float

    def moduli(self) -> np.ndarray:
        return np.abs(np.array(self.roots, dtype=np.complex128))


@dataclass(frozen=True)
class DiskLocation:
    all_inside: bool
    count_inside: int
    method: str


def poly_star(p: Polynomial) -> Polynomial:
    """Star adjoint z^d conj(p(1/conj z)): conjugated coefficients in reverse order."""
    d = p.degree
    return Polynomial(np.conj(p.coeffs[:d + 1][::-1]))


def _sorted_roots(roots) -> Tuple[complex, ...]:
    return tuple(sorted((complex(r) for r in roots), key=lambda r: (r.real, r.imag)))


def _root_residual(monic: np.ndarray, roots: np.ndarray) -> float:
    if roots.size == 0:
        return 0.0
    d = monic.size - 1
    values = np.abs(P.polyval(roots, monic))
    return float(np.max(values / np.maximum(1.0, np.abs(roots)) ** d))


def _quadratic_roots(c0: complex, c1: complex) -> np.ndarray:
    """Roots of z^2 + c1 z + c0 on the numerically stable branch."""
    disc = np.sqrt(complex(c1 * c1 - 4 * c0))
    # pick the sign that avoids cancellation in -c1 -/+ disc
    if (np.conj(c1) * disc).real < 0:
        disc = -disc
    q = -(c1 + disc) / 2
    if q == 0:
        return np.array([0j, 0j])
    return np.array([q, c0 / q])


def poly_roots(p: Polynomial, max_iter: int = 500, tol: float = 1e-13) -> RootSet:
    """
    All roots of ``p`` with multiplicity.

    Linear and quadratic polynomials use closed formulas. Higher degrees use
    Durand-Kerner simultaneous iteration from the seeds (0.4+0.9i)^k.

    Raises:
        HarmconvError: if the degree is zero
        NoConvergence: if the iteration fails to settle or the residual
            exceeds 1e-9
    """
    d = p.degree
    if d < 1:
        raise HarmconvError('Root finding needs degree >= 1', 'invalid_polynomial')

    monic = p.coeffs[:d + 1] / p.coeffs[d]

    if d == 1:
        roots = np.array([-monic[0]])
    elif d == 2:
        roots = _quadratic_roots(monic[0], monic[1])
    else:
        roots = ROOT_SEED ** np.arange(d)
        converged = False
        for _ in range(max_iter):
            diff = roots[:, None] - roots[None, :]
            np.fill_diagonal(diff, 1.0)
            delta = P.polyval(roots, monic) / np.prod(diff, axis=1)
            roots = roots - delta
            if np.max(np.abs(delta)) <= tol * max(1.0, float(np.max(np.abs(roots)))):
                converged = True
                break
        residual = _root_residual(monic, roots)
        if not converged and residual >= 1e-9:
            raise NoConvergence(
                f'Root iteration did not converge for degree {d} (best residual {residual:.3e})',
                residual=residual,
            )

    residual = _root_residual(monic, roots)
    if residual >= 1e-9:
        raise NoConvergence(f'Root residual {residual:.3e} exceeds 1e-9', residual=residual)
    return RootSet(roots=_sorted_roots(roots), residual=residual)


def cohn_reduce(p: Polynomial) -> Polynomial:
    """
    One Cohn reduction step (p - p(0) p*) / z for monic p with |p(0)| < 1.

    Raises:
        NotMonic: if the leading coefficient is not 1 within 1e-12
        ConstantTermNotInDisk: if |p(0)| >= 1
    """
    d = p.degree
    if abs(p.coeffs[d] - 1.0) > 1e-12:
        raise NotMonic(f'Cohn reduction needs a monic polynomial (leading {p.coeffs[d]:.6g})')
    a0 = complex(p.coeffs[0])
    if abs(a0) >= 1.0:
        raise ConstantTermNotInDisk(f'|p(0)| = {abs(a0):.6g} is not below 1')
    reduced = p.trimmed() - poly_star(p).scale(a0)
    return reduced.shift(-1).trimmed()


def zeros_in_closed_disk(p: Polynomial) -> DiskLocation:
    """
    Decide whether every zero of ``p`` lies in the closed unit disk.

    The decision runs the Cohn reduction chain while each constant term
    stays below 1 - 1e-10; otherwise the explicit roots decide. Zeros
    within 1e-9 of the unit circle count as inside.
    """
    roots = poly_roots(p)
    d = p.degree
    count_inside = int(np.sum(roots.moduli() <= 1.0 + BOUNDARY_TOL))
    oracle = count_inside == d

    q = p.trimmed().scale(1.0 / p.leading)
    while q.degree >= 1:
        if abs(q.coeffs[0]) >= 1.0 - 1e-10:
            return DiskLocation(all_inside=oracle, count_inside=count_inside, method='roots')
        q = cohn_reduce(q)
        q = q.scale(1.0 / q.leading)

    if not oracle:
        logger.warning(
            f'Cohn reduction places all {d} zeros inside the disk but the root oracle '
            f'counts {count_inside}; keeping the reduction verdict'
        )
    return DiskLocation(all_inside=True, count_inside=count_inside, method='cohn')


# ============================================
# Rational maps
# ============================================

@dataclass(frozen=True, eq=False)
class RationalMap:
    """
    unit * z**power * num(z) / den(z).

    When den(0) != 0 the representation is normalized so den(0) = 1, the
    scale being absorbed into ``num``. ``unit`` has modulus 1.
    """

    num: Polynomial
    den: Polynomial
    power: int = 0
    unit: complex = 1.0 + 0j

    def __post_init__(self):
        num, den = self.num, self.den
        if not isinstance(num, Polynomial):
            num = Polynomial(num)
        if not isinstance(den, Polynomial):
            den = Polynomial(den)
        if den.is_zero():
            raise DegenerateDenominator('Rational map denominator is identically zero')
        if self.power < 0:
            raise HarmconvError('Rational map prefactor power must be >= 0', 'invalid_rational')
        unit = complex(self.unit)
        if abs(abs(unit) - 1.0) > 1e-12:
            raise HarmconvError(f'Prefactor unit has modulus {abs(unit):.15g}, not 1', 'invalid_rational')

        d0 = complex(den.coeffs[0])
        if abs(d0) >= COEFF_EPS and d0 != 1.0:
            num = num.scale(1.0 / d0)
            den = den.scale(1.0 / d0)
        object.__setattr__(self, 'num', num.trimmed())
        object.__setattr__(self, 'den', den.trimmed())
        object.__setattr__(self, 'unit', unit)

    @classmethod
    def from_fraction(cls, num: Polynomial, den: Polynomial, unit: complex = 1.0) -> 'RationalMap':
        """Build unit * num/den, pulling common and explicit z factors into ``power``."""
        if den.is_zero():
            raise DegenerateDenominator('Rational map denominator is identically zero')
        if num.is_zero():
            return cls.zero()
        k_num, k_den = num.valuation, den.valuation
        if k_den > k_num:
            raise NearPole('Rational map has a pole at the origin')
        return cls(num=num.shift(-k_num), den=den.shift(-k_den), power=k_num - k_den, unit=unit)

    @classmethod
    def zero(cls) -> 'RationalMap':
        return cls(num=Polynomial([0.0]), den=Polynomial([1.0]))

    @classmethod
    def constant(cls, c: complex) -> 'RationalMap':
        return cls(num=Polynomial([c]), den=Polynomial([1.0]))

    @classmethod
    def monomial(cls, c: complex, n: int) -> 'RationalMap':
        """c z^n, with the phase of c carried in ``unit``."""
        c = complex(c)
        if c == 0:
            return cls.zero()
        return cls(num=Polynomial([abs(c)]), den=Polynomial([1.0]), power=n, unit=c / abs(c))

    @classmethod
    def moebius(cls, a: complex) -> 'RationalMap':
        """(z + a)/(1 + conj(a) z)."""
        a = complex(a)
        return cls(num=Polynomial([a, 1.0]), den=Polynomial([1.0, np.conj(a)]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def expanded(self) -> Tuple[Polynomial, Polynomial]:
        """Single-fraction form (unit z^power num, den)."""
        return self.num.shift(self.power).scale(self.unit), self.den

    def values(self, z):
        """Pointwise values with no pole check (callers handle non-finite values)."""
        z = np.asarray(z, dtype=np.complex128)
        with np.errstate(divide='ignore', invalid='ignore'):
            value = self.unit * z ** self.power * P.polyval(z, self.num.coeffs) / P.polyval(z, self.den.coeffs)
        return complex(value) if np.ndim(value) == 0 else value

    def __call__(self, z):
        return rat_eval(self, z)

    def __add__(self, other: 'RationalMap') -> 'RationalMap':
        n1, d1 = self.expanded()
        n2, d2 = other.expanded()
        return RationalMap.from_fraction(n1 * d2 + n2 * d1, d1 * d2)

    def __mul__(self, other: 'RationalMap') -> 'RationalMap':
        n1, d1 = self.expanded()
        n2, d2 = other.expanded()
        return RationalMap.from_fraction(n1 * n2, d1 * d2)

    def scale(self, c: complex) -> 'RationalMap':
        n, d = self.expanded()
        return RationalMap.from_fraction(n.scale(c), d)

    def derivative(self) -> 'RationalMap':
        n, d = self.expanded()
        return RationalMap.from_fraction(n.derivative() * d - n * d.derivative(), d * d)

    def poles(self) -> Tuple[complex, ...]:
        if self.den.degree < 1:
            return ()
        return poly_roots(self.den).roots

    def __repr__(self):
        return (
            f'RationalMap(power={self.power}, num_degree={self.num.degree}, '
            f'den_degree={self.den.degree})'
        )


def rat_eval(r: RationalMap, z):
    """
    Evaluate unit * z^power * num(z)/den(z).

    Raises:
        NearPole: if |den(z)| <= 1e-13 at any requested point
    """
    z = np.asarray(z, dtype=np.complex128)
    den = P.polyval(z, r.den.coeffs)
    if np.any(np.abs(den) <= 1e-13):
        raise NearPole('Rational map evaluated within 1e-13 of a pole')
    value = r.unit * z ** r.power * P.polyval(z, r.num.coeffs) / den
    return complex(value) if np.ndim(value) == 0 else value


def sup_modulus_on_circle(r: RationalMap, radius: float, samples: int = 4096) -> float:
    """
    Max of |r| over ``samples`` equally spaced points of the circle |z| = radius.

    Raises:
        NearPole: if a pole lies within 1e-6 of the circle
    """
    if samples < 256:
        raise HarmconvError('Circle sampling needs at least 256 points', 'invalid_samples')
    for pole in r.poles():
        if abs(abs(pole) - radius) < 1e-6:
            raise NearPole(f'Pole {pole:.6g} lies within 1e-6 of the circle |z| = {radius}')
    theta = 2 * np.pi * np.arange(samples) / samples
    return float(np.max(np.abs(rat_eval(r, radius * np.exp(1j * theta)))))


def rat_to_series(r: RationalMap, order: int) -> PowerSeries:
    """Taylor series of a rational map without a pole at 0."""
    num, den = r.expanded()
    num_series = PowerSeries.from_coefficients(num.coeffs, order)
    den_series = PowerSeries.from_coefficients(den.coeffs, order)
    return ps_mul(num_series, ps_reciprocal(den_series))


def cancel_common_roots(num: Polynomial, den: Polynomial, tol: float = 1e-8) -> Tuple[Polynomial, Polynomial, int]:
    """
    Divide out roots shared by ``num`` and ``den``.

    Roots are paired greedily when they lie within ``tol`` (relative to
    max(1, |root|)); both sides are then rebuilt from their remaining roots.
    Returns the reduced pair and the number of cancelled roots.
    """
    if num.degree < 1 or den.degree < 1:
        return num.trimmed(), den.trimmed(), 0

    num_roots = list(poly_roots(num).roots)
    den_roots = list(poly_roots(den).roots)
    kept_den = []
    cancelled = 0
    for root in den_roots:
        if num_roots:
            distances = [abs(root - other) for other in num_roots]
            j = int(np.argmin(distances))
            if distances[j] < tol * max(1.0, abs(root)):
                num_roots.pop(j)
                cancelled += 1
                continue
        kept_den.append(root)

    if cancelled == 0:
        return num.trimmed(), den.trimmed(), 0
    return (
        Polynomial.from_roots(num_roots, num.leading),
        Polynomial.from_roots(kept_den, den.leading),
        cancelled,
    )

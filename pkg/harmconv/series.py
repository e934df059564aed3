"""
harmconv - Truncated power series

Taylor coefficients of analytic functions on the unit disk, stored as
immutable complex numpy arrays. Index n holds the coefficient of z**n.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .exceptions import HarmconvError, NearZeroConstantTerm

logger = logging.getLogger('harmconv')

ComplexLike = Union[complex, float, np.ndarray]


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """
    Truncated Taylor series c_0 + c_1 z + ... + c_N z^N.

    The coefficient array is copied and frozen on construction, so a series
    can be shared freely between threads.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        if coeffs.size == 0:
            raise HarmconvError('A power series needs at least one coefficient', 'invalid_series')
        if not np.all(np.isfinite(coeffs)):
            raise HarmconvError('Power series coefficients must be finite', 'invalid_series')
        coeffs.setflags(write=False)
        object.__setattr__(self, 'coeffs', coeffs)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __getitem__(self, n: int) -> complex:
        return complex(self.coeffs[n])

    def __len__(self) -> int:
        return self.coeffs.size

    def __repr__(self):
        return f'PowerSeries(order={self.order})'

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[complex], order: int = None) -> 'PowerSeries':
        """Build a series, zero-padding or truncating to ``order`` when given."""
        coeffs = np.array(coeffs, dtype=np.complex128).reshape(-1)
        if order is not None:
            coeffs = _resize(coeffs, order)
        return cls(coeffs)

    @classmethod
    def zeros(cls, order: int) -> 'PowerSeries':
        return cls(np.zeros(order + 1, dtype=np.complex128))

    def scale(self, c: complex) -> 'PowerSeries':
        return PowerSeries(self.coeffs * c)

    def truncate(self, order: int) -> 'PowerSeries':
        return PowerSeries(_resize(self.coeffs, order))


def _resize(coeffs: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(order + 1, dtype=np.complex128)
    n = min(order + 1, coeffs.size)
    out[:n] = coeffs[:n]
    return out


def ps_add(p: PowerSeries, q: PowerSeries) -> PowerSeries:
    """Coefficientwise sum; the shorter series is zero-padded."""
    order = max(p.order, q.order)
    return PowerSeries(_resize(p.coeffs, order) + _resize(q.coeffs, order))


def ps_mul(p: PowerSeries, q: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to the smaller of the two orders."""
    order = min(p.order, q.order)
    product = np.convolve(p.coeffs[:order + 1], q.coeffs[:order + 1])
    return PowerSeries(product[:order + 1])


def ps_hadamard(p: PowerSeries, q: PowerSeries) -> PowerSeries:
    """Hadamard (coefficientwise) product, truncated to the smaller order."""
    order = min(p.order, q.order)
    return PowerSeries(p.coeffs[:order + 1] * q.coeffs[:order + 1])


def ps_derivative(p: PowerSeries) -> PowerSeries:
    """Term-by-term derivative; a series of order N becomes order N-1."""
    if p.order < 1:
        return PowerSeries.zeros(0)
    n = np.arange(1, p.order + 1)
    return PowerSeries(n * p.coeffs[1:])


def ps_integrate(p: PowerSeries) -> PowerSeries:
    """Primitive vanishing at 0; a series of order N becomes order N+1."""
    out = np.zeros(p.order + 2, dtype=np.complex128)
    out[1:] = p.coeffs / np.arange(1, p.order + 2)
    return PowerSeries(out)


def ps_reciprocal(p: PowerSeries) -> PowerSeries:
    """
    Series of 1/p by forward recurrence.

    c_0 = 1/p_0 and c_n = -(1/p_0) * sum_{k=1..n} p_k c_{n-k}.

    Raises:
        NearZeroConstantTerm: if |p_0| <= 1e-12
    """
    p0 = p.coeffs[0]
    if abs(p0) <= 1e-12:
        raise NearZeroConstantTerm(f'Cannot invert a series with constant term {p0:.3e}')

    order = p.order
    c = np.zeros(order + 1, dtype=np.complex128)
    c[0] = 1.0 / p0
    for n in range(1, order + 1):
        # p_1..p_n against c_{n-1}..c_0
        c[n] = -np.dot(p.coeffs[1:n + 1], c[n - 1::-1]) / p0
    return PowerSeries(c)


def ps_eval(p: PowerSeries, z: ComplexLike) -> ComplexLike:
    """Horner evaluation; accepts scalars or arrays of points."""
    z_arr = np.asarray(z, dtype=np.complex128)
    if z_arr.size and np.max(np.abs(z_arr)) > 1.0:
        logger.warning(
            f'Evaluating a truncated series of order {p.order} outside the closed unit disk '
            f'(|z| up to {np.max(np.abs(z_arr)):.4f})'
        )
    value = np.polynomial.polynomial.polyval(z_arr, p.coeffs)
    if np.ndim(value) == 0:
        return complex(value)
    return value


def ps_geometric(gamma: float, order: int) -> PowerSeries:
    """Series of z/(1 - e^{i gamma} z): coefficient e^{i(n-1)gamma} for n >= 1."""
    if order < 1:
        raise HarmconvError('The geometric series needs order >= 1', 'invalid_series')
    coeffs = np.zeros(order + 1, dtype=np.complex128)
    coeffs[1:] = np.exp(1j * gamma * np.arange(order))
    return PowerSeries(coeffs)

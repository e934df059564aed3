"""
Tests for polynomials, root location and rational maps.
"""

import cmath
import math

import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose

from harmconv.exceptions import (
    ConstantTermNotInDisk,
    DegenerateDenominator,
    NearPole,
    NotMonic,
)
from harmconv.polyrat import (
    Polynomial,
    RationalMap,
    cancel_common_roots,
    cohn_reduce,
    poly_roots,
    poly_star,
    rat_eval,
    rat_to_series,
    sup_modulus_on_circle,
    zeros_in_closed_disk,
)


def monomial_factor(gamma, theta):
    """z^2 + (1/2)e^{(2 gamma - theta)i} z + (1/2)e^{(gamma - theta)i}."""
    return Polynomial([
        0.5 * cmath.exp(1j * (gamma - theta)),
        0.5 * cmath.exp(1j * (2 * gamma - theta)),
        1.0,
    ])


def reduction_verdict(p):
    """All zeros strictly inside the disk, decided by Cohn reduction alone."""
    q = p
    while q.degree >= 1:
        if abs(q.coeffs[0]) >= 1:
            return False
        q = cohn_reduce(q)
        q = q.scale(1.0 / q.leading)
    return True


class PolynomialTests(SimpleTestCase):

    def test_degree_ignores_trailing_zeros(self):
        p = Polynomial([1, 2, 0, 1e-16])
        self.assertEqual(p.degree, 1)
        self.assertEqual(p.trimmed().coeffs.size, 2)

    def test_from_roots(self):
        assert_allclose(Polynomial.from_roots([1, -1]).coeffs, [-1, 0, 1])

    def test_shift(self):
        assert_allclose(Polynomial([1, 2]).shift(2).coeffs, [0, 0, 1, 2])
        assert_allclose(Polynomial([0, 0, 1, 2]).shift(-2).coeffs, [1, 2])


class StarTests(SimpleTestCase):

    def test_star_of_numerator_factor(self):
        gamma, theta = 0.7, -1.1
        expected = [
            1.0,
            0.5 * cmath.exp(1j * (theta - 2 * gamma)),
            0.5 * cmath.exp(1j * (theta - gamma)),
        ]
        assert_allclose(poly_star(monomial_factor(gamma, theta)).coeffs, expected)

    def test_constant_is_self_star(self):
        assert_allclose(poly_star(Polynomial([1])).coeffs, [1])

    def test_star_is_involution_with_equal_modulus_on_circle(self):
        rng = np.random.default_rng(11)
        p = Polynomial(rng.normal(size=6) + 1j * rng.normal(size=6))
        assert_allclose(poly_star(poly_star(p)).coeffs, p.coeffs)
        circle = np.exp(2j * np.pi * np.arange(1024) / 1024)
        assert_allclose(np.abs(poly_star(p)(circle)), np.abs(p(circle)), atol=1e-12)


class RootTests(SimpleTestCase):

    def test_difference_of_squares(self):
        roots = poly_roots(Polynomial([-1, 0, 1])).roots
        self.assertAlmostEqual(roots[0], -1)
        self.assertAlmostEqual(roots[1], 1)

    def test_vieta_for_quadratic_factor(self):
        roots = poly_roots(Polynomial([0.5, 0.5, 1])).roots
        self.assertAlmostEqual(roots[0] * roots[1], 0.5)
        self.assertAlmostEqual(roots[0] + roots[1], -0.5)

    def test_quartic_root_moduli_product(self):
        roots = poly_roots(Polynomial([-1.5, 0.5, 0, 0, 1]))
        self.assertEqual(len(roots.roots), 4)
        self.assertAlmostEqual(float(np.prod(roots.moduli())), 1.5, places=9)
        self.assertLess(roots.residual, 1e-9)

    def test_roots_sorted_lexicographically(self):
        roots = poly_roots(Polynomial.from_roots([0.5, -0.2j, 0.2j, -0.7])).roots
        keys = [(r.real, r.imag) for r in roots]
        self.assertEqual(keys, sorted(keys))


class CohnTests(SimpleTestCase):

    def test_reduction_of_numerator_factor(self):
        gamma, theta = 0.4, 1.3
        reduced = cohn_reduce(monomial_factor(gamma, theta))
        self.assertEqual(reduced.degree, 1)
        self.assertAlmostEqual(reduced.coeffs[1], 0.75)
        self.assertAlmostEqual(
            reduced.coeffs[0],
            0.5 * cmath.exp(1j * (2 * gamma - theta)) - 0.25 * cmath.exp(-1j * gamma),
        )

    def test_zero_of_reduced_factor(self):
        reduced = cohn_reduce(Polynomial([0.5, 0.5, 1]))
        assert_allclose(reduced.coeffs, [0.25, 0.75])
        self.assertAlmostEqual(-reduced.coeffs[0] / reduced.coeffs[1], -1 / 3)

    def test_vanishing_constant_term_divides_by_z(self):
        assert_allclose(cohn_reduce(Polynomial([0, 0, 1])).coeffs, [0, 1])

    def test_preconditions(self):
        with self.assertRaises(NotMonic):
            cohn_reduce(Polynomial([0.5, 2]))
        with self.assertRaises(ConstantTermNotInDisk):
            cohn_reduce(Polynomial([-2, 1]))


class DiskLocationTests(SimpleTestCase):

    def test_linear(self):
        self.assertTrue(zeros_in_closed_disk(Polynomial([-0.5, 1])).all_inside)
        self.assertFalse(zeros_in_closed_disk(Polynomial([-2, 1])).all_inside)

    def test_moebius_factor_for_real_parameter(self):
        a = 0.3
        # (2 + 2a) t(z) at gamma = 0
        t = Polynomial([(2 * a ** 2 + 2 * a + 1 - a ** 2) / (2 + 2 * a), (4 * a + 1 + 3 * a ** 2) / (2 + 2 * a), 1])
        location = zeros_in_closed_disk(t)
        self.assertTrue(location.all_inside)
        self.assertEqual(location.count_inside, 2)
        self.assertTrue(np.all(poly_roots(t).moduli() <= 1))

    def test_reduction_chain_matches_roots(self):
        rng = np.random.default_rng(17)
        tested = 0
        while tested < 1000:
            degree = int(rng.integers(1, 5))
            moduli = rng.uniform(0, 1.5, degree)
            if np.any(np.abs(moduli - 1) < 1e-3):
                continue
            tested += 1
            p = Polynomial.from_roots(moduli * np.exp(1j * rng.uniform(0, 2 * math.pi, degree)))
            expected = bool(np.all(moduli < 1))
            self.assertEqual(reduction_verdict(p), expected, moduli)
            self.assertEqual(zeros_in_closed_disk(p).all_inside, expected, moduli)

    def test_unimodular_constant_term_uses_roots(self):
        location = zeros_in_closed_disk(Polynomial([1, 0, 0, 1]))
        self.assertTrue(location.all_inside)
        self.assertEqual(location.method, 'roots')


class RationalMapTests(SimpleTestCase):

    def test_denominator_normalized(self):
        r = RationalMap(num=Polynomial([1, 2]), den=Polynomial([2, 1]))
        assert_allclose(r.den.coeffs, [1, 0.5])
        assert_allclose(r.num.coeffs, [0.5, 1])

    def test_from_fraction_extracts_power(self):
        r = RationalMap.from_fraction(Polynomial([0, 0, 1, 1]), Polynomial([0, 1, 2]))
        self.assertEqual(r.power, 1)
        assert_allclose(r.num.coeffs, [1, 1])
        assert_allclose(r.den.coeffs, [1, 2])

    def test_from_fraction_rejects_pole_at_origin(self):
        with self.assertRaises(NearPole):
            RationalMap.from_fraction(Polynomial([1]), Polynomial([0, 1]))

    def test_zero_denominator(self):
        with self.assertRaises(DegenerateDenominator):
            RationalMap(num=Polynomial([1]), den=Polynomial([0]))

    def test_eval_with_power_at_origin(self):
        self.assertEqual(rat_eval(RationalMap.monomial(1j, 2), 0), 0)

    def test_eval_examples(self):
        left_halfplane = RationalMap(num=Polynomial([-0.5, 0.5, 1]), den=Polynomial([1, 0.5, -0.5]), power=1)
        self.assertAlmostEqual(rat_eval(left_halfplane, 0.5), 0)
        self.assertAlmostEqual(rat_eval(RationalMap.monomial(1, 2), 0.4 + 0.1j), 0.15 + 0.08j)

    def test_eval_near_pole(self):
        with self.assertRaises(NearPole):
            rat_eval(RationalMap(num=Polynomial([1]), den=Polynomial([1, -2])), 0.5)

    def test_arithmetic(self):
        z = 0.3 - 0.2j
        r = RationalMap.moebius(0.5)
        s = RationalMap.monomial(-1, 2)
        self.assertAlmostEqual((r + s)(z), r(z) + s(z))
        self.assertAlmostEqual((r * s)(z), r(z) * s(z))
        self.assertAlmostEqual(r.derivative()(z), (1 - 0.25) / (1 + 0.5 * z) ** 2)

    def test_sup_on_circle(self):
        self.assertAlmostEqual(sup_modulus_on_circle(RationalMap.monomial(1, 1), 0.9), 0.9)
        blaschke_like = RationalMap(num=Polynomial([1, 2]), den=Polynomial([2, 1]), power=1)
        self.assertAlmostEqual(sup_modulus_on_circle(blaschke_like, 1.0), 1.0, delta=1e-9)

    def test_sup_rejects_pole_on_circle(self):
        with self.assertRaises(NearPole):
            sup_modulus_on_circle(RationalMap(num=Polynomial([1]), den=Polynomial([1, -1])), 1.0)

    def test_series_of_geometric(self):
        r = RationalMap(num=Polynomial([1]), den=Polynomial([1, -1]))
        assert_allclose(rat_to_series(r, 6).coeffs, np.ones(7))


class CancellationTests(SimpleTestCase):

    def test_single_common_root(self):
        num = Polynomial.from_roots([0.5, 2])
        den = Polynomial.from_roots([0.5, -3])
        reduced_num, reduced_den, cancelled = cancel_common_roots(num, den)
        self.assertEqual(cancelled, 1)
        assert_allclose(reduced_num.coeffs, [-2, 1], atol=1e-12)
        assert_allclose(reduced_den.coeffs, [3, 1], atol=1e-12)

    def test_no_common_root(self):
        num, den = Polynomial([1, 1]), Polynomial([1, -1])
        _, _, cancelled = cancel_common_roots(num, den)
        self.assertEqual(cancelled, 0)

    def test_unimodular_factor_cancels_completely(self):
        c = cmath.exp(1j * math.pi / 5)
        num = Polynomial([c, 0, 0, 1])
        reduced_num, reduced_den, cancelled = cancel_common_roots(num, poly_star(num))
        self.assertEqual(cancelled, 3)
        self.assertEqual(reduced_num.degree, 0)
        self.assertEqual(reduced_den.degree, 0)

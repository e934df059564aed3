"""
Tests for the dilatation expression parser.
"""

import math

from django.test import SimpleTestCase

from harmconv.exceptions import ParseError
from harmconv.omega_spec import as_moebius, as_monomial, parse_omega, tokenize


class TokenizeTests(SimpleTestCase):

    def test_tokens(self):
        self.assertEqual(
            tokenize('0.5i*z**2'),
            [('number', '0.5i'), ('op', '*'), ('name', 'z'), ('op', '^'), ('number', '2')],
        )

    def test_unexpected_character(self):
        with self.assertRaises(ParseError):
            tokenize('z # 2')


class ParseTests(SimpleTestCase):

    def assertValue(self, text, z, expected):
        self.assertAlmostEqual(complex(parse_omega(text).values(z)), complex(expected))

    def test_polynomials(self):
        self.assertValue('z', 0.3, 0.3)
        self.assertValue('-z^3', 0.5, -0.125)
        self.assertValue('z^2 + 0.5*z', 0.3, 0.24)
        self.assertValue('(0.3+0.4i)*z', 0.5, 0.15 + 0.2j)
        self.assertValue('2z', 0.25, 0.5)
        self.assertValue('i z', 0.5, 0.5j)
        self.assertValue('1e-1*z', 0.5, 0.05)

    def test_quotients(self):
        self.assertValue('(z+0.5)/(1+0.5*z)', 0.5, 0.8)
        self.assertValue('z/(2+z)', 0.0, 0.0)
        self.assertValue('(z-0.2i)/(1+0.2i*z)', 0.0, -0.2j)

    def test_malformed(self):
        for text in ['', 'z +', '(z', 'w*z', 'z^-1', 'z^1.5', 'z)', '1/0', '1/(z-z)']:
            with self.assertRaises(ParseError, msg=text):
                parse_omega(text)

    def test_pole_at_origin(self):
        with self.assertRaises(ParseError):
            parse_omega('1/z')

    def test_rejects_non_automorphism(self):
        with self.assertRaises(ParseError):
            parse_omega('(z+0.5)/(1+0.3*z)')


class ShapeTests(SimpleTestCase):

    def test_monomial(self):
        form = as_monomial(parse_omega('-z^3'))
        self.assertEqual(form.n, 3)
        self.assertAlmostEqual(form.modulus, 1)
        self.assertAlmostEqual(abs(form.theta), math.pi)

        form = as_monomial(parse_omega('0.5i*z^2'))
        self.assertEqual(form.n, 2)
        self.assertAlmostEqual(form.coefficient, 0.5j)
        self.assertAlmostEqual(form.theta, math.pi / 2)

    def test_not_monomial(self):
        self.assertIsNone(as_monomial(parse_omega('z + 1')))
        self.assertIsNone(as_monomial(parse_omega('(z+0.5)/(1+0.5*z)')))
        self.assertIsNone(as_monomial(parse_omega('0')))

    def test_moebius(self):
        self.assertAlmostEqual(as_moebius(parse_omega('(z+0.5)/(1+0.5*z)')), 0.5)
        self.assertAlmostEqual(as_moebius(parse_omega('(z-0.2i)/(1+0.2i*z)')), -0.2j)

    def test_not_moebius(self):
        self.assertIsNone(as_moebius(parse_omega('z')))
        self.assertIsNone(as_moebius(parse_omega('z/(2+z)')))

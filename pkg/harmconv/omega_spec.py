"""
harmconv - Dilatation expressions

Parses the small expression language used on the command line and in API
requests to describe a dilatation omega(z):

    z                      0.5*z^2            -z^3
    (0.3+0.4i)*z           (z+0.5)/(1+0.5*z)  (z-0.2i)/(1+0.2i*z)

Complex literals use a trailing ``i`` or ``j``. Expressions are sums,
products, quotients and non-negative integer powers of ``z`` and numbers;
the result is a RationalMap.
"""

import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .exceptions import HarmconvError, ParseError
from .polyrat import Polynomial, RationalMap

logger = logging.getLogger('harmconv')

TOKEN_RE = re.compile(
    r'\s*(?:'
    r'(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?[ij]?)'
    r'|(?P<name>[A-Za-z_]+)'
    r'|(?P<op>\*\*|[-+*/^()])'
    r')'
)

Fraction = Tuple[Polynomial, Polynomial]


def tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            raise ParseError(f'Unexpected character {text[pos]!r} at position {pos}')
        kind = match.lastgroup
        value = match.group(kind)
        if kind == 'op' and value == '**':
            value = '^'
        tokens.append((kind, value))
        pos = match.end()
    return tokens


def _const(c: complex) -> Fraction:
    return Polynomial([c]), Polynomial([1.0])


class _Parser:
    """Recursive descent over tokens; every value is a fraction (num, den)."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> Tuple[str, str]:
        token = self.peek()
        if token is None:
            raise ParseError(f'Unexpected end of expression in {self.text!r}')
        self.pos += 1
        return token

    def expect(self, value: str):
        kind, got = self.take()
        if got != value:
            raise ParseError(f'Expected {value!r} but found {got!r} in {self.text!r}')

    def parse(self) -> Fraction:
        if not self.tokens:
            raise ParseError('Empty dilatation expression')
        value = self.expr()
        if self.peek() is not None:
            raise ParseError(f'Unexpected {self.peek()[1]!r} in {self.text!r}')
        return value

    def expr(self) -> Fraction:
        value = self.term()
        while self.peek() and self.peek()[1] in '+-':
            op = self.take()[1]
            other = self.term()
            if op == '-':
                other = (-other[0], other[1])
            value = (value[0] * other[1] + other[0] * value[1], value[1] * other[1])
        return value

    def term(self) -> Fraction:
        value = self.unary()
        while True:
            token = self.peek()
            if token is None:
                return value
            kind, text = token
            if text in ('*', '/'):
                self.take()
                other = self.unary()
            elif kind in ('number', 'name') or text == '(':
                # implicit product such as 2z or 0.5i z
                other = self.unary()
                text = '*'
            else:
                return value
            if text == '*':
                value = (value[0] * other[0], value[1] * other[1])
            else:
                if other[0].is_zero():
                    raise ParseError(f'Division by zero in {self.text!r}')
                value = (value[0] * other[1], value[1] * other[0])

    def unary(self) -> Fraction:
        token = self.peek()
        if token and token[1] in '+-':
            self.take()
            value = self.unary()
            return (-value[0], value[1]) if token[1] == '-' else value
        return self.power()

    def power(self) -> Fraction:
        base = self.atom()
        token = self.peek()
        if token is None or token[1] != '^':
            return base
        self.take()
        kind, text = self.take()
        if kind != 'number' or not text.isdigit():
            raise ParseError(f'Exponent must be a non-negative integer, got {text!r}')
        num, den = Polynomial([1.0]), Polynomial([1.0])
        for _ in range(int(text)):
            num, den = num * base[0], den * base[1]
        return num, den

    def atom(self) -> Fraction:
        kind, text = self.take()
        if kind == 'number':
            if text[-1] in 'ij':
                return _const(complex(0.0, float(text[:-1])))
            return _const(float(text))
        if kind == 'name':
            if text == 'z':
                return Polynomial([0.0, 1.0]), Polynomial([1.0])
            if text in ('i', 'j'):
                return _const(1j)
            raise ParseError(f'Unknown name {text!r} in {self.text!r}')
        if text == '(':
            value = self.expr()
            self.expect(')')
            return value
        raise ParseError(f'Unexpected {text!r} in {self.text!r}')


def _check_moebius_shape(num: Polynomial, den: Polynomial, text: str):
    """(z + A)/(1 + B z) must have B = conj(A)."""
    if num.degree != 1 or den.degree != 1:
        return
    if abs(num.coeffs[1] - 1) > 1e-12 or abs(den.coeffs[0] - 1) > 1e-12:
        return
    A, B = complex(num.coeffs[0]), complex(den.coeffs[1])
    if abs(B - np.conj(A)) > 1e-12:
        raise ParseError(
            f'{text!r} is not a disk automorphism: coefficient {B:.6g} should equal conj({A:.6g})'
        )


def parse_omega(text: str) -> RationalMap:
    """
    Parse a dilatation expression.

    Raises:
        ParseError: on malformed input, division by zero or a Moebius form
            whose denominator coefficient is not conj(a)
    """
    num, den = _Parser(text).parse()
    _check_moebius_shape(num.trimmed(), den.trimmed(), text)
    try:
        return RationalMap.from_fraction(num, den)
    except HarmconvError as exc:
        raise ParseError(f'{text!r}: {exc.message}')


@dataclass(frozen=True)
class MonomialForm:
    coefficient: complex
    n: int

    @property
    def theta(self) -> float:
        return float(np.angle(self.coefficient))

    @property
    def modulus(self) -> float:
        return abs(self.coefficient)


def as_monomial(omega: RationalMap) -> Optional[MonomialForm]:
    """c z^n with n >= 1, or None."""
    if omega.is_zero() or omega.num.degree != 0 or omega.den.degree != 0 or omega.power < 1:
        return None
    c = omega.unit * omega.num.coeffs[0] / omega.den.coeffs[0]
    return MonomialForm(coefficient=complex(c), n=omega.power)


def as_moebius(omega: RationalMap) -> Optional[complex]:
    """``a`` when omega = (z + a)/(1 + conj(a) z) with a != 0, else None."""
    if omega.power != 0 or omega.num.degree != 1 or omega.den.degree != 1:
        return None
    k = omega.unit * omega.num.coeffs[1]
    if abs(k - 1) > 1e-12:
        return None
    a = complex(omega.unit * omega.num.coeffs[0])
    if abs(omega.den.coeffs[1] - np.conj(a)) > 1e-12:
        return None
    return a

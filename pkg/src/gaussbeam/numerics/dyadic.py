"""Dyadic Gaussian rationals: (re + j*im) * 2**-exp, exact under the fast algorithm's operations"""
from __future__ import annotations

import dataclasses
import math

import regex

from ..utils.errors import DyadicOverflowError, UserErrorMessage
from .gaussian import GaussianInt, format_gaussian

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

# "(1-1j)/2", "-1j/4", "3/2", "1"
_RE_DYADIC = regex.compile(
    r"^\s*(?P<num>\(?[^/]+?\)?)\s*(?:/\s*(?P<den>\d+))?\s*$", regex.VERSION1
)


def _checked(operation: str, *values: int) -> None:
    for value in values:
        if not INT64_MIN <= value <= INT64_MAX:
            raise DyadicOverflowError(operation, value)


@dataclasses.dataclass(frozen=True)
class DyadicGaussian:
    """(re_num + j*im_num) * 2**-exp in canonical form

    Canonical: exp is minimal, i.e. exp == 0 or at least one numerator is odd.
    Instances must be built through make() to be canonical.
    """

    re_num: int
    im_num: int
    exp: int = 0

    @classmethod
    def make(cls, re_num: int, im_num: int = 0, exp: int = 0) -> DyadicGaussian:
        if exp < 0:
            # Negative exponents are folded into the numerators
            re_num <<= -exp
            im_num <<= -exp
            exp = 0
        while exp > 0 and re_num % 2 == 0 and im_num % 2 == 0:
            re_num //= 2
            im_num //= 2
            exp -= 1
        if re_num == 0 and im_num == 0:
            exp = 0
        _checked("canonicalization", re_num, im_num)
        return cls(re_num, im_num, exp)

    @classmethod
    def from_gaussian(cls, z: GaussianInt, exp: int = 0) -> DyadicGaussian:
        return cls.make(z.re, z.im, exp)

    @classmethod
    def from_int(cls, value: int) -> DyadicGaussian:
        return cls.make(value, 0, 0)

    def _aligned(self, other: DyadicGaussian) -> tuple[int, int, int, int, int]:
        exp = max(self.exp, other.exp)
        a_shift = exp - self.exp
        b_shift = exp - other.exp
        return (
            self.re_num << a_shift,
            self.im_num << a_shift,
            other.re_num << b_shift,
            other.im_num << b_shift,
            exp,
        )

    def __add__(self, other: DyadicGaussian) -> DyadicGaussian:
        if not isinstance(other, DyadicGaussian):
            return NotImplemented
        return dyadic_add(self, other)

    def __sub__(self, other: DyadicGaussian) -> DyadicGaussian:
        if not isinstance(other, DyadicGaussian):
            return NotImplemented
        return dyadic_add(self, -other)

    def __neg__(self) -> DyadicGaussian:
        _checked("negation", -self.re_num, -self.im_num)
        return DyadicGaussian(-self.re_num, -self.im_num, self.exp)

    def __mul__(self, other: DyadicGaussian | GaussianInt | int) -> DyadicGaussian:
        # General multiplication exists for verification only, the fast path never uses it
        if isinstance(other, int):
            other = DyadicGaussian.from_int(other)
        elif isinstance(other, GaussianInt):
            other = DyadicGaussian.from_gaussian(other)
        elif not isinstance(other, DyadicGaussian):
            return NotImplemented
        re_num = self.re_num * other.re_num - self.im_num * other.im_num
        im_num = self.re_num * other.im_num + self.im_num * other.re_num
        _checked("multiplication", re_num, im_num)
        return DyadicGaussian.make(re_num, im_num, self.exp + other.exp)

    __rmul__ = __mul__

    def conjugate(self) -> DyadicGaussian:
        _checked("conjugation", -self.im_num)
        return DyadicGaussian(self.re_num, -self.im_num, self.exp)

    def mul_j(self) -> DyadicGaussian:
        _checked("rotation by j", -self.im_num)
        return DyadicGaussian(-self.im_num, self.re_num, self.exp)

    def halve(self) -> DyadicGaussian:
        if self.is_zero():
            return self
        # Canonical input stays canonical: one numerator is odd or exp is 0 and
        # we add a factor two to the denominator
        return DyadicGaussian.make(self.re_num, self.im_num, self.exp + 1)

    def is_zero(self) -> bool:
        return self.re_num == 0 and self.im_num == 0

    def abs_squared(self) -> DyadicGaussian:
        """|z|**2 as an exact (real) dyadic"""
        return self * self.conjugate()

    def numerator(self) -> GaussianInt:
        return GaussianInt(self.re_num, self.im_num)

    def __complex__(self) -> complex:
        scale = math.ldexp(1.0, -self.exp)
        return complex(self.re_num * scale, self.im_num * scale)

    def __float__(self) -> float:
        if self.im_num != 0:
            raise TypeError(f"{self} is not real")
        return math.ldexp(float(self.re_num), -self.exp)

    def __str__(self) -> str:
        num = format_gaussian(self.re_num, self.im_num)
        if self.exp == 0:
            return num
        return f"{num}/{2 ** self.exp}"


def dyadic_add(a: DyadicGaussian, b: DyadicGaussian) -> DyadicGaussian:
    """Exact sum in canonical form; overflow raises DyadicOverflowError"""
    a_re, a_im, b_re, b_im, exp = a._aligned(b)
    re_num = a_re + b_re
    im_num = a_im + b_im
    _checked("addition", a_re, a_im, b_re, b_im, re_num, im_num)
    return DyadicGaussian.make(re_num, im_num, exp)


def parse_dyadic(text: str) -> DyadicGaussian:
    """Inverse of str(DyadicGaussian)"""
    match = _RE_DYADIC.match(text)
    if match is None:
        raise UserErrorMessage(f"Not a dyadic Gaussian literal: {text!r}")
    num = GaussianInt.parse(match.group("num"))
    den_text = match.group("den")
    if den_text is None:
        return DyadicGaussian.from_gaussian(num)
    den = int(den_text)
    if den <= 0 or den & (den - 1):
        raise UserErrorMessage(f"Denominator of {text!r} is not a power of two")
    return DyadicGaussian.from_gaussian(num, den.bit_length() - 1)


ZERO = DyadicGaussian(0, 0, 0)
ONE = DyadicGaussian(1, 0, 0)
HALF = DyadicGaussian(1, 0, 1)
J = DyadicGaussian(0, 1, 0)

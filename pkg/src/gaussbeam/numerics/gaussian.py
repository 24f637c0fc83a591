"""Gaussian integers: complex numbers with exact integer parts"""
from __future__ import annotations

import dataclasses

import regex

from ..utils.errors import UserErrorMessage

#: Component alphabet of the approximate transform weights
P_SET: tuple[int, ...] = (-2, -1, 0, 1, 2)

# Literals such as "2", "-2j", "1-j", "(-1+1j)", "j"
_RE_GAUSSIAN = regex.compile(
    r"""
    ^\(?\s*
    (?:
        (?P<re>[+-]?\d+)
        (?:\s*(?P<im_sign>[+-])\s*(?P<im_mag>\d*)\s*j)?
      |
        (?P<im_only>[+-]?\d*)\s*j
    )
    \s*\)?$
    """,
    regex.VERSION1 | regex.VERBOSE,
)


def _imag_coefficient(sign: str, magnitude: str) -> int:
    value = int(magnitude) if magnitude else 1
    return -value if sign == "-" else value


@dataclasses.dataclass(frozen=True, order=True)
class GaussianInt:
    """re + j*im with integer re and im"""

    re: int
    im: int = 0

    def __post_init__(self):
        if not isinstance(self.re, int) or not isinstance(self.im, int):
            raise TypeError(f"GaussianInt parts must be int, got {self.re!r}, {self.im!r}")

    def __add__(self, other: GaussianInt) -> GaussianInt:
        if not isinstance(other, GaussianInt):
            return NotImplemented
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        if not isinstance(other, GaussianInt):
            return NotImplemented
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: GaussianInt | int) -> GaussianInt:
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        if not isinstance(other, GaussianInt):
            return NotImplemented
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def mul_j(self) -> GaussianInt:
        return GaussianInt(-self.im, self.re)

    def norm(self) -> int:
        """Squared modulus"""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def in_q(self) -> bool:
        """Both parts drawn from {0, +-1, +-2}"""
        return self.re in P_SET and self.im in P_SET

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        return format_gaussian(self.re, self.im)

    @classmethod
    def parse(cls, text: str) -> GaussianInt:
        match = _RE_GAUSSIAN.match(text.strip())
        if match is None:
            raise UserErrorMessage(f"Not a Gaussian integer literal: {text!r}")
        if match.group("im_only") is not None:
            im_text = match.group("im_only")
            sign = "-" if im_text.startswith("-") else "+"
            return cls(0, _imag_coefficient(sign, im_text.lstrip("+-")))
        re = int(match.group("re"))
        if match.group("im_sign") is None:
            return cls(re, 0)
        return cls(re, _imag_coefficient(match.group("im_sign"), match.group("im_mag")))


def format_gaussian(re: int, im: int) -> str:
    """Python complex literal style: 2, -2j, (1-1j)"""
    if im == 0:
        return str(re)
    if re == 0:
        return f"{im}j"
    return f"({re}{im:+d}j)"


def gauss_mul_j(z: GaussianInt) -> GaussianInt:
    """Multiply by j: (re, im) -> (-im, re), a swap and a negation"""
    return z.mul_j()


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
J = GaussianInt(0, 1)

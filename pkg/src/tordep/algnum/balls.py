"""Rigorous complex balls with exact rational data, and the conversions to
and from flint's ``arb``/``acb`` types."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from flint import acb, arb, fmpq


def arb_to_fraction(x: arb) -> Fraction:
    """Exact midpoint of an arb ball (arb midpoints are dyadic)."""
    man, exp = x.mid().man_exp()
    man, exp = int(man), int(exp)
    if exp >= 0:
        return Fraction(man * (1 << exp))
    return Fraction(man, 1 << -exp)


def arb_radius(x: arb) -> Fraction:
    man, exp = x.rad().man_exp()
    man, exp = int(man), int(exp)
    if exp >= 0:
        return Fraction(man * (1 << exp))
    return Fraction(man, 1 << -exp)


def arb_lower(x: arb) -> Fraction:
    return arb_to_fraction(x) - arb_radius(x)


def arb_upper(x: arb) -> Fraction:
    return arb_to_fraction(x) + arb_radius(x)


def arb_upper_arb(x: arb) -> arb:
    """Exact (zero-radius) arb equal to the upper endpoint of ``x``."""
    q = arb_upper(x)
    return arb(fmpq(q.numerator, q.denominator))


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str | int) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True)
class ComplexBall:
    """A closed disc ``|z - center| <= radius`` with rational data."""

    re: Fraction
    im: Fraction
    radius: Fraction

    @classmethod
    def from_acb(cls, z: acb) -> "ComplexBall":
        # an acb is a box; the disc through its corners contains it
        rr, ri = arb_radius(z.real), arb_radius(z.imag)
        return cls(arb_to_fraction(z.real), arb_to_fraction(z.imag), rr + ri)

    @classmethod
    def point(cls, value: complex | Fraction | int) -> "ComplexBall":
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag), Fraction(0))
        return cls(Fraction(value), Fraction(0), Fraction(0))

    @classmethod
    def around(cls, value: complex | float, radius: float = 0.1) -> "ComplexBall":
        z = complex(value)
        return cls(Fraction(z.real), Fraction(z.imag), Fraction(radius))

    def to_acb(self) -> acb:
        re = arb(fmpq(self.re.numerator, self.re.denominator))
        im = arb(fmpq(self.im.numerator, self.im.denominator))
        if self.radius:
            r = arb(fmpq(self.radius.numerator, self.radius.denominator))
            r = arb(arb_upper_arb(r).mid(), 0)
            re = arb(re.mid(), r + re.rad())
            im = arb(im.mid(), r + im.rad())
        return acb(re, im)

    def contains_point(self, re: Fraction, im: Fraction) -> bool:
        return (re - self.re) ** 2 + (im - self.im) ** 2 <= self.radius**2

    def overlaps(self, other: "ComplexBall") -> bool:
        d2 = (self.re - other.re) ** 2 + (self.im - other.im) ** 2
        return d2 <= (self.radius + other.radius) ** 2

    def center_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_json(self) -> dict:
        return {
            "center": [fraction_str(self.re), fraction_str(self.im)],
            "radius": fraction_str(self.radius),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ComplexBall":
        re, im = data["center"]
        return cls(Fraction(re), Fraction(im), Fraction(data["radius"]))


def acb_from_fraction(q: Fraction) -> acb:
    return acb(fmpq(q.numerator, q.denominator))


def acb_max_radius(z: acb) -> Fraction:
    return arb_radius(z.real) + arb_radius(z.imag)


def acb_magnitude_upper(z: acb) -> Fraction:
    return arb_upper(z.abs_upper())


__all__ = [
    "ComplexBall",
    "arb_to_fraction",
    "arb_radius",
    "arb_lower",
    "arb_upper",
    "fraction_str",
    "parse_fraction",
    "acb_from_fraction",
    "acb_max_radius",
]


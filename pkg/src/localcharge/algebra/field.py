"""Coefficient fields: exact rationals and a large prime field."""

from __future__ import annotations

from fractions import Fraction


class RationalField:
    """The rational numbers, backed by :class:`fractions.Fraction`."""

    name = "QQ"
    modulus = None

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """GF(p) with elements stored as ints in ``range(p)``."""

    def __init__(self, p: int):
        if p < 3:
            raise ValueError("need an odd prime")
        self.modulus = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __call__(self, value) -> int:
        p = self.modulus
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {value} vanishes mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def inv(self, a):
        if a % self.modulus == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.modulus)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GF", self.modulus))


QQ = RationalField()

# 2^31 - 1 is prime.
DEFAULT_PRIME = 2**31 - 1
GFP = PrimeField(DEFAULT_PRIME)


def get_field(name: str):
    """Map a configuration string (``"q"`` or ``"gfp"``) to a field."""
    key = name.lower()
    if key in ("q", "qq", "rational", "rationals"):
        return QQ
    if key in ("gfp", "gf", "prime"):
        return GFP
    raise ValueError(f"unknown field {name!r}")

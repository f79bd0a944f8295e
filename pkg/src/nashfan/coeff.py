"""
Exact coefficient fields: the rationals (characteristic 0) and prime fields F_p.

A :class:`FieldSpec` is the single field abstraction used by the polynomial code. Scalars are plain
Python values in canonical form: a fully reduced :class:`fractions.Fraction` for characteristic 0 and
an ``int`` residue in ``0..p-1`` for characteristic ``p``. Because of this, equal scalars always
compare and serialize identically.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import DenominatorNotInvertible, DivisionByZero, FieldMismatch, NotPrime

Coeff = Union[int, Fraction]


def is_prime(p: int) -> bool:
    """Deterministic trial division up to the integer square root."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for divisor in range(3, isqrt(p) + 1, 2):
        if p % divisor == 0:
            return False
    return True


def reduce_mod_p(q, p: int) -> int:
    """
    Image of the rational ``q`` under the map Z_(p) -> F_p.

    :param q: an integer or a fraction whose denominator is prime to ``p``
    :param p: a prime
    :return: the canonical residue in ``0..p-1``
    """
    q = Fraction(q)
    if q.denominator % p == 0:
        raise DenominatorNotInvertible(f"{p} divides the denominator of {q}")
    return q.numerator * pow(q.denominator, -1, p) % p


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic < 0:
            raise NotPrime(f"Characteristic must be 0 or a prime, got {self.characteristic}")
        if self.characteristic and not is_prime(self.characteristic):
            raise NotPrime(f"Characteristic {self.characteristic} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def zero(self) -> Coeff:
        return Fraction(0) if self.is_rational else 0

    @property
    def one(self) -> Coeff:
        return Fraction(1) if self.is_rational else 1

    def convert(self, value) -> Coeff:
        """Bring an int, Fraction or string like ``"-3/4"`` into canonical form."""
        if isinstance(value, str):
            return self.parse(value)
        if self.is_rational:
            return Fraction(value)
        if isinstance(value, Fraction):
            return reduce_mod_p(value, self.characteristic)
        return int(value) % self.characteristic

    def add(self, a: Coeff, b: Coeff) -> Coeff:
        if self.is_rational:
            return a + b
        return (a + b) % self.characteristic

    def sub(self, a: Coeff, b: Coeff) -> Coeff:
        if self.is_rational:
            return a - b
        return (a - b) % self.characteristic

    def neg(self, a: Coeff) -> Coeff:
        if self.is_rational:
            return -a
        return -a % self.characteristic

    def mul(self, a: Coeff, b: Coeff) -> Coeff:
        if self.is_rational:
            return a * b
        return a * b % self.characteristic

    def inv(self, a: Coeff) -> Coeff:
        if not a:
            raise DivisionByZero("Cannot invert zero")
        if self.is_rational:
            return 1 / a
        return pow(a, -1, self.characteristic)

    def div(self, a: Coeff, b: Coeff) -> Coeff:
        return self.mul(a, self.inv(b))

    def power(self, a: Coeff, exponent: int) -> Coeff:
        if exponent < 0:
            return self.power(self.inv(a), -exponent)
        if self.is_rational:
            return a**exponent
        return pow(a, exponent, self.characteristic)

    def is_integral(self, a: Coeff) -> bool:
        return not self.is_rational or a.denominator == 1

    def image_of(self, a: Coeff, source: "FieldSpec") -> Coeff:
        """Map a scalar of ``source`` into this field (Q -> F_p or identity)."""
        if source == self:
            return a
        if source.is_rational and not self.is_rational:
            return reduce_mod_p(a, self.characteristic)
        raise FieldMismatch(f"No canonical map from {source} to {self}")

    def format(self, a: Coeff) -> str:
        """``"num/den"`` with the denominator omitted when 1; residues as decimal integers."""
        if self.is_rational:
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def parse(self, text: str) -> Coeff:
        try:
            value = Fraction(text.strip())
        except ValueError:
            raise ValueError(f"Cannot parse coefficient {text!r}")
        return self.convert(value)

    def __str__(self):
        return "QQ" if self.is_rational else f"GF({self.characteristic})"


QQ = FieldSpec(0)

"""
Polynomials of the semigroup algebra K[S] stored on semigroup exponents, matrix term orders with
weight refinements, and Gröbner degenerations.
"""
import functools
import logging
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import Matrix

from .coeff import Coeff, FieldSpec
from .errors import AmbientMismatch, FieldMismatch, InvalidOrder, NonIntegralWeight, ZeroPolynomial
from .semigroup import AffineSemigroup, Exponent, add, dot

logger = logging.getLogger(__name__)


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def integral_row(row: Sequence) -> Tuple[int, ...]:
    """Scale a rational weight by the lcm of its denominators; positive scaling keeps every comparison."""
    row = [Fraction(a) for a in row]
    common = lcm(*(a.denominator for a in row)) if row else 1
    return tuple(int(a * common) for a in row)


@dataclass(frozen=True)
class TermOrder:
    """
    Lexicographic comparison of the images of an exponent under the weight rows, then under the rows of
    an invertible integer base matrix.

    ``TermOrder(base, (w,))`` is the refinement of ``base`` by the weight ``w``; the fan sweep uses two
    weight rows to stand for a weight taken infinitesimally past a ray.
    """

    base_matrix: Tuple[Tuple[int, ...], ...]
    weight_stack: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        base = tuple(tuple(int(a) for a in row) for row in self.base_matrix)
        object.__setattr__(self, "base_matrix", base)
        object.__setattr__(self, "weight_stack", tuple(integral_row(w) for w in self.weight_stack))
        d = len(base)
        if any(len(row) != d for row in base) or Matrix(base).det() == 0:
            raise InvalidOrder(f"Base matrix {base} is not an invertible square matrix")
        if any(len(w) != d for w in self.weight_stack):
            raise InvalidOrder(f"Weight rows must have length {d}")
        object.__setattr__(self, "_rows", self.weight_stack + base)

    def key(self, u: Exponent) -> Tuple[int, ...]:
        return tuple(dot(row, u) for row in self._rows)

    def compare(self, u: Exponent, v: Exponent) -> Ordering:
        ku, kv = self.key(u), self.key(v)
        if ku == kv:
            return Ordering.EQUAL
        return Ordering.GREATER if ku > kv else Ordering.LESS

    def refine(self, w: Sequence) -> "TermOrder":
        """The order comparing by ``w`` first and breaking ties with this order."""
        return TermOrder(self.base_matrix, (integral_row(w),) + self.weight_stack)

    def is_positive_on(self, semigroup: AffineSemigroup) -> bool:
        zero = (0,) * len(self._rows)
        return all(self.key(g) > zero for g in semigroup.generators)

    def validate(self, semigroup: AffineSemigroup) -> "TermOrder":
        """
        Certify ``u ≻ 0`` for every nonzero ``u`` in the semigroup: lexicographically positive key
        vectors are closed under addition, so checking the generators suffices.
        """
        if len(self.base_matrix) != semigroup.dim:
            raise InvalidOrder(f"Order of dimension {len(self.base_matrix)} on a {semigroup.dim}-dimensional semigroup")
        for g in semigroup.generators:
            if not self.key(g) > (0,) * len(self._rows):
                raise InvalidOrder(f"Generator {g} is not positive under {self}")
        return self

    def to_dict(self) -> dict:
        return {
            "weight_stack": [list(w) for w in self.weight_stack],
            "base_matrix": [list(row) for row in self.base_matrix],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TermOrder":
        return cls(
            base_matrix=tuple(tuple(row) for row in data["base_matrix"]),
            weight_stack=tuple(tuple(w) for w in data.get("weight_stack", ())),
        )


class SemigroupPolynomial:
    """
    A finite map from semigroup exponents to nonzero coefficients of one field.

    Instances are treated as immutable; all operations return new polynomials.
    """

    __slots__ = ("ambient", "field", "terms")

    def __init__(self, ambient: AffineSemigroup, field: FieldSpec, terms: Optional[Mapping[Exponent, Coeff]] = None):
        self.ambient = ambient
        self.field = field
        self.terms: Dict[Exponent, Coeff] = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def from_terms(cls, ambient: AffineSemigroup, field: FieldSpec, terms: Iterable[Tuple[Sequence[int], object]]):
        """Validated construction; repeated exponents are summed."""
        result: Dict[Exponent, Coeff] = {}
        for exponent, value in terms:
            exponent = ambient.check(exponent)
            result[exponent] = field.add(result.get(exponent, field.zero), field.convert(value))
        return cls(ambient, field, result)

    @classmethod
    def monomial(cls, ambient: AffineSemigroup, field: FieldSpec, exponent: Sequence[int], coeff=1):
        return cls.from_terms(ambient, field, [(exponent, coeff)])

    @classmethod
    def constant(cls, ambient: AffineSemigroup, field: FieldSpec, coeff=1):
        return cls.monomial(ambient, field, (0,) * ambient.dim, coeff)

    @classmethod
    def binomial(cls, ambient: AffineSemigroup, field: FieldSpec, exponent: Sequence[int]):
        """``x^exponent - 1``"""
        return cls.from_terms(ambient, field, [(exponent, 1), ((0,) * ambient.dim, -1)])

    def _compatible(self, other: "SemigroupPolynomial"):
        if self.field != other.field:
            raise FieldMismatch(f"Cannot combine polynomials over {self.field} and {other.field}")
        if self.ambient is not other.ambient and self.ambient != other.ambient:
            raise AmbientMismatch("Polynomials live in different semigroup algebras")

    def _new(self, terms: Mapping[Exponent, Coeff]) -> "SemigroupPolynomial":
        return SemigroupPolynomial(self.ambient, self.field, terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SemigroupPolynomial):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __repr__(self):
        body = " + ".join(f"{self.field.format(c)}*x^{e}" for e, c in sorted(self.terms.items(), reverse=True))
        return f"SemigroupPolynomial({body or '0'} over {self.field})"

    @property
    def support(self) -> List[Exponent]:
        return list(self.terms)

    def coeff(self, exponent: Exponent) -> Coeff:
        return self.terms.get(tuple(exponent), self.field.zero)

    def __add__(self, other: "SemigroupPolynomial") -> "SemigroupPolynomial":
        self._compatible(other)
        field = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            value = field.add(terms[e], c) if e in terms else c
            if value:
                terms[e] = value
            else:
                del terms[e]
        return self._new(terms)

    def __neg__(self) -> "SemigroupPolynomial":
        return self._new({e: self.field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "SemigroupPolynomial") -> "SemigroupPolynomial":
        return self + (-other)

    def scale(self, c: Coeff) -> "SemigroupPolynomial":
        c = self.field.convert(c)
        return self._new({e: self.field.mul(c, v) for e, v in self.terms.items()})

    def shift(self, exponent: Exponent, c: Optional[Coeff] = None) -> "SemigroupPolynomial":
        """Multiply by the term ``c·x^exponent`` (``exponent`` must be a semigroup element)."""
        if c is None:
            return self._new({add(e, exponent): v for e, v in self.terms.items()})
        return self._new({add(e, exponent): self.field.mul(c, v) for e, v in self.terms.items()})

    def __mul__(self, other) -> "SemigroupPolynomial":
        if not isinstance(other, SemigroupPolynomial):
            return self.scale(other)
        self._compatible(other)
        field = self.field
        terms: Dict[Exponent, Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = add(e1, e2)
                product = field.mul(c1, c2)
                terms[e] = field.add(terms[e], product) if e in terms else product
        return self._new(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "SemigroupPolynomial":
        if exponent < 0:
            raise ValueError("Negative powers are not polynomials")
        result = SemigroupPolynomial.constant(self.ambient, self.field)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def sorted_terms(self, order: TermOrder) -> List[Tuple[Exponent, Coeff]]:
        """Terms in descending order."""
        return sorted(self.terms.items(), key=lambda item: order.key(item[0]), reverse=True)

    def leading(self, order: TermOrder) -> Tuple[Exponent, Coeff]:
        if not self.terms:
            raise ZeroPolynomial("The zero polynomial has no leading term")
        exponent = max(self.terms, key=order.key)
        return exponent, self.terms[exponent]

    def monic(self, order: TermOrder) -> "SemigroupPolynomial":
        _, c = self.leading(order)
        return self.scale(self.field.inv(c))

    def weight_degree(self, w: Sequence):
        if not self.terms:
            raise ZeroPolynomial("The zero polynomial has no weight degree")
        return max(dot(w, e) for e in self.terms)

    def initial_form(self, w: Sequence) -> "SemigroupPolynomial":
        top = self.weight_degree(w)
        return self._new({e: c for e, c in self.terms.items() if dot(w, e) == top})

    def degeneration(self, w: Sequence) -> "Degeneration":
        """
        ``f_t = t^{d_w(f)} f(t^{-w·a_1} x^{a_1}, ...)``: the term ``x^u`` picks up ``t^{d_w(f) - w·u}``.
        """
        top = self.weight_degree(w)
        layers: Dict[int, Dict[Exponent, Coeff]] = {}
        for e, c in self.terms.items():
            power = Fraction(top - dot(w, e))
            if power.denominator != 1:
                raise NonIntegralWeight(f"Weight {tuple(w)} gives the non-integral t-power {power} on {e}")
            layers.setdefault(int(power), {})[e] = c
        return Degeneration(self.ambient, self.field, {k: self._new(v) for k, v in layers.items()})

    def change_field(self, field: FieldSpec) -> "SemigroupPolynomial":
        """Coefficient-wise image under Q -> F_p."""
        return SemigroupPolynomial(self.ambient, field, {e: field.image_of(c, self.field) for e, c in self.terms.items()})

    def reduce_mod_p(self, p: int) -> "SemigroupPolynomial":
        return self.change_field(FieldSpec(p))

    def has_integral_coefficients(self) -> bool:
        return all(self.field.is_integral(c) for c in self.terms.values())

    def render(self, order: TermOrder, names: Optional[Mapping[Exponent, str]] = None) -> str:
        """Human readable form with exponents written as products of named generators."""
        names = names or {}
        labels = {g: names.get(g, f"a{i + 1}") for i, g in enumerate(self.ambient.generators)}
        pieces = []
        for e, c in self.sorted_terms(order):
            text = self.field.format(c)
            negative = text.startswith("-")
            text = text.lstrip("-")
            word = _monomial_word(self.ambient, e, labels)
            if word and text == "1":
                body = word
            elif word:
                body = f"{text}*{word}"
            else:
                body = text
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"{'-' if negative else '+'} {body}")
        return " ".join(pieces) or "0"

    def to_dict(self, order: TermOrder) -> dict:
        return {
            "field": self.field.characteristic,
            "terms": [{"exp": list(e), "coeff": self.field.format(c)} for e, c in self.sorted_terms(order)],
        }

    @classmethod
    def from_dict(cls, ambient: AffineSemigroup, data: dict) -> "SemigroupPolynomial":
        field = FieldSpec(int(data["field"]))
        return cls.from_terms(ambient, field, [(t["exp"], t["coeff"]) for t in data["terms"]])


def _monomial_word(semigroup: AffineSemigroup, exponent: Exponent, labels: Mapping[Exponent, str]) -> str:
    factors = decompose(semigroup, exponent)
    if factors is None:
        return f"x^{exponent}"
    counts: Dict[Exponent, int] = {}
    for g in factors:
        counts[g] = counts.get(g, 0) + 1
    words = []
    for g in semigroup.generators:
        if g in counts:
            words.append(labels[g] if counts[g] == 1 else f"{labels[g]}^{counts[g]}")
    return "*".join(words)


def decompose(semigroup: AffineSemigroup, exponent: Exponent) -> Optional[Tuple[Exponent, ...]]:
    """A shortest expression of ``exponent`` as a sum of generators (earlier generators preferred)."""

    @functools.lru_cache(maxsize=None)
    def search(v: Exponent) -> Optional[Tuple[Exponent, ...]]:
        if not any(v):
            return ()
        best = None
        for g in semigroup.generators:
            rest = tuple(a - b for a, b in zip(v, g))
            if semigroup.contains(rest):
                found = search(rest)
                if found is not None and (best is None or len(found) + 1 < len(best)):
                    best = found + (g,)
        return best

    if not semigroup.contains(exponent):
        return None
    return search(tuple(exponent))


@dataclass(frozen=True)
class Degeneration:
    """A polynomial in ``t`` whose coefficients are semigroup polynomials, keyed by the power of ``t``."""

    ambient: AffineSemigroup
    field: FieldSpec
    layers: Mapping[int, SemigroupPolynomial]

    def evaluate(self, t) -> SemigroupPolynomial:
        t = self.field.convert(t)
        result = SemigroupPolynomial(self.ambient, self.field)
        for power, layer in self.layers.items():
            if power == 0:
                result = result + layer
            elif t:
                result = result + layer.scale(self.field.power(t, power))
        return result

    @property
    def t_degree(self) -> int:
        return max(self.layers)

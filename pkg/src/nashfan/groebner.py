"""
Gröbner bases in the semigroup algebra K[S] of a two dimensional affine semigroup.

Marks need not have a unique least common multiple in S, so every pair of basis elements contributes
one S-polynomial for each minimal common multiple of their marks
(:meth:`~nashfan.semigroup.AffineSemigroup.min_common_multiples`).
"""
import heapq
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .coeff import Coeff, FieldSpec
from .config import get_config
from .errors import AmbientMismatch, FieldMismatch, InvalidOrder, InvariantViolation, NonTermination, ZeroPolynomial
from .poly import Degeneration, SemigroupPolynomial, TermOrder
from .semigroup import AffineSemigroup, Exponent, add, dot

logger = logging.getLogger(__name__)

STRATEGIES = ("normal", "fifo")


@dataclass(frozen=True)
class MarkedPoly:
    poly: SemigroupPolynomial
    mark: Exponent

    def __post_init__(self):
        if tuple(self.mark) not in self.poly.terms:
            raise InvariantViolation(f"Mark {self.mark} is not in the support of the polynomial")

    @classmethod
    def leading(cls, poly: SemigroupPolynomial, order: TermOrder) -> "MarkedPoly":
        mark, _ = poly.leading(order)
        return cls(poly, mark)

    def to_dict(self, order: TermOrder) -> dict:
        return {"mark": list(self.mark), "poly": self.poly.to_dict(order)}


@dataclass(frozen=True)
class Ideal:
    ambient: AffineSemigroup
    field: FieldSpec
    generators: Tuple[SemigroupPolynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.is_zero():
                raise ZeroPolynomial("Ideal generators must be nonzero")
            if g.field != self.field:
                raise FieldMismatch(f"Generator over {g.field} in an ideal over {self.field}")
            if g.ambient != self.ambient:
                raise AmbientMismatch("Generator lives in a different semigroup algebra")

    def change_field(self, field: FieldSpec) -> "Ideal":
        return Ideal(self.ambient, field, tuple(g.change_field(field) for g in self.generators if g.change_field(field)))


@dataclass(frozen=True)
class MarkedBasis:
    """
    Marked Gröbner basis; elements are kept sorted by descending mark so that equal bases compare and
    serialize identically.
    """

    order: TermOrder
    elements: Tuple[MarkedPoly, ...]
    reduced: bool = True

    def __post_init__(self):
        ordered = sorted(self.elements, key=lambda e: self.order.key(e.mark), reverse=True)
        object.__setattr__(self, "elements", tuple(ordered))

    @property
    def marks(self) -> List[Exponent]:
        return [e.mark for e in self.elements]

    @property
    def polys(self) -> List[SemigroupPolynomial]:
        return [e.poly for e in self.elements]

    def __len__(self):
        return len(self.elements)

    def change_field(self, field: FieldSpec) -> "MarkedBasis":
        """Coefficient-wise image; the result is only a basis when the reduction is compatible."""
        return MarkedBasis(
            self.order, tuple(MarkedPoly(e.poly.change_field(field), e.mark) for e in self.elements), self.reduced
        )

    def to_dict(self) -> dict:
        return {
            "order": self.order.to_dict(),
            "reduced": self.reduced,
            "elements": [e.to_dict(self.order) for e in self.elements],
        }

    @classmethod
    def from_dict(cls, ambient: AffineSemigroup, data: dict) -> "MarkedBasis":
        elements = tuple(
            MarkedPoly(SemigroupPolynomial.from_dict(ambient, e["poly"]), tuple(e["mark"])) for e in data["elements"]
        )
        return cls(TermOrder.from_dict(data["order"]), elements, bool(data.get("reduced", True)))


def _reduce(f: SemigroupPolynomial, elements: Sequence[MarkedPoly], order: TermOrder) -> SemigroupPolynomial:
    """Full reduction, always eliminating the largest reducible term with the first applicable element."""
    if not f.terms or not elements:
        return f
    ambient, field = f.ambient, f.field
    work: Dict[Exponent, Coeff] = dict(f.terms)
    heap = [(tuple(-k for k in order.key(e)), e) for e in work]
    heapq.heapify(heap)
    queued = set(work)
    remainder: Dict[Exponent, Coeff] = {}
    while heap:
        _, exponent = heapq.heappop(heap)
        queued.discard(exponent)
        c = work.pop(exponent, None)
        if not c:
            continue
        for element in elements:
            quotient = ambient.divide(element.mark, exponent)
            if quotient is not None:
                break
        else:
            remainder[exponent] = c
            continue
        factor = field.div(c, element.poly.terms[element.mark])
        for e, ce in element.poly.terms.items():
            if e == element.mark:
                continue
            target = add(e, quotient)
            value = field.sub(work.get(target, field.zero), field.mul(factor, ce))
            if value:
                work[target] = value
                if target not in queued:
                    queued.add(target)
                    heapq.heappush(heap, (tuple(-k for k in order.key(target)), target))
            else:
                work.pop(target, None)
    return SemigroupPolynomial(ambient, field, remainder)


def normal_form(f: SemigroupPolynomial, basis: MarkedBasis) -> SemigroupPolynomial:
    """
    The remainder of ``f`` on division by ``basis``: ``f - r`` lies in the ideal of the basis and no
    term of ``r`` is divisible by a mark.
    """
    return _reduce(f, basis.elements, basis.order)


def s_polynomial(a: MarkedPoly, b: MarkedPoly, multiple: Exponent) -> SemigroupPolynomial:
    """The S-polynomial of two marked polynomials at a common multiple of their marks."""
    ambient = a.poly.ambient
    field = a.poly.field
    qa, qb = ambient.divide(a.mark, multiple), ambient.divide(b.mark, multiple)
    if qa is None or qb is None:
        raise InvariantViolation(f"{multiple} is not a common multiple of {a.mark} and {b.mark}")
    return a.poly.shift(qa, field.inv(a.poly.terms[a.mark])) - b.poly.shift(qb, field.inv(b.poly.terms[b.mark]))


def _minimize(elements: Iterable[MarkedPoly], order: TermOrder) -> List[MarkedPoly]:
    # a divisor of a mark is never larger than the mark
    kept: List[MarkedPoly] = []
    for element in sorted(elements, key=lambda e: order.key(e.mark)):
        ambient = element.poly.ambient
        if not any(ambient.divides(k.mark, element.mark) for k in kept):
            kept.append(element)
    return kept


def _tail_reduce(elements: Sequence[MarkedPoly], order: TermOrder) -> List[MarkedPoly]:
    """With minimal marks, reducing every tail once against all elements yields the reduced basis."""
    result = []
    for element in elements:
        field = element.poly.field
        poly = element.poly.scale(field.inv(element.poly.terms[element.mark]))
        head = {element.mark: poly.terms[element.mark]}
        tail = SemigroupPolynomial(poly.ambient, field, {e: c for e, c in poly.terms.items() if e != element.mark})
        reduced = _reduce(tail, elements, order) + SemigroupPolynomial(poly.ambient, field, head)
        result.append(MarkedPoly(reduced, element.mark))
    return result


def interreduce(polys: Iterable[SemigroupPolynomial], order: TermOrder) -> MarkedBasis:
    """
    Autoreduce a list of polynomials: reduce each against the others until no mark divides another,
    then reduce all tails. For the input of a Gröbner basis this returns the reduced Gröbner basis.
    """
    pending = [p for p in polys if p]
    elements: List[MarkedPoly] = []
    while pending:
        h = _reduce(pending.pop(), elements, order)
        if not h:
            continue
        h = h.monic(order)
        mark, _ = h.leading(order)
        keep = []
        for element in elements:
            if h.ambient.divides(mark, element.mark):
                pending.append(element.poly)
            else:
                keep.append(element)
        elements = keep + [MarkedPoly(h, mark)]
    return MarkedBasis(order, tuple(_tail_reduce(_minimize(elements, order), order)), reduced=True)


def buchberger(
    ideal: Ideal,
    order: TermOrder,
    strategy: str = "normal",
    step_budget: Optional[int] = None,
) -> MarkedBasis:
    """
    Compute the reduced marked Gröbner basis of ``ideal``.

    :param ideal: a nonzero ideal of a two dimensional semigroup algebra
    :param order: a term order whose positivity certificate holds on the semigroup
    :param strategy: ``"normal"`` processes pending work by increasing order of the common multiple
        (input generators keyed by their leading exponent), ``"fifo"`` in creation order
    :param step_budget: maximal number of processed queue items; the configured budget by default
    :return: the reduced basis, independent of the input order and of the strategy
    """
    ambient = ideal.ambient
    ambient._require_2d()
    order.validate(ambient)
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown strategy {strategy!r}, expected one of {STRATEGIES}")
    if step_budget is None:
        step_budget = get_config().buchberger_steps

    counter = itertools.count()
    queue: list = []

    def push(priority_exponent: Exponent, item):
        seq = next(counter)
        priority = (order.key(priority_exponent), seq) if strategy == "normal" else (seq,)
        heapq.heappush(queue, (priority, item))

    for g in ideal.generators:
        push(g.leading(order)[0], ("input", g))

    basis: List[MarkedPoly] = []
    steps = 0
    s_pairs = 0
    while queue:
        steps += 1
        if steps > step_budget:
            raise NonTermination(f"Buchberger exceeded {step_budget} steps with {len(basis)} elements")
        _, (kind, payload) = heapq.heappop(queue)
        if kind == "input":
            h = _reduce(payload, basis, order)
        else:
            i, j, multiple = payload
            s_pairs += 1
            h = _reduce(s_polynomial(basis[i], basis[j], multiple), basis, order)
        if not h:
            continue
        h = h.monic(order)
        new = MarkedPoly.leading(h, order)
        k = len(basis)
        basis.append(new)
        for i, element in enumerate(basis[:k]):
            for multiple in ambient.min_common_multiples(element.mark, new.mark):
                push(multiple, ("pair", (i, k, multiple)))

    if not basis:
        raise ZeroPolynomial("The ideal is zero")
    result = MarkedBasis(order, tuple(_tail_reduce(_minimize(basis, order), order)), reduced=True)
    logger.debug(
        "buchberger: %d queue steps, %d S-pairs, %d intermediate and %d final elements",
        steps,
        s_pairs,
        len(basis),
        len(result),
    )
    return result


def is_groebner(basis: MarkedBasis) -> bool:
    """Every S-polynomial at every minimal common multiple of two marks reduces to zero."""
    return not s_pair_residues(basis)


def s_pair_residues(basis: MarkedBasis) -> List[Tuple[Exponent, Exponent, Exponent, SemigroupPolynomial]]:
    residues = []
    for a, b in itertools.combinations(basis.elements, 2):
        for multiple in a.poly.ambient.min_common_multiples(a.mark, b.mark):
            r = normal_form(s_polynomial(a, b, multiple), basis)
            if r:
                residues.append((a.mark, b.mark, multiple, r))
    return residues


def member(f: SemigroupPolynomial, ideal: Ideal, order: TermOrder) -> bool:
    return normal_form(f, buchberger(ideal, order)).is_zero()


def initial_ideal(ideal: Ideal, w: Sequence[int], order: TermOrder) -> List[SemigroupPolynomial]:
    """Initial forms of the reduced basis for ``w`` refined by ``order``; they generate ``in_w(I)``."""
    if not ideal.ambient.sigma.contains(w):
        raise InvalidOrder(f"Weight {tuple(w)} is not in the cone sigma")
    basis = buchberger(ideal, order.refine(w))
    return [element.poly.initial_form(w) for element in basis.elements]


def degenerate_basis(basis: MarkedBasis, w: Sequence[int]) -> List[Degeneration]:
    """Degenerations ``g_t`` of the basis elements; at ``t = 0`` they give ``in_w(g)``."""
    return [element.poly.degeneration(w) for element in basis.elements]


def staircase_dimension(marks: Iterable[Sequence[int]], ambient: AffineSemigroup) -> Union[int, float]:
    """
    Number of semigroup points not divisible by any mark, i.e. ``dim K[S]/<x^m : m in marks>``.

    In facet coordinates divisibility is componentwise. The complement is finite iff both boundary rays
    of the dual cone run into the marked region, i.e. some mark lies on each facet. Then everything is
    covered outside the box spanned by the smallest such marks, which is enumerated exactly.
    Returns ``math.inf`` otherwise.
    """
    ambient._require_2d()
    coordinates = [ambient.facet_coordinates(ambient.check(m)) for m in marks]
    along_first = [y[0] for y in coordinates if y[1] == 0]
    along_second = [y[1] for y in coordinates if y[0] == 0]
    if not along_first or not along_second:
        return math.inf
    box = ambient.lattice_points((0, 0), (min(along_first), min(along_second)))
    count = 0
    for x in box:
        y = ambient.facet_coordinates(x)
        if not any(m[0] <= y[0] and m[1] <= y[1] for m in coordinates):
            count += 1
    return count


def linear_algebra_member(f: SemigroupPolynomial, ideal: Ideal, bound: int) -> bool:
    """
    Membership by exact row reduction, independent of the Gröbner machinery.

    Degree is measured by the interior weight ``n_1 + n_2`` of sigma. Spans all ``x^m g`` with ``g`` a
    generator and total degree at most ``bound`` and tests whether ``f`` lies in the span. Exact for
    non-membership; a member is found once ``bound`` covers some representation of it.
    """
    ambient, field = ideal.ambient, ideal.field
    ambient._require_2d()
    grading = ambient.sigma.interior_point()
    pivots: Dict[Exponent, Dict[Exponent, Coeff]] = {}

    def eliminate(vector: Dict[Exponent, Coeff]) -> Dict[Exponent, Coeff]:
        vector = dict(vector)
        while vector:
            top = max(vector)
            row = pivots.get(top)
            if row is None:
                return vector
            factor = vector[top]
            for e, c in row.items():
                value = field.sub(vector.get(e, field.zero), field.mul(factor, c))
                if value:
                    vector[e] = value
                else:
                    vector.pop(e, None)
        return vector

    for g in ideal.generators:
        slack = bound - g.weight_degree(grading)
        if slack < 0:
            continue
        shifts = [m for m in ambient.lattice_points((0, 0), (slack + 1, slack + 1)) if dot(grading, m) <= slack]
        for m in shifts:
            rest = eliminate(g.shift(m).terms)
            if rest:
                top = max(rest)
                inverse = field.inv(rest[top])
                pivots[top] = {e: field.mul(inverse, c) for e, c in rest.items()}
    logger.debug("linear algebra oracle: %d pivots at degree bound %d", len(pivots), bound)
    return not eliminate(f.terms)

"""
The ideals ``J_n = <x^{a_i} - 1>^{n+1}``, the higher Nobile decision for toric surfaces and certified
witnesses of a non-trivial Gröbner fan in prime characteristic.

A witness is a polynomial ``h`` in ``J_n`` together with an interior weight ``w`` of sigma such that
the ``w``-leading term of ``h`` is the ``n``-th power of an edge monomial. It is built from a linear
relation between ``d + 1`` generators: the linear part of the binomial ``f = y^{λ_left} - y^{λ_right}``
about ``(1, ..., 1)`` maps into ``J_1``.
"""
import functools
import itertools
import logging
import operator
from dataclasses import dataclass
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from joblib import Parallel, delayed
from sympy import Matrix
from tqdm import tqdm

from .coeff import QQ, FieldSpec
from .config import call_with_config
from .errors import InvariantViolation, NotPrime, RegularCone
from .fan import GroebnerFan2, default_order, groebner_fan_2d, is_trivial_fan, regularity_report
from .groebner import Ideal, MarkedBasis, buchberger, normal_form
from .poly import SemigroupPolynomial, TermOrder
from .semigroup import AffineSemigroup, Cone, Exponent, dot, dual_generators, is_regular_cone, primitive, scale

logger = logging.getLogger(__name__)

NON_SINGULAR = "NonSingularTrivialFan"
SINGULAR = "SingularSubdivided"


def build_Jn(semigroup: AffineSemigroup, n: int, field: FieldSpec = QQ) -> Ideal:
    """All products of ``n + 1`` binomials ``x^{a_i} - 1`` taken with repetition."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    binomials = [SemigroupPolynomial.binomial(semigroup, field, a) for a in semigroup.generators]
    products = [
        functools.reduce(operator.mul, factors)
        for factors in itertools.combinations_with_replacement(binomials, n + 1)
    ]
    return Ideal(semigroup, field, tuple(products))


@dataclass(frozen=True)
class Witness:
    """
    ``indices``, ``lambdas`` and ``split`` encode ``Σ_{k<split} λ_k a_{i_k} = Σ_{k>=split} λ_k a_{i_k}``
    with 1-based generator indices; ``delta`` holds the linear part of the binomial in F_p.
    """

    h: SemigroupPolynomial
    w: Exponent
    edge_index: int
    n: int
    indices: Tuple[int, ...]
    lambdas: Tuple[int, ...]
    split: int
    delta: Tuple[int, ...]
    case: str

    @property
    def characteristic(self) -> int:
        return self.h.field.characteristic

    def to_dict(self) -> dict:
        order = default_order(self.h.ambient).refine(self.w)
        return {
            "h": self.h.to_dict(order),
            "w": list(self.w),
            "edge_index": self.edge_index,
            "n": self.n,
            "relation": {"lambda": list(self.lambdas), "split": self.split, "indices": list(self.indices)},
            "delta": list(self.delta),
            "case": self.case,
        }

    @classmethod
    def from_dict(cls, semigroup: AffineSemigroup, data: dict) -> "Witness":
        relation = data["relation"]
        return cls(
            h=SemigroupPolynomial.from_dict(semigroup, data["h"]),
            w=tuple(data["w"]),
            edge_index=int(data["edge_index"]),
            n=int(data["n"]),
            indices=tuple(relation["indices"]),
            lambdas=tuple(relation["lambda"]),
            split=int(relation["split"]),
            delta=tuple(data["delta"]),
            case=data.get("case", ""),
        )


def _p_valuation(value: int, p: int) -> int:
    count = 0
    while value % p == 0:
        value //= p
        count += 1
    return count


def _integral(vector) -> Tuple[int, ...]:
    """Clear the denominators of a sympy rational vector."""
    common = lcm(*(int(v.q) for v in vector))
    return tuple(int(v * common) for v in vector)


def _relation(semigroup: AffineSemigroup, p: int):
    """
    Choose ``d`` independent generators and one more, solve ``λ' = A^{-1} a_{d+1}`` exactly and clear
    denominators. Returns the indices (0-based, positive side first), the coefficients, the split, the
    inverse of ``A``, the chosen independent subset and the case name.
    """
    d, r = semigroup.dim, semigroup.edge_count
    generators = semigroup.generators
    if r > d:
        subset = next(
            combo
            for combo in itertools.combinations(range(r), d)
            if Matrix([generators[i] for i in combo]).rank() == d
        )
        extra = next(i for i in range(r) if i not in subset)
        case = "edges"
    else:
        subset, extra, case = tuple(range(d)), d, "facet"
    inverse = Matrix([generators[i] for i in subset]).T.inv()
    solution = inverse * Matrix(generators[extra])
    common = lcm(*(int(v.q) for v in solution))
    mu = [int(v * common) for v in solution]
    left = [(i, m) for i, m in zip(subset, mu) if m > 0]
    right = [(i, -m) for i, m in zip(subset, mu) if m < 0] + [(extra, common)]
    if not left:
        raise InvariantViolation(f"{generators[extra]} is a negative combination of {subset}; the dual cone is not pointed")
    lambdas = [m for _, m in left + right]
    strip = min(_p_valuation(m, p) for m in lambdas)
    lambdas = [m // p**strip for m in lambdas]
    indices = [i for i, _ in left + right]
    logger.debug("relation over generators %s: %s with split %d (stripped p^%d)", indices, lambdas, len(left), strip)
    return tuple(indices), tuple(lambdas), len(left), inverse, subset, case


def _perturbation(w0: Exponent, rho: Exponent, top: Exponent, others: Sequence[Exponent]) -> Exponent:
    """The smallest ``N >= 1`` with ``(N w0 + rho)·(top - x) > 0`` for all ``x`` in ``others``."""
    bound = 1
    for x in others:
        gap = dot(w0, top) - dot(w0, x)
        if gap <= 0:
            raise InvariantViolation(f"The facet weight {w0} does not separate {top} from {x}")
        bound = max(bound, -(dot(rho, top) - dot(rho, x)) // gap + 1)
    return primitive(tuple(bound * a + b for a, b in zip(w0, rho)))


def _generic_weight(semigroup: AffineSemigroup, exponents: Sequence[Exponent], search_radius: int = 64):
    """A deterministic interior weight with a unique maximum on ``exponents`` and ``0``."""
    rho = primitive(semigroup.sigma.interior_point())
    d = semigroup.dim
    for radius in range(search_radius + 1):
        for offset in itertools.product(range(-radius, radius + 1), repeat=d):
            if max(map(abs, offset), default=0) != radius:
                continue
            w = tuple((radius * radius + 1) * a + b for a, b in zip(rho, offset))
            if not semigroup.in_sigma_interior(w):
                continue
            weights = sorted((dot(w, x) for x in exponents), reverse=True)
            if len(weights) == 1 or weights[0] > weights[1]:
                return primitive(w)
    raise InvariantViolation(f"No weight of radius <= {search_radius} separates {exponents}")


def construct_witness(semigroup: AffineSemigroup, p: int, n: int) -> Witness:
    """
    :param semigroup: the semigroup of a singular cone (any dimension)
    :param p: a prime; witnesses are only constructed in positive characteristic
    :param n: the order, at least 1
    :return: a witness with ``lt_w(h) = δ_i x^{n a_i}`` for an edge generator ``a_i``
    """
    field = FieldSpec(p)
    if p == 0:
        raise NotPrime("Witnesses are constructed in positive characteristic only")
    if n < 1:
        raise ValueError(f"The order must be at least 1, got {n}")
    if semigroup.is_regular:
        raise RegularCone(f"The cone with dual generators {semigroup.generators} is regular")
    generators = semigroup.generators
    indices, lambdas, split, inverse, subset, case = _relation(semigroup, p)
    delta = tuple(
        (m if k < split else -m) % p for k, m in enumerate(lambdas)
    )
    constant = -sum(delta) % p
    h1 = SemigroupPolynomial.from_terms(
        semigroup,
        field,
        [(generators[i], c) for i, c in zip(indices, delta)] + [((0,) * semigroup.dim, constant)],
    )
    if case == "facet":
        # the last edge with a nonzero linear coefficient
        candidates = [i for i, c in zip(indices, delta) if i < semigroup.edge_count and c]
        if not candidates:
            raise InvariantViolation(
                f"p = {p} divides every edge coefficient of the relation {lambdas}, so it divides {generators[indices[-1]]}"
            )
        edge = max(candidates)
        w0 = primitive(_integral(inverse.row(subset.index(edge))))
        rho = primitive(semigroup.sigma.interior_point())
        w = _perturbation(w0, rho, generators[edge], [x for x in h1.terms if x != generators[edge]])
    else:
        w = _generic_weight(semigroup, list(h1.terms))
        top = max(h1.terms, key=lambda x: dot(w, x))
        edge = generators.index(top)
    h = h1 * SemigroupPolynomial.binomial(semigroup, field, generators[edge]) ** (n - 1)
    witness = Witness(
        h=h,
        w=w,
        edge_index=edge + 1,
        n=n,
        indices=tuple(i + 1 for i in indices),
        lambdas=lambdas,
        split=split,
        delta=delta,
        case=case,
    )
    logger.info("witness for p = %d, n = %d: edge %s, weight %s", p, n, generators[edge], w)
    return witness


def _linear_part(lambdas: Sequence[int], split: int, p: int) -> Dict[Tuple[int, ...], int]:
    """
    Expansion of ``prod_{k<split} y_k^λ_k - prod_{k>=split} y_k^λ_k`` in ``z = y - 1`` modulo ``p``,
    truncated after the linear terms.
    """
    size = len(lambdas)

    def multiply(a, b):
        out: Dict[Tuple[int, ...], int] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if sum(e) <= 1:
                    out[e] = (out.get(e, 0) + ca * cb) % p
        return out

    def power(base, k):
        result = {(0,) * size: 1}
        while k:
            if k & 1:
                result = multiply(result, base)
            k >>= 1
            base = multiply(base, base)
        return result

    def monomial(ks):
        result = {(0,) * size: 1}
        for k in ks:
            unit = tuple(int(j == k) for j in range(size))
            result = multiply(result, power({(0,) * size: 1, unit: 1}, lambdas[k]))
        return result

    left, right = monomial(range(split)), monomial(range(split, size))
    keys = set(left) | set(right)
    return {e: (left.get(e, 0) - right.get(e, 0)) % p for e in keys}


def check_witness(witness: Witness, semigroup: AffineSemigroup) -> List[str]:
    """
    Re-check a witness from its data alone. Returns the failed parts among ``relation``,
    ``linear_part``, ``interior`` and ``leading_term``.
    """
    failed = []
    p = witness.characteristic
    generators = semigroup.generators
    size = len(witness.indices)
    indices_valid = (
        size == len(witness.lambdas) == len(witness.delta)
        and all(1 <= i <= len(generators) for i in witness.indices)
        and len(set(witness.indices)) == size
        and 1 <= witness.split < size
    )
    if not indices_valid or any(m < 0 for m in witness.lambdas) or not any(witness.lambdas):
        failed.append("relation")
    else:
        sides = [(0,) * semigroup.dim, (0,) * semigroup.dim]
        for k, (i, m) in enumerate(zip(witness.indices, witness.lambdas)):
            side = 0 if k < witness.split else 1
            sides[side] = tuple(a + b for a, b in zip(sides[side], scale(m, generators[i - 1])))
        if sides[0] != sides[1]:
            failed.append("relation")

    if "relation" in failed or p == 0:
        failed.append("linear_part")
    else:
        expansion = _linear_part(witness.lambdas, witness.split, p)
        constant = expansion.get((0,) * size, 0)
        linear = tuple(expansion.get(tuple(int(j == k) for j in range(size)), 0) for k in range(size))
        expected = tuple(c % p for c in witness.delta)
        field = witness.h.field
        h1 = SemigroupPolynomial.from_terms(
            semigroup,
            field,
            [(generators[i - 1], c) for i, c in zip(witness.indices, expected)]
            + [((0,) * semigroup.dim, -sum(expected))],
        )
        lifted = None
        if 1 <= witness.edge_index <= len(generators) and witness.n >= 1:
            binomial = SemigroupPolynomial.binomial(semigroup, field, generators[witness.edge_index - 1])
            lifted = h1 * binomial ** (witness.n - 1)
        if constant != 0 or linear != expected or lifted is None or lifted != witness.h:
            failed.append("linear_part")

    if len(witness.w) != semigroup.dim or not semigroup.in_sigma_interior(witness.w):
        failed.append("interior")

    if not 1 <= witness.edge_index <= semigroup.edge_count or not witness.h:
        failed.append("leading_term")
    else:
        target = scale(witness.n, generators[witness.edge_index - 1])
        top = max(dot(witness.w, e) for e in witness.h.terms)
        leaders = [e for e in witness.h.terms if dot(witness.w, e) == top]
        if leaders != [target]:
            failed.append("leading_term")
    return failed


def verify_witness(witness: Witness, semigroup: AffineSemigroup) -> bool:
    failed = check_witness(witness, semigroup)
    if failed:
        logger.warning("witness check failed at %s", ", ".join(failed))
    return not failed


@dataclass(frozen=True)
class NobileVerdict:
    verdict: str
    semigroup: AffineSemigroup
    fan: GroebnerFan2
    witness: Optional[Witness] = None

    @property
    def singular(self) -> bool:
        return self.verdict == SINGULAR

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "semigroup": self.semigroup.to_dict(),
            "fan": self.fan.to_dict(),
            "regularity": [{"cell": i, "regular": flag} for i, flag in regularity_report(self.fan)],
            "all_cells_regular": all(flag for _, flag in regularity_report(self.fan)),
            "witness": self.witness.to_dict() if self.witness else None,
        }


def nobile_decide(cone: Cone, n: int, field: FieldSpec = QQ, base_order: Optional[TermOrder] = None) -> NobileVerdict:
    """
    Compute the Gröbner fan of ``J_n`` on the normalized coordinates of ``cone`` and decide whether the
    normalized higher Nash blowup is trivial. A singular cone must give a subdivided fan.
    """
    cone._require_2d()
    semigroup = dual_generators(cone)
    fan = groebner_fan_2d(build_Jn(semigroup, n, field), base_order=base_order or default_order(semigroup))
    regular, trivial = is_regular_cone(semigroup.sigma), is_trivial_fan(fan)
    if regular != trivial:
        raise InvariantViolation(
            f"Cone {cone.rays} is {'regular' if regular else 'singular'} but its fan for n = {n} over {field} "
            f"has {len(fan.cells)} cells"
        )
    if regular:
        return NobileVerdict(NON_SINGULAR, semigroup, fan)
    witness = None
    if field.characteristic:
        witness = construct_witness(semigroup, field.characteristic, n)
        if not verify_witness(witness, semigroup):
            raise InvariantViolation(f"The constructed witness for {cone.rays} does not verify")
    return NobileVerdict(SINGULAR, semigroup, fan, witness)


def non_membership_failures(
    semigroup: AffineSemigroup,
    n: int,
    field: FieldSpec = QQ,
    order: Optional[TermOrder] = None,
    basis: Optional[MarkedBasis] = None,
) -> List[Tuple[Exponent, int]]:
    """Pairs ``(a_i, m)`` with ``1 <= m <= n`` and ``(x^{a_i} - 1)^m`` in ``J_n``."""
    if basis is None:
        basis = buchberger(build_Jn(semigroup, n, field), order or default_order(semigroup))
    failures = []
    for a in semigroup.generators:
        binomial = SemigroupPolynomial.binomial(semigroup, field, a)
        power = binomial
        for m in range(1, n + 1):
            if normal_form(power, basis).is_zero():
                failures.append((a, m))
            power = power * binomial
    return failures


def non_membership_suite(semigroup: AffineSemigroup, n: int, field: FieldSpec = QQ) -> bool:
    failures = non_membership_failures(semigroup, n, field)
    if failures:
        logger.warning("powers below n + 1 found in J_%d: %s", n, failures)
    return not failures


def corpus_record(cone: Cone, n: int, p: int, check_membership: bool = True) -> dict:
    field = FieldSpec(p)
    verdict = nobile_decide(cone, n, field)
    return {
        "rays": [list(ray) for ray in cone.rays],
        "n": n,
        "p": p,
        "regular_cone": is_regular_cone(cone),
        "verdict": verdict.verdict,
        "cells": len(verdict.fan.cells),
        "witness_verified": verify_witness(verdict.witness, verdict.semigroup) if verdict.witness else None,
        "non_membership": non_membership_suite(verdict.semigroup, n, field) if check_membership else None,
    }


def sweep_corpus(
    cones: Sequence[Cone],
    n_values: Sequence[int],
    characteristics: Sequence[int],
    jobs: int = 1,
    progress: bool = False,
    check_membership: bool = True,
    ignore_local: bool = False,
) -> List[dict]:
    """Run :func:`nobile_decide` on every combination; records come back in submission order."""
    tasks = list(itertools.product(cones, n_values, characteristics))
    return Parallel(n_jobs=jobs)(
        delayed(call_with_config)(ignore_local, corpus_record, cone, n, p, check_membership)
        for cone, n, p in tqdm(tasks, desc="corpus", disable=not progress)
    )

"""
The A_3 surface ``xy = z^4``: the expected leading exponents ``P_n``, the explicit families ``g_n``,
``h_n`` and ``G_n`` in ``Z[u, u^3v^4, uv]`` and a verification pipeline comparing them with the
computed reduced Gröbner bases of ``J_n`` over Q and F_p.
"""
import functools
import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from joblib import Parallel, delayed
from tqdm import tqdm

from .coeff import QQ, FieldSpec
from .config import call_with_config
from .constants import A3_CRITICAL_RAY, A3_GENERATORS, A3_ORDER_MATRIX, A3_RAYS, A3_THETA_SHIFT, U, U3V4, UV
from .errors import InvariantViolation, NashFanError, ParityError
from .fan import cone_of_basis, groebner_fan_2d
from .groebner import MarkedBasis, buchberger, interreduce, normal_form, staircase_dimension
from .nash import build_Jn, non_membership_failures
from .poly import SemigroupPolynomial, TermOrder
from .semigroup import AffineSemigroup, Cone, Exponent, add, det2, dual_generators, is_regular_cone, scale

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=None)
def a3_semigroup() -> AffineSemigroup:
    semigroup = dual_generators(Cone.from_rays(A3_RAYS))
    if semigroup.generators != A3_GENERATORS:
        raise InvariantViolation(f"Unexpected A_3 generators {semigroup.generators}")
    return semigroup


def a3_order() -> TermOrder:
    return TermOrder(A3_ORDER_MATRIX).validate(a3_semigroup())


@dataclass(frozen=True)
class PnSet:
    n: int
    labeled: Tuple[Tuple[str, Exponent], ...]

    @property
    def points(self) -> Tuple[Exponent, ...]:
        return tuple(point for _, point in self.labeled)

    def __len__(self):
        return len(self.labeled)

    def __getitem__(self, label: str) -> Exponent:
        return dict(self.labeled)[label]

    @property
    def p(self) -> Exponent:
        return self["p"]

    @property
    def s(self) -> Exponent:
        return self["s"]


def pn_set(n: int) -> PnSet:
    """The points ``p_n``, ``q_n^i``, ``r_n^j`` and ``s_n``, in that order."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    step = (1, 2)
    if n % 2:
        p = ((n + 3) // 2, 0)
        q0 = add(((n + 3) // 2, 1), scale((n - 1) // 2, step))
        q_count, r_count = (n - 1) // 2 + 1, (n - 1) // 2 + 1
        s = scale((n + 1) // 2, U3V4)
    else:
        p = ((n + 2) // 2, 0)
        q0 = add(p, scale(n // 2, step))
        q_count, r_count = (n - 2) // 2 + 1, n // 2 + 1
        s = scale((n + 2) // 2, U3V4)
    r0 = add(q0, (0, 1))
    labeled = [("p", p)]
    labeled += [(f"q{i}", add(q0, scale(-i, step))) for i in range(q_count)]
    labeled += [(f"r{j}", add(r0, scale(j, step))) for j in range(r_count)]
    labeled.append(("s", s))
    return PnSet(n, tuple(labeled))


def theta(points: Sequence[Exponent]) -> List[Exponent]:
    return [add(point, A3_THETA_SHIFT) for point in points]


def _poly(terms, field: FieldSpec) -> SemigroupPolynomial:
    return SemigroupPolynomial.from_terms(a3_semigroup(), field, terms)


def _binomial(exponent: Exponent, field: FieldSpec) -> SemigroupPolynomial:
    return SemigroupPolynomial.binomial(a3_semigroup(), field, exponent)


def g1(field: FieldSpec = QQ) -> SemigroupPolynomial:
    """``u^3v^4 + u - 4uv + 2``"""
    return _poly([((3, 4), 1), ((1, 0), 1), ((1, 1), -4), ((0, 0), 2)], field)


def h2(field: FieldSpec = QQ) -> SemigroupPolynomial:
    """``u^2 - 4u^2v - u^3v^4 + 6u^2v^2 + u - 4uv + 1``"""
    return _poly(
        [((2, 0), 1), ((2, 1), -4), ((3, 4), -1), ((2, 2), 6), ((1, 0), 1), ((1, 1), -4), ((0, 0), 1)],
        field,
    )


def gn(n: int, field: FieldSpec = QQ) -> SemigroupPolynomial:
    if n < 1 or n % 2 == 0:
        raise ParityError(f"g_n is defined for odd n, got {n}")
    return g1(field) ** ((n + 1) // 2)


@functools.lru_cache(maxsize=None)
def hn(n: int, field: FieldSpec = QQ) -> SemigroupPolynomial:
    """``h_4 = g_1 h_2 - (u - 1)(uv - 1)^4`` and ``h_n = g_1 h_{n-2} - (uv - 1)^4 h_{n-4}`` beyond."""
    if n < 2 or n % 2:
        raise ParityError(f"h_n is defined for even n >= 2, got {n}")
    if n == 2:
        return h2(field)
    quartic = _binomial(UV, field) ** 4
    if n == 4:
        return g1(field) * h2(field) - _binomial(U, field) * quartic
    return g1(field) * hn(n - 2, field) - quartic * hn(n - 4, field)


@functools.lru_cache(maxsize=None)
def _gn_family(n: int, field: FieldSpec) -> Tuple[SemigroupPolynomial, ...]:
    u, uv, u3v4 = (_binomial(a, field) for a in (U, UV, U3V4))
    if n == 1:
        return (g1(field), uv**2, u * uv, u**2)
    previous = _gn_family(n - 1, field)
    if n == 2:
        dropped, added = u**2, (h2(field), u3v4 * g1(field))
    elif n % 2:
        dropped, added = u3v4 * gn(n - 2, field), (u * hn(n - 1, field), gn(n, field))
    else:
        dropped, added = u * hn(n - 2, field), (hn(n, field), u3v4 * gn(n - 1, field))
    if dropped not in previous:
        raise InvariantViolation(f"G_{n - 1} does not contain the element to drop")
    return tuple(uv * f for f in previous if f != dropped) + added


def Gn_family(n: int, field: FieldSpec = QQ) -> List[SemigroupPolynomial]:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return list(_gn_family(n, field))


def critical_ray(n: int) -> Exponent:
    """The second ray of the blowup cell next to ``(2, -1)``."""
    return (2 * n - 2, -n + 2) if n % 2 else (2 * n, -n + 1)


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class A3Report:
    n: int
    p: int
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, name: str, passed: bool, **detail) -> Check:
        check = Check(name, bool(passed), detail)
        self.checks.append(check)
        if not check.passed:
            logger.warning("A_3 check %s failed for n = %d, p = %d: %s", name, self.n, self.p, detail)
        return check

    def to_dict(self) -> dict:
        return {"n": self.n, "p": self.p, "checks": [check.to_dict() for check in self.checks]}


def _first_difference(expected: MarkedBasis, computed: MarkedBasis) -> Optional[dict]:
    """The first element and exponent where two bases differ, or None."""
    for a, b in itertools.zip_longest(expected.elements, computed.elements):
        if a is None or b is None or a.mark != b.mark:
            return {
                "expected_mark": list(a.mark) if a else None,
                "computed_mark": list(b.mark) if b else None,
            }
        if a.poly != b.poly:
            for exponent in sorted(set(a.poly.terms) | set(b.poly.terms)):
                if a.poly.coeff(exponent) != b.poly.coeff(exponent):
                    return {
                        "mark": list(a.mark),
                        "exp": list(exponent),
                        "expected": a.poly.field.format(a.poly.coeff(exponent)),
                        "computed": b.poly.field.format(b.poly.coeff(exponent)),
                    }
    return None


def a3_verify(n: int, p: int = 0, fan_check_nmax: int = 3) -> A3Report:
    """
    Compute the reduced basis of ``J_n`` for the A_3 order over Q or F_p and check it against the
    explicit combinatorics. Every check is reported; failures carry a minimal counterexample.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    field = FieldSpec(p)
    semigroup, order = a3_semigroup(), a3_order()
    report = A3Report(n, p)
    ideal = build_Jn(semigroup, n, field)
    basis = buchberger(ideal, order)
    rational = basis if p == 0 else buchberger(build_Jn(semigroup, n, QQ), order)

    expected = set(pn_set(n).points)
    computed = set(basis.marks)
    report.add(
        "marks_equal_pn",
        computed == expected,
        missing=sorted(map(list, expected - computed)),
        extra=sorted(map(list, computed - expected)),
    )

    if p == 0:
        offending = next(
            (
                {"mark": list(e.mark), "exp": list(x), "coeff": field.format(c)}
                for e in basis.elements
                for x, c in e.poly.terms.items()
                if not field.is_integral(c)
            ),
            None,
        )
        report.add("integral_coefficients", offending is None, **(offending or {}))

    dimension = staircase_dimension(basis.marks, semigroup)
    report.add(
        "staircase_dimension",
        dimension == (n + 1) * (n + 2) // 2,
        computed=dimension if dimension != float("inf") else "inf",
        expected=(n + 1) * (n + 2) // 2,
    )

    if p:
        try:
            image = rational.change_field(field)
            difference = _first_difference(image, basis)
        except NashFanError as e:
            difference = {"error": str(e)}
        report.add("mod_p_image", difference is None, **(difference or {}))

    sigma = semigroup.sigma
    expected_cell = Cone((A3_CRITICAL_RAY, critical_ray(n)))
    try:
        cell: Optional[Cone] = cone_of_basis(basis, sigma)
    except NashFanError as e:
        cell = None
        report.add("cell_rays", False, error=str(e))
    if cell is not None:
        report.add(
            "cell_rays",
            cell == expected_cell,
            computed=[list(r) for r in cell.rays],
            expected=[list(r) for r in expected_cell.rays],
        )
        determinant = det2(*cell.rays)
        report.add(
            "cell_non_regular",
            abs(determinant) == 2 and not is_regular_cone(cell),
            determinant=determinant,
        )

    family = Gn_family(n, field)
    outside = [f.render(order) for f in family if not normal_form(f, basis).is_zero()]
    reduced = interreduce(family, order)
    difference = _first_difference(basis, reduced)
    report.add("gn_family_reduces", not outside and difference is None, outside_ideal=outside, **(difference or {}))

    failures = non_membership_failures(semigroup, n, field, order, basis)
    report.add("non_membership", not failures, members=[[list(a), m] for a, m in failures])

    u, uv, u3v4 = (_binomial(a, field) for a in (U, UV, U3V4))
    j0 = _poly([((3, 3), 1), ((2, 2), 1), ((1, 1), 1), ((0, 0), 1)], field) * uv - _poly([((3, 4), 1)], field) * u
    report.add("j0_two_generators", j0 == u3v4)

    certificate = (
        -(u**2 * u3v4)
        + _poly([((2, 2), 1), ((1, 1), 2), ((0, 0), 3)], field) * u * uv**2
        + _poly([((1, 1), -1), ((0, 0), -3)], field) * uv**3
    )
    report.add("h2_certificate", certificate == h2(field))

    if p:
        try:
            rational_cell = cone_of_basis(rational, sigma)
            report.add(
                "cone_independent_of_characteristic",
                cell == rational_cell,
                rational=[list(r) for r in rational_cell.rays],
            )
        except NashFanError as e:
            report.add("cone_independent_of_characteristic", False, error=str(e))

    if n <= fan_check_nmax and cell is not None:
        fan = groebner_fan_2d(ideal, sigma, order)
        cells = [c.rays for c in fan.cells]
        report.add("cell_in_fan", cell in cells, cells=[[list(r) for r in c.rays] for c in cells])

    logger.info("A_3 n = %d, p = %d: %s", n, p, "pass" if report.passed else "FAIL")
    return report


def a3_run(
    n_values: Sequence[int],
    primes: Sequence[int],
    jobs: int = 1,
    progress: bool = False,
    fan_check_nmax: int = 3,
    ignore_local: bool = False,
) -> List[A3Report]:
    """Independent ``(n, p)`` runs, returned in ``(n, p)`` order."""
    tasks = list(itertools.product(n_values, primes))
    return Parallel(n_jobs=jobs)(
        delayed(call_with_config)(ignore_local, a3_verify, n, p, fan_check_nmax)
        for n, p in tqdm(tasks, desc="a3", disable=not progress)
    )

"""
The Gröbner fan of an ideal of K[S] restricted to sigma, for two dimensional semigroups.

The cell of a reduced marked basis ``B`` is ``{w in sigma : (α - β)·w >= 0 for all (g, α) in B and
β in supp(g)}``. The fan is swept from the first ray of sigma to the second: at a ray ``ρ`` the basis for
the weight just past ``ρ`` is computed exactly with the weight stack ``[ρ, ρ_end]``, and its cell yields
the next ray.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix

from .config import get_config
from .errors import EmptyInterior, InvariantViolation, NonTermination
from .groebner import Ideal, MarkedBasis, buchberger
from .poly import TermOrder
from .semigroup import AffineSemigroup, Cone, Exponent, det2, dot, is_regular_cone, primitive, sub

logger = logging.getLogger(__name__)


def default_order(semigroup: AffineSemigroup) -> TermOrder:
    """
    The configured base matrix when it is positive on the semigroup, otherwise the interior weight
    ``ρ_1 + ρ_2`` of sigma completed by a unit vector.
    """
    order = TermOrder(tuple(get_config().base_matrix))
    if len(order.base_matrix) == semigroup.dim and order.is_positive_on(semigroup):
        return order
    interior = semigroup.sigma.interior_point()
    for i in range(semigroup.dim):
        rows = [interior] + [tuple(int(j == k) for k in range(semigroup.dim)) for j in range(semigroup.dim) if j != i]
        if Matrix(rows).det() != 0:
            logger.info("configured order is not positive on the semigroup, using rows %s", rows)
            return TermOrder(tuple(rows)).validate(semigroup)
    raise InvariantViolation(f"No unit vectors complete {interior} to a basis")


def cone_of_basis(basis: MarkedBasis, sigma: Cone) -> Cone:
    """Intersect sigma with the half planes ``(α - β)·w >= 0``; returns the oriented cell."""
    sigma._require_2d()
    first, second = sigma.rays
    for element in basis.elements:
        for exponent in element.poly.terms:
            if exponent == element.mark:
                continue
            normal = sub(element.mark, exponent)
            at_first, at_second = dot(normal, first), dot(normal, second)
            if at_first >= 0 and at_second >= 0:
                continue
            if at_first < 0 and at_second < 0:
                raise EmptyInterior(f"The basis cone is trivial: {normal}·w < 0 on all of {first}, {second}")
            # the nonnegative combination of first and second on the wall normal·w = 0
            crossing = tuple(abs(at_second) * a + abs(at_first) * b for a, b in zip(first, second))
            if not any(crossing):
                raise EmptyInterior(f"The basis cone collapsed at {normal}")
            if at_first < 0:
                first = primitive(crossing)
            else:
                second = primitive(crossing)
            if det2(first, second) <= 0:
                raise EmptyInterior(f"The basis cone is the single ray {first}")
    return Cone((first, second))


@dataclass(frozen=True)
class FanCell:
    rays: Cone
    basis: MarkedBasis
    regular: bool

    @property
    def marks(self) -> List[Exponent]:
        return self.basis.marks

    def to_dict(self) -> dict:
        return {
            "rays": [list(ray) for ray in self.rays.rays],
            "regular": self.regular,
            "marks": [list(m) for m in self.marks],
            "basis": self.basis.to_dict(),
        }

    @classmethod
    def from_dict(cls, ambient: AffineSemigroup, data: dict) -> "FanCell":
        return cls(
            rays=Cone(tuple(tuple(ray) for ray in data["rays"])),
            basis=MarkedBasis.from_dict(ambient, data["basis"]),
            regular=bool(data["regular"]),
        )


@dataclass(frozen=True)
class GroebnerFan2:
    sigma: Cone
    cells: Tuple[FanCell, ...]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        if self.cells[0].rays.rays[0] != self.sigma.rays[0] or self.cells[-1].rays.rays[1] != self.sigma.rays[1]:
            raise InvariantViolation("The cells do not sweep sigma from boundary to boundary")
        for before, after in zip(self.cells, self.cells[1:]):
            if before.rays.rays[1] != after.rays.rays[0]:
                raise InvariantViolation(f"Cells {before.rays.rays} and {after.rays.rays} do not share a ray")
            if before.marks == after.marks:
                raise InvariantViolation(f"Adjacent cells at {before.rays.rays[1]} carry the same marks")

    @property
    def rays(self) -> List[Exponent]:
        return [self.sigma.rays[0]] + [cell.rays.rays[1] for cell in self.cells]

    def to_dict(self) -> dict:
        return {"sigma": self.sigma.to_dict(), "cells": [cell.to_dict() for cell in self.cells]}

    @classmethod
    def from_dict(cls, ambient: AffineSemigroup, data: dict) -> "GroebnerFan2":
        return cls(
            sigma=Cone.from_dict(data["sigma"]),
            cells=tuple(FanCell.from_dict(ambient, cell) for cell in data["cells"]),
        )


def groebner_fan_2d(
    ideal: Ideal,
    sigma: Optional[Cone] = None,
    base_order: Optional[TermOrder] = None,
    step_budget: Optional[int] = None,
) -> GroebnerFan2:
    """
    Sweep the Gröbner fan of ``ideal`` across sigma.

    :param ideal: a nonzero proper ideal of a two dimensional semigroup algebra
    :param sigma: the cone of the semigroup, derived from ``ideal`` when omitted
    :param base_order: tie-breaking order, :func:`default_order` when omitted
    :param step_budget: maximal number of cells; the configured budget by default
    :return: the cells from the first ray of sigma to the second
    """
    ambient = ideal.ambient
    ambient._require_2d()
    sigma = sigma or ambient.sigma
    if sigma != ambient.sigma:
        raise InvariantViolation(f"Cone {sigma.rays} is not the cone of the semigroup {ambient.sigma.rays}")
    base_order = base_order or default_order(ambient)
    if base_order.weight_stack:
        raise InvariantViolation("The base order of a fan sweep must not carry weights")
    if step_budget is None:
        step_budget = get_config().sweep_steps
    start, end = sigma.rays
    cells: List[FanCell] = []
    ray = start
    while True:
        if len(cells) >= step_budget:
            raise NonTermination(f"Fan sweep exceeded {step_budget} cells")
        basis = buchberger(ideal, TermOrder(base_order.base_matrix, (ray, end)))
        cell = cone_of_basis(basis, sigma)
        if cell.rays[0] != ray:
            raise InvariantViolation(f"The cell {cell.rays} past {ray} does not start at {ray}")
        cells.append(FanCell(cell, basis, is_regular_cone(cell)))
        logger.debug("fan cell %d: rays %s, %d basis elements", len(cells), cell.rays, len(basis))
        ray = cell.rays[1]
        if ray == end:
            break
    logger.info("Gröbner fan of %d cells on %s", len(cells), sigma.rays)
    return GroebnerFan2(sigma, tuple(cells))


def is_trivial_fan(fan: GroebnerFan2) -> bool:
    return len(fan.cells) == 1 and fan.cells[0].rays == fan.sigma


def regularity_report(fan: GroebnerFan2) -> List[Tuple[int, bool]]:
    return [(i, cell.regular) for i, cell in enumerate(fan.cells)]


def cell_of_weight(fan: GroebnerFan2, w: Sequence[int]) -> List[int]:
    """Indices of the cells containing ``w``; two when ``w`` spans a wall, none outside sigma."""
    return [i for i, cell in enumerate(fan.cells) if cell.rays.contains(w)]

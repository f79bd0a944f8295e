import pytest

from nashfan.coeff import QQ, FieldSpec
from nashfan.constants import A3_ORDER_MATRIX
from nashfan.errors import EmptyInterior, InvariantViolation
from nashfan.fan import (
    GroebnerFan2,
    cell_of_weight,
    cone_of_basis,
    default_order,
    groebner_fan_2d,
    is_trivial_fan,
    regularity_report,
)
from nashfan.groebner import Ideal, MarkedBasis, MarkedPoly, buchberger, initial_ideal
from nashfan.nash import build_Jn
from nashfan.poly import SemigroupPolynomial, TermOrder
from nashfan.semigroup import Cone, add, det2
from nashfan.svg import SINGULAR_FILL, render_svg


@pytest.fixture(scope="module")
def a3_fan(a3, order):
    return groebner_fan_2d(build_Jn(a3, 1), base_order=order)


def test_default_order(a3, plane, a1):
    assert default_order(a3).base_matrix == A3_ORDER_MATRIX
    assert default_order(a1).base_matrix == A3_ORDER_MATRIX
    assert default_order(plane).base_matrix == ((1, 1), (0, 1))


def test_cone_of_j1_basis(a3, j1_basis):
    assert cone_of_basis(j1_basis, a3.sigma) == Cone(((2, -1), (0, 1)))


def test_cone_of_j3_basis(a3, order):
    basis = buchberger(build_Jn(a3, 3), order)
    assert cone_of_basis(basis, a3.sigma) == Cone(((2, -1), (4, -1)))


def test_cone_of_principal_monomial_ideal(a3, order):
    basis = buchberger(Ideal(a3, QQ, (SemigroupPolynomial.monomial(a3, QQ, (1, 1)),)), order)
    assert cone_of_basis(basis, a3.sigma) == a3.sigma


def test_cone_of_basis_empty_interior(a3, order):
    element = MarkedPoly(SemigroupPolynomial.binomial(a3, QQ, (1, 0)), (0, 0))
    with pytest.raises(EmptyInterior):
        cone_of_basis(MarkedBasis(order, (element,), reduced=False), a3.sigma)


def test_a3_fan(a3_fan, a3):
    assert not is_trivial_fan(a3_fan)
    assert len(a3_fan.cells) >= 2
    assert a3_fan.rays[0] == (4, -3) and a3_fan.rays[-1] == (0, 1)
    assert all(det2(a, b) > 0 for a, b in zip(a3_fan.rays, a3_fan.rays[1:]))
    cells = [cell.rays for cell in a3_fan.cells]
    assert Cone(((2, -1), (0, 1))) in cells
    index = cells.index(Cone(((2, -1), (0, 1))))
    assert (index, False) in regularity_report(a3_fan)
    assert set(a3_fan.cells[index].marks) == {(2, 0), (2, 1), (2, 2), (3, 4)}


def test_cells_agree_with_interior_weights(a3_fan, a3, order):
    ideal = build_Jn(a3, 1)
    for cell in a3_fan.cells:
        w = cell.rays.interior_point()
        basis = buchberger(ideal, order.refine(w))
        assert set(basis.elements) == set(cell.basis.elements)
        assert cone_of_basis(basis, a3.sigma) == cell.rays


def test_initial_ideal_is_constant_on_cell_interiors(a3_fan, a3, order):
    ideal = build_Jn(a3, 1)
    for cell in a3_fan.cells:
        first, second = cell.rays.rays
        weights = [add(first, second), add(add(first, first), second)]
        assert all(cell.rays.in_interior(w) for w in weights)
        forms = [set(initial_ideal(ideal, w, order)) for w in weights]
        assert forms[0] == forms[1]
        assert forms[0] == {SemigroupPolynomial.monomial(a3, QQ, m) for m in cell.marks}


def test_cone_of_basis_clips_either_ray(a3, order):
    up = MarkedPoly(SemigroupPolynomial.from_terms(a3, QQ, [((1, 1), 1), ((1, 0), -1)]), (1, 1))
    down = MarkedPoly(SemigroupPolynomial.from_terms(a3, QQ, [((1, 1), 1), ((1, 0), -1)]), (1, 0))
    assert cone_of_basis(MarkedBasis(order, (up,), reduced=False), a3.sigma) == Cone(((1, 0), (0, 1)))
    assert cone_of_basis(MarkedBasis(order, (down,), reduced=False), a3.sigma) == Cone(((4, -3), (1, 0)))


def test_cell_of_weight(a3_fan):
    inside = cell_of_weight(a3_fan, (1, 4))
    assert len(inside) == 1 and a3_fan.cells[inside[0]].rays.rays == ((2, -1), (0, 1))
    assert len(cell_of_weight(a3_fan, (2, -1))) == 2
    assert cell_of_weight(a3_fan, (-1, 0)) == []


def test_a3_fan_j2(a3, order):
    fan = groebner_fan_2d(build_Jn(a3, 2, FieldSpec(3)), base_order=order)
    assert Cone(((2, -1), (4, -1))) in [cell.rays for cell in fan.cells]
    assert not is_trivial_fan(fan)


@pytest.mark.parametrize("n", [1, 2])
def test_regular_cone_fan_is_trivial(plane, n):
    fan = groebner_fan_2d(build_Jn(plane, n))
    assert is_trivial_fan(fan)
    assert regularity_report(fan) == [(0, True)]


def test_sweep_rejects_weighted_base_order(a3, order):
    with pytest.raises(InvariantViolation):
        groebner_fan_2d(build_Jn(a3, 1), base_order=order.refine((1, 1)))


def test_fan_round_trip(a3_fan, a3):
    assert GroebnerFan2.from_dict(a3, a3_fan.to_dict()) == a3_fan


def test_fan_json_shape(a3_fan):
    data = a3_fan.to_dict()
    assert data["sigma"] == {"dim": 2, "rays": [[4, -3], [0, 1]]}
    assert {"rays", "regular", "marks", "basis"} <= set(data["cells"][0])


def test_svg_is_deterministic(a3_fan, a3, order):
    svg = render_svg(a3_fan)
    assert svg == render_svg(groebner_fan_2d(build_Jn(a3, 1), base_order=order))
    assert svg.startswith("<?xml") and svg.rstrip().endswith("</svg>")
    assert 'width="800" height="800"' in svg
    assert svg.count("<path") == len(a3_fan.cells)
    assert SINGULAR_FILL in svg
    assert "(2,-1)" in svg and "(4,-3)" in svg


def test_svg_of_trivial_fan(plane):
    svg = render_svg(groebner_fan_2d(build_Jn(plane, 1)))
    assert SINGULAR_FILL not in svg
    assert svg.count("<path") == 1


@pytest.mark.slow
def test_cells_agree_with_weight_grouping(a3_fan, a3, order):
    ideal = build_Jn(a3, 1)
    for a in range(-40, 41):
        for b in range(-40, 41):
            w = (a, b)
            if not a3.sigma.in_interior(w) or max(abs(a), abs(b)) == 0:
                continue
            cells = cell_of_weight(a3_fan, w)
            if len(cells) != 1 or not a3_fan.cells[cells[0]].rays.in_interior(w):
                continue
            basis = buchberger(ideal, order.refine(w))
            assert set(basis.marks) == set(a3_fan.cells[cells[0]].marks), w

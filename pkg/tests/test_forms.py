import pytest

from coxcert.fields import Field
from coxcert.forms import (
    coeff_vector,
    cubic_pencil,
    form_from_coeffs,
    h0_basis,
    h0_dimension,
    hyperplane_span_points,
    line_through,
    linear_form,
    monomial_basis,
    net_members,
    pencil_members,
    quadric_net,
    restrict_to_hyperplane,
    vanishing_rows,
)
from coxcert.points import ConfigError, PointConfig
from coxcert.polys import MPoly


def test_monomial_basis_shape():
    assert len(monomial_basis(3, 3)) == 10
    assert len(monomial_basis(4, 2)) == 10
    # canonical descending-lex order for plane conics
    assert monomial_basis(3, 2) == [
        (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2),
    ]


def test_coeff_vector_round_trip(f5):
    coeffs = [f5(k % 5) for k in range(10)]
    f = form_from_coeffs(f5, 3, 3, coeffs)
    assert coeff_vector(f, 3) == coeffs


def test_vanishing_mult_one_is_evaluation(f5):
    p = tuple(f5(c) for c in (1, 2, 3))
    rows = vanishing_rows(f5, 3, 2, p, 1)
    assert len(rows) == 1
    f = form_from_coeffs(f5, 3, 2, rows[0])
    # the row's entries are the monomial values at p
    assert f.eval(p) == sum((c * c for c in rows[0]), f5.zero)


def test_h0_unconstrained(f5):
    assert h0_dimension(f5, 3, 3, []) == 10


def test_h0_grid_pencil(grid_f5):
    conds = [(p, 1) for p in grid_f5.points]
    assert h0_dimension(grid_f5.field, 3, 3, conds) == 2


def test_h0_double_point(f5):
    p = tuple(f5(c) for c in (1, 2, 1))
    assert h0_dimension(f5, 3, 3, [(p, 2)]) == 7
    assert h0_dimension(f5, 3, 2, [(p, 2)]) == 3
    for f in h0_basis(f5, 3, 2, [(p, 2)]):
        assert f.eval(p).is_zero
        for i in range(3):
            assert f.derivative(i).eval(p).is_zero


def test_h0_multiplicity_char2():
    # local expansion keeps working where derivative tests would not
    f2 = Field.prime(2)
    p = (f2.one, f2.zero, f2.zero)
    assert h0_dimension(f2, 3, 3, [(p, 3)]) == 4
    for f in h0_basis(f2, 3, 3, [(p, 3)]):
        assert f.degree_in(0) == 0


def test_cubic_pencil_through_grid(grid_f5):
    f, g = cubic_pencil(grid_f5)
    for p in grid_f5.points:
        assert f.eval(p).is_zero and g.eval(p).is_zero
    labels = [lab for lab, _ in pencil_members(f, g)]
    assert len(labels) == 6 and len(set(labels)) == 6


def test_pencil_needs_nine(f5):
    with pytest.raises(ConfigError):
        cubic_pencil(PointConfig.build(f5, [(1, 0, 0), (0, 1, 0)]))


def test_pencil_rejects_fat_system(f5):
    # five points on one line and four on another: every cubic contains
    # both lines, so the system is three-dimensional
    pts = [(k, 0, 1) for k in range(5)] + [(0, 1, 1), (1, 1, 1), (2, 1, 1), (3, 1, 1)]
    with pytest.raises(ConfigError):
        cubic_pencil(PointConfig.build(f5, pts))


def test_pencil_with_fixed_component_fails_downstream(f5):
    # five collinear plus four general points still give a pencil, but one
    # with a fixed line; the locus extraction reports it
    from coxcert.intersect import PositiveDimensionalError, base_locus

    pts = [(k, 0, 1) for k in range(5)] + [(1, 1, 1), (2, 3, 1), (0, 1, 0), (1, 2, 1)]
    f, g = cubic_pencil(PointConfig.build(f5, pts))
    with pytest.raises(PositiveDimensionalError):
        base_locus([f, g])


def test_quadric_net_through_cube(cube_f5):
    q1, q2, q3 = quadric_net(cube_f5)
    for p in cube_f5.points:
        assert all(q.eval(p).is_zero for q in (q1, q2, q3))
    members = net_members(q1, q2, q3)
    assert len(members) == 31
    assert len(set(lab for lab, _ in members)) == 31


def test_line_through_and_span(f5):
    e0 = (f5.one, f5.zero, f5.zero)
    e1 = (f5.zero, f5.one, f5.zero)
    dual = line_through(f5, e0, e1)
    # the line through the first two coordinate points is z = 0
    assert [c.val for c in dual] == [0, 0, 1]
    span = hyperplane_span_points(f5, dual)
    L = linear_form(f5, dual)
    assert restrict_to_hyperplane(L, span).is_zero


def test_restriction_detects_factor(f5):
    x = MPoly.variable(f5, 3, 0)
    y = MPoly.variable(f5, 3, 1)
    z = MPoly.variable(f5, 3, 2)
    f = x * (y * y - x * z)
    span = hyperplane_span_points(f5, (f5.one, f5.zero, f5.zero))
    assert restrict_to_hyperplane(f, span).is_zero
    g = f + z * z * z
    assert not restrict_to_hyperplane(g, span).is_zero

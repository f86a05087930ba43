"""Linear systems of homogeneous forms through point configurations.

Vanishing to order b at a point is imposed without derivatives: the point
is moved to (1:0:...:0) by an invertible change of coordinates and the
coefficients of all monomials of local degree below b are required to die.
That formulation is exact in every characteristic, unlike repeated partial
derivatives which lose conditions mod p.
"""
from __future__ import annotations

import itertools

from .fields import Element, Field
from .linalg import Matrix
from .points import ConfigError, PointConfig
from .polys import MPoly


def monomial_basis(r: int, d: int) -> list:
    """Exponent tuples of the degree-d monomials in r variables, in
    descending lexicographic order (canonical everywhere in this package)."""
    out = []
    for combo in itertools.combinations_with_replacement(range(r), d):
        e = [0] * r
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def form_from_coeffs(field: Field, r: int, d: int, coeffs) -> MPoly:
    basis = monomial_basis(r, d)
    if len(coeffs) != len(basis):
        raise ValueError("coefficient vector does not match the monomial basis")
    return MPoly(field, r, {e: c for e, c in zip(basis, coeffs)})


def coeff_vector(f: MPoly, d: int) -> list:
    basis = monomial_basis(f.nvars, d)
    return [f.coefficient(e) for e in basis]


def _basis_completion(field: Field, point) -> Matrix:
    """Invertible matrix whose first column is the point; the remaining
    columns are the unit vectors not used for the pivot."""
    r = len(point)
    pivot = next(i for i, c in enumerate(point) if not c.is_zero)
    cols = [list(point)]
    for i in range(r):
        if i != pivot:
            col = [field.zero] * r
            col[i] = field.one
            cols.append(col)
    return Matrix(field, [[cols[j][i] for j in range(r)] for i in range(r)])


def vanishing_rows(field: Field, r: int, d: int, point, mult: int) -> list:
    """Linear conditions on the coefficient vector of a degree-d form for
    vanishing to order >= mult at the point.  One row per local monomial."""
    basis = monomial_basis(r, d)
    if mult == 1:
        # vanishing order one is plain evaluation
        row = []
        for e in basis:
            v = field.one
            for i, k in enumerate(e):
                if k:
                    v = v * point[i] ** k
            row.append(v)
        return [row]
    A = _basis_completion(field, point)
    images = []
    for j in range(r):
        img = MPoly.zero(field, r)
        for i in range(r):
            img = img + MPoly.variable(field, r, i).scale(A.rows[j][i])
        images.append(img)
    # compose each basis monomial with A and read off low-order coefficients
    local_targets = [e for e in basis if d - e[0] < mult]
    rows = {t: [field.zero] * len(basis) for t in local_targets}
    for col, e in enumerate(basis):
        mono = MPoly.monomial(field, r, e)
        moved = mono.compose(images)
        for t in local_targets:
            c = moved.coefficient(t)
            if not c.is_zero:
                rows[t][col] = c
    return [rows[t] for t in local_targets]


def h0_basis(field: Field, r: int, d: int, conditions) -> list:
    """Basis of degree-d forms vanishing to the given orders.

    `conditions` is a list of (point, mult) pairs; points are coordinate
    tuples of Elements.  Returns MPoly forms, canonically ordered by the
    kernel extraction in `linalg`.
    """
    basis = monomial_basis(r, d)
    all_rows = []
    for point, mult in conditions:
        all_rows.extend(vanishing_rows(field, r, d, point, mult))
    if not all_rows:
        return [MPoly.monomial(field, r, e) for e in basis]
    m = Matrix(field, all_rows)
    return [form_from_coeffs(field, r, d, v) for v in m.kernel_basis()]


def h0_dimension(field: Field, r: int, d: int, conditions) -> int:
    basis = monomial_basis(r, d)
    all_rows = []
    for point, mult in conditions:
        all_rows.extend(vanishing_rows(field, r, d, point, mult))
    if not all_rows:
        return len(basis)
    return len(basis) - Matrix(field, all_rows).rank()


# ---------------------------------------------------------------------------
# pencils and nets

def cubic_pencil(config: PointConfig) -> tuple:
    """Basis (f, g) of the cubics through nine plane points; the system
    must be exactly a pencil."""
    if config.r != 3 or config.n != 9:
        raise ConfigError("expected nine points in the plane")
    sys = h0_basis(config.field, 3, 3, [(p, 1) for p in config.points])
    if len(sys) != 2:
        raise ConfigError(
            f"cubics through the points form a {len(sys)}-dimensional system, not a pencil"
        )
    return sys[0], sys[1]


def quadric_net(config: PointConfig) -> tuple:
    """Basis (q1, q2, q3) of the quadrics through eight space points."""
    if config.r != 4 or config.n != 8:
        raise ConfigError("expected eight points in space")
    sys = h0_basis(config.field, 4, 2, [(p, 1) for p in config.points])
    if len(sys) != 3:
        raise ConfigError(
            f"quadrics through the points form a {len(sys)}-dimensional system, not a net"
        )
    return sys[0], sys[1], sys[2]


def pencil_members(f: MPoly, g: MPoly) -> list:
    """All members over the coefficient field, one per point of the
    parameter line: (1: mu) then (0: 1).  Returns (label, form) pairs."""
    field = f.field
    out = []
    for mu in field.elements():
        out.append(((field.one, mu), f + g.scale(mu)))
    out.append(((field.zero, field.one), g))
    return out


def net_members(q1: MPoly, q2: MPoly, q3: MPoly) -> list:
    """All members over the coefficient field, one per point of the
    parameter plane, in the standard affine-chart order."""
    field = q1.field
    out = []
    for b in field.elements():
        for c in field.elements():
            out.append(((field.one, b, c), q1 + q2.scale(b) + q3.scale(c)))
    for c in field.elements():
        out.append(((field.zero, field.one, c), q2 + q3.scale(c)))
    out.append(((field.zero, field.zero, field.one), q3))
    return out


def eval_form(f: MPoly, point) -> Element:
    return f.eval(list(point))


# ---------------------------------------------------------------------------
# lines, planes, restrictions

def line_through(field: Field, p, q):
    """Dual coordinates of the line through two distinct plane points."""
    m = Matrix(field, [list(p), list(q)])
    ker = m.kernel_basis()
    if len(ker) != 1:
        raise ConfigError("points do not span a line")
    return tuple(ker[0])


def linear_form(field: Field, coeffs) -> MPoly:
    r = len(coeffs)
    f = MPoly.zero(field, r)
    for i, c in enumerate(coeffs):
        f = f + MPoly.variable(field, r, i).scale(c if isinstance(c, Element) else field(c))
    return f


def hyperplane_span_points(field: Field, coeffs) -> list:
    """Spanning points of the hyperplane with the given dual coordinates:
    the canonical kernel basis of the one-row matrix."""
    m = Matrix(field, [list(coeffs)])
    return m.kernel_basis()


def restrict_to_hyperplane(f: MPoly, span_points) -> MPoly:
    """Pull back a form to the parameter space of a linear subspace given
    by spanning points: substitute x_i = sum_j s_j P_j[i]."""
    field = f.field
    k = len(span_points)
    images = []
    for i in range(f.nvars):
        img = MPoly.zero(field, k)
        for j, P in enumerate(span_points):
            img = img + MPoly.variable(field, k, j).scale(P[i])
        images.append(img)
    return f.compose(images)

"""Absolute irreducibility of plane cubics and quaternary quadrics over
finite fields.

A reducible form either has a linear factor over the ground field, found
by running through the finitely many hyperplanes, or it splits only over
an extension, in which case Galois theory pins the shape down: a cubic
with no rational line is reducible exactly when it is a triple of
conjugate lines (its three conjugate singular points give them away), and
a quadric is reducible exactly when it is the norm of a plane over the
quadratic extension (solvable from the coefficients directly).
"""
from __future__ import annotations

from .fields import Element, Field, UniPoly, embed, poly_roots_in_field
from .forms import line_through, linear_form
from .intersect import (
    ConsistencyError,
    PositiveDimensionalError,
    _NoChart,
    _orbit_representatives,
    exact_degree_over,
    extension_of,
    plane_common_zeros,
)
from .linalg import Matrix
from .polys import MPoly, linear_substitution


def projective_duals(field: Field, r: int):
    """Normalized coefficient vectors of all hyperplanes, one per
    projective class: pivot 1 at position i, zeros before, free after."""
    elems = list(field.elements())
    for i in range(r):
        prefix = [field.zero] * i + [field.one]

        def rec(rest):
            if rest == 0:
                yield tuple(prefix)
                return
            for val in elems:
                prefix.append(val)
                yield from rec(rest - 1)
                prefix.pop()

        yield from rec(r - 1 - i)


def _hyperplane_span(field: Field, dual) -> list:
    return Matrix(field, [list(dual)]).kernel_basis()


def rational_linear_factor(f: MPoly):
    """Dual coordinates of a hyperplane over the ground field dividing f,
    or None.  Decided by restricting f to each hyperplane; evaluation at
    the spanning points screens out almost all candidates cheaply."""
    field = f.field
    if not field.is_finite:
        raise ValueError("the hyperplane sweep needs a finite field")
    r = f.nvars
    k = r - 1
    for dual in projective_duals(field, r):
        span = _hyperplane_span(field, dual)
        if any(not f.eval(P).is_zero for P in span):
            continue
        probe = [a + b for a, b in zip(span[0], span[1])]
        if not f.eval(probe).is_zero:
            continue
        restricted = f.compose(
            [
                sum(
                    (MPoly.variable(field, k, j).scale(span[j][i]) for j in range(k)),
                    MPoly.zero(field, k),
                )
                for i in range(r)
            ]
        )
        if restricted.is_zero:
            return dual
    return None


def _descend(c: Element, target: Field) -> Element:
    """The preimage of a subfield element under the canonical embedding."""
    if c.field == target:
        return c
    if target.kind == "prime" and all(v == 0 for v in c.val[1:]):
        return target(c.val[0] if c.val else 0)
    for t in target.elements():
        if embed(t, c.field) == c:
            return t
    raise ConsistencyError("element does not lie in the claimed subfield")


def _basis_completion_rows(field: Field, point):
    r = len(point)
    pivot = next(i for i, c in enumerate(point) if not c.is_zero)
    cols = [list(point)]
    for i in range(r):
        if i != pivot:
            col = [field.zero] * r
            col[i] = field.one
            cols.append(col)
    return [[cols[j][i] for j in range(r)] for i in range(r)]


def _singular_points(f: MPoly, K: Field) -> list:
    """Singular points of the plane curve f with coordinates in K.  Only
    valid when f is squarefree, which the callers guarantee."""
    partials = [f.derivative(i) for i in range(3)]
    pivot = next((d for d in partials if not d.is_zero), None)
    if pivot is None:
        raise ConsistencyError("all partials vanish yet no rational linear factor")
    try:
        pts = plane_common_zeros(f, pivot, K)
    except (PositiveDimensionalError, _NoChart) as exc:
        raise ConsistencyError(f"squarefree form shares a factor with a partial: {exc}")
    lifted = [d if K == f.field else d.to_field(K) for d in partials]
    return [P for P in pts if all(d.eval(P).is_zero for d in lifted)]


def cubic_absolutely_irreducible(f: MPoly):
    """(True, None) or (False, witness) for a plane cubic over a finite
    field.  Witness kinds: rational_line, cone, conjugate_lines."""
    field = f.field
    if f.nvars != 3 or f.is_zero or not f.is_homogeneous() or f.total_degree() != 3:
        raise ValueError("expected a nonzero plane cubic form")
    dual = rational_linear_factor(f)
    if dual is not None:
        return False, {"kind": "rational_line", "line": dual}

    # no rational line divides f, so f is squarefree and either irreducible
    # or a product of three conjugate lines; the singular points decide
    e = field.degree
    K = extension_of(field, 3)
    sing = _singular_points(f, K)
    rational = [P for P in sing if exact_degree_over(P, e, 3) == 1]
    if len(rational) > 1:
        raise ConsistencyError("several rational singular points but no rational line")
    for P in rational:
        V = tuple(_descend(c, field) for c in P)
        moved = linear_substitution(f, _basis_completion_rows(field, V))
        if moved.degree_in(0) == 0:
            # independent of the vertex direction: a cone over a binary
            # cubic, which always splits over the closure
            return False, {"kind": "cone", "vertex": V}
    orbit3 = [P for P in sing if exact_degree_over(P, e, 3) == 3]
    if orbit3:
        fK = f.to_field(K)
        for rep in _orbit_representatives(orbit3, e, 3):
            V1 = rep
            V2 = tuple(c.frobenius(e) for c in rep)
            L = linear_form(K, line_through(K, V1, V2))
            sL = L.map_coeffs(lambda c: c.frobenius(e))
            ssL = sL.map_coeffs(lambda c: c.frobenius(e))
            N = L * sL * ssL
            em, ec = N._lead()
            fc = fK.coefficient(em)
            if not fc.is_zero and N.scale(fc * ec.inv()) == fK:
                return False, {"kind": "conjugate_lines", "vertex_field_degree": 3}
        raise ConsistencyError(
            "three conjugate singular points but not a triple of conjugate lines"
        )
    return True, None


def quadric_absolutely_irreducible(f: MPoly):
    """(True, None) or (False, witness) for a quaternary quadric over a
    finite field.  Witness kinds: rational_plane, conjugate_planes."""
    field = f.field
    if f.nvars != 4 or f.is_zero or not f.is_homogeneous() or f.total_degree() != 2:
        raise ValueError("expected a nonzero quaternary quadric form")
    dual = rational_linear_factor(f)
    if dual is not None:
        return False, {"kind": "rational_plane", "plane": dual}

    # remaining reducible shape: norm of a plane over the quadratic
    # extension.  Its diagonal coefficients are coefficient norms, so a
    # zero diagonal settles the question outright.
    def sq(i):
        e = [0, 0, 0, 0]
        e[i] = 2
        return tuple(e)

    def mixed(i, j):
        e = [0, 0, 0, 0]
        e[i] += 1
        e[j] += 1
        return tuple(e)

    diag = [f.coefficient(sq(i)) for i in range(4)]
    j = next((i for i, c in enumerate(diag) if not c.is_zero), None)
    if j is None:
        return True, None
    fn = f.scale(diag[j].inv())
    e = field.degree
    K = extension_of(field, 2)
    fK = fn.to_field(K)
    choices = []
    others = [k for k in range(4) if k != j]
    for k in others:
        tr = embed(fn.coefficient(mixed(*sorted((j, k)))), K)
        nm = embed(fn.coefficient(sq(k)), K)
        quad = UniPoly(K, [nm, -tr, K.one])
        roots = poly_roots_in_field(quad)
        if not roots:
            raise ConsistencyError("a quadratic failed to split in the quadratic extension")
        choices.append(roots)

    def products(lists):
        if not lists:
            yield []
            return
        for head in lists[0]:
            for tail in products(lists[1:]):
                yield [head] + tail

    xj = MPoly.variable(K, 4, j)
    for combo in products(choices):
        L = xj
        for k, a in zip(others, combo):
            L = L + MPoly.variable(K, 4, k).scale(a)
        sL = L.map_coeffs(lambda c: c.frobenius(e))
        if L * sL == fK:
            return False, {"kind": "conjugate_planes", "plane_field_degree": 2}
    return True, None


def reducible_pencil_members(members) -> list:
    """(label, witness) for every reducible member of a plane cubic
    pencil, in member order."""
    out = []
    for label, form in members:
        ok, witness = cubic_absolutely_irreducible(form)
        if not ok:
            out.append((label, witness))
    return out


def reducible_net_members(members) -> list:
    out = []
    for label, form in members:
        ok, witness = quadric_absolutely_irreducible(form)
        if not ok:
            out.append((label, witness))
    return out

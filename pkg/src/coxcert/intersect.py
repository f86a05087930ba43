"""Zero-dimensional intersections over exact fields.

The plane engine eliminates one variable with a resultant and recovers
the fibers by univariate gcds; the space engine first projects a net of
quadrics from a coordinate center onto a plane and then lifts.  Every
candidate is re-verified on the original forms, so degree bookkeeping of
the projections cannot leak into the answer.

Chart degeneracies (a form divisible by the line at infinity, overlapping
projections of disjoint curves) are handled by a deterministic list of
coordinate changes; a locus that stays degenerate for every chart really
is positive-dimensional.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .fields import (
    Element,
    Field,
    FieldError,
    UniPoly,
    embed,
    poly_gcd,
    poly_roots_in_field,
)
from .forms import h0_basis
from .linalg import Matrix
from .points import ConfigError, PointConfig, normalize_point
from .polys import MPoly, linear_substitution, resultant_bivariate, resultant_wrt


class PositiveDimensionalError(Exception):
    """The common zero locus contains a curve.

    `proven` is False when the verdict rests on every candidate projection
    degenerating rather than on an exhibited curve; callers that need a
    certificate should treat that case as undecided.
    """

    def __init__(self, message, proven=True):
        super().__init__(message)
        self.proven = proven


class UndeterminedError(Exception):
    """A search bound was exhausted before the question was decided."""


class ConsistencyError(Exception):
    """Two independent routes to the same fact disagreed."""


class _NoChart(Exception):
    pass


class _ShadowArtifact(Exception):
    """Projection-stage degeneracy that a different shear may avoid."""


# ---------------------------------------------------------------------------
# field plumbing

def extension_of(field: Field, m: int) -> Field:
    """The degree-m extension with the canonical modulus."""
    if m == 1:
        return field
    if not field.is_finite:
        raise FieldError("extensions are built over finite fields only")
    return Field.extension(field.p, field.degree * m)


def lift_point(point, K: Field) -> tuple:
    return tuple(c if c.field == K else embed(c, K) for c in point)


def _lift_matrix(T: Matrix, K: Field) -> Matrix:
    if T.field == K:
        return T
    return Matrix(K, [[embed(c, K) for c in row] for row in T.rows])


def _divisors(m: int) -> list:
    return [d for d in range(1, m + 1) if m % d == 0]


def exact_degree_over(point, base_degree: int, m: int) -> int:
    """Least d with every coordinate fixed by the d-th power of the base
    field's Frobenius.  The point should be normalized first, so that the
    answer does not depend on the chosen scaling."""
    for d in _divisors(m):
        if all(c.frobenius(base_degree * d) == c for c in point):
            return d
    raise ConsistencyError("point not fixed by the Frobenius of its own field")


def _frobenius_point(point, base_degree: int) -> tuple:
    return tuple(c.frobenius(base_degree) for c in point)


def _point_key(point) -> tuple:
    return tuple(c.sort_key() for c in point)


# ---------------------------------------------------------------------------
# chart selection

def _chart_transforms(field: Field):
    """Deterministic invertible coordinate changes for the plane engine,
    pairwise moving distinct lines to the chart line z = 0."""
    one, zero = field.one, field.zero
    perms = [
        [[one, zero, zero], [zero, one, zero], [zero, zero, one]],
        [[one, zero, zero], [zero, zero, one], [zero, one, zero]],
        [[zero, zero, one], [zero, one, zero], [one, zero, zero]],
    ]
    shear_params = []
    for a in field.elements() if field.is_finite else [field(k) for k in range(4)]:
        for b in field.elements() if field.is_finite else [field(k) for k in range(4)]:
            shear_params.append((a, b))
            if len(shear_params) >= 16:
                break
        if len(shear_params) >= 16:
            break
    seen = set()
    for P in perms:
        for a, b in shear_params:
            S = [[one, zero, zero], [zero, one, zero], [a, b, one]]
            T = Matrix(field, P) * Matrix(field, S)
            # the chart line is spanned by the first two columns
            ker = Matrix(field, [T.column(0), T.column(1)]).kernel_basis()
            line = tuple(normalize_point(field, ker[0]))
            if line in seen:
                continue
            seen.add(line)
            yield T


def _matvec(T: Matrix, v) -> list:
    return T * list(v)


# ---------------------------------------------------------------------------
# plane engine

@dataclass(frozen=True)
class _PlanePrep:
    T: Matrix          # chosen coordinate change, forms already composed with it
    f1: MPoly
    g1: MPoly
    res_x: UniPoly     # Res_y of the affine charts, over the base field


def _compose_linear(f: MPoly, T: Matrix) -> MPoly:
    return linear_substitution(f, T.rows)


def plane_prep(f: MPoly, g: MPoly) -> _PlanePrep:
    """Pick a chart where neither form is divisible by the line at infinity
    and precompute the eliminating resultant.  Raises on a shared factor."""
    if f.nvars != 3 or g.nvars != 3:
        raise ValueError("plane forms live in three variables")
    if f.field != g.field:
        raise ValueError("forms over different fields")
    if f.is_zero or g.is_zero:
        raise PositiveDimensionalError("zero form")
    field = f.field
    chosen = None
    for T in _chart_transforms(field):
        f1 = _compose_linear(f, T)
        g1 = _compose_linear(g, T)
        bf = f1.partial_eval({2: field.zero})
        bg = g1.partial_eval({2: field.zero})
        if bf.is_zero and bg.is_zero:
            raise PositiveDimensionalError("the forms share a line")
        if bf.is_zero or bg.is_zero:
            continue
        chosen = (T, f1, g1)
        break
    if chosen is None:
        raise _NoChart("every candidate chart line divides one of the forms")
    T, f1, g1 = chosen
    Fa = f1.partial_eval({2: field.one})
    Ga = g1.partial_eval({2: field.one})
    res = resultant_bivariate(Fa, Ga, 1, 0)
    if res.is_zero:
        raise PositiveDimensionalError("the forms share a factor")
    return _PlanePrep(T, f1, g1, res)


def _univar_roots(u: UniPoly) -> list:
    if u.degree() < 1:
        return []
    return poly_roots_in_field(u)


def _plane_zeros_from_prep(prep: _PlanePrep, K: Field) -> list:
    base = prep.f1.field
    f1 = prep.f1 if K == base else prep.f1.to_field(K)
    g1 = prep.g1 if K == base else prep.g1.to_field(K)
    res = prep.res_x if K == base else prep.res_x.to_field(K)
    one, zero = K.one, K.zero
    found = []

    # on the chart line z = 0: points (x:1:0), then the corner (1:0:0)
    bf = f1.partial_eval({1: one, 2: zero}).to_unipoly(0)
    for xi in _univar_roots(bf):
        if g1.eval((xi, one, zero)).is_zero:
            found.append((xi, one, zero))
    if f1.eval((one, zero, zero)).is_zero and g1.eval((one, zero, zero)).is_zero:
        found.append((one, zero, zero))

    # affine chart z = 1, one fiber per root of the resultant
    for xi in _univar_roots(res):
        uf = f1.partial_eval({0: xi, 2: one}).to_unipoly(1)
        ug = g1.partial_eval({0: xi, 2: one}).to_unipoly(1)
        if uf.is_zero and ug.is_zero:
            raise PositiveDimensionalError("the forms share a vertical line")
        if uf.is_zero or ug.is_zero:
            fiber = _univar_roots(ug if uf.is_zero else uf)
            other = g1 if uf.is_zero else f1
            fiber = [eta for eta in fiber if other.eval((xi, eta, one)).is_zero]
        else:
            fiber = _univar_roots(poly_gcd(uf, ug))
        for eta in fiber:
            found.append((xi, eta, one))

    TK = _lift_matrix(prep.T, K)
    out = {}
    for P in found:
        Q = normalize_point(K, _matvec(TK, P))
        out[_point_key(Q)] = Q
    return [out[k] for k in sorted(out)]


def plane_common_zeros(f: MPoly, g: MPoly, K: Field = None) -> list:
    """All common projective zeros of two coprime plane forms with
    coordinates in K (their own field by default), normalized and sorted.

    Over the rationals this enumerates exactly the rational common zeros.
    Raises PositiveDimensionalError when the forms share a factor.
    """
    base = f.field
    if K is None:
        K = base
    try:
        prep = plane_prep(f, g)
    except _NoChart:
        # all base charts blocked by linear factors: redo over K itself
        if K == base:
            raise UndeterminedError("no usable chart over the base field")
        prep = plane_prep(f.to_field(K), g.to_field(K))
    pts = _plane_zeros_from_prep(prep, K)
    fK = f if K == base else f.to_field(K)
    gK = g if K == base else g.to_field(K)
    for P in pts:
        if not (fK.eval(P).is_zero and gK.eval(P).is_zero):
            raise ConsistencyError("solver produced a non-zero of the forms")
    return pts


# ---------------------------------------------------------------------------
# space engine

@dataclass(frozen=True)
class _NetPrep:
    S: Matrix            # shear, forms already composed with it
    forms: tuple         # the three sheared quadrics, pivot first
    plane: _PlanePrep    # prepared projection pair (two quartic shadows)


def _shear_candidates(field: Field):
    """Transforms whose projection centers T(0:0:0:1) run through enough
    distinct points to escape any finite locus."""
    one, zero = field.one, field.zero
    triples = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1),
               (0, 1, 1), (1, 1, 1), (2, 1, 0), (1, 2, 0), (0, 2, 1), (2, 0, 1)]
    perms = [
        (0, 1, 2, 3),  # center (c, 1)
        (3, 1, 2, 0),  # center (1, c)-type points
        (0, 3, 2, 1),
        (0, 1, 3, 2),
    ]
    seen_centers = set()
    for perm in perms:
        P = Matrix(
            field,
            [[one if perm[i] == j else zero for j in range(4)] for i in range(4)],
        )
        for t in triples:
            c = tuple(field(k) for k in t)
            rows = [
                [one, zero, zero, c[0]],
                [zero, one, zero, c[1]],
                [zero, zero, one, c[2]],
                [zero, zero, zero, one],
            ]
            T = P * Matrix(field, rows)
            center = tuple(normalize_point(field, T.column(3)))
            if center in seen_centers:
                continue
            seen_centers.add(center)
            yield T


def _drop_last_var(f: MPoly) -> MPoly:
    out = MPoly.zero(f.field, f.nvars - 1)
    terms = {}
    for e, c in f.terms.items():
        if e[-1] != 0:
            raise ValueError("variable still present")
        terms[e[:-1]] = c
    out.terms = terms
    return out


def _net_preps(q1: MPoly, q2: MPoly, q3: MPoly):
    """Yield usable preps, shearing until the projection center avoids the
    base locus and the two quartic shadows are coprime.

    Shadows can also degenerate at zero-extraction time, so consumers walk
    this generator and move on when a prep turns out unusable.  Exhaustion
    raises: every center on the locus is undetermined, anything else is
    reported positive-dimensional but unproven."""
    field = q1.field
    for q in (q1, q2, q3):
        if q.nvars != 4:
            raise ValueError("space forms live in four variables")
        if q.is_zero:
            raise PositiveDimensionalError("zero form")
    pivot_seen = False
    for S in _shear_candidates(field):
        sheared = [_compose_linear(q, S) for q in (q1, q2, q3)]
        pivot = next(
            (i for i, q in enumerate(sheared) if not q.coefficient((0, 0, 0, 2)).is_zero),
            None,
        )
        if pivot is None:
            continue
        pivot_seen = True
        p0 = sheared[pivot]
        rest = [sheared[i] for i in range(3) if i != pivot]
        A4 = resultant_wrt(p0, rest[0], 3)
        B4 = resultant_wrt(p0, rest[1], 3)
        if A4.is_zero or B4.is_zero:
            # the resultant of w-regular quadrics vanishes only on a shared
            # factor, and a shared factor meets the third quadric in a curve
            raise PositiveDimensionalError("two of the quadrics share a component")
        try:
            plane = plane_prep(_drop_last_var(A4), _drop_last_var(B4))
        except (PositiveDimensionalError, _NoChart):
            continue  # overlapping shadows can be a projection artifact
        yield _NetPrep(S, (p0, rest[0], rest[1]), plane)
    if not pivot_seen:
        raise UndeterminedError("every candidate projection center lies on the locus")
    raise PositiveDimensionalError(
        "projections stayed degenerate for every chart; the locus looks "
        "positive-dimensional",
        proven=False,
    )


def net_prep(q1: MPoly, q2: MPoly, q3: MPoly) -> _NetPrep:
    """First usable prep; see _net_preps for the retry contract."""
    return next(_net_preps(q1, q2, q3))


def _space_zeros_from_prep(prep: _NetPrep, K: Field) -> list:
    base = prep.forms[0].field
    forms = [q if K == base else q.to_field(K) for q in prep.forms]
    one = K.one
    try:
        shadows = _plane_zeros_from_prep(prep.plane, K)
    except PositiveDimensionalError as exc:
        # a line shared by the shadows need not lift to the space locus
        raise _ShadowArtifact(str(exc))
    out = {}
    SK = _lift_matrix(prep.S, K)
    for xyz in shadows:
        fibers = []
        all_zero = True
        for q in forms:
            u = q.partial_eval({0: xyz[0], 1: xyz[1], 2: xyz[2]}).to_unipoly(3)
            if not u.is_zero:
                all_zero = False
                fibers.append(u)
        if all_zero:
            raise PositiveDimensionalError("a line through the center lies on every quadric")
        g = fibers[0]
        for u in fibers[1:]:
            g = poly_gcd(g, u)
        for w in _univar_roots(g):
            P = (xyz[0], xyz[1], xyz[2], w)
            if all(q.eval(P).is_zero for q in forms):
                Q = normalize_point(K, _matvec(SK, P))
                out[_point_key(Q)] = Q
    return [out[k] for k in sorted(out)]


def space_common_zeros(q1: MPoly, q2: MPoly, q3: MPoly, K: Field = None) -> list:
    """Common projective zeros of three quaternary quadrics with
    coordinates in K, normalized and sorted; rational-only over Q."""
    base = q1.field
    if K is None:
        K = base
    pts = None
    for prep in _net_preps(q1, q2, q3):
        try:
            pts = _space_zeros_from_prep(prep, K)
            break
        except _ShadowArtifact:
            continue
    assert pts is not None  # exhaustion raises inside the generator
    qs = [q if K == base else q.to_field(K) for q in (q1, q2, q3)]
    for P in pts:
        if not all(q.eval(P).is_zero for q in qs):
            raise ConsistencyError("solver produced a non-zero of the forms")
    return pts


# ---------------------------------------------------------------------------
# base loci by degree

@dataclass(frozen=True)
class BaseLocusReport:
    """Closed points of a zero-dimensional base locus, by degree.

    `points` holds one representative per closed point as (coords, degree),
    coordinates in the canonical degree-`degree` extension.  `complete`
    says the degree-weighted count reached the Bezout number, which over a
    scanned range covering every possible degree is equivalent to the
    scheme being reduced.
    """
    expected: int
    weighted: int
    complete: bool
    degree_partition: tuple
    points: tuple

    def closed_point_count(self) -> int:
        return len(self.points)


def _orbit_representatives(points, base_degree: int, m: int) -> list:
    reps = []
    seen = set()
    for P in points:
        k = _point_key(P)
        if k in seen:
            continue
        orbit = [P]
        seen.add(k)
        Q = _frobenius_point(P, base_degree)
        while _point_key(Q) != k:
            orbit.append(Q)
            seen.add(_point_key(Q))
            Q = _frobenius_point(Q, base_degree)
        if len(orbit) != m:
            raise ConsistencyError("Frobenius orbit size does not match the degree")
        reps.append(min(orbit, key=_point_key))
    return reps


def base_locus(forms, expected: int = None, max_ext: int = None) -> BaseLocusReport:
    """Decompose the common zero locus of a pencil (two plane forms) or a
    net (three space quadrics) over a finite field into closed points.

    Scans extensions of degree 1..max_ext (default: the Bezout number, so
    the scan is decisive) and stops early once the degree-weighted point
    count reaches `expected`.  An incomplete report with the full range
    scanned certifies a non-reduced locus.
    """
    forms = list(forms)
    field = forms[0].field
    if not field.is_finite:
        raise FieldError("degree decompositions are defined over finite fields")
    if len(forms) == 2:
        try:
            prep = plane_prep(forms[0], forms[1])
        except _NoChart as exc:
            raise UndeterminedError(str(exc))
        solvers = iter([lambda K: _plane_zeros_from_prep(prep, K)])
        bezout = forms[0].total_degree() * forms[1].total_degree()
    elif len(forms) == 3:
        solvers = (
            (lambda K, p=prep: _space_zeros_from_prep(p, K))
            for prep in _net_preps(forms[0], forms[1], forms[2])
        )
        bezout = (
            forms[0].total_degree() * forms[1].total_degree() * forms[2].total_degree()
        )
    else:
        raise ValueError("expected a pencil or a net")
    if expected is None:
        expected = bezout
    if max_ext is None:
        max_ext = expected
    for solver in solvers:
        try:
            return _locus_scan(solver, field, expected, max_ext)
        except _ShadowArtifact:
            continue  # this projection degenerated; the next may not
    raise AssertionError("prep exhaustion raises inside the generator")


def _locus_scan(solver, field: Field, expected: int, max_ext: int) -> BaseLocusReport:
    e = field.degree
    weighted = 0
    partition = {}
    reps = []
    for m in range(1, max_ext + 1):
        if weighted >= expected:
            break
        try:
            K = extension_of(field, m)
        except FieldError as exc:
            raise UndeterminedError(f"extension of degree {m} unavailable: {exc}")
        pts = solver(K)
        new = [P for P in pts if exact_degree_over(P, e, m) == m]
        if not new:
            continue
        for rep in _orbit_representatives(new, e, m):
            reps.append((rep, m))
        partition[m] = partition.get(m, 0) + len(new) // m
        weighted += len(new)
    if weighted > expected:
        raise ConsistencyError("more intersection points than the Bezout number")
    return BaseLocusReport(
        expected=expected,
        weighted=weighted,
        complete=(weighted == expected),
        degree_partition=tuple(sorted(partition.items())),
        points=tuple(reps),
    )


def locus_configuration(report: BaseLocusReport, field: Field) -> PointConfig:
    """Spread a complete reduced locus into a single point configuration.

    `field` is the base the locus was computed over.  Each closed point of
    degree d contributes its d conjugates, all living in the compositum
    extension (degree lcm of the point degrees).  The resulting config has
    report.weighted points and carries the full Galois orbit structure, so
    incidence counts over it see every hyperplane section at once.
    """
    if not report.complete:
        raise UndeterminedError(
            "only a verified-complete locus can be turned into a configuration"
        )
    total = 1
    for _, d in report.points:
        total = math.lcm(total, d)
    K = extension_of(field, total)
    rows = []
    for coords, d in report.points:
        P = lift_point(coords, K)
        for _ in range(d):
            rows.append(P)
            P = _frobenius_point(P, field.degree)
    return PointConfig.build(K, rows)


def transversality_check(forms, report: BaseLocusReport) -> bool:
    """Jacobian has full rank at every recorded point: the intersection is
    transverse there.  For a complete report this must hold; disagreement
    is an internal error."""
    forms = list(forms)
    field = forms[0].field
    nv = forms[0].nvars
    jac = [[f.derivative(j) for j in range(nv)] for f in forms]
    for P, m in report.points:
        K = P[0].field
        rows = [[d.to_field(K).eval(P) if K != field else d.eval(P) for d in row] for row in jac]
        if Matrix(K, rows).rank() != len(forms):
            return False
    return True


# ---------------------------------------------------------------------------
# the distinguished extra base point

def _system_through(config: PointConfig, degree: int, r: int) -> list:
    return h0_basis(config.field, r, degree, [(p, 1) for p in config.points])


def ninth_base_point(config: PointConfig) -> tuple:
    """Nine minus eight: the cubics through eight plane points form a
    pencil whose base locus carries one extra point, defined over the same
    field.  Returns it normalized; degenerate inputs raise ConfigError."""
    if config.r != 3 or config.n != 8:
        raise ConfigError("expected eight points in the plane")
    sys = _system_through(config, 3, 3)
    if len(sys) != 2:
        raise ConfigError(
            f"cubics through the points form a {len(sys)}-dimensional system, not a pencil"
        )
    pts = plane_common_zeros(sys[0], sys[1])
    known = set(_point_key(p) for p in config.points)
    extra = [P for P in pts if _point_key(P) not in known]
    if len(pts) != 9 or len(extra) != 1:
        raise ConfigError(
            "degenerate configuration: the ninth base point is not a single new"
            f" rational point ({len(pts)} rational, {len(extra)} new)"
        )
    return extra[0]


def eighth_base_point(config: PointConfig) -> tuple:
    """Eight minus seven, in space: the quadrics through seven points form
    a net with one extra base point over the same field."""
    if config.r != 4 or config.n != 7:
        raise ConfigError("expected seven points in space")
    sys = _system_through(config, 2, 4)
    if len(sys) != 3:
        raise ConfigError(
            f"quadrics through the points form a {len(sys)}-dimensional system, not a net"
        )
    pts = space_common_zeros(sys[0], sys[1], sys[2])
    known = set(_point_key(p) for p in config.points)
    extra = [P for P in pts if _point_key(P) not in known]
    if len(pts) != 8 or len(extra) != 1:
        raise ConfigError(
            "degenerate configuration: the eighth base point is not a single new"
            f" rational point ({len(pts)} rational, {len(extra)} new)"
        )
    return extra[0]

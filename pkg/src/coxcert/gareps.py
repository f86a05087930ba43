"""Vector-group shear representations and the graded invariant cross-check.

A configuration of n points spanning P^(r-1) determines a rank n-r
subgroup of (G_a)^n, namely the kernel of the matrix whose columns are
the points.  The subgroup acts on a 2n-dimensional space of coordinate
pairs (x_i, y_i) by shearing each y_i along x_i, and the graded pieces
of its invariant ring match the complete linear systems through the
configuration.  This module builds the representation, descends it to
the base field when the configuration is only Galois-stable, checks
invariance symbolically, and compares graded dimensions against section
counts.
"""
from __future__ import annotations

from dataclasses import dataclass

from .fields import Field, FieldError, embed
from .forms import coeff_vector, h0_dimension, vanishing_rows
from .intersect import ConsistencyError
from .linalg import Matrix
from .points import ConfigError, PointConfig, frobenius_orbits
from .polys import MPoly
from .serialize import element_to_json


@dataclass(frozen=True, eq=False)
class GaRepresentation:
    """A rank n-r vector group shearing pairs (x, y) in A^{2n}.

    `generators` holds one n x n matrix C per subgroup basis row; the
    group element with parameters t acts by (x, y) -> (x, y + (sum t_k
    C_k) x).  Untwisted generators are diagonal.  `base_change` and
    `orbits` are set on twisted representations only: base_change columns
    form the Galois-fixed frame over the extension, orbits list the
    Frobenius cycles the frame is blocked by.
    """
    ctx: Field
    n: int
    r: int
    point_matrix: Matrix
    subgroup_basis: Matrix
    generators: tuple
    base_change: Matrix | None = None
    orbits: tuple | None = None

    @property
    def rank(self) -> int:
        return self.n - self.r

    @property
    def dimension(self) -> int:
        return 2 * self.n


def _column_scaling(column, point, j):
    """The scalar relating a matrix column to a configuration point."""
    t0 = next((t for t, c in enumerate(point) if not c.is_zero), None)
    if t0 is None:
        raise ConfigError("zero point")
    if column[t0].is_zero:
        raise ConfigError(f"column {j} is not proportional to point {j}")
    s = column[t0] / point[t0]
    if any(column[t] != point[t] * s for t in range(len(point))):
        raise ConfigError(f"column {j} is not proportional to point {j}")
    return s


def _echelon_rows(field: Field, rows) -> Matrix:
    R, pivots = Matrix(field, rows).rref()
    return Matrix(field, [R.rows[i] for i in range(len(pivots))])


def build_representation(config: PointConfig, point_matrix: Matrix = None) -> GaRepresentation:
    """The shear representation of the configuration's kernel subgroup.

    By default the point matrix uses the normalized coordinates; an
    explicit `point_matrix` may fix other representatives (it must be
    column-proportional to the configuration) and changes the subgroup by
    the corresponding torus element.
    """
    field = config.field
    if point_matrix is None:
        pm = config.matrix()
    else:
        pm = point_matrix
        if pm.nrows != config.r or pm.ncols != config.n:
            raise ConfigError(
                f"point matrix must be {config.r} x {config.n}, "
                f"got {pm.nrows} x {pm.ncols}"
            )
        for j in range(config.n):
            _column_scaling(pm.column(j), config.points[j], j)
    if pm.rank() != config.r:
        raise ConfigError("points do not span the ambient space")
    basis = _echelon_rows(field, pm.kernel_basis())
    zero = field.zero
    gens = []
    for v in basis.rows:
        gens.append(Matrix(
            field,
            [[v[i] if i == j else zero for j in range(config.n)]
             for i in range(config.n)],
        ))
    return GaRepresentation(
        ctx=field, n=config.n, r=config.r, point_matrix=pm,
        subgroup_basis=basis, generators=tuple(gens),
    )


# ---------------------------------------------------------------------------
# descent to the base field

def _sigma_cycles(sigma) -> tuple:
    seen = set()
    cycles = []
    for start in range(len(sigma)):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        j = sigma[start]
        while j != start:
            cycle.append(j)
            seen.add(j)
            j = sigma[j]
        cycles.append(tuple(cycle))
    return tuple(cycles)


def _subfield_converter(K: Field, base: Field):
    """Exact inverse of the canonical embedding base -> K.

    Returns a function raising ConsistencyError on elements outside the
    subfield; the twisting theory promises membership, so a miss means a
    computation upstream is wrong.
    """
    p = Field.prime(K.p)
    if base.kind == "prime":
        gens = [base.one]
    else:
        g = base.generator()
        gens = [g ** u for u in range(base.degree)]
    cols = [embed(w, K).val for w in gens]
    M = Matrix(p, [[p(cols[u][t]) for u in range(len(gens))]
                   for t in range(K.degree)])

    def to_base(z):
        sol = M.solve([p(v) for v in z.val])
        if sol is None:
            raise ConsistencyError(f"element {z!r} is not in {base}")
        if base.kind == "prime":
            return base(sol[0].val)
        return base(tuple(c.val for c in sol))

    return to_base


def twist_representation(config: PointConfig, base: Field) -> GaRepresentation:
    """Galois descent of the shear representation to the base field.

    The configuration must be stable under the base-field Frobenius; the
    extension degree must be 2 or 3.  Coordinates are rewritten in a
    Frobenius-fixed frame built orbit by orbit (a fixed point keeps its
    coordinate, an orbit of length l contributes the frame vectors
    sum_s frob^s(lambda^m) e_{i_s} for m < l), in which the point matrix
    and the subgroup acquire entries in the base field.
    """
    K = config.field
    if not K.is_finite or K.kind != "ext":
        raise ConfigError("twisting needs a configuration over a finite extension")
    if base.p != K.p or K.degree % base.degree != 0:
        raise ConfigError(f"{base} is not a subfield of {K}")
    d = K.degree // base.degree
    if d not in (2, 3):
        raise ConfigError(f"only extensions of degree 2 or 3 twist, got {d}")
    sigma = frobenius_orbits(config, base)
    orbits = _sigma_cycles(sigma)
    e = base.degree
    lam = K.generator()
    n, r = config.n, config.r
    cols = []
    for orbit in orbits:
        ell = len(orbit)
        for m in range(ell):
            col = [K.zero] * n
            for s, i in enumerate(orbit):
                col[i] = (lam ** m).frobenius(e * s) if s else lam ** m
            cols.append(col)
    B = Matrix(K, [[cols[j][i] for j in range(n)] for i in range(n)])
    try:
        B_inv = B.inverse()
    except ValueError:
        raise ConsistencyError("Galois-fixed frame is degenerate")
    to_base = _subfield_converter(K, base)
    MB = config.matrix() * B
    pm = Matrix(base, [[to_base(MB.rows[i][j]) for j in range(n)]
                       for i in range(r)])
    basis = _echelon_rows(base, pm.kernel_basis())
    if basis.nrows != n - r:
        raise ConsistencyError("descended subgroup has the wrong rank")
    gens = []
    for s_row in basis.rows:
        v = B * [embed(c, K) for c in s_row]
        D = Matrix(K, [[v[i] if i == j else K.zero for j in range(n)]
                       for i in range(n)])
        C_big = B_inv * D * B
        C = Matrix(base, [[to_base(C_big.rows[i][j]) for j in range(n)]
                          for i in range(n)])
        gens.append(C)
    return GaRepresentation(
        ctx=base, n=n, r=r, point_matrix=pm, subgroup_basis=basis,
        generators=tuple(gens), base_change=B, orbits=orbits,
    )


def descend_diagonal(rep: GaRepresentation, values) -> Matrix:
    """Twisted form of one diagonal shear with the given extension values.

    `values` must be Galois-equivariant along the representation's orbits
    (the value at sigma(i) is the q-th power of the value at i); the
    result is the n x n shear block over the base field, block-diagonal
    in the orbit frame.  This does not require the values to lie in the
    subgroup; kernel membership is the caller's concern.
    """
    if rep.base_change is None or rep.orbits is None:
        raise ConfigError("descending a diagonal needs a twisted representation")
    B = rep.base_change
    K = B.field
    values = [c if hasattr(c, "field") else K(c) for c in values]
    if len(values) != rep.n or any(c.field != K for c in values):
        raise ConfigError(f"need {rep.n} diagonal values over {K}")
    e = rep.ctx.degree
    for orbit in rep.orbits:
        for s, i in enumerate(orbit):
            j = orbit[(s + 1) % len(orbit)]
            if values[j] != values[i].frobenius(e):
                raise ConfigError(
                    f"diagonal is not Galois-equivariant at positions {i}, {j}"
                )
    D = Matrix(K, [[values[i] if i == j else K.zero for j in range(rep.n)]
                   for i in range(rep.n)])
    C_big = B.inverse() * D * B
    to_base = _subfield_converter(K, rep.ctx)
    return Matrix(rep.ctx, [[to_base(C_big.rows[i][j]) for j in range(rep.n)]
                            for i in range(rep.n)])


def twist_blocks(rep: GaRepresentation) -> list:
    """Per-orbit generator blocks of a twisted representation.

    Returns (orbit, blocks) pairs where blocks[k] is the square block of
    generator k acting on the orbit's frame coordinates.  The block of a
    length-l orbit is the regular representation of the generator's value
    at the orbit, so its minimal polynomial is that value's minimal
    polynomial over the base field.
    """
    if rep.orbits is None:
        raise ConfigError("orbit blocks exist only for twisted representations")
    out = []
    offset = 0
    for orbit in rep.orbits:
        ell = len(orbit)
        span = range(offset, offset + ell)
        blocks = [
            Matrix(rep.ctx, [[C.rows[i][j] for j in span] for i in span])
            for C in rep.generators
        ]
        out.append((orbit, blocks))
        offset += ell
    return out


# ---------------------------------------------------------------------------
# the action and its invariants

def group_act(rep: GaRepresentation, t, point):
    """Apply the group element with subgroup parameters t to (x, y)."""
    f = rep.ctx
    t = [c if hasattr(c, "field") else f(c) for c in t]
    if len(t) != rep.rank:
        raise ConfigError(f"need {rep.rank} subgroup parameters")
    point = [c if hasattr(c, "field") else f(c) for c in point]
    if len(point) != 2 * rep.n:
        raise ConfigError(f"points of the representation space have {2 * rep.n} coordinates")
    x, y = point[: rep.n], point[rep.n:]
    shear = [f.zero] * rep.n
    for tk, C in zip(t, rep.generators):
        if tk.is_zero:
            continue
        Cx = C * x
        shear = [s + tk * c for s, c in zip(shear, Cx)]
    return tuple(x) + tuple(yi + si for yi, si in zip(y, shear))


def _tau_images(rep: GaRepresentation, k: int):
    """Variable images for the one-parameter substitution y -> y + tau C_k x.

    The target ring has 2n + 1 variables: x block, y block, one formal
    tau.  The group is abelian and generated by its one-parameter
    subgroups, so invariance generator by generator is full invariance,
    and one tau at a time keeps the expansions small.
    """
    f = rep.ctx
    n = rep.n
    N = 2 * n + 1
    images = [MPoly.variable(f, N, i) for i in range(2 * n)]
    C = rep.generators[k]
    for i in range(n):
        extra = MPoly.zero(f, N)
        row = C.rows[i]
        for j in range(n):
            if row[j].is_zero:
                continue
            exps = [0] * N
            exps[j] += 1
            exps[2 * n] += 1
            extra = extra + MPoly.monomial(f, N, tuple(exps), row[j])
        images[n + i] = images[n + i] + extra
    return images


def is_invariant(rep: GaRepresentation, f) -> bool:
    """Scheme-theoretic invariance of a polynomial on A^{2n}.

    Substitutes a generic one-parameter group element per generator and
    demands the result equal the original identically in the formal
    parameter; this is stronger than fixing every rational point of the
    group over a small field.
    """
    poly = f.poly if isinstance(f, PairGradedPoly) else f
    if poly.nvars != 2 * rep.n or poly.field != rep.ctx:
        raise ConfigError("polynomial does not live on the representation space")
    plain = poly.compose([MPoly.variable(rep.ctx, 2 * rep.n + 1, i)
                          for i in range(2 * rep.n)])
    for k in range(rep.rank):
        if poly.compose(_tau_images(rep, k)) != plain:
            return False
    return True


def _bounded_compositions(bounds, total):
    """All tuples y with 0 <= y_i <= bounds[i] and sum(y) = total."""
    out = []
    cur = [0] * len(bounds)

    def rec(i, left):
        if i == len(bounds):
            if left == 0:
                out.append(tuple(cur))
            return
        room = sum(bounds[i + 1:])
        for v in range(min(bounds[i], left), -1, -1):
            if left - v > room:
                continue
            cur[i] = v
            rec(i + 1, left - v)
        cur[i] = 0

    rec(0, total)
    return out


def invariant_dimension(rep: GaRepresentation, c, a: int) -> int:
    """Dimension of the invariants with pair-multidegree c and y-degree a.

    The monomial basis fixes x-exponent c_i - y_i per pair, so it is
    indexed by the bounded compositions of a; the tau-coefficients of the
    substituted basis give exact linear conditions.
    """
    c = tuple(int(k) for k in c)
    if len(c) != rep.n or any(k < 0 for k in c):
        raise ConfigError(f"pair-multidegree must be {rep.n} nonnegative integers")
    if not 0 <= a <= sum(c):
        raise ConfigError("y-degree out of range for this multidegree")
    yexps = _bounded_compositions(c, a)
    if not yexps:
        return 0
    f = rep.ctx
    n = rep.n
    rows = {}
    for k in range(rep.rank):
        images = _tau_images(rep, k)
        for col, y in enumerate(yexps):
            exps = tuple(ci - yi for ci, yi in zip(c, y)) + y
            moved = MPoly.monomial(f, 2 * n, exps).compose(images)
            for e, coeff in moved.terms.items():
                if e[2 * n] == 0:
                    continue
                row = rows.setdefault((k, e), [f.zero] * len(yexps))
                row[col] = coeff
    if not rows:
        return len(yexps)
    return len(yexps) - Matrix(f, [rows[key] for key in sorted(rows)]).rank()


# ---------------------------------------------------------------------------
# sections as invariants

@dataclass(frozen=True, eq=False)
class PairGradedPoly:
    """A polynomial on A^{2n} homogeneous in every pair (x_i, y_i)."""
    poly: MPoly
    n: int
    pair_degrees: tuple
    y_degree: int

    @staticmethod
    def wrap(poly: MPoly, n: int) -> "PairGradedPoly":
        if poly.nvars != 2 * n:
            raise ValueError("polynomial does not have paired variables")
        if poly.is_zero:
            raise ValueError("the zero polynomial carries no grading")
        c = None
        a = None
        for e in poly.terms:
            pairs = tuple(e[i] + e[n + i] for i in range(n))
            ydeg = sum(e[n:])
            if c is None:
                c, a = pairs, ydeg
            elif pairs != c or ydeg != a:
                raise ValueError("polynomial is not pair-graded")
        return PairGradedPoly(poly=poly, n=n, pair_degrees=c, y_degree=a)


def coordinate_sections(rep: GaRepresentation) -> list:
    """The r canonical invariants u_j = sum_i M_ji y_i prod_{k != i} x_k.

    The formula inverts the diagonal shear only; a twisted representation
    mixes pairs along its orbits and carries its own section
    correspondence through the base change, so it is refused here.
    """
    if rep.base_change is not None:
        raise ConfigError("sections are defined on the diagonal form; "
                          "twist after lifting, not before")
    f = rep.ctx
    n = rep.n
    out = []
    for j in range(rep.r):
        u = MPoly.zero(f, 2 * n)
        for i in range(n):
            coeff = rep.point_matrix.rows[j][i]
            if coeff.is_zero:
                continue
            exps = [1] * n + [0] * n
            exps[i] = 0
            exps[n + i] = 1
            u = u + MPoly.monomial(f, 2 * n, tuple(exps), coeff)
        out.append(u)
    return out


def section_to_invariant(rep: GaRepresentation, F: MPoly, b) -> PairGradedPoly:
    """Lift a degree-a form on P^(r-1) to the invariant of class (a, b).

    F must vanish to order >= b_i at the i-th point for positive b_i (the
    orders are checked).  The result substitutes the canonical invariants
    into F and divides out prod x_i^{b_i}; exact divisibility is a theorem
    given the vanishing, so its failure raises ConsistencyError.
    """
    f = rep.ctx
    if F.nvars != rep.r:
        raise ConfigError(f"the form must have {rep.r} variables")
    if F.is_zero:
        raise ConfigError("the zero form has no invariant lift")
    a = F.total_degree()
    if any(sum(e) != a for e in F.terms):
        raise ConfigError("the form must be homogeneous")
    b = [int(v) for v in b]
    if len(b) != rep.n:
        raise ConfigError(f"need one vanishing order per point, got {len(b)}")
    if any(v > a for v in b):
        raise ConfigError("vanishing orders cannot exceed the form degree")
    coeffs = coeff_vector(F, a)
    for i, bi in enumerate(b):
        if bi <= 0:
            continue
        point = rep.point_matrix.column(i)
        for row in vanishing_rows(f, rep.r, a, point, bi):
            total = f.zero
            for rc, fc in zip(row, coeffs):
                total = total + rc * fc
            if not total.is_zero:
                raise ConfigError(
                    f"form does not vanish to order {bi} at point {i}"
                )
    lifted = F.compose(coordinate_sections(rep))
    terms = []
    for e, coeff in lifted.terms.items():
        exps = list(e)
        for i, bi in enumerate(b):
            exps[i] -= bi
            if exps[i] < 0:
                raise ConsistencyError(
                    f"x_{i}^{bi} does not divide the lift although the "
                    "vanishing orders were verified"
                )
        terms.append((tuple(exps), coeff))
    poly = MPoly(f, 2 * rep.n, terms)
    out = PairGradedPoly.wrap(poly, rep.n)
    expect = tuple(a - bi for bi in b)
    if out.pair_degrees != expect or out.y_degree != a:
        raise ConsistencyError("lift landed in the wrong graded piece")
    return out


def mukai_cross_check(rep: GaRepresentation, config: PointConfig, box) -> list:
    """Compare invariant dimensions with section counts over a box.

    `box` is an iterable of (c, a) cells.  Each row records both
    dimensions and whether they agree; disagreement on a smooth-base-locus
    configuration falsifies the graded correspondence, so callers treat
    any equal=False row as a hard failure.  Negative multiplicities a-c_i
    are clamped to zero on the section side.
    """
    if rep.n != config.n or rep.r != config.r or rep.ctx != config.field:
        raise ConfigError("representation and configuration do not match")
    for j in range(config.n):
        _column_scaling(rep.point_matrix.column(j), config.points[j], j)
    rows = []
    for c, a in box:
        c = tuple(int(k) for k in c)
        inv = invariant_dimension(rep, c, a)
        conditions = []
        for i in range(config.n):
            mult = a - c[i]
            if mult > 0:
                conditions.append((config.points[i], mult))
        h = h0_dimension(config.field, config.r, a, conditions)
        rows.append({
            "c": list(c),
            "a": a,
            "invariant_dim": inv,
            "h0": h,
            "equal": inv == h,
        })
    return rows


# ---------------------------------------------------------------------------
# export

def rep_to_json_dict(rep: GaRepresentation) -> dict:
    return {
        "n": rep.n,
        "r": rep.r,
        "point_matrix": [
            [element_to_json(c) for c in row] for row in rep.point_matrix.rows
        ],
        "subgroup_basis": [
            [element_to_json(c) for c in row] for row in rep.subgroup_basis.rows
        ],
    }


def _render_cell(e) -> str:
    f = e.field
    if f.kind == "prime" and f.p > 2:
        # balanced residues read better for small primes
        v = e.val if e.val <= f.p // 2 else e.val - f.p
        return str(v)
    return str(element_to_json(e)).replace(" ", "")


def render_generators(rep: GaRepresentation) -> str:
    """Generators in diagonal block notation, one line per subgroup row.

    Each generator 1 + A is described by its shear block, printed as
    diag(...) running along the twist orbits; a scalar block prints as
    repeated scalars, a non-scalar one as a bracketed square matrix.
    """
    orbits = rep.orbits or tuple((i,) for i in range(rep.n))
    lines = []
    for k, C in enumerate(rep.generators):
        parts = []
        off = 0
        for orbit in orbits:
            ell = len(orbit)
            block = [[C.rows[i][j] for j in range(off, off + ell)]
                     for i in range(off, off + ell)]
            scalar = all(
                (block[i][j] == block[0][0]) if i == j else block[i][j].is_zero
                for i in range(ell) for j in range(ell)
            )
            if scalar:
                parts.extend(_render_cell(block[0][0]) for _ in range(ell))
            else:
                parts.append(
                    "[" + "; ".join(" ".join(_render_cell(c) for c in row)
                                    for row in block) + "]"
                )
            off += ell
        lines.append(f"1 + A_{k + 1},  A_{k + 1} = diag(" + ", ".join(parts) + ")")
    return "\n".join(lines)

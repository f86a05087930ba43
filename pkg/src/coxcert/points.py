"""Point configurations in projective space and their incidence structure.

A configuration is an ordered list of distinct points of P^(r-1), stored as
normalized coordinate tuples (first nonzero coordinate scaled to 1).  All
rank computations reduce to exact linear algebra on the coordinate matrix.

The two rank counts exposed here follow from the component structure of the
degenerate members of the associated linear system:

* nine points in the plane spanning a pencil of cubics: every collinear
  triple contributes a line component, and a partition of the nine points
  into three collinear triples merges three of those contributions into a
  single totally degenerate member, so the fibration rank is 8 - a + b
  where a counts collinear triples and b counts such partitions;
* eight points in space spanning a net of quadrics: plane splittings come
  in complementary pairs of coplanar quadruples, giving rank 7 - a/2.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .fields import Element, Field, FieldError
from .linalg import Matrix


class ConfigError(ValueError):
    """Raised for malformed or unsupported point configurations."""


def normalize_point(field: Field, coords) -> tuple:
    vals = [c if isinstance(c, Element) else field(c) for c in coords]
    lead = None
    for c in vals:
        if not c.is_zero:
            lead = c
            break
    if lead is None:
        raise ConfigError("zero vector is not a projective point")
    inv = lead.inv()
    return tuple(c * inv for c in vals)


@dataclass(frozen=True)
class PointConfig:
    """Ordered configuration of distinct points in P^(r-1)."""

    field: Field
    points: tuple

    def __post_init__(self):
        if not self.points:
            raise ConfigError("empty configuration")
        r = len(self.points[0])
        for p in self.points:
            if len(p) != r:
                raise ConfigError("points of mixed dimension")
        if len(set(self.points)) != len(self.points):
            raise ConfigError("repeated point")

    @staticmethod
    def build(field: Field, rows) -> "PointConfig":
        """`rows` lists the points; coordinates may be raw values."""
        pts = tuple(normalize_point(field, row) for row in rows)
        return PointConfig(field, pts)

    @staticmethod
    def from_columns(field: Field, matrix_rows) -> "PointConfig":
        """Points given as the columns of an r x n matrix."""
        r = len(matrix_rows)
        n = len(matrix_rows[0])
        cols = [[matrix_rows[i][j] for i in range(r)] for j in range(n)]
        return PointConfig.build(field, cols)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def r(self) -> int:
        return len(self.points[0])

    def matrix(self) -> Matrix:
        """Coordinate matrix, points as columns (r x n)."""
        return Matrix(self.field, [[p[i] for p in self.points] for i in range(self.r)])

    def subset_rank(self, idx) -> int:
        return Matrix(self.field, [list(self.points[i]) for i in idx]).rank()

    def transform(self, g: Matrix) -> "PointConfig":
        """Apply a projective transformation (invertible r x r matrix)."""
        pts = []
        for p in self.points:
            img = g * list(p)
            pts.append(normalize_point(self.field, img))
        return PointConfig(self.field, tuple(pts))

    def permute(self, perm) -> "PointConfig":
        return PointConfig(self.field, tuple(self.points[i] for i in perm))

    def point_set(self) -> frozenset:
        return frozenset(self.points)


# ---------------------------------------------------------------------------
# general position

_dep_cache: dict = {}


def dependent_subsets(config: PointConfig, k: int) -> list:
    """k-subsets of indices whose points span less than min(k, r) dimensions."""
    key = (config, k)
    got = _dep_cache.get(key)
    if got is not None:
        return got
    cap = min(k, config.r)
    out = []
    for idx in itertools.combinations(range(config.n), k):
        if config.subset_rank(idx) < cap:
            out.append(idx)
    _dep_cache[key] = out
    return out


def is_lgp(config: PointConfig):
    """Linear general position: every subset of at most r points independent.

    Returns (True, None) or (False, first offending index tuple).
    """
    for k in range(2, config.r + 1):
        for idx in itertools.combinations(range(config.n), k):
            if config.subset_rank(idx) < k:
                return False, idx
    return True, None


def collinear_triples(config: PointConfig) -> list:
    if config.r != 3:
        raise ConfigError("collinearity count requires points in the plane")
    return dependent_subsets(config, 3)


def coplanar_quadruples(config: PointConfig) -> list:
    if config.r != 4:
        raise ConfigError("coplanarity count requires points in space")
    return dependent_subsets(config, 4)


def triple_partitions(config: PointConfig) -> list:
    """Partitions of all points into three pairwise disjoint collinear triples."""
    if config.n != 9:
        return []
    triples = collinear_triples(config)
    out = []
    for i, t1 in enumerate(triples):
        s1 = set(t1)
        for j in range(i + 1, len(triples)):
            t2 = triples[j]
            if s1 & set(t2):
                continue
            rest = tuple(sorted(set(range(9)) - s1 - set(t2)))
            if rest in triples and rest > t2:
                out.append((t1, t2, rest))
    return out


# ---------------------------------------------------------------------------
# rank counts

@dataclass(frozen=True)
class RankReport:
    rho: int
    a: int
    b: int
    detail: dict = dc_field(compare=False, default_factory=dict)


def pencil_rank_report(config: PointConfig) -> RankReport:
    """Rank count for nine plane points spanning a cubic pencil."""
    if config.r != 3 or config.n != 9:
        raise ConfigError("expected nine points in the plane")
    triples = collinear_triples(config)
    for line_pts in _max_points_on_line(config):
        if len(line_pts) > 3:
            raise ConfigError(f"points {line_pts} share a line: fixed component")
    parts = triple_partitions(config)
    a, b = len(triples), len(parts)
    return RankReport(
        rho=8 - a + b,
        a=a,
        b=b,
        detail={"collinear_triples": triples, "line_partitions": parts},
    )


def net_rank_report(config: PointConfig) -> RankReport:
    """Rank count for eight space points spanning a quadric net."""
    if config.r != 4 or config.n != 8:
        raise ConfigError("expected eight points in space")
    quads = coplanar_quadruples(config)
    full = set(range(8))
    for q in quads:
        comp = tuple(sorted(full - set(q)))
        if comp not in quads:
            raise ConfigError(
                f"coplanar quadruple {q} has non-coplanar complement: "
                "no plane-pair member matches it"
            )
    a = len(quads)
    if a % 2 != 0:
        raise ConfigError("odd number of coplanar quadruples")
    pairs = []
    seen = set()
    for q in quads:
        if q in seen:
            continue
        comp = tuple(sorted(full - set(q)))
        seen.add(q)
        seen.add(comp)
        pairs.append((q, comp))
    return RankReport(
        rho=7 - a // 2,
        a=a,
        b=a // 2,
        detail={"coplanar_quadruples": quads, "plane_pairs": pairs},
    )


def rank_from_incidences(config: PointConfig) -> RankReport:
    if config.r == 3:
        return pencil_rank_report(config)
    if config.r == 4:
        return net_rank_report(config)
    raise ConfigError("rank counts are defined for plane and space configurations")


def _max_points_on_line(config: PointConfig):
    """Group collinear triples by their spanned line; yields index sets."""
    lines: dict = {}
    for t in dependent_subsets(config, 3):
        key = _line_key(config, t)
        lines.setdefault(key, set()).update(t)
    return lines.values()


def _line_key(config: PointConfig, triple) -> tuple:
    # two independent points of the triple determine the line; use the
    # canonical kernel of their span as the key
    rows = [list(config.points[i]) for i in triple]
    m = Matrix(config.field, rows)
    ker = m.kernel_basis()
    return tuple(tuple(e.val for e in v) for v in ker)


# ---------------------------------------------------------------------------
# dualization and re-embedding

def dualize(config: PointConfig) -> PointConfig:
    """Kernel configuration: columns of a canonical basis of the relations
    among the points.  n points in P^(r-1) yield n points in P^(n-r-1).

    Requires the points to span and every point to carry a nonzero dual
    column, which holds whenever removing any single point keeps full span.
    """
    m = config.matrix()
    if m.rank() != config.r:
        raise ConfigError("points do not span the ambient space")
    ker = m.kernel_basis()
    if len(ker) != config.n - config.r:
        raise ConfigError("unexpected kernel dimension")
    cols = []
    for j in range(config.n):
        col = [v[j] for v in ker]
        if all(c.is_zero for c in col):
            raise ConfigError(f"point {j} is independent of the rest: dual column vanishes")
        cols.append(col)
    return PointConfig.build(config.field, cols)


def frobenius_orbits(config: PointConfig, base: Field) -> tuple:
    """The permutation sigma with frobenius(p_i) = p_{sigma(i)} projectively.

    `base` fixes which Frobenius acts: x -> x^(#base).  Normalized
    representatives turn the projective condition into exact equality, so
    the lookup is a set membership test.  Raises ConfigError when some
    conjugate is missing from the configuration.
    """
    field = config.field
    if not field.is_finite or not base.is_finite:
        raise ConfigError("frobenius orbits need a finite extension context")
    if base.p != field.p or field.degree % base.degree != 0:
        raise ConfigError(f"{base} is not a subfield of {field}")
    e = base.degree
    where = {p: i for i, p in enumerate(config.points)}
    sigma = []
    for i, p in enumerate(config.points):
        image = tuple(c.frobenius(e) for c in p)
        j = where.get(image)
        if j is None:
            raise ConfigError(
                f"configuration is not Galois-stable: conjugate of point {i} is absent"
            )
        sigma.append(j)
    if sorted(sigma) != list(range(config.n)):
        raise ConfigError("Frobenius identified two distinct points")
    return tuple(sigma)


def veronese_embed(config: PointConfig) -> PointConfig:
    """Quadratic re-embedding: all degree-two monomials, lexicographic order."""
    r = config.r
    exps = sorted(
        (tuple(e) for e in _degree_two_exponents(r)),
        reverse=True,
    )
    pts = []
    for p in config.points:
        coords = []
        for e in exps:
            val = config.field.one
            for i, k in enumerate(e):
                for _ in range(k):
                    val = val * p[i]
            coords.append(val)
        pts.append(coords)
    return PointConfig.build(config.field, pts)


def _degree_two_exponents(r: int):
    for i in range(r):
        for j in range(i, r):
            e = [0] * r
            e[i] += 1
            e[j] += 1
            yield e


# ---------------------------------------------------------------------------
# projective equivalence

def _point_fingerprint(config: PointConfig, i: int) -> tuple:
    """Permutation-invariant profile of one point: how many dependent
    subsets of each size contain it."""
    prof = []
    for k in range(2, config.r + 1):
        cnt = sum(1 for idx in dependent_subsets(config, k) if i in idx)
        prof.append(cnt)
    return tuple(prof)


def _find_frame(config: PointConfig):
    """First r+1 indices (lex order) with every r of them independent."""
    r = config.r
    for idx in itertools.combinations(range(config.n), r + 1):
        if all(
            config.subset_rank(sub) == r
            for sub in itertools.combinations(idx, r)
        ):
            return idx
    return None


def _frame_transform(config_from, frame_from, config_to, frame_to):
    """PGL element g with g(frame_from[k]) ~ frame_to[k], or None.

    Standard construction: scale the first r target points so that the
    (r+1)-th matches; the scalings are the coordinates of the extra point
    in the basis of the first r.
    """
    f = config_from.field
    r = config_from.r
    m1 = Matrix(f, [[config_from.points[i][k] for i in frame_from[:r]] for k in range(r)])
    m2 = Matrix(f, [[config_to.points[i][k] for i in frame_to[:r]] for k in range(r)])
    alpha = m1.solve(list(config_from.points[frame_from[r]]))
    beta = m2.solve(list(config_to.points[frame_to[r]]))
    if alpha is None or beta is None:
        return None
    if any(a.is_zero for a in alpha) or any(b.is_zero for b in beta):
        return None
    scale = [b / a for a, b in zip(alpha, beta)]
    scaled = Matrix(f, [[m2.rows[i][j] * scale[j] for j in range(r)] for i in range(r)])
    try:
        return scaled * m1.inverse()
    except ValueError:
        return None


def config_equivalent(c1: PointConfig, c2: PointConfig, allow_permutation: bool = True):
    """Projective equivalence test with witness.

    Returns (g, perm) with g mapping point i of c1 to point perm[i] of c2,
    or None.  Uses a frame of c1 against candidate frames of c2, pruning by
    per-point incidence fingerprints; the identity assignment is tried
    first so equal-ordering matches return quickly.

    With allow_permutation=False only the identity matching counts.  That
    case needs no search: a transform carrying point i of c1 to point i of
    c2 for every i in particular matches the frames slot by slot, and the
    frame correspondence pins down the transform uniquely.
    """
    if c1.field != c2.field or c1.n != c2.n or c1.r != c2.r:
        return None
    fp1 = [_point_fingerprint(c1, i) for i in range(c1.n)]
    fp2 = [_point_fingerprint(c2, i) for i in range(c2.n)]
    if sorted(fp1) != sorted(fp2):
        return None
    frame1 = _find_frame(c1)
    if frame1 is None:
        raise ConfigError("no projective frame: configuration too degenerate")
    if _find_frame(c2) is None:
        return None

    index2 = {pt: j for j, pt in enumerate(c2.points)}

    def attempt(frame2):
        g = _frame_transform(c1, frame1, c2, frame2)
        if g is None:
            return None
        perm = []
        for p in c1.points:
            try:
                img = normalize_point(c1.field, g * list(p))
            except ConfigError:
                return None  # degenerate candidate frame gave a singular map
            j = index2.get(img)
            if j is None:
                return None
            perm.append(j)
        if len(set(perm)) != c1.n:
            return None
        return g, tuple(perm)

    got = attempt(frame1)
    if not allow_permutation:
        if got is not None and got[1] == tuple(range(c1.n)):
            return got
        return None
    if got is not None:
        return got

    r = c1.r
    candidates_by_slot = [
        [j for j in range(c2.n) if fp2[j] == fp1[frame1[k]]]
        for k in range(r + 1)
    ]
    for frame2 in itertools.product(*candidates_by_slot):
        if len(set(frame2)) != r + 1:
            continue
        got = attempt(frame2)
        if got is not None:
            return got
    return None

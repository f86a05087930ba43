"""Shear representations: construction, twisting, invariants, cross-checks."""
import pytest
from hypothesis import given, settings, strategies as st

from coxcert.fields import Field, embed
from coxcert.gareps import (
    GaRepresentation,
    PairGradedPoly,
    build_representation,
    coordinate_sections,
    descend_diagonal,
    group_act,
    invariant_dimension,
    is_invariant,
    mukai_cross_check,
    render_generators,
    rep_to_json_dict,
    section_to_invariant,
    twist_blocks,
    twist_representation,
)
from coxcert.intersect import ConsistencyError
from coxcert.linalg import Matrix
from coxcert.points import ConfigError, PointConfig, config_equivalent
from coxcert.polys import MPoly
from coxcert.serialize import (
    dataset_config,
    dataset_kernel_basis,
    dataset_matrix,
)

F2 = Field.prime(2)
F3 = Field.prime(3)
F5 = Field.prime(5)
F7 = Field.prime(7)


def annihilates(pm: Matrix, basis: Matrix) -> bool:
    f = pm.field
    bt = Matrix(f, [[basis.rows[j][i] for j in range(basis.nrows)]
                    for i in range(basis.ncols)])
    return all(c.is_zero for row in (pm * bt).rows for c in row)


def same_rowspace(a: Matrix, b: Matrix) -> bool:
    ra, pa = a.rref()
    rb, pb = b.rref()
    return [ra.rows[i] for i in range(len(pa))] == [rb.rows[i] for i in range(len(pb))]


# -- construction -----------------------------------------------------------

def test_build_shapes(grid_f5):
    rep = build_representation(grid_f5)
    assert (rep.n, rep.r, rep.rank, rep.dimension) == (9, 3, 6, 18)
    assert rep.subgroup_basis.nrows == 6
    assert annihilates(rep.point_matrix, rep.subgroup_basis)
    # untwisted generators are diagonal with the subgroup rows on the diagonal
    for k, C in enumerate(rep.generators):
        for i in range(9):
            for j in range(9):
                want = rep.subgroup_basis.rows[k][i] if i == j else F5(0)
                assert C.rows[i][j] == want


def test_build_from_published_grid_matrix():
    cfg = dataset_config("grid_f5")
    pm = Matrix(F5, [[F5(v) for v in row] for row in dataset_matrix("grid_kernel_map")])
    rep = build_representation(cfg, point_matrix=pm)
    assert rep.point_matrix == pm
    assert rep.subgroup_basis.nrows == 6
    assert annihilates(pm, rep.subgroup_basis)


def test_build_rejects_bad_explicit_matrix(grid_f5, cube_f5):
    pm = Matrix(F5, [[F5(1)] * 8 for _ in range(4)])
    with pytest.raises(ConfigError):
        build_representation(grid_f5, point_matrix=pm)  # wrong shape
    good = cube_f5.matrix()
    rows = [list(r) for r in good.rows]
    rows[0][0] = F5(1)  # column 0 was (0,0,0,1); no longer proportional
    with pytest.raises(ConfigError):
        build_representation(cube_f5, point_matrix=Matrix(F5, rows))


def test_build_lgp_rank():
    for pts, r in [
        ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)], 3),
        ([(1, 0), (0, 1), (1, 1), (1, 2), (1, 3)], 2),
    ]:
        cfg = PointConfig.build(F7, pts)
        rep = build_representation(cfg)
        assert rep.subgroup_basis.nrows == cfg.n - r
        assert rep.subgroup_basis.rank() == cfg.n - r


def _character_cube_matrix():
    # rows are the four weight->=2 characters of (Z/2)^3 evaluated over the
    # vertices, the representatives whose kernel is the published span
    def chi(a, j):
        bits = [(j >> t) & 1 for t in range(3)]
        s = sum(ai * bi for ai, bi in zip(a, bits)) % 2
        return F5(1) if s == 0 else F5(-1)

    return Matrix(F5, [[chi(a, j) for j in range(8)]
                       for a in [(1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]])


def test_cube_subgroup_matches_published_span(cube_f5):
    M = _character_cube_matrix()
    cfg = PointConfig.build(F5, [M.column(j) for j in range(8)])
    # same projective configuration as the unit cube, point for point
    equiv = config_equivalent(cfg, cube_f5)
    assert equiv is not None and equiv[1] == tuple(range(8))
    rep = build_representation(cfg, point_matrix=M)
    span = Matrix(F5, [[F5(v) for v in row]
                       for row in dataset_matrix("cube_span_matrix")])
    assert same_rowspace(rep.subgroup_basis, span)


def test_cube_default_representatives_span_differently(cube_f5):
    # the kernel depends on the choice of column representatives; the unit
    # cube at w = 1 carries a different complement than the published span
    rep = build_representation(cube_f5)
    span = Matrix(F5, [[F5(v) for v in row]
                       for row in dataset_matrix("cube_span_matrix")])
    assert not same_rowspace(rep.subgroup_basis, span)
    assert annihilates(rep.point_matrix, rep.subgroup_basis)


# -- the action -------------------------------------------------------------

def test_group_act_identity_and_additivity(grid_f5):
    rep = build_representation(grid_f5)
    pt = tuple(F5(i % 5) for i in range(18))
    assert group_act(rep, [0] * 6, pt) == pt
    t1 = [F5(v) for v in (1, 2, 0, 3, 4, 1)]
    t2 = [F5(v) for v in (4, 4, 2, 0, 1, 3)]
    once = group_act(rep, t1, group_act(rep, t2, pt))
    both = group_act(rep, [a + b for a, b in zip(t1, t2)], pt)
    assert once == both


def test_group_act_reads_off_subgroup_row(grid_f5):
    rep = build_representation(grid_f5)
    pt = tuple([F5(1)] * 9 + [F5(0)] * 9)
    moved = group_act(rep, [1, 0, 0, 0, 0, 0], pt)
    assert moved[:9] == pt[:9]
    assert moved[9:] == tuple(rep.subgroup_basis.rows[0])


def test_group_act_fixes_x_always(grid_f5):
    rep = build_representation(grid_f5)
    pt = tuple(F5(3 * i + 1) for i in range(18))
    moved = group_act(rep, [2, 1, 4, 0, 3, 2], pt)
    assert moved[:9] == pt[:9]


def test_group_act_bad_lengths(grid_f5):
    rep = build_representation(grid_f5)
    with pytest.raises(ConfigError):
        group_act(rep, [0] * 5, [0] * 18)
    with pytest.raises(ConfigError):
        group_act(rep, [0] * 6, [0] * 17)


def test_generators_commute(grid_f5):
    rep = build_representation(grid_f5)
    gens = rep.generators
    for i in range(len(gens)):
        for j in range(i):
            assert gens[i] * gens[j] == gens[j] * gens[i]


# -- invariance -------------------------------------------------------------

def test_coordinates_are_invariant(grid_f5):
    rep = build_representation(grid_f5)
    for i in range(9):
        assert is_invariant(rep, MPoly.variable(F5, 18, i))


def test_sections_are_invariant(grid_f5):
    rep = build_representation(grid_f5)
    for u in coordinate_sections(rep):
        assert is_invariant(rep, u)


def test_bare_y_and_minors_are_not_invariant(grid_f5):
    rep = build_representation(grid_f5)
    assert not is_invariant(rep, MPoly.variable(F5, 18, 9))
    x1, x2 = MPoly.variable(F5, 18, 0), MPoly.variable(F5, 18, 1)
    y1, y2 = MPoly.variable(F5, 18, 9), MPoly.variable(F5, 18, 10)
    assert not is_invariant(rep, x1 * y2 + (x2 * y1).scale(F5(-1)))


def test_is_invariant_rejects_wrong_ring(grid_f5):
    rep = build_representation(grid_f5)
    with pytest.raises(ConfigError):
        is_invariant(rep, MPoly.variable(F5, 3, 0))
    with pytest.raises(ConfigError):
        is_invariant(rep, MPoly.variable(F7, 18, 0))


# -- graded dimensions ------------------------------------------------------

def test_invariant_dimension_unit_and_linear(grid_f5):
    rep = build_representation(grid_f5)
    assert invariant_dimension(rep, (1, 0, 0, 0, 0, 0, 0, 0, 0), 0) == 1
    assert invariant_dimension(rep, (1,) * 9, 0) == 1
    assert invariant_dimension(rep, (1,) * 9, 1) == 3


def test_invariant_dimension_conics_vanish(grid_f5):
    rep = build_representation(grid_f5)
    assert invariant_dimension(rep, (1,) * 9, 2) == 0


def test_invariant_dimension_validation(grid_f5):
    rep = build_representation(grid_f5)
    with pytest.raises(ConfigError):
        invariant_dimension(rep, (1,) * 8, 1)
    with pytest.raises(ConfigError):
        invariant_dimension(rep, (1,) * 9, 10)
    with pytest.raises(ConfigError):
        invariant_dimension(rep, (-1,) + (1,) * 8, 0)


@given(seed=st.integers(min_value=0, max_value=10 ** 6))
@settings(max_examples=10, deadline=None)
def test_invariant_dimension_permutation_covariant(seed):
    import random as _random

    rng = _random.Random(seed)
    pts = [(x, y, 1) for x in (0, 1, 4) for y in (0, 1, 4)]
    perm = list(range(9))
    rng.shuffle(perm)
    base = PointConfig.build(F5, pts)
    moved = PointConfig.build(F5, [pts[perm[i]] for i in range(9)])
    # keep the multidegree sparse so the symbolic expansion stays small
    c = [0] * 9
    for i in rng.sample(range(9), rng.randrange(1, 6)):
        c[i] = rng.randrange(1, 3)
    c = tuple(c)
    a = rng.randrange(min(sum(c), 3) + 1)
    d1 = invariant_dimension(build_representation(base), c, a)
    d2 = invariant_dimension(
        build_representation(moved), tuple(c[perm[i]] for i in range(9)), a
    )
    assert d1 == d2


# -- sections to invariants -------------------------------------------------

def test_section_to_invariant_unit(grid_f5):
    rep = build_representation(grid_f5)
    one = MPoly.monomial(F5, 3, (0, 0, 0))
    out = section_to_invariant(rep, one, (-1, 0, 0, 0, 0, 0, 0, 0, 0))
    assert out.poly == MPoly.variable(F5, 18, 0)
    assert out.pair_degrees == (1, 0, 0, 0, 0, 0, 0, 0, 0)
    assert out.y_degree == 0


def test_section_to_invariant_linear(grid_f5):
    rep = build_representation(grid_f5)
    us = coordinate_sections(rep)
    for j in range(3):
        out = section_to_invariant(rep, MPoly.variable(F5, 3, j), (0,) * 9)
        assert out.poly == us[j]
        assert out.y_degree == 1


def test_section_to_invariant_pencil_member(grid_f5):
    rep = build_representation(grid_f5)
    # x^3 - x z^2 vanishes on the whole grid
    F = MPoly(F5, 3, [((3, 0, 0), F5(1)), ((1, 0, 2), F5(-1))])
    out = section_to_invariant(rep, F, (1,) * 9)
    assert out.pair_degrees == (2,) * 9
    assert out.y_degree == 3
    assert is_invariant(rep, out)


def test_section_to_invariant_rejects(grid_f5):
    rep = build_representation(grid_f5)
    with pytest.raises(ConfigError):  # z = 1 at every grid point
        section_to_invariant(rep, MPoly.variable(F5, 3, 2), (1,) + (0,) * 8)
    with pytest.raises(ConfigError):  # wrong arity
        section_to_invariant(rep, MPoly.variable(F5, 2, 0), (0,) * 9)
    with pytest.raises(ConfigError):  # order exceeding the degree
        section_to_invariant(rep, MPoly.variable(F5, 3, 0), (2,) + (0,) * 8)
    with pytest.raises(ConfigError):  # zero form
        section_to_invariant(rep, MPoly.zero(F5, 3), (0,) * 9)


def test_pair_graded_wrap_validates():
    x0 = MPoly.variable(F5, 4, 0)
    y1 = MPoly.variable(F5, 4, 3)
    good = PairGradedPoly.wrap(x0 * y1, 2)
    assert good.pair_degrees == (1, 1) and good.y_degree == 1
    with pytest.raises(ValueError):  # mixed grading
        PairGradedPoly.wrap(x0 + y1, 2)
    with pytest.raises(ValueError):
        PairGradedPoly.wrap(MPoly.zero(F5, 4), 2)
    with pytest.raises(ValueError):
        PairGradedPoly.wrap(x0, 3)


# -- the two-sided dimension comparison --------------------------------------

def test_cross_check_grid_box(grid_f5):
    rep = build_representation(grid_f5)
    box = [((1,) * 9, a) for a in range(3)]
    box += [((2,) * 9, a) for a in range(4)]
    rows = mukai_cross_check(rep, grid_f5, box)
    assert all(row["equal"] for row in rows)
    by_cell = {(tuple(row["c"]), row["a"]): row for row in rows}
    # the pencil through all nine points
    assert by_cell[((2,) * 9, 3)]["invariant_dim"] == 2
    assert by_cell[((1,) * 9, 1)]["h0"] == 3


def test_cross_check_clamps_negative_orders(grid_f5):
    rep = build_representation(grid_f5)
    rows = mukai_cross_check(rep, grid_f5, [((1, 0, 0, 0, 0, 0, 0, 0, 0), 0)])
    assert rows[0]["invariant_dim"] == 1
    assert rows[0]["h0"] == 1
    assert rows[0]["equal"]


def test_cross_check_rejects_foreign_config(grid_f5, cube_f5):
    rep = build_representation(grid_f5)
    with pytest.raises(ConfigError):
        mukai_cross_check(rep, cube_f5, [((1,) * 8, 1)])


# -- twisting ---------------------------------------------------------------

def test_twist_cubic_pair_shapes():
    cfg = dataset_config("hesse_f4")
    rep = twist_representation(cfg, F2)
    assert rep.ctx == F2
    assert (rep.n, rep.rank, rep.dimension) == (9, 6, 18)
    assert rep.orbits == ((0,), (1, 2), (3, 4), (5, 6), (7, 8))
    assert annihilates(rep.point_matrix, rep.subgroup_basis)
    gens = rep.generators
    for i in range(len(gens)):
        for j in range(i):
            assert gens[i] * gens[j] == gens[j] * gens[i]


def test_twist_fourth_roots_shapes():
    cfg = dataset_config("fourth_roots_f9")
    rep = twist_representation(cfg, F3)
    assert rep.ctx == F3 and rep.dimension == 18
    assert annihilates(rep.point_matrix, rep.subgroup_basis)


def test_twist_quadric_shapes():
    cfg = dataset_config("quadric_f4")
    rep = twist_representation(cfg, F2)
    assert rep.ctx == F2
    assert (rep.n, rep.r, rep.rank, rep.dimension) == (8, 4, 4, 16)
    assert len(rep.orbits) == 4


def test_twist_base_change_diagonalizes():
    cfg = dataset_config("hesse_f4")
    rep = twist_representation(cfg, F2)
    K = cfg.field
    B = rep.base_change
    B_inv = B.inverse()
    diagonal_rep = build_representation(cfg)
    W = diagonal_rep.subgroup_basis
    for C in rep.generators:
        big = Matrix(K, [[embed(c, K) for c in row] for row in C.rows])
        D = B * big * B_inv
        diag = []
        for i in range(rep.n):
            for j in range(rep.n):
                if i != j:
                    assert D.rows[i][j].is_zero
            diag.append(D.rows[i][i])
        # the diagonal lies in the span of the untwisted subgroup rows
        stacked = Matrix(K, [list(r) for r in W.rows] + [diag])
        assert stacked.rank() == W.nrows


def test_twist_rejects_bad_inputs(grid_f5):
    with pytest.raises(ConfigError):  # not an extension field
        twist_representation(grid_f5, F5)
    cfg = dataset_config("hesse_f4")
    with pytest.raises(ConfigError):  # degree-1 "extension"
        twist_representation(cfg, cfg.field)
    with pytest.raises(ConfigError):  # wrong characteristic
        twist_representation(cfg, F3)
    f4 = Field.extension(2, 2)
    z = f4.generator()
    unstable = PointConfig.build(f4, [(1, 0, 0), (0, 1, 0), (1, z, 1)])
    with pytest.raises(ConfigError):
        twist_representation(unstable, F2)


def test_twist_rejects_degree_four():
    f16 = Field.extension(2, 4)
    g = f16.generator()
    pts = [(1, 0), (0, 1), (1, 1), (1, g), (1, g ** 2), (1, g ** 4),
           (1, g ** 8), (1, g ** 3), (1, g ** 12), (1, g ** 9), (1, g ** 6)]
    cfg = PointConfig.build(f16, pts)
    with pytest.raises(ConfigError):
        twist_representation(cfg, F2)


# -- published kernel bases and blocks ---------------------------------------

def _block_charpoly(block):
    a, b = block.rows[0]
    c, d = block.rows[1]
    return (a + d, a * d - b * c)


@pytest.mark.parametrize("kername", [
    "hesse_kernel_basis", "fourth_roots_kernel_basis", "quadric_kernel_basis",
])
def test_published_rows_annihilate_published_matrix(kername):
    field, rows, pm = dataset_kernel_basis(kername)
    M = Matrix(field, pm)
    for row in rows:
        image = M * row
        assert all(c.is_zero for c in image)
    # and they are an independent basis of the full kernel
    basis = Matrix(field, rows)
    assert basis.rank() == len(rows) == M.ncols - M.nrows


@pytest.mark.parametrize("cfgname,kername,base,blockname", [
    ("hesse_f4", "hesse_kernel_basis", F2, "twist_block_f2"),
    ("fourth_roots_f9", "fourth_roots_kernel_basis", F3, "twist_block_f3"),
    ("quadric_f4", "quadric_kernel_basis", F2, "twist_block_f2"),
])
def test_descended_published_rows_have_companion_blocks(
    cfgname, kername, base, blockname
):
    cfg = dataset_config(cfgname)
    rep = twist_representation(cfg, base)
    field, rows, _ = dataset_kernel_basis(kername)
    companion = Matrix(base, [[base(v) for v in row]
                              for row in dataset_matrix(blockname)])
    want = _block_charpoly(companion)
    saw_nonscalar = 0
    for row in rows:
        C = descend_diagonal(rep, row)
        off = 0
        for orbit in rep.orbits:
            ell = len(orbit)
            block = Matrix(base, [[C.rows[i][j] for j in range(off, off + ell)]
                                  for i in range(off, off + ell)])
            if ell == 2:
                a, b = block.rows[0]
                c, d = block.rows[1]
                if not b.is_zero or not c.is_zero or a != d:
                    saw_nonscalar += 1
                    assert _block_charpoly(block) == want
            off += ell
    assert saw_nonscalar > 0


def test_descend_diagonal_validation(grid_f5):
    cfg = dataset_config("hesse_f4")
    rep = twist_representation(cfg, F2)
    K = cfg.field
    z = K.generator()
    with pytest.raises(ConfigError):  # not Galois-equivariant
        descend_diagonal(rep, [z] + [K.zero] * 8)
    with pytest.raises(ConfigError):  # wrong length
        descend_diagonal(rep, [K.zero] * 8)
    plain = build_representation(grid_f5)
    with pytest.raises(ConfigError):  # untwisted representation
        descend_diagonal(plain, [F5(0)] * 9)


def test_twist_blocks_accessor():
    cfg = dataset_config("hesse_f4")
    rep = twist_representation(cfg, F2)
    blocks = twist_blocks(rep)
    assert [orbit for orbit, _ in blocks] == list(rep.orbits)
    for orbit, bl in blocks:
        assert len(bl) == rep.rank
        for B in bl:
            assert B.nrows == B.ncols == len(orbit)
    plain = build_representation(dataset_config("grid_f5"))
    with pytest.raises(ConfigError):
        twist_blocks(plain)


def test_twisted_rep_still_fixes_x_symbolically():
    cfg = dataset_config("hesse_f4")
    rep = twist_representation(cfg, F2)
    for i in range(9):
        assert is_invariant(rep, MPoly.variable(F2, 18, i))
    # the diagonal section formula does not survive the twist
    with pytest.raises(ConfigError):
        coordinate_sections(rep)


# -- export -----------------------------------------------------------------

def test_rep_json_shape(grid_f5):
    rep = build_representation(grid_f5)
    d = rep_to_json_dict(rep)
    assert set(d) == {"n", "r", "point_matrix", "subgroup_basis"}
    assert d["n"] == 9 and d["r"] == 3
    assert len(d["point_matrix"]) == 3 and len(d["point_matrix"][0]) == 9
    assert len(d["subgroup_basis"]) == 6


def test_render_generators_block_notation():
    cfg = dataset_config("hesse_f4")
    rep = twist_representation(cfg, F2)
    text = render_generators(rep)
    lines = text.splitlines()
    assert len(lines) == 6
    assert all("diag(" in line for line in lines)
    assert "[0 1; 1 1]" in text or "[1 1; 1 0]" in text
    plain = render_generators(build_representation(dataset_config("grid_f5")))
    assert len(plain.splitlines()) == 6
    assert "[" not in plain.replace("diag(", "")

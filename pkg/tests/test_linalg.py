"""Exact linear algebra and modular lifting helpers."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coxcert.fields import Field, UniPoly
from coxcert.linalg import (
    Matrix,
    crt_list,
    crt_pair,
    det_bareiss,
    det_bareiss_int,
    rank_mod_p,
    rational_reconstruction,
)

F5 = Field.prime(5)
F4 = Field.extension(2, 2)
Q = Field.rationals()


def test_rref_and_rank_prime_field():
    m = Matrix(F5, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert m.rank() == 2
    R, piv = m.rref()
    assert piv == [0, 1]
    assert R.rows[0][0] == F5.one


def test_kernel_basis_annihilates():
    m = Matrix(F5, [[1, 2, 3, 4], [0, 1, 1, 1]])
    ker = m.kernel_basis()
    assert len(ker) == 2
    for v in ker:
        assert all(e.is_zero for e in m * v)


def test_kernel_over_extension_field():
    z = F4.generator()
    m = Matrix(F4, [[F4.one, z, z * z]])
    ker = m.kernel_basis()
    assert len(ker) == 2
    for v in ker:
        assert all(e.is_zero for e in m * v)


def test_solve():
    m = Matrix(Q, [[1, 2], [3, 4]])
    x = m.solve([5, 6])
    assert [e.val for e in x] == [Fraction(-4), Fraction(9, 2)]
    # inconsistent system
    m2 = Matrix(Q, [[1, 1], [1, 1]])
    assert m2.solve([0, 1]) is None


def test_det_and_inverse():
    m = Matrix(F5, [[1, 2], [3, 4]])
    assert m.det() == F5(-2)
    mi = m.inverse()
    assert m * mi == Matrix.identity(F5, 2)
    singular = Matrix(F5, [[1, 2], [2, 4]])
    assert singular.det().is_zero
    with pytest.raises(ValueError):
        singular.inverse()


def test_numpy_path_matches_generic():
    rng = random.Random(11)
    rows = [[rng.randrange(5) for _ in range(40)] for _ in range(30)]
    m = Matrix(F5, rows)
    assert m.nrows * m.ncols >= 600  # numpy path active
    generic, piv_g = m._rref_generic()
    fast, piv_f = m.rref()
    assert piv_g == piv_f
    assert generic == fast
    assert rank_mod_p(rows, 5) == len(piv_g)


def test_det_bareiss_int_matches_fraction_det():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        exact = Matrix(Q, rows).det().val
        assert det_bareiss_int(rows) == exact


def test_det_bareiss_poly_entries():
    # det [[x, 1], [1, x]] = x^2 - 1
    x = UniPoly.x(F5)
    one = UniPoly.const(F5, 1)
    zero = UniPoly(F5, [])
    d = det_bareiss([[x, one], [one, x]], zero, one, lambda a, b: a.divexact(b))
    assert d == x * x - one
    # singular polynomial matrix
    d0 = det_bareiss([[x, x], [x, x]], zero, one, lambda a, b: a.divexact(b))
    assert d0.is_zero


def test_crt_and_reconstruction():
    v, m = crt_list([2, 3], [5, 7])
    assert v % 5 == 2 and v % 7 == 3 and m == 35
    assert crt_pair(1, 4, 3, 9) % 4 == 1
    with pytest.raises(ValueError):
        crt_pair(0, 4, 1, 6)

    # -7/3 recovered from its residue mod a big modulus
    target = Fraction(-7, 3)
    mod = 10007 * 10009
    residue = target.numerator * pow(target.denominator, -1, mod) % mod
    assert rational_reconstruction(residue, mod) == target
    # tiny modulus: residue 2 mod 5 is ambiguous (also -3 and 1/3), so None
    assert rational_reconstruction(2, 5) is None
    assert rational_reconstruction(1, 5) == Fraction(1)


@given(st.integers(-40, 40), st.integers(1, 30))
@settings(max_examples=80)
def test_reconstruction_round_trip(num, den):
    frac = Fraction(num, den)
    mod = 1
    for p in (10007, 10009, 10037):
        mod *= p
    if frac.denominator % 10007 == 0:
        return
    residue = frac.numerator * pow(frac.denominator, -1, mod) % mod
    assert rational_reconstruction(residue, mod) == frac


@given(st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3), min_size=2, max_size=4))
@settings(max_examples=60)
def test_rank_bounds(rows):
    m = Matrix(F5, rows)
    r = m.rank()
    assert 0 <= r <= min(m.nrows, m.ncols)
    assert len(m.kernel_basis()) == m.ncols - r

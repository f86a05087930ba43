"""Blowup lattice: pairing, reflections, class enumeration, orbit growth."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from coxcert.lattice import (
    BlowupLattice,
    LatticeError,
    OrbitCapExceeded,
    minus_one_classes,
    orbit_closure,
    orbit_depth_profile,
    random_class,
    sorted_class,
)

L39 = BlowupLattice(3, 9)
L38 = BlowupLattice(3, 8)
L48 = BlowupLattice(4, 8)
L69 = BlowupLattice(6, 9)


def test_pairing_normalization():
    for lat in (L39, L48, L69):
        assert lat.square(lat.alpha()) == -2
        assert lat.square(lat.hyperplane()) == lat.r - 2
        assert lat.square(lat.exceptional(0)) == -1
        assert lat.dot(lat.hyperplane(), lat.exceptional(0)) == 0


def test_canonical_classes():
    assert L39.neg_canonical() == (3, (1,) * 9)
    assert L48.neg_canonical() == (4, (2,) * 8)
    assert L48.half_neg_canonical() == (2, (1,) * 8)
    assert L69.half_neg_canonical() == (3, (2,) * 9)
    with pytest.raises(LatticeError):
        L39.half_neg_canonical()
    # anticanonical degree of a (-1)-class is 1 in the plane
    assert L39.degree((1, (0, 1, 1, 0, 0, 0, 0, 0, 0))) == 1


def test_named_reflection_images():
    e1 = L39.exceptional(0)
    assert L39.reflect(e1, 8) == (1, (0, 1, 1, 0, 0, 0, 0, 0, 0))
    assert L39.reflect(L39.hyperplane(), 8) == (2, (1, 1, 1, 0, 0, 0, 0, 0, 0))
    # transpositions really transpose
    x = L39.cls(2, (1, 2, 3, 4, 5, 6, 7, 8, 9))
    assert L39.reflect(x, 0) == (2, (2, 1, 3, 4, 5, 6, 7, 8, 9))


def test_reflection_properties_random():
    # the acceptance-level property on a thousand samples per lattice
    for lat in (BlowupLattice(3, 6), BlowupLattice(3, 7), L38, L39, L48, L69):
        rng = random.Random(1000 * lat.r + lat.n)
        for _ in range(1000):
            x = random_class(lat, rng)
            y = random_class(lat, rng)
            k = rng.randrange(lat.num_reflections())
            assert lat.reflect(lat.reflect(x, k), k) == x
            assert lat.dot(lat.reflect(x, k), lat.reflect(y, k)) == lat.dot(x, y)
            assert lat.reflect(lat.neg_canonical(), k) == lat.neg_canonical()


@given(st.integers(-8, 8), st.lists(st.integers(-8, 8), min_size=9, max_size=9),
       st.integers(0, 8))
@settings(max_examples=300)
def test_reflection_involution_hypothesis(d, m, k):
    x = L39.cls(d, m)
    assert L39.reflect(L39.reflect(x, k), k) == x
    assert L39.square(L39.reflect(x, k)) == L39.square(x)
    assert L39.degree(L39.reflect(x, k)) == L39.degree(x)


def test_weyl_finiteness_boundary():
    assert L39.weyl_is_infinite()
    assert L48.weyl_is_infinite()
    assert L69.weyl_is_infinite()
    for n in range(4, 9):
        assert not BlowupLattice(3, n).weyl_is_infinite()
    for n in range(5, 8):
        assert not BlowupLattice(4, n).weyl_is_infinite()
    for n in range(7, 9):
        assert not BlowupLattice(6, n).weyl_is_infinite()
    assert not BlowupLattice(3, 3).weyl_is_infinite()


def test_minus_one_class_counts():
    assert len(minus_one_classes(BlowupLattice(3, 6))) == 27
    assert len(minus_one_classes(BlowupLattice(3, 7))) == 56
    assert len(minus_one_classes(L38)) == 240
    with pytest.raises(LatticeError):
        minus_one_classes(L39)
    with pytest.raises(LatticeError):
        minus_one_classes(L48)


def test_minus_one_classes_satisfy_equations():
    for x in minus_one_classes(BlowupLattice(3, 7)):
        lat = BlowupLattice(3, 7)
        assert lat.square(x) == -1
        assert lat.degree(x) == 1


def test_orbit_closure_matches_enumeration():
    for n in (6, 7, 8):
        lat = BlowupLattice(3, n)
        assert orbit_closure(lat, [lat.exceptional(0)]) == minus_one_classes(lat)


def test_orbit_cap_trips_on_infinite_lattice():
    with pytest.raises(OrbitCapExceeded):
        orbit_closure(L39, [L39.exceptional(0)], max_classes=500)


def test_depth_profile_growth():
    prof = orbit_depth_profile(L39, 8)
    assert prof[0]["max_degree"] == 0
    degs = [p["max_degree"] for p in prof]
    assert all(degs[k] > degs[k - 1] for k in range(1, 9))
    assert degs[1:] == [1, 2, 4, 6, 9, 12, 16, 20]


def test_depth_profile_terminates_on_finite_lattice():
    # the profile works with permutation-classes, so compare against the
    # count of sorted multiplicity patterns, not raw classes
    prof = orbit_depth_profile(L38, 12, seeds=[L38.exceptional(7)])
    reached = sum(p["new_classes"] for p in prof)
    patterns = {sorted_class(x) for x in minus_one_classes(L38)}
    assert reached == len(patterns) == 7
    assert prof[-1]["new_classes"] == 0


def test_sorted_class():
    assert sorted_class((2, (0, 3, 1))) == (2, (3, 1, 0))

"""Integral lattice attached to a blowup of P^(r-1) at n points.

A divisor class dH - sum m_i E_i is stored as the pair (d, m) with m an
n-tuple of ints.  The pairing is (r-2) d e - m . l, normalized so that the
root alpha = H - E_1 - ... - E_r has square -2 for every r; the group
generated by the coordinate transpositions together with the reflection in
alpha is the relevant Weyl group.  Everything here is integer arithmetic.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction


class LatticeError(ValueError):
    pass


class OrbitCapExceeded(RuntimeError):
    """Raised when an orbit closure grows past the requested bound."""

    def __init__(self, cap, seen):
        super().__init__(f"orbit exceeded {cap} classes")
        self.cap = cap
        self.seen = seen


@dataclass(frozen=True)
class BlowupLattice:
    """Ambient P^(r-1), n blown-up points: lattice Z H + Z E_1 + ... + Z E_n."""

    r: int
    n: int

    def __post_init__(self):
        if self.r < 3:
            raise LatticeError("ambient space must be at least a plane")
        if self.n < 1:
            raise LatticeError("need at least one point")

    # -- classes -------------------------------------------------------------

    def cls(self, d: int, m) -> tuple:
        m = tuple(int(v) for v in m)
        if len(m) != self.n:
            raise LatticeError("multiplicity vector of wrong length")
        return (int(d), m)

    def hyperplane(self) -> tuple:
        return (1, (0,) * self.n)

    def exceptional(self, i: int) -> tuple:
        m = [0] * self.n
        m[i] = -1
        return (0, tuple(m))

    def neg_canonical(self) -> tuple:
        return (self.r, (self.r - 2,) * self.n)

    def half_neg_canonical(self) -> tuple:
        if self.r % 2 != 0:
            raise LatticeError("anticanonical class is odd in this lattice")
        return (self.r // 2, (self.r // 2 - 1,) * self.n)

    def dot(self, x, y) -> int:
        return (self.r - 2) * x[0] * y[0] - sum(a * b for a, b in zip(x[1], y[1]))

    def square(self, x) -> int:
        return self.dot(x, x)

    def degree(self, x) -> int:
        """Pairing against the anticanonical class."""
        return self.dot(x, self.neg_canonical())

    # -- Weyl generators -------------------------------------------------------

    def alpha(self) -> tuple:
        if self.n < self.r:
            raise LatticeError("too few points for the extra root")
        m = [1] * self.r + [0] * (self.n - self.r)
        return (1, tuple(m))

    def num_reflections(self) -> int:
        return self.n if self.n >= self.r else self.n - 1

    def reflect(self, x, k: int) -> tuple:
        """Simple reflection k: transposition of slots k, k+1 for k < n-1,
        the root reflection for k = n-1."""
        d, m = x
        if 0 <= k < self.n - 1:
            mm = list(m)
            mm[k], mm[k + 1] = mm[k + 1], mm[k]
            return (d, tuple(mm))
        if k == self.n - 1:
            a = self.alpha()
            t = self.dot(x, a)
            return (d + t * a[0], tuple(v + t * w for v, w in zip(m, a[1])))
        raise LatticeError(f"no reflection {k}")

    def reflect_in_subset(self, x, subset) -> tuple:
        """Reflection in H - E_i - E_j - ... over an r-subset of the slots."""
        if len(set(subset)) != self.r:
            raise LatticeError(f"root subset must have {self.r} distinct slots")
        m = [0] * self.n
        for i in subset:
            m[i] = 1
        a = (1, tuple(m))
        t = self.dot(x, a)
        return (x[0] + t, tuple(v + t * w for v, w in zip(x[1], m)))

    # -- group size --------------------------------------------------------------

    def weyl_is_infinite(self) -> bool:
        """The group is infinite exactly when the branch weights of its
        T-shaped diagram satisfy 1/2 + 1/r + 1/(n-r) <= 1."""
        if self.n <= self.r:
            return False
        total = Fraction(1, 2) + Fraction(1, self.r) + Fraction(1, self.n - self.r)
        return total <= 1


# ---------------------------------------------------------------------------
# (-1)-classes in the plane lattice

def minus_one_classes(lat: BlowupLattice) -> set:
    """All classes with self-intersection -1 and anticanonical degree 1.

    Plane lattices only.  The degree range is provably complete: the two
    defining equations give sum(m) = 3d - 1 and sum(m^2) = d^2 + 1, and
    Cauchy-Schwarz forces (3d-1)^2 <= n (d^2 + 1).
    """
    if lat.r != 3:
        raise LatticeError("(-1)-class enumeration is for plane lattices")
    n = lat.n
    if n >= 9:
        raise LatticeError("the class system is infinite for nine or more points")
    out = set()
    d = 0
    while (3 * d - 1) ** 2 <= n * (d * d + 1):
        target_sum = 3 * d - 1
        target_sq = d * d + 1
        for m in _bounded_vectors(n, target_sum, target_sq):
            out.add((d, m))
        d += 1
    return out


def _bounded_vectors(n: int, s: int, q: int):
    """Integer n-tuples with given sum s and sum of squares q.

    Recursive enumeration, nonincreasing prefix forced on equal budgets is
    not imposed: all ordered tuples are produced.
    """
    # entries are bounded by the square budget
    import math

    lo = -math.isqrt(q)
    hi = math.isqrt(q)

    def rec(slots, s_rem, q_rem):
        if slots == 0:
            if s_rem == 0 and q_rem == 0:
                yield ()
            return
        # remaining sum must be achievable: |s_rem| <= slots * sqrt(q_rem)
        if s_rem * s_rem > slots * q_rem:
            return
        for v in range(lo, hi + 1):
            if v * v > q_rem:
                continue
            for rest in rec(slots - 1, s_rem - v, q_rem - v * v):
                yield (v,) + rest

    yield from rec(n, s, q)


# ---------------------------------------------------------------------------
# orbits

def orbit_closure(lat: BlowupLattice, seeds, max_classes: int = 200000) -> set:
    """Closure of the seed classes under all simple reflections.

    Raises OrbitCapExceeded beyond `max_classes`; infinite Weyl groups will
    always trip the cap on a nonrigid seed.
    """
    seen = set(seeds)
    frontier = list(seen)
    nk = lat.num_reflections()
    while frontier:
        nxt = []
        for x in frontier:
            for k in range(nk):
                y = lat.reflect(x, k)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > max_classes:
                        raise OrbitCapExceeded(max_classes, len(seen))
                    nxt.append(y)
        frontier = nxt
    return seen


def sorted_class(x) -> tuple:
    """Representative of the coordinate-permutation orbit: multiplicities
    in nonincreasing order."""
    return (x[0], tuple(sorted(x[1], reverse=True)))


def orbit_depth_profile(lat: BlowupLattice, depth: int, seeds=None) -> list:
    """Breadth-first growth where one step is a reflection in some root
    H - E_i - E_j - ... (any slot subset), with coordinate permutations
    taken for free.

    Returns one record per depth 0..depth: dict with the number of new
    permutation-classes first reached there and the largest degree-d among
    them.  The degree growth along these layers is the quantitative trace
    of an infinite orbit.
    """
    if seeds is None:
        seeds = [lat.exceptional(lat.n - 1)]
    seen = {sorted_class(s) for s in seeds}
    frontier = list(seen)
    profile = [
        {"depth": 0, "new_classes": len(seen), "max_degree": max(x[0] for x in seen)}
    ]
    subsets = list(itertools.combinations(range(lat.n), lat.r))
    for level in range(1, depth + 1):
        nxt = []
        for x in frontier:
            for sub in subsets:
                y = sorted_class(lat.reflect_in_subset(x, sub))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            profile.append({"depth": level, "new_classes": 0, "max_degree": None})
            frontier = []
            continue
        profile.append(
            {
                "depth": level,
                "new_classes": len(nxt),
                "max_degree": max(x[0] for x in nxt),
            }
        )
        frontier = nxt
    return profile


def random_class(lat: BlowupLattice, rng: random.Random, spread: int = 9) -> tuple:
    return (
        rng.randint(-spread, spread),
        tuple(rng.randint(-spread, spread) for _ in range(lat.n)),
    )

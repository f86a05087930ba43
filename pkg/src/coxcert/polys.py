"""Sparse multivariate polynomials over an exact field.

Exponent vectors are fixed-length tuples; coefficients are `fields.Element`.
The ring never normalizes variables away, so a polynomial in K[x,y,z] that
happens not to involve z still carries three exponent slots.  Resultants of
polynomial matrices go through the fraction-free determinant in `linalg`,
with the exact multivariate division implemented here.
"""
from __future__ import annotations

from .fields import Element, Field, FieldError, UniPoly, embed
from .linalg import det_bareiss


class MPoly:
    """Immutable sparse polynomial: dict of exponent tuple -> nonzero Element."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in (terms.items() if isinstance(terms, dict) else terms):
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise ValueError("exponent arity mismatch")
                if any(e < 0 for e in exps):
                    raise ValueError("negative exponent")
                c = c if isinstance(c, Element) else field(c)
                if not c.is_zero:
                    prev = clean.get(exps)
                    s = c if prev is None else prev + c
                    if s.is_zero:
                        clean.pop(exps, None)
                    else:
                        clean[exps] = s
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(field: Field, nvars: int) -> "MPoly":
        return MPoly(field, nvars)

    @staticmethod
    def const(field: Field, nvars: int, c) -> "MPoly":
        return MPoly(field, nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(field: Field, nvars: int, i: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return MPoly(field, nvars, {tuple(e): field.one})

    @staticmethod
    def monomial(field: Field, nvars: int, exps, c=1) -> "MPoly":
        return MPoly(field, nvars, {tuple(exps): c})

    # -- basic structure ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, MPoly)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset((e, c.val) for e, c in self.terms.items())))

    def __repr__(self):
        if self.is_zero:
            return "MPoly(0)"
        parts = []
        for e in sorted(self.terms, reverse=True):
            parts.append(f"{self.terms[e].val}*x^{list(e)}")
        return "MPoly(" + " + ".join(parts[:6]) + ("..." if len(parts) > 6 else "") + ")"

    def total_degree(self) -> int:
        if self.is_zero:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if self.is_zero:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exps) -> Element:
        return self.terms.get(tuple(exps), self.field.zero)

    def monomials(self):
        """Sorted exponent tuples, largest degree first; canonical order."""
        return sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "MPoly"):
        if self.field != other.field or self.nvars != other.nvars:
            raise ValueError("polynomials from different rings")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            s = c if prev is None else prev + c
            if s.is_zero:
                out.pop(e, None)
            else:
                out[e] = s
        r = MPoly(self.field, self.nvars)
        r.terms = out
        return r

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __neg__(self) -> "MPoly":
        r = MPoly(self.field, self.nvars)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                prev = out.get(e)
                s = c if prev is None else prev + c
                if s.is_zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        r = MPoly(self.field, self.nvars)
        r.terms = out
        return r

    def scale(self, c) -> "MPoly":
        c = c if isinstance(c, Element) else self.field(c)
        if c.is_zero:
            return MPoly.zero(self.field, self.nvars)
        r = MPoly(self.field, self.nvars)
        r.terms = {e: v * c for e, v in self.terms.items()}
        return r

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- substitution and evaluation -------------------------------------------

    def eval(self, point) -> Element:
        """Full evaluation; `point` is a sequence of Elements (or coercibles)."""
        f = self.field
        vals = [v if isinstance(v, Element) else f(v) for v in point]
        if len(vals) != self.nvars:
            raise ValueError("wrong number of coordinates")
        acc = f.zero
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v ** k
            acc = acc + t
        return acc

    def partial_eval(self, assignment: dict) -> "MPoly":
        """Substitute constants for some variables; arity is unchanged."""
        f = self.field
        out = MPoly.zero(f, self.nvars)
        consts = {i: (v if isinstance(v, Element) else f(v)) for i, v in assignment.items()}
        acc: dict = {}
        for e, c in self.terms.items():
            coef = c
            new_e = list(e)
            for i, v in consts.items():
                if e[i]:
                    coef = coef * v ** e[i]
                new_e[i] = 0
            if coef.is_zero:
                continue
            key = tuple(new_e)
            prev = acc.get(key)
            s = coef if prev is None else prev + coef
            if s.is_zero:
                acc.pop(key, None)
            else:
                acc[key] = s
        out.terms = acc
        return out

    def compose(self, images: list) -> "MPoly":
        """Substitute images[i] (an MPoly) for variable i.

        All images must share one ring, which becomes the ring of the result.
        """
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            raise ValueError("empty ring")
        tf, tn = images[0].field, images[0].nvars
        for g in images:
            if g.field != tf or g.nvars != tn:
                raise ValueError("images from different rings")
        result = MPoly.zero(tf, tn)
        pow_cache: dict = {}

        def image_pow(i, k):
            key = (i, k)
            got = pow_cache.get(key)
            if got is None:
                got = images[i] ** k
                pow_cache[key] = got
            return got

        for e, c in self.terms.items():
            term = MPoly.const(tf, tn, tf(c.val) if c.field == tf else _move_const(c, tf))
            for i, k in enumerate(e):
                if k:
                    term = term * image_pow(i, k)
            result = result + term
        return result

    def derivative(self, i: int) -> "MPoly":
        f = self.field
        out: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            coef = c * f(e[i])
            if coef.is_zero:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = coef
        r = MPoly.zero(f, self.nvars)
        r.terms = out
        return r

    def map_coeffs(self, fn) -> "MPoly":
        out: dict = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not v.is_zero:
                out[e] = v
        r = MPoly.zero(self.field, self.nvars)
        r.terms = out
        return r

    def to_field(self, target: Field) -> "MPoly":
        """Coefficientwise embedding into an extension of the same characteristic."""
        out: dict = {}
        for e, c in self.terms.items():
            out[e] = embed(c, target)
        r = MPoly.zero(target, self.nvars)
        r.terms = out
        return r

    # -- conversions -----------------------------------------------------------

    def to_unipoly(self, var: int) -> UniPoly:
        """View as univariate in `var`; every other exponent must be zero."""
        f = self.field
        coeffs = [f.zero] * (self.degree_in(var) + 1 if not self.is_zero else 0)
        for e, c in self.terms.items():
            if any(k and i != var for i, k in enumerate(e)):
                raise ValueError("polynomial involves other variables")
            coeffs[e[var]] = c
        return UniPoly(f, coeffs)

    def coeffs_in(self, var: int) -> list:
        """Coefficients with respect to one variable, as polynomials in the
        same ring with that variable's exponent zeroed.  Index = power."""
        d = self.degree_in(var)
        f = self.field
        buckets: list[dict] = [{} for _ in range(d + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[var]
            ne[var] = 0
            buckets[k][tuple(ne)] = c
        out = []
        for b in buckets:
            q = MPoly.zero(f, self.nvars)
            q.terms = b
            out.append(q)
        return out

    # -- exact division ----------------------------------------------------------

    def _lead(self):
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]

    def divexact(self, other: "MPoly") -> "MPoly":
        """Quotient, assuming other divides self exactly; raises otherwise."""
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return MPoly.zero(self.field, self.nvars)
        rem = self
        q_terms: dict = {}
        le, lc = other._lead()
        lc_inv = lc.inv()
        while not rem.is_zero:
            re, rc = rem._lead()
            qe = tuple(a - b for a, b in zip(re, le))
            if any(k < 0 for k in qe):
                raise FieldError("division is not exact")
            qc = rc * lc_inv
            q_terms[qe] = q_terms.get(qe, self.field.zero) + qc
            rem = rem - MPoly.monomial(self.field, self.nvars, qe, qc) * other
        q = MPoly.zero(self.field, self.nvars)
        q.terms = {e: c for e, c in q_terms.items() if not c.is_zero}
        return q


def _move_const(c: Element, target: Field) -> Element:
    if c.field == target:
        return c
    return embed(c, target)


def linear_substitution(f: MPoly, rows) -> "MPoly":
    """f(Ax) for a square coefficient matrix given as nested rows."""
    field = f.field
    n = f.nvars
    images = []
    for i in range(n):
        img = MPoly.zero(field, n)
        for j in range(n):
            c = rows[i][j]
            c = c if isinstance(c, Element) else field(c)
            if not c.is_zero:
                img = img + MPoly.variable(field, n, j).scale(c)
        images.append(img)
    return f.compose(images)


# ---------------------------------------------------------------------------
# resultants

def resultant_wrt(f: MPoly, g: MPoly, var: int) -> MPoly:
    """Resultant eliminating one variable; entries stay in the same ring
    (with `var`'s exponent identically zero).

    Vanishes whenever f and g share a root over the closure at fixed values
    of the remaining variables; degree bookkeeping is the caller's concern.
    """
    if f.field != g.field or f.nvars != g.nvars:
        raise ValueError("polynomials from different rings")
    fc = f.coeffs_in(var)
    gc = g.coeffs_in(var)
    m, n = len(fc) - 1, len(gc) - 1
    if m < 0 or n < 0:
        return MPoly.zero(f.field, f.nvars)
    if m == 0 and n == 0:
        return MPoly.const(f.field, f.nvars, 1)
    field = f.field
    zero = MPoly.zero(field, f.nvars)
    one = MPoly.const(field, f.nvars, 1)
    if m == 0:
        return fc[0] ** n
    if n == 0:
        return gc[0] ** m
    size = m + n
    rows = []
    for i in range(n):  # n rows of f coefficients
        row = [zero] * size
        for j, c in enumerate(reversed(fc)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):  # m rows of g coefficients
        row = [zero] * size
        for j, c in enumerate(reversed(gc)):
            row[i + j] = c
        rows.append(row)
    return det_bareiss(rows, zero, one, lambda a, b: a.divexact(b))


def resultant_bivariate(f: MPoly, g: MPoly, elim: int, keep: int) -> UniPoly:
    """Resultant of two polynomials effectively in two variables, as a
    univariate polynomial in the kept variable."""
    r = resultant_wrt(f, g, elim)
    return r.to_unipoly(keep)

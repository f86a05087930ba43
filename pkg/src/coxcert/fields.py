"""Exact arithmetic over prime fields, small extension fields, and the rationals.

Every computation in this package routes through the element type defined
here.  There is no floating point anywhere: prime-field elements are Python
ints reduced mod p, extension elements are fixed-width coefficient tuples
over F_p, and rationals are `fractions.Fraction` (always in lowest terms
with positive denominator).

Field objects are immutable and hashable, so they are safe to share across
threads and to use as cache keys.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache


class FieldError(ValueError):
    """Raised for invalid field parameters or undefined element operations."""


# ---------------------------------------------------------------------------
# primality and modulus search

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any p used here."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _int_poly_divexact_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Divide a by b over F_p, returning the remainder (both dense int lists)."""
    a = [x % p for x in a]
    b = [x % p for x in b]
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    lead_inv = pow(b[db], p - 2, p)
    da = len(a) - 1
    while da >= db:
        while da >= 0 and a[da] == 0:
            da -= 1
        if da < db:
            break
        c = a[da] * lead_inv % p
        for i in range(db + 1):
            a[da - db + i] = (a[da - db + i] - c * b[i]) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible_mod_p(coeffs: list[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    Uses the classical criterion: f of degree d is irreducible iff
    x^(p^d) = x mod f and gcd(x^(p^(d/l)) - x, f) = 1 for every prime l | d.
    """
    d = len(coeffs) - 1
    if d < 1:
        return False
    if d == 1:
        return True

    def mulmod(a, b):
        conv = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] = (conv[i + j] + x * y) % p
        return _int_poly_divexact_mod(conv, coeffs, p)

    def xpow_pk(k):
        # x^(p^k) mod f by square-and-multiply on the full exponent
        e = p ** k
        base = [0, 1]
        result = [1]
        while e:
            if e & 1:
                result = mulmod(result, base)
            base = mulmod(base, base)
            e >>= 1
        return result

    def gcd_int(a, b):
        a, b = [x % p for x in a], [x % p for x in b]
        while any(b):
            a = _int_poly_divexact_mod(a, b, p)
            a, b = b, a
        return a

    top = xpow_pk(d)
    minus_x = top[:]
    while len(minus_x) < 2:
        minus_x.append(0)
    minus_x[1] = (minus_x[1] - 1) % p
    while minus_x and minus_x[-1] == 0:
        minus_x.pop()
    if any(minus_x):
        return False
    dd = d
    ell_set = set()
    t = dd
    f = 2
    while f * f <= t:
        if t % f == 0:
            ell_set.add(f)
            while t % f == 0:
                t //= f
        f += 1
    if t > 1:
        ell_set.add(t)
    for ell in ell_set:
        sub = xpow_pk(d // ell)
        diff = sub[:]
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        while diff and diff[-1] == 0:
            diff.pop()
        g = gcd_int(list(coeffs), diff)
        if len(g) - 1 > 0:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, degree: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of given degree over F_p.

    Candidates are ordered by the base-p integer encoding of the
    low-to-high coefficient tail.  This puts x^2+x+1 first over F_2 and
    x^2+1 first over F_3, matching the fixed conventions used throughout.
    """
    for enc in range(p ** degree):
        tail = []
        e = enc
        for _ in range(degree):
            tail.append(e % p)
            e //= p
        coeffs = tail + [1]
        if _is_irreducible_mod_p(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible modulus of degree {degree} over F_{p}")


# ---------------------------------------------------------------------------
# field contexts

_MAX_EXT_DEGREE = 16  # hard safety bound; advertised support is small degree


class Field:
    """A coefficient field: F_p, F_{p^d}, or Q.

    Use the factories `Field.prime`, `Field.extension`, `Field.rationals`.
    """

    __slots__ = ("kind", "p", "degree", "modulus", "_hash")

    def __init__(self, kind, p=None, degree=1, modulus=None):
        self.kind = kind
        self.p = p
        self.degree = degree
        self.modulus = modulus
        self._hash = hash((kind, p, degree, modulus))

    @staticmethod
    def prime(p: int) -> "Field":
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        return Field("prime", p=p)

    @staticmethod
    def extension(p: int, degree: int, modulus=None) -> "Field":
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if degree < 1 or degree > _MAX_EXT_DEGREE:
            raise FieldError(f"unsupported extension degree {degree}")
        if degree == 1 and modulus is None:
            return Field.prime(p)
        if modulus is None:
            modulus = default_modulus(p, degree)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != degree + 1 or modulus[-1] != 1:
                raise FieldError("modulus must be monic of the stated degree")
            if not _is_irreducible_mod_p(list(modulus), p):
                raise FieldError("modulus is reducible")
        return Field("ext", p=p, degree=degree, modulus=modulus)

    @staticmethod
    def rationals() -> "Field":
        return Field("rational")

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.kind == other.kind
            and self.p == other.p
            and self.degree == other.degree
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.kind == "prime":
            return f"F{self.p}"
        if self.kind == "ext":
            return f"F{self.p}^{self.degree}"
        return "Q"

    # -- basic data ---------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind != "rational"

    def size(self) -> int:
        if not self.is_finite:
            raise FieldError("infinite field")
        return self.p ** self.degree

    def characteristic(self) -> int:
        return 0 if self.kind == "rational" else self.p

    # -- element construction ------------------------------------------------

    def __call__(self, value) -> "Element":
        return Element(self, self._coerce(value))

    def _coerce(self, value):
        if isinstance(value, Element):
            if value.field == self:
                return value.val
            if value.field.kind == "prime" and self.kind == "ext" and value.field.p == self.p:
                return (value.val,) + (0,) * (self.degree - 1)
            raise FieldError(f"cannot coerce element of {value.field} into {self}")
        if self.kind == "prime":
            if isinstance(value, int):
                return value % self.p
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise FieldError("denominator not invertible")
                return value.numerator * pow(value.denominator, self.p - 2, self.p) % self.p
        elif self.kind == "ext":
            if isinstance(value, int):
                return (value % self.p,) + (0,) * (self.degree - 1)
            if isinstance(value, (tuple, list)):
                if len(value) > self.degree:
                    raise FieldError("coefficient vector too long")
                v = tuple(int(c) % self.p for c in value)
                return v + (0,) * (self.degree - len(v))
        else:
            if isinstance(value, int):
                return Fraction(value)
            if isinstance(value, Fraction):
                return value
            if isinstance(value, str):
                return Fraction(value)
        raise FieldError(f"cannot interpret {value!r} in {self}")

    @property
    def zero(self) -> "Element":
        return self(0)

    @property
    def one(self) -> "Element":
        return self(1)

    def generator(self) -> "Element":
        """Class of x in F_p[x]/(modulus); the residue 1 generates nothing
        special for prime fields so this is extension-only."""
        if self.kind != "ext":
            raise FieldError("generator is defined for extension fields only")
        return self((0, 1))

    def elements(self):
        """Iterate the whole field.  Finite fields only; deterministic order."""
        if self.kind == "prime":
            for v in range(self.p):
                yield Element(self, v)
        elif self.kind == "ext":
            for tup in itertools.product(range(self.p), repeat=self.degree):
                yield Element(self, tup)
        else:
            raise FieldError("cannot enumerate Q")

    def random_element(self, rng: random.Random) -> "Element":
        if self.kind == "prime":
            return Element(self, rng.randrange(self.p))
        if self.kind == "ext":
            return Element(self, tuple(rng.randrange(self.p) for _ in range(self.degree)))
        return Element(self, Fraction(rng.randint(-50, 50), rng.randint(1, 20)))

    # -- internal arithmetic on raw values -----------------------------------

    def _add(self, a, b):
        if self.kind == "prime":
            return (a + b) % self.p
        if self.kind == "ext":
            return tuple((x + y) % self.p for x, y in zip(a, b))
        return a + b

    def _sub(self, a, b):
        if self.kind == "prime":
            return (a - b) % self.p
        if self.kind == "ext":
            return tuple((x - y) % self.p for x, y in zip(a, b))
        return a - b

    def _neg(self, a):
        if self.kind == "prime":
            return (-a) % self.p
        if self.kind == "ext":
            return tuple((-x) % self.p for x in a)
        return -a

    def _mul(self, a, b):
        if self.kind == "prime":
            return a * b % self.p
        if self.kind == "ext":
            p, d, mod = self.p, self.degree, self.modulus
            conv = [0] * (2 * d - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        conv[i + j] = (conv[i + j] + x * y) % p
            for k in range(2 * d - 2, d - 1, -1):
                c = conv[k]
                if c:
                    conv[k] = 0
                    for i in range(d):
                        conv[k - d + i] = (conv[k - d + i] - c * mod[i]) % p
            return tuple(conv[:d])
        return a * b

    def _inv(self, a):
        if self.kind == "prime":
            if a == 0:
                raise FieldError("inverse of zero")
            return pow(a, self.p - 2, self.p)
        if self.kind == "ext":
            if not any(a):
                raise FieldError("inverse of zero")
            # extended Euclid in F_p[x] against the modulus
            p = self.p
            r0, r1 = list(self.modulus), [x for x in a]
            while r1 and r1[-1] == 0:
                r1.pop()
            s0, s1 = [0], [1]
            while any(r1):
                q, r = _int_poly_divmod(r0, r1, p)
                r0, r1 = r1, r
                s0, s1 = s1, _int_poly_sub(s0, _int_poly_mul(q, s1, p), p)
            lead = r0[-1]
            lead_inv = pow(lead, p - 2, p)
            inv = [c * lead_inv % p for c in s0]
            inv = inv[: self.degree] + [0] * max(0, self.degree - len(inv))
            return tuple(inv[: self.degree])
        if a == 0:
            raise FieldError("inverse of zero")
        return 1 / a

    def _is_zero(self, a):
        if self.kind == "prime":
            return a == 0
        if self.kind == "ext":
            return not any(a)
        return a == 0


def _int_poly_divmod(a: list[int], b: list[int], p: int):
    a = [x % p for x in a]
    b = [x % p for x in b]
    while b and b[-1] == 0:
        b.pop()
    db = len(b) - 1
    inv = pow(b[db], p - 2, p)
    q = [0] * max(1, len(a) - db)
    da = len(a) - 1
    while da >= db:
        while da >= 0 and a[da] == 0:
            da -= 1
        if da < db:
            break
        c = a[da] * inv % p
        q[da - db] = c
        for i in range(db + 1):
            a[da - db + i] = (a[da - db + i] - c * b[i]) % p
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _int_poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _int_poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return [(x - y) % p for x, y in zip(a, b)]


class Element:
    """Immutable field element; supports the usual operators."""

    __slots__ = ("field", "val")

    def __init__(self, field: Field, val):
        self.field = field
        self.val = val

    # equality includes the field so elements of F_4 and F_2 never compare equal
    def __eq__(self, other):
        if isinstance(other, Element):
            return self.field == other.field and self.val == other.val
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.val))

    def __repr__(self):
        if self.field.kind == "ext":
            return f"{self.field}{list(self.val)}"
        return f"{self.field}({self.val})"

    def __bool__(self):
        return not self.field._is_zero(self.val)

    @property
    def is_zero(self) -> bool:
        return self.field._is_zero(self.val)

    def _other(self, other):
        if isinstance(other, Element):
            if other.field != self.field:
                raise FieldError(f"mixed fields {self.field} and {other.field}")
            return other.val
        return self.field._coerce(other)

    def __add__(self, other):
        return Element(self.field, self.field._add(self.val, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Element(self.field, self.field._sub(self.val, self._other(other)))

    def __rsub__(self, other):
        return Element(self.field, self.field._sub(self._other(other), self.val))

    def __neg__(self):
        return Element(self.field, self.field._neg(self.val))

    def __mul__(self, other):
        return Element(self.field, self.field._mul(self.val, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Element(self.field, self.field._mul(self.val, self.field._inv(self._other(other))))

    def __rtruediv__(self, other):
        return Element(self.field, self.field._mul(self._other(other), self.field._inv(self.val)))

    def inv(self) -> "Element":
        return Element(self.field, self.field._inv(self.val))

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self, k: int = 1) -> "Element":
        """x -> x^(p^k).  Defined for finite fields only."""
        if not self.field.is_finite:
            raise FieldError("frobenius is undefined over Q")
        return self ** (self.field.p ** k)

    def sort_key(self):
        """Stable total order inside one field, for canonical output."""
        if self.field.kind == "prime":
            return (self.val,)
        if self.field.kind == "ext":
            return tuple(self.val)
        return (self.val.numerator, self.val.denominator)


def field_create(kind: str, p: int | None = None, degree: int = 1, modulus=None) -> Field:
    """Factory mirroring the serialized field descriptions."""
    if kind == "prime":
        return Field.prime(p)
    if kind == "ext":
        return Field.extension(p, degree, modulus)
    if kind == "rational":
        return Field.rationals()
    raise FieldError(f"unknown field kind {kind!r}")


# ---------------------------------------------------------------------------
# embeddings between finite fields

_EMBED_CACHE: dict = {}


def embed(a: Element, target: Field) -> Element:
    """Canonical embedding of a finite-field element into an extension.

    The subfield generator goes to the root of its minimal polynomial in the
    target with the least encoding, so the choice is deterministic.  Prime
    subfield elements embed as constants.
    """
    src = a.field
    if src == target:
        return a
    if not (src.is_finite and target.is_finite) or src.p != target.p:
        raise FieldError(f"no embedding {src} -> {target}")
    if src.kind == "prime":
        return target(a.val)
    if target.degree % src.degree != 0:
        raise FieldError(f"{src} does not embed into {target}")
    key = (src.p, src.degree, src.modulus, target.degree, target.modulus)
    image = _EMBED_CACHE.get(key)
    if image is None:
        minpoly = UniPoly(target, [target(c) for c in src.modulus])
        roots = poly_roots_in_field(minpoly)
        if not roots:
            raise FieldError("modulus has no root in the target field")
        image = min(roots, key=lambda r: r.sort_key())
        _EMBED_CACHE[key] = image
    acc = target.zero
    for c in reversed(a.val):
        acc = acc * image + target(c)
    return acc


# ---------------------------------------------------------------------------
# univariate polynomials

class UniPoly:
    """Dense univariate polynomial over a Field.  Immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        cs = [c if isinstance(c, Element) else field(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @staticmethod
    def x(field: Field) -> "UniPoly":
        return UniPoly(field, [field.zero, field.one])

    @staticmethod
    def const(field: Field, c) -> "UniPoly":
        return UniPoly(field, [c])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def lead(self) -> Element:
        if self.is_zero:
            raise FieldError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "Poly[0]"
        return "Poly[" + ", ".join(repr(c.val) for c in self.coeffs) + "]"

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return UniPoly(self.field, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return UniPoly(self.field, [x - y for x, y in zip(a, b)])

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Element):
            return UniPoly(self.field, [c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return UniPoly(self.field, [])
        z = self.field.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if not x.is_zero:
                for j, y in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + x * y
        return UniPoly(self.field, out)

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise FieldError("negative polynomial power")
        result = UniPoly.const(self.field, self.field.one)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: Element) -> "UniPoly":
        return UniPoly(self.field, [x * c for x in self.coeffs])

    def divmod(self, other: "UniPoly"):
        if other.is_zero:
            raise FieldError("division by zero polynomial")
        f = self.field
        rem = list(self.coeffs)
        db = other.degree()
        inv = other.lead().inv()
        q = [f.zero] * max(1, len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            if rem[k].is_zero:
                continue
            c = rem[k] * inv
            q[k - db] = c
            for i in range(db + 1):
                rem[k - db + i] = rem[k - db + i] - c * other.coeffs[i]
        return UniPoly(f, q), UniPoly(f, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def divexact(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise FieldError("division is not exact")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self.scale(self.lead().inv())

    def eval(self, x: Element) -> Element:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        f = self.field
        return UniPoly(f, [f(i) * c for i, c in enumerate(self.coeffs)][1:] or [])

    def compose_mod(self, g: "UniPoly", mod: "UniPoly") -> "UniPoly":
        """self(g) reduced mod `mod`, by Horner in the quotient ring."""
        acc = UniPoly(self.field, [])
        for c in reversed(self.coeffs):
            acc = (acc * g + UniPoly.const(self.field, c)) % mod
        return acc

    def map_coeffs(self, fn) -> "UniPoly":
        return UniPoly(self.field, [fn(c) for c in self.coeffs])

    def to_field(self, target: Field) -> "UniPoly":
        """Coefficientwise embedding into an extension field."""
        return UniPoly(target, [embed(c, target) for c in self.coeffs])


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm; gcd(f, 0) = monic(f)."""
    if a.field != b.field:
        raise FieldError("gcd of polynomials over different fields")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_pow_mod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    result = UniPoly.const(base.field, base.field.one)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def _pth_root(c: Element) -> Element:
    """p-th root in a finite field: c -> c^(q/p)."""
    q = c.field.size()
    return c ** (q // c.field.p)


def _pth_root_poly(f: UniPoly) -> UniPoly:
    """Inverse of x -> x^p on polynomials that are p-th powers."""
    p = f.field.p
    out = []
    for i, c in enumerate(f.coeffs):
        if i % p == 0:
            out.append(_pth_root(c))
        elif not c.is_zero:
            raise FieldError("polynomial is not a p-th power")
    return UniPoly(f.field, out)


def poly_radical(f: UniPoly) -> UniPoly:
    """Product of the distinct irreducible factors of f (monic).

    Characteristic p is handled without derivatives failing silently: when
    f' = 0 the polynomial is a p-th power and we recurse on its root.
    """
    f = f.monic()
    if f.degree() <= 0:
        return UniPoly.const(f.field, f.field.one)
    fp = f.derivative()
    if fp.is_zero:
        return poly_radical(_pth_root_poly(f))
    g = poly_gcd(f, fp)
    if g.degree() == 0:
        return f
    w = f.divexact(g)
    h = g
    while True:
        c = poly_gcd(h, w)
        if c.degree() == 0:
            break
        h = h.divexact(c)
    if h.degree() == 0:
        return w.monic()
    return (w * poly_radical(_pth_root_poly(h))).monic()


def is_squarefree(f: UniPoly) -> bool:
    return poly_radical(f).degree() == f.degree()


def frobenius_power_mod(mod: UniPoly, k: int) -> UniPoly:
    """x^(p^k) reduced mod `mod` over a finite field.

    Built by composing the p-power map: pi_{i+1} = twist(pi_i)(pi_1), where
    twist raises coefficients to the p-th power.  This keeps every step at
    polynomial degree < deg(mod).
    """
    field = mod.field
    if not field.is_finite:
        raise FieldError("frobenius powers need a finite field")
    p = field.p
    x = UniPoly.x(field)
    if mod.degree() < 1:
        raise FieldError("constant modulus")
    if k == 0:
        return x % mod
    if mod.degree() == 1:
        # quotient ring is the field itself; x is congruent to a constant
        c = -(mod.coeffs[0] / mod.coeffs[1])
        return UniPoly.const(field, c ** (p ** k))
    pi = poly_pow_mod(x, p, mod)
    result = pi
    for _ in range(k - 1):
        result = result.map_coeffs(lambda c: c ** p).compose_mod(pi, mod)
    return result


def count_roots_in_extension(f: UniPoly, m: int) -> int:
    """Number of distinct roots of f in F_{q^m}, q the size of its field.

    Computed as deg gcd(f, x^(q^m) - x) without building the extension.
    """
    if f.is_zero:
        raise FieldError("zero polynomial")
    if m < 1:
        raise FieldError("extension degree must be positive")
    field = f.field
    if not field.is_finite:
        raise FieldError("root counting in extensions needs a finite field")
    f = f.monic()
    if f.degree() == 0:
        return 0
    k = field.degree * m
    xq = frobenius_power_mod(f, k)
    g = poly_gcd(xq - UniPoly.x(field) % f, f)
    return g.degree()


# ---------------------------------------------------------------------------
# root extraction inside a fixed finite field

_CZ_BASE_SEED = 0x5EED


def poly_roots_in_field(f: UniPoly) -> list[Element]:
    """All roots of f lying in its own coefficient field, sorted canonically.

    Small fields are brute-forced; otherwise the linear-root part
    gcd(f, x^q - x) is split by seeded equal-degree splitting (quadratic
    residues in odd characteristic, trace maps in characteristic 2).
    """
    field = f.field
    if f.is_zero:
        raise FieldError("zero polynomial has every element as a root")
    if field.kind == "rational":
        return _rational_roots(f)
    f = f.monic()
    if f.degree() == 0:
        return []
    q = field.size()
    if q <= 512:
        return sorted(
            (a for a in field.elements() if f.eval(a).is_zero),
            key=lambda e: e.sort_key(),
        )
    xq = frobenius_power_mod(f, field.degree)
    linear_part = poly_gcd(xq - UniPoly.x(field) % f, f)
    roots: list[Element] = []
    _cz_split(linear_part, roots, random.Random(_CZ_BASE_SEED ^ q))
    return sorted(roots, key=lambda e: e.sort_key())


def _cz_split(g: UniPoly, out: list, rng: random.Random):
    field = g.field
    d = g.degree()
    if d <= 0:
        return
    if d == 1:
        out.append(-(g.coeffs[0] / g.coeffs[1]))
        return
    q = field.size()
    x = UniPoly.x(field)
    while True:
        if field.p == 2:
            b = field.random_element(rng)
            if b.is_zero:
                continue
            # trace of b*x down to F_2: sum of 2^i-th powers, i < log2(q)
            tr = UniPoly(field, [])
            t = (x.scale(b)) % g
            e = 1
            while e < q:
                tr = tr + t
                t = (t * t) % g
                e *= 2
            h = poly_gcd(tr, g)
        else:
            a = field.random_element(rng)
            probe = poly_pow_mod(x + UniPoly.const(field, a), (q - 1) // 2, g)
            h = poly_gcd(probe - UniPoly.const(field, field.one), g)
        if 0 < h.degree() < d:
            _cz_split(h, out, rng)
            _cz_split(g.divexact(h), out, rng)
            return


def _rational_roots(f: UniPoly) -> list[Element]:
    """Rational roots via integer root bounds on the primitive part."""
    field = f.field
    # clear denominators
    from math import gcd, lcm

    den = 1
    for c in f.coeffs:
        den = lcm(den, c.val.denominator)
    ints = [int(c.val * den) for c in f.coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints:
        raise FieldError("zero polynomial")
    # strip factors of x
    roots = []
    k = 0
    while ints[k] == 0:
        k += 1
    if k > 0:
        roots.append(field(0))
        ints = ints[k:]
    if len(ints) == 1:
        return sorted(roots, key=lambda e: e.sort_key())
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return sorted(set(out))

    poly = UniPoly(field, ints)
    for num in divisors(a0):
        for dn in divisors(an):
            for s in (1, -1):
                cand = field(Fraction(s * num, dn))
                if poly.eval(cand).is_zero and cand not in roots:
                    roots.append(cand)
    return sorted(roots, key=lambda e: e.sort_key())

"""Arithmetic in GF(p^e).

Polynomials over GF(p) are little-endian coefficient lists: a_0 + a_1 X + ...
corresponds to [a_0, a_1, ...].  A field element is the residue of such a
polynomial modulo the field's irreducible modulus, stored as a tuple of exactly
``e`` coefficients.

Elements are ordered by their base-p encoding ``sum(c_i * p**i)``; the same
encoding orders candidate moduli (on their non-leading coefficients).  This
makes the chosen modulus and primitive element deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from sympy import factorint, isprime

from .errors import BadSubfieldOrder, MixedFields, NonPrime, OrderTooLarge

MAX_ORDER = 2**31


# -- polynomials over GF(p) -------------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_divmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        coef = a[-1] * inv % p
        quot[shift] = coef
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * y) % p
        _trim(a)
    return _trim(quot), a


def _poly_mod(a, b, p):
    return _poly_divmod(a, b, p)[1]


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base, n, mod, p):
    result = [1]
    base = _poly_mod(base, mod, p)
    while n:
        if n & 1:
            result = _poly_mod(_poly_mul(result, base, p), mod, p)
        base = _poly_mod(_poly_mul(base, base, p), mod, p)
        n >>= 1
    return result


def is_irreducible(poly, p):
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    poly = _trim(list(poly))
    e = len(poly) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**e, poly, p), x, p):
        return False
    for r in factorint(e):
        h = _poly_sub(_poly_powmod(x, p ** (e // r), poly, p), x, p)
        if len(_poly_gcd(poly, h, p)) != 1:
            return False
    return True


def _digits(i, p, e):
    out = []
    for _ in range(e):
        i, r = divmod(i, p)
        out.append(r)
    return tuple(out)


# -- fields -----------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    modulus: tuple[int, ...]  # little-endian, length e + 1, monic

    @property
    def order(self):
        return self.p**self.e

    def element(self, coeffs) -> FieldElement:
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        coeffs = tuple(c % self.p for c in coeffs)
        if len(coeffs) > self.e:
            raise ValueError(f"expected at most {self.e} coefficients, got {len(coeffs)}")
        return FieldElement(coeffs + (0,) * (self.e - len(coeffs)), self)

    def from_index(self, i: int) -> FieldElement:
        return FieldElement(_digits(i, self.p, self.e), self)

    def zero(self):
        return self.from_index(0)

    def one(self):
        return self.from_index(1)

    def gen(self):
        """The class of X (the root of the modulus)."""
        if self.e == 1:
            return self.element(-self.modulus[0])
        return self.element((0, 1))

    def elements(self):
        for i in range(self.order):
            yield self.from_index(i)

    @cached_property
    def _reduction(self):
        # X^e == -(m_0 + m_1 X + ... + m_{e-1} X^{e-1})
        return tuple(-c % self.p for c in self.modulus[:-1])

    def _mul(self, a, b):
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        red = self._reduction
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k] % p
            if c:
                base = k - e
                for i, r in enumerate(red):
                    prod[base + i] += c * r
        return tuple(c % p for c in prod[:e])

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e}, modulus={self.modulus})"


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]
    spec: FieldSpec = field(repr=False)

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return self.spec.element(other)
        if other.spec != self.spec:
            raise MixedFields(f"{self.spec!r} vs {other.spec!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.spec.p
        return FieldElement(tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs)), self.spec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        p = self.spec.p
        return FieldElement(tuple((x - y) % p for x, y in zip(self.coeffs, other.coeffs)), self.spec)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        p = self.spec.p
        return FieldElement(tuple(-x % p for x in self.coeffs), self.spec)

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.spec._mul(self.coeffs, other.coeffs), self.spec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponents are not supported")
        spec = self.spec
        result = spec.one().coeffs
        base = self.coeffs
        while n:
            if n & 1:
                result = spec._mul(result, base)
            base = spec._mul(base, base)
            n >>= 1
        return FieldElement(result, spec)

    def __bool__(self):
        return any(self.coeffs)

    @property
    def index(self):
        p = self.spec.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"FieldElement({self.coeffs}, p={self.spec.p}, e={self.spec.e})"


def build_field(p: int, e: int = 1) -> FieldSpec:
    """Return GF(p^e) presented by the smallest monic irreducible of degree ``e``."""
    if p < 2 or not isprime(p):
        raise NonPrime(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if p**e > MAX_ORDER:
        raise OrderTooLarge(f"{p}^{e} exceeds {MAX_ORDER}")
    for i in range(p**e):
        cand = _digits(i, p, e) + (1,)
        if is_irreducible(cand, p):
            return FieldSpec(p, e, cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def field_of_order(q: int) -> FieldSpec:
    """Build GF(q) for a prime power ``q``."""
    fac = factorint(q)
    if q < 2 or len(fac) != 1:
        raise NonPrime(f"{q} is not a prime power")
    (p, e), = fac.items()
    return build_field(p, e)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def power(a: FieldElement, n: int) -> FieldElement:
    return a**n


def multiplicative_order(x: FieldElement) -> int:
    if not x:
        raise ValueError("zero has no multiplicative order")
    n = x.spec.order - 1
    order = n
    one = x.spec.one()
    for ell, mult in factorint(n).items():
        for _ in range(mult):
            if (x ** (order // ell)) == one:
                order //= ell
            else:
                break
    return order


def primitive_element(spec: FieldSpec) -> FieldElement:
    """First element (in index order) generating the multiplicative group."""
    n = spec.order - 1
    primes = list(factorint(n))
    one = spec.one()
    for i in range(1, spec.order):
        g = spec.from_index(i)
        if all(g ** (n // ell) != one for ell in primes):
            return g
    raise AssertionError("multiplicative group has no generator")  # unreachable


def in_subfield(x: FieldElement, q: int) -> bool:
    """True iff ``x`` lies in the order-``q`` subfield of GF(q^2), i.e. x^q == x."""
    if q * q != x.spec.order:
        raise BadSubfieldOrder(f"q^2={q * q} but ambient order is {x.spec.order}")
    return x**q == x

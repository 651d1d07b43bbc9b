"""Exact arithmetic in the coefficient fields GF(p^f), p an odd prime.

Elements are stored on a fixed polynomial basis over GF(p): the residue
classes of 1, g, ..., g^(f-1) where g is a root of a fixed Conway-style
primitive polynomial.  Pinning the polynomial per (p, f) makes string
serialisation of field elements stable across runs.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

# Monic generator polynomials, little-endian with the leading 1 included.
# Degree-one entries are x - g0 for g0 the least primitive root mod p; the
# rest are the standard Conway polynomials for small (p, f).
CONWAY_POLYNOMIALS = {
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (11, 1): (9, 1),
    (13, 1): (11, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class GaloisField:
    """The field GF(p^f) on the polynomial basis mod a fixed primitive polynomial."""

    def __init__(self, p: int, f: int = 1):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if f < 1:
            raise ValueError(f"field degree f = {f} must be >= 1")
        if (p, f) not in CONWAY_POLYNOMIALS:
            raise ValueError(f"no generator polynomial on record for GF({p}^{f})")
        self.p = p
        self.f = f
        self.order = p**f
        self.modulus = CONWAY_POLYNOMIALS[(p, f)]
        self.zero = FieldElement(self, (0,) * f)
        self.one = FieldElement(self, (1,) + (0,) * (f - 1))

    def __repr__(self):
        return f"GF({self.p}^{self.f})" if self.f > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GaloisField) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self):
        return hash((GaloisField, self.p, self.f))

    def element(self, value) -> FieldElement:
        """Coerce an int, coefficient sequence, or FieldElement into this field."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.f - 1)
            return FieldElement(self, coeffs)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.f:
            raise ValueError(f"too many coefficients for {self}")
        coeffs = coeffs + (0,) * (self.f - len(coeffs))
        return FieldElement(self, coeffs)

    def parse(self, text: str) -> FieldElement:
        """Inverse of str(x): "3" for prime fields, "c0,c1,..." otherwise."""
        parts = [part.strip() for part in text.split(",")]
        return self.element([int(part) for part in parts])

    def generator(self) -> FieldElement:
        """A fixed generator of the multiplicative group."""
        if self.f == 1:
            return self.element(-self.modulus[0])
        return self.element((0, 1))

    def prime_subfield_generator(self) -> FieldElement:
        """The fixed generator of F_p^x inside this field (order p - 1)."""
        return self.generator() ** ((self.order - 1) // (self.p - 1))

    def __iter__(self):
        for coeffs in itertools.product(range(self.p), repeat=self.f):
            yield FieldElement(self, coeffs)

    def units(self):
        return (x for x in self if not x.is_zero())

    def _mul_coeffs(self, a, b):
        p, f = self.p, self.f
        prod = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce by the monic modulus
        for d in range(2 * f - 2, f - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for j in range(f):
                    prod[d - f + j] = (prod[d - f + j] - c * self.modulus[j]) % p
        return tuple(prod[:f])


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p^f); immutable and usable as a dict key."""

    field: GaloisField
    coeffs: tuple

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise TypeError(f"cannot combine {self!r} with {other!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field._mul_coeffs(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __pow__(self, n: int):
        if self.is_zero():
            if n == 0:
                return self.field.one
            if n < 0:
                raise ZeroDivisionError("0 has no negative powers")
            return self.field.zero
        n %= self.field.order - 1
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError(f"0 is not invertible in {self.field}")
        return self ** (self.field.order - 2)

    def frobenius(self) -> "FieldElement":
        """The distinguished automorphism x -> x^p."""
        return self ** self.field.p

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self == self.field.one

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise ValueError("0 has no multiplicative order")
        n, x = 1, self
        while not x.is_one():
            x = x * self
            n += 1
        return n

    def __str__(self):
        if self.field.f == 1:
            return str(self.coeffs[0])
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self):
        return f"{self}:{self.field!r}"


@functools.lru_cache(maxsize=None)
def GF(p: int, f: int = 1) -> GaloisField:
    """Cached field constructor, so equal parameters share one instance."""
    return GaloisField(p, f)

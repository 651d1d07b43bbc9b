"""The truncated polynomial ring R = k_E[u]/u^N with N = e(p-1)p.

R is a chain ring: its ideals are exactly (u^m) for 0 <= m <= N, which is
what makes exact linear algebra over it tractable (divide only by units,
pivot on valuations).  All Breuil-module data in this package lives in R.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldElement, GaloisField


class ChainRing:
    """k_E[u] truncated at degree `length` (= e'p in context)."""

    def __init__(self, field: GaloisField, length: int):
        if length < 1:
            raise ValueError("truncation length must be positive")
        self.field = field
        self.length = length
        self.p = field.p
        self.zero = TruncPoly(self, (field.zero,) * length)
        self.one = self.monomial(0)

    def __repr__(self):
        return f"{self.field!r}[u]/u^{self.length}"

    def __eq__(self, other):
        return (
            isinstance(other, ChainRing)
            and self.field == other.field
            and self.length == other.length
        )

    def __hash__(self):
        return hash((ChainRing, self.field, self.length))

    def monomial(self, degree: int, coeff=1) -> TruncPoly:
        coeff = self.field.element(coeff)
        if degree >= self.length:
            return self.zero
        if degree < 0:
            raise ValueError("negative degree")
        coeffs = [self.field.zero] * self.length
        coeffs[degree] = coeff
        return TruncPoly(self, tuple(coeffs))

    def from_terms(self, terms) -> TruncPoly:
        """Build an element from (degree, coefficient) pairs; late terms add."""
        coeffs = [self.field.zero] * self.length
        for degree, coeff in terms:
            if degree < 0:
                raise ValueError("negative degree")
            if degree < self.length:
                coeffs[degree] = coeffs[degree] + self.field.element(coeff)
        return TruncPoly(self, tuple(coeffs))

    def element(self, value) -> TruncPoly:
        if isinstance(value, TruncPoly):
            if value.ring != self:
                raise ValueError(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, (int, FieldElement)):
            return self.monomial(0, value)
        return self.from_terms(enumerate(value))


@dataclass(frozen=True)
class TruncPoly:
    """An element of a ChainRing; immutable, with valuation-aware helpers."""

    ring: ChainRing
    coeffs: tuple

    def _coerce(self, other) -> "TruncPoly":
        if isinstance(other, TruncPoly):
            if other.ring != self.ring:
                raise TypeError("mixed chain rings")
            return other
        return self.ring.element(other)

    def __add__(self, other):
        other = self._coerce(other)
        return TruncPoly(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = self.ring.field.element(other)
            return TruncPoly(self.ring, tuple(a * c for a in self.coeffs))
        other = self._coerce(other)
        n = self.ring.length
        zero = self.ring.field.zero
        prod = [zero] * n
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                for j, b in enumerate(other.coeffs):
                    if i + j >= n:
                        break
                    if not b.is_zero():
                        prod[i + j] = prod[i + j] + a * b
        return TruncPoly(self.ring, tuple(prod))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def val(self) -> int:
        """u-adic valuation; the truncation length for 0."""
        for d, c in enumerate(self.coeffs):
            if not c.is_zero():
                return d
        return self.ring.length

    def is_unit(self) -> bool:
        return not self.coeffs[0].is_zero()

    def terms(self):
        return [(d, c) for d, c in enumerate(self.coeffs) if not c.is_zero()]

    def degrees(self):
        return [d for d, c in enumerate(self.coeffs) if not c.is_zero()]

    def __getitem__(self, degree: int) -> FieldElement:
        if 0 <= degree < self.ring.length:
            return self.coeffs[degree]
        return self.ring.field.zero

    def shift_up(self, m: int) -> "TruncPoly":
        """Multiply by u^m."""
        if m == 0:
            return self
        n = self.ring.length
        zero = self.ring.field.zero
        return TruncPoly(self.ring, (zero,) * min(m, n) + self.coeffs[: max(n - m, 0)])

    def shift_down(self, m: int) -> "TruncPoly":
        """Exact division by u^m; requires val >= m."""
        if m == 0:
            return self
        if self.val() < m:
            raise ValueError(f"u^{m} does not divide element of valuation {self.val()}")
        zero = self.ring.field.zero
        return TruncPoly(self.ring, self.coeffs[m:] + (zero,) * m)

    def inverse(self) -> "TruncPoly":
        """Inverse of a unit, via the geometric series in the nilpotent tail."""
        if not self.is_unit():
            raise ZeroDivisionError("non-unit in chain ring")
        c0inv = self.coeffs[0].inverse()
        tail = self.ring.one - self * c0inv  # val >= 1, nilpotent
        result = self.ring.one
        power = tail
        while not power.is_zero():
            result = result + power
            power = power * tail
        return result * c0inv

    def phi_twist(self) -> "TruncPoly":
        """The k_E-linear twist u^i -> u^{p i}, dropping degrees past truncation."""
        ring = self.ring
        coeffs = [ring.field.zero] * ring.length
        for d, c in enumerate(self.coeffs):
            if not c.is_zero() and ring.p * d < ring.length:
                coeffs[ring.p * d] = c
        return TruncPoly(ring, tuple(coeffs))

    def substitute_root(self, zeta: FieldElement) -> "TruncPoly":
        """f(u) -> f(zeta * u), the degree-graded scaling used by descent data."""
        power = self.ring.field.one
        coeffs = []
        for c in self.coeffs:
            coeffs.append(c * power)
            power = power * zeta
        return TruncPoly(self.ring, tuple(coeffs))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for d, c in self.terms():
            if d == 0:
                parts.append(f"({c})")
            elif d == 1:
                parts.append(f"({c})*u")
            else:
                parts.append(f"({c})*u^{d}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self} in {self.ring!r}>"

"""Characters of G_K and I_K, Serre weights, and the global arithmetic context.

K is a totally ramified extension of Q_p of degree e with residue field F_p,
and p > 2 throughout.  A character of I_K of niveau 1 is a power of the
fundamental character omega (order p - 1); a full character of G_K is an
inertial exponent together with the value on a fixed arithmetic Frobenius
lift.  The niveau-2 fundamental characters live mod p^2 - 1.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .chainring import ChainRing
from .gf import GF, FieldElement, GaloisField, is_prime


class InvalidWeightError(ValueError):
    """A Serre weight outside the bounds 0 <= a1 - a2 <= p - 1."""


@dataclass(frozen=True)
class GlobalContext:
    """The arithmetic setting: p, ramification e, coefficient degree f.

    `cyclotomic_scalar` is the unramified Frobenius value assigned to the
    mod-p cyclotomic character; the paper-level data pins only its inertial
    part, so the scalar is configuration (default 1).  It only affects
    full-character equality tests, never inertial ones.
    """

    p: int
    e: int
    f: int = 1
    cyclotomic_scalar: FieldElement = None

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 3:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.e < 1:
            raise ValueError(f"ramification index must be >= 1, got {self.e}")
        if self.f < 1:
            raise ValueError(f"coefficient degree must be >= 1, got {self.f}")
        scalar = self.cyclotomic_scalar
        if scalar is None:
            scalar = self.field.one
        else:
            scalar = self.field.element(scalar)
        if scalar.is_zero():
            raise ValueError("cyclotomic scalar must be a unit")
        object.__setattr__(self, "cyclotomic_scalar", scalar)

    @property
    def field(self) -> GaloisField:
        return GF(self.p, self.f)

    @property
    def e_prime(self) -> int:
        return self.e * (self.p - 1)

    @property
    def ring_length(self) -> int:
        return self.e_prime * self.p

    @property
    def ring(self) -> ChainRing:
        return _ring_for(self.p, self.f, self.ring_length)

    @property
    def descent_root(self) -> FieldElement:
        """The fixed generator of mu_{p-1} = F_p^x inside k_E."""
        return self.field.prime_subfield_generator()


@functools.lru_cache(maxsize=None)
def _ring_for(p, f, length):
    return ChainRing(GF(p, f), length)


@dataclass(frozen=True)
class SerreWeight:
    a1: int
    a2: int

    def check(self, p: int) -> None:
        if not (self.a1 >= self.a2 and 0 <= self.a1 - self.a2 <= p - 1):
            raise InvalidWeightError(
                f"weight ({self.a1},{self.a2}) violates 0 <= a1-a2 <= {p - 1}"
            )


def weight_equivalent(a: SerreWeight, b: SerreWeight, ctx: GlobalContext) -> bool:
    """Equal difference and a2 congruent mod p-1 (same irreducible of GL_2(F_p))."""
    a.check(ctx.p)
    b.check(ctx.p)
    return a.a1 - a.a2 == b.a1 - b.a2 and (a.a2 - b.a2) % (ctx.p - 1) == 0


@dataclass(frozen=True)
class InertialChar1:
    """omega^exponent on I_K; exponent lives mod p - 1."""

    exponent: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.modulus)

    @classmethod
    def make(cls, exponent: int, ctx: GlobalContext) -> "InertialChar1":
        return cls(exponent, ctx.p - 1)

    def is_trivial(self) -> bool:
        return self.exponent == 0


@dataclass(frozen=True)
class InertialChar2:
    """A power of a niveau-2 fundamental character; exponent mod p^2 - 1."""

    exponent: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.modulus)

    @classmethod
    def make(cls, exponent: int, ctx: GlobalContext) -> "InertialChar2":
        return cls(exponent, ctx.p**2 - 1)


def niveau2_frobenius_conjugate(chi: InertialChar2, ctx: GlobalContext) -> InertialChar2:
    """Exponent times p mod p^2 - 1; swapping the two embeddings is an involution."""
    return InertialChar2(chi.exponent * ctx.p, chi.modulus)


@dataclass(frozen=True)
class FullChar:
    """A character of G_K: inertial part plus the Frobenius scalar."""

    inertial: InertialChar1
    frob_scalar: FieldElement

    def __post_init__(self):
        if self.frob_scalar.is_zero():
            raise ValueError("Frobenius scalar must be a unit")

    @classmethod
    def make(cls, exponent: int, frob_scalar, ctx: GlobalContext) -> "FullChar":
        return cls(InertialChar1.make(exponent, ctx), ctx.field.element(frob_scalar))

    @property
    def exponent(self) -> int:
        return self.inertial.exponent

    def is_unramified(self) -> bool:
        return self.inertial.is_trivial()

    def is_trivial(self) -> bool:
        return self.is_unramified() and self.frob_scalar.is_one()


def char_mul(chi: FullChar, psi: FullChar) -> FullChar:
    return FullChar(
        InertialChar1(chi.exponent + psi.exponent, chi.inertial.modulus),
        chi.frob_scalar * psi.frob_scalar,
    )


def char_inv(chi: FullChar) -> FullChar:
    return FullChar(
        InertialChar1(-chi.exponent, chi.inertial.modulus), chi.frob_scalar.inverse()
    )


def cyclotomic(ctx: GlobalContext) -> FullChar:
    """The mod-p cyclotomic character: omega^e on inertia, configured scalar."""
    return FullChar.make(ctx.e, ctx.cyclotomic_scalar, ctx)


def char_to_json(chi: FullChar) -> dict:
    return {"exp": chi.exponent, "frob": str(chi.frob_scalar)}


def char_from_json(data: dict, ctx: GlobalContext) -> FullChar:
    return FullChar.make(int(data["exp"]), ctx.field.parse(str(data["frob"])), ctx)

"""Explicit weight data for 2-dimensional mod-p representations.

For reducible representations with diagonal characters (chi1, chi2) the
weight a is inertially compatible when there is a decomposition J of the
single embedding and a shift 0 <= delta <= e-1 matching

    chi1|_I = omega^(delta + a1+1)   and  chi2|_I = omega^(e-1-delta + a2)   (J full)
    chi1|_I = omega^(delta + a2)     and  chi2|_I = omega^(e-1-delta + a1+1) (J empty)

Each such (J, delta) contributes a crystalline extension space of dimension
|J| + delta (+1 when chi1 = chi2 as full characters), and the crystalline
dimension is the maximum over the decompositions, except in the one
exceptional configuration a1 - a2 = p-1, chi1/chi2 cyclotomic, where the
whole H^1 occurs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import (
    FullChar,
    GlobalContext,
    InertialChar2,
    SerreWeight,
    char_inv,
    char_mul,
    cyclotomic,
)


class InertiallyIncompatibleError(ValueError):
    """No (J, delta) decomposition exists for the given characters and weight."""


@dataclass(frozen=True)
class JDelta:
    """A decomposition datum: J full or empty, and 0 <= delta <= e-1."""

    j_full: bool
    delta: int

    @property
    def size_j(self) -> int:
        return 1 if self.j_full else 0

    def to_json(self) -> dict:
        return {"J": "full" if self.j_full else "empty", "delta": self.delta}


@dataclass(frozen=True)
class ReducibleShape:
    """Diagonal characters of a reducible representation; chi1 is the sub."""

    chi1: FullChar
    chi2: FullChar


def reducible_inertial_params(
    shape: ReducibleShape, a: SerreWeight, ctx: GlobalContext
) -> list:
    """All (J, delta) decompositions compatible with the inertial data."""
    a.check(ctx.p)
    m = ctx.p - 1
    alpha = shape.chi1.exponent
    beta = shape.chi2.exponent
    out = []
    for delta in range(ctx.e):
        for j_full in (True, False):
            top = a.a1 + 1 if j_full else a.a2
            bottom = a.a2 if j_full else a.a1 + 1
            if (alpha - delta - top) % m == 0 and (
                beta - (ctx.e - 1 - delta) - bottom
            ) % m == 0:
                out.append(JDelta(j_full, delta))
    return out


def lchi_dimension(jd: JDelta, chars_equal: bool, ctx: GlobalContext) -> int:
    """|J| + delta, plus 1 when the two reductions coincide."""
    if not 0 <= jd.delta <= ctx.e - 1:
        raise ValueError(f"delta = {jd.delta} outside [0, {ctx.e - 1}]")
    return jd.size_j + jd.delta + (1 if chars_equal else 0)


def h1_dimension(chi: FullChar, ctx: GlobalContext) -> int:
    """dim H^1(G_K, chi) by the local Euler characteristic with Tate duality."""
    dim = ctx.e
    if chi.is_trivial():
        dim += 1
    if chi == cyclotomic(ctx):
        dim += 1
    return dim


def is_exceptional(shape: ReducibleShape, a: SerreWeight, ctx: GlobalContext) -> bool:
    """a1 - a2 = p - 1 with chi1/chi2 the cyclotomic character (full equality)."""
    ratio = char_mul(shape.chi1, char_inv(shape.chi2))
    return a.a1 - a.a2 == ctx.p - 1 and ratio == cyclotomic(ctx)


@dataclass(frozen=True)
class LcrysResult:
    dimension: int
    exceptional: bool


def lcrys_dimension(
    shape: ReducibleShape, a: SerreWeight, ctx: GlobalContext
) -> LcrysResult:
    """Dimension of the crystalline extension locus for (chi1, chi2, a).

    Requires at least one (J, delta); in the exceptional configuration the
    locus is all of H^1(G_K, cyclotomic), otherwise it is the largest of
    the spaces attached to the decompositions.
    """
    params = reducible_inertial_params(shape, a, ctx)
    if not params:
        raise InertiallyIncompatibleError(
            "weight not in inertial range: no (J, delta) decomposition"
        )
    if is_exceptional(shape, a, ctx):
        return LcrysResult(h1_dimension(cyclotomic(ctx), ctx), True)
    chars_equal = shape.chi1 == shape.chi2
    return LcrysResult(
        max(lchi_dimension(jd, chars_equal, ctx) for jd in params), False
    )


def irreducible_in_wexplicit(
    inertial_exp: InertialChar2, a: SerreWeight, ctx: GlobalContext
) -> bool:
    """Niveau-2 membership test for one diagonal character of an irreducible rep."""
    a.check(ctx.p)
    m = ctx.p**2 - 1
    n = inertial_exp.exponent
    for candidate in (n, (n * ctx.p) % m):  # the character or its Frobenius conjugate
        for delta in range(ctx.e):
            target = (a.a1 + 1 + delta) + ctx.p * (a.a2 + ctx.e - 1 - delta)
            if (candidate - target) % m == 0:
                return True
    return False

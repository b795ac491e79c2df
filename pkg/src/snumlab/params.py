"""Block indices, embedding parameters, and their derived exponents.

Everything here is a plain value type with exact (rational / inf) fields.
The derived quantities are the ones every rate and nuclearity formula is
written in: the smoothness gap delta, the integrability gap 1/p, the
interpolation exponent t with 1/t = 1/min{p1', p2}, and the per-level
sequence-space smoothness shifts sigma_i = s_i + m/2 - m/p_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .extreal import INF, Ext, as_ext, conjugate, ext_min, inv, is_inf


@dataclass(frozen=True)
class BlockIndex:
    """Nondecreasing tuple of block dimensions, each >= 2."""

    gammas: tuple[int, ...]

    def __post_init__(self):
        g = tuple(int(v) for v in self.gammas)
        object.__setattr__(self, "gammas", g)
        if len(g) == 0:
            raise ValueError("block index needs at least one block")
        if any(v < 2 for v in g):
            raise ValueError(f"every block dimension must be >= 2, got {g}")
        if any(g[i] > g[i + 1] for i in range(len(g) - 1)):
            raise ValueError(f"block dimensions must be nondecreasing, got {g}")

    @property
    def m(self) -> int:
        """Number of blocks."""
        return len(self.gammas)

    @property
    def d(self) -> int:
        """Total ambient dimension."""
        return sum(self.gammas)

    @property
    def gamma1(self) -> int:
        """Smallest block dimension."""
        return self.gammas[0]

    @property
    def n(self) -> int:
        """Multiplicity of the smallest block dimension."""
        g1 = self.gammas[0]
        return max(i + 1 for i, v in enumerate(self.gammas) if v == g1)

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.gammas) + ")"


@dataclass(frozen=True)
class EmbeddingParams:
    """Source/target smoothness and integrability parameters.

    s1, s2 are real (kept exact when rational); p1, p2 in [1, inf];
    q1, q2 in (0, inf].  The q indices never enter a rate formula, they are
    only validated for positivity.
    """

    s1: Fraction
    s2: Fraction
    p1: Ext
    p2: Ext
    q1: Ext = Fraction(2)
    q2: Ext = Fraction(2)

    def __post_init__(self):
        for name in ("s1", "s2"):
            v = as_ext(getattr(self, name))
            if is_inf(v):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        for name in ("p1", "p2"):
            v = as_ext(getattr(self, name))
            if not is_inf(v) and v < 1:
                raise ValueError(f"{name} must lie in [1, inf], got {v}")
            object.__setattr__(self, name, v)
        for name in ("q1", "q2"):
            v = as_ext(getattr(self, name))
            if not is_inf(v) and v <= 0:
                raise ValueError(f"{name} must lie in (0, inf], got {v}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class DerivedExponents:
    delta: Fraction
    inv_p: Fraction
    t: Ext
    p1_dual: Ext
    p2_dual: Ext
    sigma1: Fraction
    sigma2: Fraction


def derive_exponents(params: EmbeddingParams, gamma: BlockIndex) -> DerivedExponents:
    """All derived exponents, computed exactly (1/inf = 0 throughout)."""
    inv_p = inv(params.p1) - inv(params.p2)
    delta = params.s1 - params.s2 - gamma.d * inv_p
    p1_dual = conjugate(params.p1)
    p2_dual = conjugate(params.p2)
    t = ext_min(p1_dual, params.p2)
    m = gamma.m
    sigma1 = params.s1 + Fraction(m, 2) - m * inv(params.p1)
    sigma2 = params.s2 + Fraction(m, 2) - m * inv(params.p2)
    return DerivedExponents(
        delta=delta,
        inv_p=inv_p,
        t=t,
        p1_dual=p1_dual,
        p2_dual=p2_dual,
        sigma1=sigma1,
        sigma2=sigma2,
    )


def is_compact_embedding(params: EmbeddingParams, gamma: BlockIndex) -> bool:
    """Strict two-sided condition s1 - s2 > d*(1/p1 - 1/p2) > 0.

    The block-dimension condition (all gamma_i >= 2) is enforced by
    BlockIndex itself, so only the exponent inequalities are checked here.
    Comparisons are exact.
    """
    gap = inv(params.p1) - inv(params.p2)
    return gap > 0 and params.s1 - params.s2 > gamma.d * gap


__all__ = [
    "BlockIndex",
    "EmbeddingParams",
    "DerivedExponents",
    "derive_exponents",
    "is_compact_embedding",
    "INF",
]

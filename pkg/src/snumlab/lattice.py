"""Cube weights on the integer lattice and their ordering/counting laws.

The weight of the dyadic cube with center 2^-nu * k and side 2^-nu under
the product density prod_i |r_i|^(gamma_i - 1) factorizes over coordinates,
and each factor is a rational number with a closed form:

    integral over [2^-nu (k-1/2), 2^-nu (k+1/2)] of |t|^(g-1) dt
        = M_g(k) / (g * 2^((nu+1) g)),
    M_g(k) = sgn(2k+1)|2k+1|^g - sgn(2k-1)|2k-1|^g   (a positive integer).

All ordering and counting is done on the scaled integers prod_i M_gi(k_i),
so ranks and counts never depend on floating-point rounding.  Near-ties are
real here: whole orbits of sign flips and block permutations share a weight.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from .errors import MemoryBudgetError, PreconditionError, ThresholdRangeError
from .extreal import Ext, as_ext, inv, is_inf
from .params import BlockIndex

_INT64_SAFE = 2**62


def factor_scaled(g: int, j: int) -> int:
    """Integer M_g(j); the level-0 factor integral is M_g(j) / (g * 2^g)."""
    a = 2 * j - 1
    b = 2 * j + 1
    fa = abs(a) ** g if a >= 0 else -(abs(a) ** g)
    fb = abs(b) ** g if b >= 0 else -(abs(b) ** g)
    return fb - fa


def weight_denominator(gamma: BlockIndex) -> int:
    """Common denominator of level-0 cube weights: prod_i gamma_i * 2^gamma_i."""
    return reduce(lambda acc, g: acc * g * (1 << g), gamma.gammas, 1)


def cube_weight(gamma: BlockIndex, nu: int, k) -> Fraction:
    """Exact weight of the level-nu cube at lattice point k (k in Z^m)."""
    if nu < 0:
        raise PreconditionError(f"level must be >= 0, got {nu}")
    k = tuple(int(v) for v in k)
    if len(k) != gamma.m:
        raise PreconditionError(
            f"lattice point has {len(k)} coordinates, block index has {gamma.m}"
        )
    num = 1
    den = 1
    for g, kj in zip(gamma.gammas, k):
        num *= factor_scaled(g, kj)
        den *= g << ((nu + 1) * g)
    return Fraction(num, den)


def cube_weight_float(gamma: BlockIndex, nu: int, k) -> float:
    """Float fast path; agrees with the exact value to ~1e-15 relative."""
    k = tuple(int(v) for v in k)
    if len(k) != gamma.m:
        raise PreconditionError(
            f"lattice point has {len(k)} coordinates, block index has {gamma.m}"
        )
    w = 1.0
    for g, kj in zip(gamma.gammas, k):
        w *= factor_scaled(g, kj) / (g * 2.0 ** ((nu + 1) * g))
    return w


def _factor_array(g: int, box_radius: int, dtype) -> np.ndarray:
    """M_g(j) for j = -K..K as a numpy array."""
    j = np.arange(1, box_radius + 1, dtype=np.int64)
    if dtype is object:
        pos = np.array([factor_scaled(g, int(v)) for v in j], dtype=object)
        zero = np.array([2], dtype=object)
    else:
        pos = (2 * j + 1) ** g - (2 * j - 1) ** g
        zero = np.array([2], dtype=np.int64)
    return np.concatenate([pos[::-1], zero, pos])


@dataclass
class CubeWeightTable:
    """All lattice points with sup-norm <= box_radius, sorted by weight.

    Sorting is ascending by exact weight with lexicographic tie-break on the
    point, which makes ranks reproducible.  `rank_of` realizes the ordering
    bijection restricted to the box; ranks below `reliable_rank_count` agree
    with the ordering over the whole of Z^m (every omitted point is at least
    as heavy as the lightest boundary point).
    """

    gamma: BlockIndex
    box_radius: int
    points: np.ndarray          # (N, m) int32, sorted by (weight, lex)
    scaled_weights: np.ndarray  # (N,) int64 or object; weight = scaled / denominator
    denominator: int
    _rank_of_flat: np.ndarray

    @property
    def size(self) -> int:
        return len(self.scaled_weights)

    # -- bijection ------------------------------------------------------

    def rank_of(self, k) -> int:
        k = tuple(int(v) for v in k)
        if len(k) != self.gamma.m:
            raise PreconditionError("dimension mismatch")
        K = self.box_radius
        flat = 0
        for v in k:
            if abs(v) > K:
                raise PreconditionError(f"point {k} outside the enumeration box")
            flat = flat * (2 * K + 1) + (v + K)
        return int(self._rank_of_flat[flat])

    def point(self, rank: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.points[rank])

    def weight_exact(self, rank: int) -> Fraction:
        return Fraction(int(self.scaled_weights[rank]), self.denominator)

    def weight_float(self, rank: int) -> float:
        return int(self.scaled_weights[rank]) / self.denominator

    def weights_float(self) -> np.ndarray:
        return np.asarray(self.scaled_weights, dtype=float) / self.denominator

    # -- truncation bookkeeping ------------------------------------------

    @property
    def boundary_min_weight(self) -> Fraction:
        """Smallest weight on the box boundary; thresholds must stay below it."""
        best = None
        for i, g in enumerate(self.gamma.gammas):
            s = factor_scaled(g, self.box_radius)
            for j, h in enumerate(self.gamma.gammas):
                if j != i:
                    s *= 2
            if best is None or s < best:
                best = s
        return Fraction(best, self.denominator)

    @property
    def reliable_rank_count(self) -> int:
        """Number of leading ranks whose rank agrees with the Z^m ordering."""
        best_scaled = int(self.boundary_min_weight * self.denominator)
        return int(np.searchsorted(self.scaled_weights, best_scaled, side="left"))

    def count_leq(self, threshold) -> int:
        """Number of table entries with weight <= threshold (exact compare)."""
        t = as_ext(threshold)
        if is_inf(t):
            raise ThresholdRangeError("threshold must be finite")
        scaled = t * self.denominator
        cut = math.floor(scaled)
        return int(np.searchsorted(self.scaled_weights, int(cut), side="right"))

    # -- export ----------------------------------------------------------

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["rank", "k", "weight"])
            for rank in range(self.size):
                k = ";".join(str(v) for v in self.points[rank])
                w.writerow([rank, k, f"{self.weight_float(rank):.17g}"])


def enumerate_cube_weights(
    gamma: BlockIndex, box_radius: int, max_points: int = 2**25
) -> CubeWeightTable:
    """Build the sorted weight table for all |k|_inf <= box_radius.

    Weights are carried as exact scaled integers.  The int64 fast path is
    used whenever the largest possible product fits; otherwise the (slow)
    arbitrary-precision path kicks in.
    """
    if box_radius < 1:
        raise PreconditionError("box_radius must be >= 1")
    m = gamma.m
    side = 2 * box_radius + 1
    n_points = side**m
    if n_points > max_points:
        raise MemoryBudgetError(
            f"enumeration needs {n_points} points, cap is {max_points}"
        )

    max_product = 1
    for g in gamma.gammas:
        max_product *= factor_scaled(g, box_radius)
    intermediates_fit = all(
        (2 * box_radius + 1) ** g < _INT64_SAFE for g in gamma.gammas
    )
    dtype = np.int64 if (max_product < _INT64_SAFE and intermediates_fit) else object

    factors = [_factor_array(g, box_radius, dtype) for g in gamma.gammas]
    scaled = reduce(np.multiply.outer, factors).ravel()

    grids = np.meshgrid(*[np.arange(-box_radius, box_radius + 1)] * m, indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1).astype(np.int32)

    # primary key: scaled weight; ties broken lexicographically on k
    keys = tuple(points[:, i] for i in range(m - 1, -1, -1)) + (scaled,)
    order = np.lexsort(keys)

    rank_of_flat = np.empty(n_points, dtype=np.int64)
    rank_of_flat[order] = np.arange(n_points)

    return CubeWeightTable(
        gamma=gamma,
        box_radius=box_radius,
        points=points[order],
        scaled_weights=scaled[order],
        denominator=weight_denominator(gamma),
        _rank_of_flat=rank_of_flat,
    )


def counting_profile(table: CubeWeightTable, thresholds) -> list[int]:
    """Counts of table entries with weight <= threshold, per threshold.

    Thresholds must be ascending and strictly below the boundary-saturation
    weight of the table; beyond that the box truncates level sets and the
    in-box count silently undercounts the lattice-wide one.
    """
    ts = [as_ext(t) for t in thresholds]
    if not ts:
        return []
    for a, b in zip(ts, ts[1:]):
        if not a < b:
            raise PreconditionError("thresholds must be strictly ascending")
    limit = table.boundary_min_weight
    for t in ts:
        if is_inf(t):
            raise ThresholdRangeError("threshold +inf exceeds the reliable range")
        if t >= limit:
            raise ThresholdRangeError(
                f"threshold {t} >= boundary-saturation weight {limit}; "
                f"the in-box count would be truncation-biased"
            )
    return [table.count_leq(t) for t in ts]


# -- exact lattice-wide counting ------------------------------------------

def _max_j_with_factor_leq(g: int, bound: int) -> int:
    """Largest j >= 1 with M_g(j) <= bound, or 0 if none."""
    if factor_scaled(g, 1) > bound:
        return 0
    lo, hi = 1, 2
    while factor_scaled(g, hi) <= bound:
        lo, hi = hi, hi * 2
    # invariant: M(lo) <= bound < M(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if factor_scaled(g, mid) <= bound:
            lo = mid
        else:
            hi = mid
    return lo


def _count_scaled(gs: tuple[int, ...], bound: int) -> int:
    """#{k in Z^len(gs) : prod M_gi(k_i) <= bound}, exact integer arithmetic."""
    if bound < 2:
        return 0
    g = gs[0]
    if len(gs) == 1:
        return (1 if bound >= 2 else 0) + 2 * _max_j_with_factor_leq(g, bound)
    if len(gs) == 2:
        return _count_scaled_2d(gs, bound)
    rest = gs[1:]
    inner_min = 1 << len(rest)  # every remaining factor is at least 2
    total = _count_scaled(rest, bound // 2)  # k_1 = 0 contributes M = 2
    j = 1
    while True:
        f = factor_scaled(g, j)
        if f * inner_min > bound:
            break
        total += 2 * _count_scaled(rest, bound // f)
        j += 1
    return total


def _count_scaled_2d(gs: tuple[int, int], bound: int) -> int:
    g_out, g_in = gs
    jmax_out = _max_j_with_factor_leq(g_out, bound // 2)
    jmax_in_cap = _max_j_with_factor_leq(g_in, bound // 2)

    vector_ok = (
        bound < _INT64_SAFE
        and jmax_out < 2**24
        and jmax_in_cap < 2**24
        and (2 * jmax_out + 1) ** g_out < _INT64_SAFE
        and (2 * jmax_in_cap + 1) ** g_in < _INT64_SAFE
    )
    if vector_ok:
        j_in = np.arange(1, jmax_in_cap + 1, dtype=np.int64)
        inner = (2 * j_in + 1) ** g_in - (2 * j_in - 1) ** g_in
        j_out = np.arange(1, jmax_out + 1, dtype=np.int64)
        outer = (2 * j_out + 1) ** g_out - (2 * j_out - 1) ** g_out
        outer = np.concatenate([np.array([2], dtype=np.int64), outer])
        rem = bound // outer
        cnt = (rem >= 2).astype(np.int64) + 2 * np.searchsorted(
            inner, rem, side="right"
        )
        mult = np.full(len(outer), 2, dtype=np.int64)
        mult[0] = 1
        return int(np.sum(mult * cnt))

    total = 0
    rem0 = bound // 2
    if rem0 >= 2:
        total += 1 + 2 * _max_j_with_factor_leq(g_in, rem0)
    for j in range(1, jmax_out + 1):
        rem = bound // factor_scaled(g_out, j)
        if rem < 2:
            break
        total += 2 * (1 + 2 * _max_j_with_factor_leq(g_in, rem))
    return total


def count_weights_below(gamma: BlockIndex, thresholds) -> list[int]:
    """Exact #{k in Z^m : w(Q_{0,k}) <= threshold}, over the whole lattice.

    Works on the factorized scaled-integer form, so no enumeration box is
    involved; level sets with long axis slabs are counted in full.  Blocks
    are processed largest-dimension-first to keep outer loops short.
    """
    denom = weight_denominator(gamma)
    gs = tuple(sorted(gamma.gammas, reverse=True))
    out = []
    for t in thresholds:
        tt = as_ext(t)
        if is_inf(tt):
            raise ThresholdRangeError("threshold must be finite")
        if tt <= 0:
            out.append(0)
            continue
        bound = math.floor(tt * denom)
        out.append(_count_scaled(gs, int(bound)))
    return out


# -- the flattened weight sequence ----------------------------------------

@dataclass(frozen=True)
class WeightSequenceParams:
    """Exponent bookkeeping for the rank-indexed weight sequence.

    exponent_e drives the reindexed weight itself, exponent_s the diagonal
    sequence obtained from its p2-th root.  For p2 = inf the diagonal
    sequence is identically 1 (the weight power 1/p2 degenerates to 0).
    """

    gamma: BlockIndex
    p1: Ext
    p2: Ext

    def __post_init__(self):
        object.__setattr__(self, "p1", as_ext(self.p1))
        object.__setattr__(self, "p2", as_ext(self.p2))
        for p in (self.p1, self.p2):
            if not is_inf(p) and p < 1:
                raise ValueError("integrability exponents must lie in [1, inf]")
        if is_inf(self.p1):
            raise ValueError("p1 = inf leaves the weight exponent undefined")

    @property
    def exponent_e(self) -> Fraction:
        if is_inf(self.p2):
            raise PreconditionError("exponent_e undefined for p2 = inf")
        return (self.gamma.gamma1 - 1) * (1 - self.p2 / self.p1)

    @property
    def exponent_s(self) -> Fraction:
        return (self.gamma.gamma1 - 1) * (inv(self.p2) - inv(self.p1))


def rank_weight_base(ell: int, n: int) -> float:
    """max(1, ell * log2(ell)^(1-n)); the clamp makes ell in {0, 1} give 1."""
    if ell <= 1:
        return 1.0
    return max(1.0, ell * math.log2(ell) ** (1 - n))


def reindexed_weight(params: WeightSequenceParams, ell: int) -> float:
    """Weight of rank ell after flattening the lattice by the ordering."""
    if ell < 0:
        raise PreconditionError("rank must be >= 0")
    return rank_weight_base(ell, params.gamma.n) ** float(params.exponent_e)


def diag_sequence_value(params: WeightSequenceParams, ell: int) -> float:
    """p2-th root of the reindexed weight; identically 1 when p2 = inf."""
    if ell < 0:
        raise PreconditionError("rank must be >= 0")
    if is_inf(params.p2):
        return 1.0
    return rank_weight_base(ell, params.gamma.n) ** float(params.exponent_s)


__all__ = [
    "CubeWeightTable",
    "WeightSequenceParams",
    "cube_weight",
    "cube_weight_float",
    "enumerate_cube_weights",
    "counting_profile",
    "count_weights_below",
    "rank_weight_base",
    "reindexed_weight",
    "diag_sequence_value",
    "weight_denominator",
    "factor_scaled",
]

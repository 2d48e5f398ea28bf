"""Counting invertible t x t submatrices (N_t) and the t-density R_t."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import BadRow, BadT
from .gf2 import BinaryMatrix, gf2_rank_rows

__all__ = [
    "DensityReport",
    "PairProfile",
    "count_invertible",
    "count_invertible_2_fast",
    "pair_counts",
    "density",
    "pair_profile",
    "pair_invertible_count",
]


@dataclass(frozen=True)
class DensityReport:
    s: int
    t: int
    n_t: int
    r_t: Fraction

    @property
    def r_t_float(self) -> float:
        return round(float(self.r_t), 5)

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "n_t": self.n_t,
            "r_t_num": self.r_t.numerator,
            "r_t_den": self.r_t.denominator,
            "r_t_float": self.r_t_float,
        }


@dataclass(frozen=True)
class PairProfile:
    """Column-pattern counts for two rows: a0=(0,0), a1=(0,1), a2=(1,0), a3=(1,1)."""

    a0: int
    a1: int
    a2: int
    a3: int

    @property
    def invertible(self) -> int:
        return self.a1 * self.a2 + self.a1 * self.a3 + self.a2 * self.a3


def _check_t(m: BinaryMatrix, t: int) -> None:
    if not 1 <= t <= m.s:
        raise BadT(f"t={t} outside [1, {m.s}]")


def _combos_colex(n: int, k: int):
    # colexicographic order: compare by largest element first
    for c in sorted(combinations(range(n), k), key=lambda c: c[::-1]):
        yield c


def count_invertible(m: BinaryMatrix, t: int) -> int:
    """Brute-force N_t(M): rank of every one of the C(s,t)^2 submatrices."""
    _check_t(m, t)
    s = m.s
    col_sets = list(_combos_colex(s, t))
    col_masks = [sum(1 << c for c in cs) for cs in col_sets]
    if t == 1:
        return m.ones_count()
    total = 0
    for rows in _combos_colex(s, t):
        picked = [m.rows[r] for r in rows]
        for mask in col_masks:
            # masking leaves the selected columns in place; rank is unaffected
            if gf2_rank_rows([r & mask for r in picked]) == t:
                total += 1
    return total


def pair_invertible_count(r1: int, r2: int) -> int:
    """a1*a2 + a1*a3 + a2*a3 for two bit-rows."""
    a3 = (r1 & r2).bit_count()
    a2 = r1.bit_count() - a3
    a1 = r2.bit_count() - a3
    return a1 * a2 + a1 * a3 + a2 * a3


def pair_counts(m: BinaryMatrix) -> list[list[int]]:
    """Symmetric s x s table of invertible 2x2 counts per row pair (zero diagonal)."""
    s = m.s
    rows = m.rows
    out = [[0] * s for _ in range(s)]
    for i in range(s):
        for j in range(i + 1, s):
            out[i][j] = out[j][i] = pair_invertible_count(rows[i], rows[j])
    return out


def count_invertible_2_fast(m: BinaryMatrix) -> int:
    """N_2(M) as a sum over row pairs of the closed-form per-pair count."""
    s = m.s
    if s < 2:
        raise BadT("N_2 needs s >= 2")
    rows = m.rows
    weights = [r.bit_count() for r in rows]
    total = 0
    for i in range(s):
        ri, wi = rows[i], weights[i]
        for j in range(i + 1, s):
            a3 = (ri & rows[j]).bit_count()
            a2 = wi - a3
            a1 = weights[j] - a3
            total += a1 * a2 + (a1 + a2) * a3
    return total


def density(m: BinaryMatrix, t: int) -> DensityReport:
    _check_t(m, t)
    n = count_invertible_2_fast(m) if t == 2 else count_invertible(m, t)
    return DensityReport(m.s, t, n, Fraction(n, comb(m.s, t) ** 2))


def pair_profile(m: BinaryMatrix, i: int, j: int) -> PairProfile:
    """Profile of rows ``i`` and ``j`` (1-based)."""
    s = m.s
    if not (1 <= i <= s and 1 <= j <= s) or i == j:
        raise BadRow(f"need two distinct rows in [1, {s}], got {i}, {j}")
    ri, rj = m.rows[i - 1], m.rows[j - 1]
    a3 = (ri & rj).bit_count()
    a2 = ri.bit_count() - a3
    a1 = rj.bit_count() - a3
    return PairProfile(s - a1 - a2 - a3, a1, a2, a3)

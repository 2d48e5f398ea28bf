"""Closed-form density bounds and the rows-at-a-time quadratic program.

The upper bound on R_2 comes from looking at ``rho`` rows at a time: if
``a_i`` columns of a ``rho x s`` slice equal the i-th nonzero pattern, the
slice holds ``a C a^T / 2`` invertible 2x2 submatrices, so the maximum of
``z C z^T / 2`` over the probability simplex caps the density.

:func:`solve_simplex_qp` finds that maximum exactly. Every local maximizer
lies in the relative interior of some face of the simplex, where it solves
the stationarity system ``C_S z_S = mu 1, sum z_S = 1`` for the face's
support ``S``. All supports are enumerated; numpy screens them in floating
point and the surviving candidates are re-solved in exact rationals.
Supports whose system is singular are skipped: along a singular direction
the objective is constant, so the same value is reached on a smaller face.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .errors import BadT, RhoOutOfRange, STooSmall

__all__ = [
    "QpProblem",
    "QpSolution",
    "BoundMethod",
    "BoundReport",
    "r1_max",
    "r2_upper_basic",
    "build_qp",
    "solve_simplex_qp",
    "gamma",
    "r2_upper_qp",
    "n_t_meq_formula",
    "bound",
]

MAX_RHO = 4


def _clamp(x: Fraction) -> Fraction:
    return min(x, Fraction(1))


def r1_max(s: int) -> Fraction:
    """Maximum 1-density of an invertible s x s 0-1 matrix."""
    if s < 1:
        raise ValueError("s must be positive")
    return 1 - Fraction(s - 1, s * s)


def r2_upper_basic(s: int) -> Fraction:
    """Two-rows-at-a-time bound 2s / (3(s-1)), clamped to 1."""
    if s < 2:
        raise STooSmall("the 2-density needs s >= 2")
    return _clamp(Fraction(2 * s, 3 * (s - 1)))


@dataclass(frozen=True)
class QpProblem:
    rho: int
    C: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.C)

    def label(self, i: int) -> tuple[int, ...]:
        """Column pattern b_i (1-based label) as a tuple of rho bits."""
        return tuple((i >> (self.rho - 1 - k)) & 1 for k in range(self.rho))


@dataclass(frozen=True)
class QpSolution:
    gamma: Fraction
    z_star: tuple[Fraction, ...]
    candidates_checked: int = 0

    @property
    def support(self) -> tuple[int, ...]:
        """1-based labels of the nonzero coordinates."""
        return tuple(i + 1 for i, z in enumerate(self.z_star) if z)


def build_qp(rho: int) -> QpProblem:
    if not 2 <= rho <= MAX_RHO:
        raise RhoOutOfRange(f"rho={rho} outside the supported range [2, {MAX_RHO}]")
    dim = (1 << rho) - 1
    # b_i has the binary digits of i, most significant first
    vecs = [[(i >> (rho - 1 - k)) & 1 for k in range(rho)] for i in range(1, dim + 1)]
    C = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            bi, bj = vecs[i], vecs[j]
            n = sum((bi[a] & bj[b]) ^ (bj[a] & bi[b])
                    for a, b in combinations(range(rho), 2))
            C[i][j] = C[j][i] = n
    return QpProblem(rho, tuple(tuple(r) for r in C))


def _exact_kkt(C, support):
    """Solve the stationarity system on ``support`` in rationals; None if singular."""
    k = len(support)
    A = [[Fraction(C[i][j]) for j in support] + [Fraction(-1), Fraction(0)] for i in support]
    A.append([Fraction(1)] * k + [Fraction(0), Fraction(1)])
    n = k + 1
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        rowc = [x / pv for x in A[col]]
        A[col] = rowc
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], rowc)]
    z = [A[i][n] for i in range(k)]
    return z, A[k][n]


def _objective(C, z) -> Fraction:
    n = len(z)
    total = Fraction(0)
    for i in range(n):
        if z[i]:
            for j in range(n):
                if z[j] and C[i][j]:
                    total += C[i][j] * z[i] * z[j]
    return total / 2


def solve_simplex_qp(q: QpProblem, tol: float = 1e-9) -> QpSolution:
    """Global maximum of ``z C z^T / 2`` over the probability simplex.

    Cost is exponential in ``q.dim`` (all 2^dim - 1 supports are visited).
    Ties are broken towards the lexicographically smallest maximizer.
    """
    C = q.C
    n = q.dim
    Cf = np.asarray(C, dtype=float)
    candidates: list[tuple[int, ...]] = []
    scored: list[tuple[float, tuple[int, ...]]] = []
    near_singular: list[tuple[int, ...]] = []
    for k in range(1, n + 1):
        supports = np.array(list(combinations(range(n), k)), dtype=np.intp)
        m = len(supports)
        A = np.zeros((m, k + 1, k + 1))
        A[:, :k, :k] = Cf[supports[:, :, None], supports[:, None, :]]
        A[:, :k, k] = -1.0
        A[:, k, :k] = 1.0
        det = np.linalg.det(A)
        ok = np.abs(det) > 0.5  # integer matrix: nonzero determinant has |det| >= 1
        for idx in np.nonzero(~ok)[0]:
            near_singular.append(tuple(supports[idx]))
        if not ok.any():
            continue
        rhs = np.zeros((int(ok.sum()), k + 1, 1))
        rhs[:, k, 0] = 1.0
        sol = np.linalg.solve(A[ok], rhs)[:, :, 0]
        z = sol[:, :k]
        feasible = (z >= -tol).all(axis=1)
        vals = sol[:, k] / 2  # on the support, z C z^T = mu * sum(z) = mu
        for sup, val in zip(supports[ok][feasible], vals[feasible]):
            scored.append((float(val), tuple(sup)))
    # near-singular float systems are settled exactly
    for sup in near_singular:
        res = _exact_kkt(C, sup)
        if res is not None and all(x >= 0 for x in res[0]):
            scored.append((float(res[1]) / 2, sup))
    # vertices and edge midpoints
    for i in range(n):
        scored.append((0.0, (i,)))
        for j in range(i + 1, n):
            scored.append((C[i][j] / 4, (i, j)))
    best_float = max(v for v, _ in scored)
    candidates = sorted({sup for v, sup in scored if v >= best_float - 1e-7})

    best = None
    for sup in candidates:
        res = _exact_kkt(C, sup)
        if res is None:
            continue
        zs, _ = res
        if any(x < 0 for x in zs):
            continue
        z = [Fraction(0)] * n
        for i, x in zip(sup, zs):
            z[i] = x
        val = _objective(C, z)
        key = (val, tuple(-x for x in z))
        if best is None or key > best[0]:
            best = (key, val, tuple(z))
    assert best is not None
    return QpSolution(best[1], best[2], len(scored))


@lru_cache(maxsize=None)
def gamma(rho: int) -> Fraction:
    return solve_simplex_qp(build_qp(rho)).gamma


def r2_upper_qp(s: int, rho: int) -> Fraction:
    """Bound 4 gamma_rho / (rho (rho - 1)) * s / (s - 1), clamped to 1."""
    if not 2 <= rho <= MAX_RHO:
        raise RhoOutOfRange(f"rho={rho} outside [2, {MAX_RHO}]")
    if s < rho:
        raise STooSmall(f"need s >= rho, got s={s}, rho={rho}")
    return _clamp(Fraction(4) * gamma(rho) / (rho * (rho - 1)) * Fraction(s, s - 1))


def n_t_meq_formula(s: int, t: int) -> int:
    """Closed-form N_t for the all-ones-first-row matrix with zeros on the rest of the diagonal."""
    if not 1 <= t <= s - 1:
        raise BadT(f"t={t} outside [1, {s - 1}]")
    n = comb(s - 1, t - 1) * (1 + (s - t + 1) * (s - t))
    if t % 2 == 0:
        n += comb(s - 1, t)
    return n


class BoundMethod(str, enum.Enum):
    R1_EXACT = "r1_exact"
    R2_BASIC = "r2_basic"
    R2_QP = "r2_qp"


@dataclass(frozen=True)
class BoundReport:
    s: int
    method: BoundMethod
    value: Fraction
    rho: int | None = None

    def to_json(self) -> dict:
        out = {
            "s": self.s,
            "method": self.method.value,
            "value_num": self.value.numerator,
            "value_den": self.value.denominator,
            "value_float": round(float(self.value), 5),
        }
        if self.rho is not None:
            out["rho"] = self.rho
        return out


def bound(s: int, method: str, rho: int = 4) -> BoundReport:
    """Dispatch for the CLI: ``method`` is ``r1``, ``r2-basic`` or ``r2-qp``."""
    key = method.replace("-", "_")
    if key in ("r1", "r1_exact"):
        return BoundReport(s, BoundMethod.R1_EXACT, r1_max(s))
    if key in ("r2_basic",):
        return BoundReport(s, BoundMethod.R2_BASIC, r2_upper_basic(s))
    if key in ("r2_qp",):
        return BoundReport(s, BoundMethod.R2_QP, r2_upper_qp(s, rho), rho)
    raise ValueError(f"unknown bound method {method!r}")

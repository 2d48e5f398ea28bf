"""Matrix generators: Cauchy matrices over GF(q) and 0-1 matrices with many
invertible 2x2 submatrices (J - I, the near-identity complement family,
block doubling, symmetric designs and cyclotomic circulants)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, isqrt
from typing import Sequence

from .bounds import n_t_meq_formula
from .designs import (
    Design,
    complement_design,
    develop_difference_set,
    incidence_matrix,
    sbibd_invertible_parity,
    sbibd_r2,
    verify_bibd,
)
from .errors import (
    BadForm,
    BadResidueClass,
    FieldTooSmall,
    MTooSmall,
    NonIntegerResult,
    NotDistinct,
    SingularMatrix,
)
from .field import FiniteField, is_prime, primitive_root, two_squares_decomposition
from .gf2 import BinaryMatrix, Gf2Poly, circulant, gf2_rank_rows, is_invertible, poly_gcd

__all__ = [
    "FieldMatrix",
    "CyclotomyContext",
    "cauchy_matrix",
    "jsi_matrix",
    "meq_matrix",
    "doubled_matrix",
    "hadamard_design",
    "hadamard_matrix_qr",
    "pg3_design",
    "pg3_matrix",
    "lehmer_design",
    "lehmer_matrix",
    "cyclotomy_context",
    "cyclotomic_numbers",
    "cyclotomic_numbers_direct",
    "cyclotomic_pair_count",
    "cyclotomic_matrix",
    "cyclotomic_polynomial",
    "cyclotomic_is_invertible",
    "cyclotomic_n2_formula",
    "is_linear_t_aont",
]


@dataclass(frozen=True)
class FieldMatrix:
    """Square matrix over a finite field; entries are canonical ints."""

    field: FiniteField
    entries: tuple[tuple[int, ...], ...]

    @property
    def s(self) -> int:
        return len(self.entries)

    def rank(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> int:
        """Rank of the submatrix on 0-based ``rows`` x ``cols`` (default: all)."""
        F = self.field
        rows = range(self.s) if rows is None else rows
        cols = range(self.s) if cols is None else cols
        work = [[self.entries[r][c] for c in cols] for r in rows]
        n_rows, n_cols = len(work), len(work[0]) if work else 0
        rank = 0
        for col in range(n_cols):
            piv = next((r for r in range(rank, n_rows) if work[r][col]), None)
            if piv is None:
                continue
            work[rank], work[piv] = work[piv], work[rank]
            inv = F.inv(work[rank][col])
            pivot_row = [F.mul(inv, x) for x in work[rank]]
            work[rank] = pivot_row
            for r in range(n_rows):
                if r != rank and work[r][col]:
                    f = work[r][col]
                    work[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(work[r], pivot_row)]
            rank += 1
        return rank

    def is_invertible(self) -> bool:
        return self.rank() == self.s

    def inverse(self) -> "FieldMatrix":
        F = self.field
        s = self.s
        work = [list(r) + [int(i == j) for j in range(s)] for i, r in enumerate(self.entries)]
        for col in range(s):
            piv = next((r for r in range(col, s) if work[r][col]), None)
            if piv is None:
                raise SingularMatrix("matrix is singular over the field")
            work[col], work[piv] = work[piv], work[col]
            inv = F.inv(work[col][col])
            work[col] = [F.mul(inv, x) for x in work[col]]
            for r in range(s):
                if r != col and work[r][col]:
                    f = work[r][col]
                    work[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(work[r], work[col])]
        return FieldMatrix(F, tuple(tuple(r[s:]) for r in work))

    def vec_mul(self, x: Sequence[int]) -> list[int]:
        """Row vector ``x`` times this matrix."""
        F = self.field
        out = [0] * self.s
        for xi, row in zip(x, self.entries):
            if xi:
                for j, e in enumerate(row):
                    out[j] = F.add(out[j], F.mul(xi, e))
        return out


def cauchy_matrix(field: FiniteField, a: Sequence[int] | None = None,
                  b: Sequence[int] | None = None, s: int | None = None) -> FieldMatrix:
    """``c_ij = 1 / (a_i - b_j)``. Defaults: ``a = 0..s-1``, ``b = s..2s-1``."""
    if a is None or b is None:
        if s is None:
            raise ValueError("give either a and b, or s")
        if field.order < 2 * s:
            raise FieldTooSmall(f"need q >= 2s = {2 * s}, field has q = {field.order}")
        a = list(range(s)) if a is None else list(a)
        b = list(range(s, 2 * s)) if b is None else list(b)
    a, b = [int(x) for x in a], [int(x) for x in b]
    if len(a) != len(b):
        raise ValueError("a and b must have the same length")
    s = len(a)
    if field.order < 2 * s:
        raise FieldTooSmall(f"need q >= 2s = {2 * s}, field has q = {field.order}")
    if any(not 0 <= x < field.order for x in a + b):
        raise ValueError("elements must be canonical field values")
    if len(set(a + b)) != 2 * s:
        raise NotDistinct("a_1..a_s, b_1..b_s must be 2s distinct elements")
    F = field
    entries = tuple(tuple(F.inv(F.sub(ai, bj)) for bj in b) for ai in a)
    return FieldMatrix(field, entries)


def jsi_matrix(s: int) -> BinaryMatrix:
    """J_s - I_s."""
    full = (1 << s) - 1
    return BinaryMatrix([full ^ (1 << i) for i in range(s)], s)


def meq_matrix(s: int) -> BinaryMatrix:
    """All-ones first row, then zeros at (i, i) for i >= 2 (1-based)."""
    full = (1 << s) - 1
    return BinaryMatrix([full] + [full ^ (1 << i) for i in range(1, s)], s)


def doubled_matrix() -> BinaryMatrix:
    """8x8 block matrix ``[[A, A], [A, J_4]]`` with ``A = J_4 - I_4``."""
    a = jsi_matrix(4).rows
    j4 = 0b1111
    top = [r | (r << 4) for r in a]
    bottom = [r | (j4 << 4) for r in a]
    return BinaryMatrix(top + bottom, 8)


def _quadratic_residues(p: int) -> set[int]:
    return {(x * x) % p for x in range(1, p)}


def hadamard_design(p: int) -> Design:
    """Quadratic-residue difference-set design, a (p, (p-1)/2, (p-3)/4)-SBIBD for p = 3 mod 4."""
    if not is_prime(p) or p % 4 != 3:
        raise BadResidueClass(f"{p} is not a prime congruent to 3 mod 4")
    return develop_difference_set(_quadratic_residues(p), p)


def hadamard_matrix_qr(p: int) -> BinaryMatrix:
    """Incidence matrix of :func:`hadamard_design`; invertible iff p = 3 mod 8."""
    return incidence_matrix(hadamard_design(p))


def _pg3_points(m: int) -> list[tuple[int, ...]]:
    # normalized: first nonzero coordinate is 1; lexicographic order
    return [v for v in product(range(3), repeat=m + 1)
            if any(v) and next(x for x in v if x) == 1]


def pg3_design(m: int) -> Design:
    """Complement of the points/hyperplanes design of PG(m, 3).

    Parameters ((3^(m+1) - 1)/2, 3^m, 2 * 3^(m-1)). Block ``j`` is the set of
    points *off* the j-th hyperplane.
    """
    if m < 2:
        raise MTooSmall(f"m={m}; need m >= 2")
    pts = _pg3_points(m)
    blocks = []
    for h in pts:
        blocks.append(tuple(i for i, x in enumerate(pts)
                            if sum(a * b for a, b in zip(x, h)) % 3 != 0))
    return Design(len(pts), tuple(blocks))


def pg3_matrix(m: int) -> BinaryMatrix:
    return incidence_matrix(pg3_design(m))


def pg3_r2_formula(m: int) -> Fraction:
    return Fraction(40 * 3 ** (2 * m - 3), (3 ** (m + 1) - 1) * (3 ** m - 1))


def _lehmer_t(q: int) -> int:
    if q < 13 or (q - 9) % 4:
        raise BadForm(f"{q} is not of the form 4t^2 + 9")
    t2 = (q - 9) // 4
    t = isqrt(t2)
    if t * t != t2 or t % 2 == 0:
        raise BadForm(f"{q} is not of the form 4t^2 + 9 with t odd")
    if not is_prime(q):
        raise BadForm(f"{q} is not prime")
    return t


def lehmer_design(q: int) -> Design:
    """Complement of the development of (quartic residues mod q) plus 0."""
    _lehmer_t(q)
    base = {pow(x, 4, q) for x in range(1, q)} | {0}
    return complement_design(develop_difference_set(base, q))


def lehmer_matrix(q: int) -> BinaryMatrix:
    """Incidence matrix of a (q, 3(q-1)/4, 3(3q-7)/16)-SBIBD."""
    return incidence_matrix(lehmer_design(q))


# cyclotomy of order 4

@dataclass(frozen=True)
class CyclotomyContext:
    p: int
    f: int
    nu: int
    classes: tuple[tuple[int, ...], ...]
    alpha: int
    beta: int

    def class_of(self, x: int) -> int:
        """Index j with x in C_j."""
        x %= self.p
        for j, cls in enumerate(self._class_sets):
            if x in cls:
                return j
        raise ValueError("0 lies in no cyclotomic class")

    @property
    def _class_sets(self) -> tuple[frozenset, ...]:
        cache = self.__dict__.get("_sets")
        if cache is None:
            cache = tuple(frozenset(c) for c in self.classes)
            object.__setattr__(self, "_sets", cache)
        return cache


def cyclotomy_context(p: int) -> CyclotomyContext:
    if not is_prime(p) or p % 8 != 1:
        raise BadResidueClass(f"{p} is not a prime congruent to 1 mod 8")
    f = (p - 1) // 4
    nu = primitive_root(p)
    classes = tuple(tuple(pow(nu, 4 * i + j, p) for i in range(f)) for j in range(4))
    alpha, beta = two_squares_decomposition(p, nu, f)
    return CyclotomyContext(p, f, nu, classes, alpha, beta)


def _exact_div(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise NonIntegerResult(f"{what}: {num}/{den} is not an integer")
    return q


def cyclotomic_numbers(ctx: CyclotomyContext) -> tuple[int, int, int, int]:
    """Closed-form (j, j) for j = 0..3."""
    p, a, b = ctx.p, ctx.alpha, ctx.beta
    return (
        _exact_div(p - 11 - 6 * a, 16, "A0"),
        _exact_div(p - 3 + 2 * a - 4 * b, 16, "A1"),
        _exact_div(p - 3 + 2 * a, 16, "A2"),
        _exact_div(p - 3 + 2 * a + 4 * b, 16, "A3"),
    )


def cyclotomic_numbers_direct(ctx: CyclotomyContext) -> tuple[int, int, int, int]:
    """|C_j intersect (1 + C_j)| by set intersection."""
    p = ctx.p
    out = []
    for cls in ctx.classes:
        members = set(cls)
        out.append(sum(1 for x in cls if (x + 1) % p in members))
    return tuple(out)


def cyclotomic_pair_count(ctx: CyclotomyContext, d: int, numbers=None) -> int:
    """Invertible 2x2 count for rows 0 and d of :func:`cyclotomic_matrix`."""
    if numbers is None:
        numbers = cyclotomic_numbers(ctx)
    # d^{-1} C_0 = C_j  <=>  d^{-1} in C_j
    j = ctx.class_of(pow(d, -1, ctx.p))
    a = numbers[j]
    f = ctx.f
    return 5 * f * f + 2 * f - a * (4 * f + 2 + a)


def cyclotomic_polynomial(ctx: CyclotomyContext) -> Gf2Poly:
    """Row polynomial m(x) of the complemented C_0 circulant."""
    c0 = set(ctx.classes[0])
    return Gf2Poly(sum(1 << i for i in range(ctx.p) if i not in c0))


def cyclotomic_matrix(ctx: CyclotomyContext) -> BinaryMatrix:
    """Complement of the circulant with ``m'_ij = 1`` iff ``j - i`` is in C_0."""
    return circulant(cyclotomic_polynomial(ctx), ctx.p)


def cyclotomic_is_invertible(ctx: CyclotomyContext) -> bool:
    m = cyclotomic_polynomial(ctx)
    return poly_gcd(m, Gf2Poly((1 << ctx.p) | 1)).bits == 1


def cyclotomic_n2_formula(ctx: CyclotomyContext) -> int:
    f, a, b = ctx.f, ctx.alpha, ctx.beta
    inner = 252 * f * f + 168 * f + 25 - 3 * a * a - 2 * b * b - 6 * a
    return _exact_div(comb(ctx.p, 2) * inner, 64, "N_2 formula")


def is_linear_t_aont(m: FieldMatrix | BinaryMatrix, t: int) -> bool:
    """True iff every t x t submatrix of the invertible matrix ``m`` is invertible."""
    s = m.s
    if not 1 <= t <= s:
        raise ValueError(f"t={t} outside [1, {s}]")
    if isinstance(m, BinaryMatrix):
        if not is_invertible(m):
            raise SingularMatrix("the transform matrix must be invertible")
        masks = [sum(1 << c for c in cs) for cs in combinations(range(s), t)]
        for rows in combinations(range(s), t):
            picked = [m.rows[r] for r in rows]
            for mask in masks:
                if gf2_rank_rows([r & mask for r in picked]) < t:
                    return False
        return True
    if not m.is_invertible():
        raise SingularMatrix("the transform matrix must be invertible")
    col_sets = list(combinations(range(s), t))
    for rows in combinations(range(s), t):
        for cols in col_sets:
            if m.rank(rows, cols) < t:
                return False
    return True


def predicted_metrics(family: str, **kw) -> dict:
    """Closed-form predictions recorded alongside a constructed matrix."""
    out: dict = {"family": family}
    if family == "meq":
        s = kw["s"]
        if s >= 3:
            out["n2_predicted"] = n_t_meq_formula(s, 2)
    elif family in ("hadamard", "pg3", "lehmer"):
        d = kw["design"]
        params = verify_bibd(d)
        out["design"] = list(params.as_tuple())
        out["invertible_predicted"] = sbibd_invertible_parity(params)
        if out["invertible_predicted"]:
            r2 = sbibd_r2(params)
            out["r2_predicted"] = f"{r2.numerator}/{r2.denominator}"
            out["n2_predicted"] = comb(params.v, 2) * (params.k ** 2 - params.lam ** 2)
    elif family == "cyclotomy":
        ctx = kw["ctx"]
        out.update(p=ctx.p, nu=ctx.nu, alpha=ctx.alpha, beta=ctx.beta,
                   cyclotomic_numbers=list(cyclotomic_numbers(ctx)),
                   n2_predicted=cyclotomic_n2_formula(ctx),
                   invertible_predicted=cyclotomic_is_invertible(ctx))
    elif family == "jsi":
        s = kw["s"]
        out["invertible_predicted"] = s % 2 == 0
        # each row pair has a1 = a2 = 1, a3 = s - 2
        out["n2_predicted"] = comb(s, 2) * (2 * s - 3)
    return out

"""Bit-packed 0-1 matrices and polynomials over GF(2).

Rows are Python ints: bit ``j`` of ``rows[i]`` is the entry in row ``i``,
column ``j`` (both 0-based internally). Index-set APIs such as
:func:`submatrix` take 1-based indices.

Submatrix convention: ``submatrix(M, I, J)`` selects *columns* ``I`` and
*rows* ``J``. This is the transpose of the usual (rows, cols) order and is
kept on purpose so that ``I`` always indexes inputs and ``J`` outputs of the
transform ``x = y M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BothZero, IndexOutOfRange, NotInvertible, ParseError, SingularMatrix

__all__ = [
    "BinaryMatrix",
    "SubmatrixIndex",
    "Gf2Poly",
    "rank",
    "is_invertible",
    "invert",
    "submatrix",
    "is_invertible_2x2",
    "poly_gcd",
    "poly_inverse_mod",
    "circulant",
    "gf2_rank_rows",
]


def gf2_rank_rows(rows: Iterable[int]) -> int:
    """Rank over GF(2) of a list of int bit-vectors."""
    # xor basis keyed by leading bit
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = r
                break
            r ^= b
    return len(basis)


class BinaryMatrix:
    """Immutable square 0-1 matrix stored as ``s`` int bit-rows."""

    __slots__ = ("_s", "_rows", "_hash")

    def __init__(self, rows: Sequence[int], s: int | None = None):
        rows = tuple(int(r) for r in rows)
        if s is None:
            s = len(rows)
        if s < 1 or len(rows) != s:
            raise ValueError(f"need exactly s={s} rows, got {len(rows)}")
        limit = 1 << s
        for r in rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row value {r} does not fit in {s} bits")
        self._s = s
        self._rows = rows
        self._hash = None

    # construction helpers

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BinaryMatrix":
        s = len(entries)
        rows = []
        for i, row in enumerate(entries):
            if len(row) != s:
                raise ValueError(f"row {i} has length {len(row)}, expected {s}")
            v = 0
            for j, e in enumerate(row):
                if e not in (0, 1):
                    raise ValueError(f"entry ({i},{j}) = {e!r} is not 0 or 1")
                v |= int(e) << j
            rows.append(v)
        return cls(rows, s)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BinaryMatrix":
        return cls.from_lists([[int(c) for c in line.strip()] for line in lines])

    @classmethod
    def identity(cls, s: int) -> "BinaryMatrix":
        return cls([1 << i for i in range(s)], s)

    @classmethod
    def ones(cls, s: int) -> "BinaryMatrix":
        return cls([(1 << s) - 1] * s, s)

    @classmethod
    def zeros(cls, s: int) -> "BinaryMatrix":
        return cls([0] * s, s)

    @classmethod
    def from_numpy(cls, arr) -> "BinaryMatrix":
        return cls.from_lists(arr.astype(int).tolist())

    # basic accessors

    @property
    def s(self) -> int:
        return self._s

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self._s and 0 <= j < self._s):
            raise IndexOutOfRange(f"entry ({i},{j}) outside a {self._s}x{self._s} matrix")
        return (self._rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        s = self._s
        return [[(r >> j) & 1 for j in range(s)] for r in self._rows]

    def to_numpy(self):
        import numpy as np

        return np.array(self.to_lists(), dtype=np.uint8)

    def row_string(self, i: int) -> str:
        r = self._rows[i]
        return "".join("1" if (r >> j) & 1 else "0" for j in range(self._s))

    def __eq__(self, other):
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self._s == other._s and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._s, self._rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(self.row_string(i) for i in range(self._s))
        return f"BinaryMatrix({body})"

    def __str__(self):
        return "\n".join(self.row_string(i) for i in range(self._s))

    def ones_count(self) -> int:
        return sum(r.bit_count() for r in self._rows)

    # algebra

    def transpose(self) -> "BinaryMatrix":
        s = self._s
        cols = [0] * s
        for i, r in enumerate(self._rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BinaryMatrix(cols, s)

    def __matmul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        if other._s != self._s:
            raise ValueError("order mismatch")
        out = []
        orows = other._rows
        for r in self._rows:
            acc = 0
            k = 0
            while r:
                if r & 1:
                    acc ^= orows[k]
                r >>= 1
                k += 1
            out.append(acc)
        return BinaryMatrix(out, self._s)

    def __add__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        if other._s != self._s:
            raise ValueError("order mismatch")
        return BinaryMatrix([a ^ b for a, b in zip(self._rows, other._rows)], self._s)

    __sub__ = __add__

    def complement(self) -> "BinaryMatrix":
        full = (1 << self._s) - 1
        return BinaryMatrix([full ^ r for r in self._rows], self._s)

    def permute(self, row_perm: Sequence[int] | None = None,
                col_perm: Sequence[int] | None = None) -> "BinaryMatrix":
        """New matrix with ``new[i][j] = old[row_perm[i]][col_perm[j]]`` (0-based)."""
        s = self._s
        rows = self._rows if row_perm is None else [self._rows[k] for k in row_perm]
        if col_perm is not None:
            rows = [sum(((r >> c) & 1) << j for j, c in enumerate(col_perm)) for r in rows]
        return BinaryMatrix(rows, s)

    def vec_mul(self, x: int) -> int:
        """Row vector times matrix: ``x`` is a bit-vector over the rows."""
        acc = 0
        k = 0
        rows = self._rows
        while x:
            if x & 1:
                acc ^= rows[k]
            x >>= 1
            k += 1
        return acc

    # bmat/1 text format

    def to_bmat(self, comments: Iterable[str] = ()) -> str:
        lines = [str(self._s)] + [self.row_string(i) for i in range(self._s)]
        lines += ["# " + c for c in comments]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_bmat(cls, text: str) -> "BinaryMatrix":
        lines = text.splitlines()
        it = iter(enumerate(lines, 1))
        header = None
        for lineno, line in it:
            if line.strip():
                header = (lineno, line.strip())
                break
        if header is None:
            raise ParseError("empty matrix file", 1)
        lineno, first = header
        try:
            s = int(first)
        except ValueError:
            raise ParseError(f"expected order s, got {first!r}", lineno) from None
        if s < 1:
            raise ParseError(f"order must be positive, got {s}", lineno)
        rows = []
        for lineno, line in it:
            if len(rows) == s:
                if line.strip() and not line.lstrip().startswith("#"):
                    raise ParseError("unexpected content after matrix rows", lineno)
                continue
            text_row = line.strip()
            if len(text_row) != s or set(text_row) - {"0", "1"}:
                raise ParseError(f"expected {s} characters from {{0,1}}, got {text_row!r}", lineno)
            rows.append(sum(1 << j for j, c in enumerate(text_row) if c == "1"))
        if len(rows) != s:
            raise ParseError(f"expected {s} rows, found {len(rows)}", len(lines))
        return cls(rows, s)


@dataclass(frozen=True)
class SubmatrixIndex:
    """1-based index sets; ``cols`` selects columns (I) and ``rows`` selects rows (J)."""

    cols: tuple[int, ...]
    rows: tuple[int, ...]

    def __post_init__(self):
        cols = tuple(sorted(self.cols))
        rows = tuple(sorted(self.rows))
        if len(cols) != len(rows):
            raise IndexOutOfRange(f"|I|={len(cols)} differs from |J|={len(rows)}")
        if len(set(cols)) != len(cols) or len(set(rows)) != len(rows):
            raise IndexOutOfRange("duplicate index")
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "rows", rows)

    def validate(self, s: int) -> None:
        for k in self.cols + self.rows:
            if not 1 <= k <= s:
                raise IndexOutOfRange(f"index {k} outside [1, {s}]")


def rank(m: BinaryMatrix) -> int:
    return gf2_rank_rows(m.rows)


def is_invertible(m: BinaryMatrix) -> bool:
    return gf2_rank_rows(m.rows) == m.s


def invert(m: BinaryMatrix) -> BinaryMatrix:
    """Gauss-Jordan inverse over GF(2); raises :class:`SingularMatrix`."""
    s = m.s
    work = list(m.rows)
    inv = [1 << i for i in range(s)]
    for col in range(s):
        bit = 1 << col
        pivot = next((r for r in range(col, s) if work[r] & bit), None)
        if pivot is None:
            raise SingularMatrix(f"matrix has rank < {s}")
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        pr, pi = work[col], inv[col]
        for r in range(s):
            if r != col and work[r] & bit:
                work[r] ^= pr
                inv[r] ^= pi
    return BinaryMatrix(inv, s)


def submatrix(m: BinaryMatrix, idx: SubmatrixIndex) -> BinaryMatrix:
    """``M(I, J)``: rows ``idx.rows`` and columns ``idx.cols`` (1-based, sorted)."""
    idx.validate(m.s)
    out = []
    for j in idx.rows:
        r = m.rows[j - 1]
        out.append(sum(((r >> (c - 1)) & 1) << b for b, c in enumerate(idx.cols)))
    return BinaryMatrix(out, len(idx.rows))


def is_invertible_2x2(a: int, b: int, c: int, d: int) -> bool:
    """Invertibility of ``[[a, b], [c, d]]`` over GF(2)."""
    return ((a & d) ^ (b & c)) == 1


# Polynomials over GF(2)

@dataclass(frozen=True)
class Gf2Poly:
    """Polynomial over GF(2); bit ``i`` of ``bits`` is the coefficient of x^i."""

    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("coefficient vector must be nonnegative")

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "Gf2Poly":
        v = 0
        for e in exps:
            v ^= 1 << e
        return cls(v)

    @classmethod
    def from_bitstring(cls, text: str) -> "Gf2Poly":
        text = text.strip()
        if set(text) - {"0", "1"}:
            raise ParseError(f"polynomial bit-string must be 0/1, got {text!r}")
        return cls(sum(1 << i for i, c in enumerate(text) if c == "1"))

    def to_bitstring(self, length: int | None = None) -> str:
        n = max(self.bits.bit_length(), 1) if length is None else length
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(n))

    @property
    def degree(self) -> int | None:
        """Degree, or ``None`` for the zero polynomial."""
        return self.bits.bit_length() - 1 if self.bits else None

    def is_zero(self) -> bool:
        return self.bits == 0

    def exponents(self) -> list[int]:
        return [i for i in range(self.bits.bit_length()) if (self.bits >> i) & 1]

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_clmul(self.bits, other.bits))

    def __divmod__(self, other: "Gf2Poly") -> tuple["Gf2Poly", "Gf2Poly"]:
        q, r = _divmod(self.bits, other.bits)
        return Gf2Poly(q), Gf2Poly(r)

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(_divmod(self.bits, other.bits)[1])

    def __str__(self):
        if not self.bits:
            return "0"
        terms = []
        for e in self.exponents():
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return " + ".join(terms)


def _clmul(a: int, b: int) -> int:
    if a.bit_length() < b.bit_length():
        a, b = b, a
    acc = 0
    while b:
        low = b & -b
        acc ^= a << (low.bit_length() - 1)
        b ^= low
    return acc


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def poly_gcd(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    x, y = a.bits, b.bits
    if x == 0 and y == 0:
        raise BothZero("gcd(0, 0) is undefined")
    while y:
        x, y = y, _divmod(x, y)[1]
    return Gf2Poly(x)


def poly_inverse_mod(m: Gf2Poly, p: int) -> Gf2Poly:
    """Inverse of ``m`` in GF(2)[x] / (x^p - 1) by the extended Euclidean algorithm."""
    if p < 1:
        raise ValueError("p must be positive")
    mod = (1 << p) | 1
    # reduce m modulo x^p - 1 first: x^(p+k) = x^k
    r0, r1 = mod, _divmod(m.bits, mod)[1]
    s0, s1 = 0, 1
    while r1:
        q, r = _divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 ^ _clmul(q, s1)
    if r0 != 1:
        raise NotInvertible(f"gcd(m(x), x^{p} - 1) = {Gf2Poly(r0)} is not 1")
    return Gf2Poly(_divmod(s0, mod)[1])


def circulant(first_row: Sequence[int] | Gf2Poly, p: int | None = None) -> BinaryMatrix:
    """Circulant matrix whose row ``i`` is ``first_row`` cyclically shifted right by ``i``."""
    if isinstance(first_row, Gf2Poly):
        if p is None:
            raise ValueError("p is required when passing a polynomial")
        v = _divmod(first_row.bits, (1 << p) | 1)[1]
    else:
        bits = list(first_row)
        if p is None:
            p = len(bits)
        if len(bits) != p:
            raise ValueError("first row length must equal p")
        v = sum(1 << j for j, e in enumerate(bits) if e)
    if p < 1:
        raise ValueError("p must be positive")
    full = (1 << p) - 1
    rows = []
    for i in range(p):
        rows.append(((v << i) | (v >> (p - i))) & full if i else v)
    return BinaryMatrix(rows, p)

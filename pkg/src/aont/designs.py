"""(v, k, lambda)-BIBDs: verification, difference-set development, complements,
and the bridge from symmetric designs to invertible 0-1 matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import NotBalanced, NotSymmetric, ParityViolation, ParseError, UnequalBlockSizes
from .gf2 import BinaryMatrix

__all__ = [
    "Design",
    "DesignParams",
    "verify_bibd",
    "develop_difference_set",
    "complement_design",
    "incidence_matrix",
    "incidence_array",
    "sbibd_invertible_parity",
    "sbibd_r2",
]


@dataclass(frozen=True)
class Design:
    """Points are ``0..v-1``; blocks are stored as sorted tuples in the given order."""

    v: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        for b in blocks:
            if len(set(b)) != len(b):
                raise ValueError(f"block {b} repeats a point")
            if b and not (0 <= b[0] and b[-1] < self.v):
                raise ValueError(f"block {b} has points outside 0..{self.v - 1}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def k(self) -> int:
        sizes = {len(b) for b in self.blocks}
        if len(sizes) != 1:
            raise UnequalBlockSizes(f"block sizes {sorted(sizes)}")
        return sizes.pop()

    def to_text(self) -> str:
        """``bibd/1`` format: header ``v k b`` then one block per line."""
        lines = [f"{self.v} {self.k} {self.b}"]
        lines += [" ".join(map(str, blk)) for blk in self.blocks]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Design":
        lines = [(n, ln.strip()) for n, ln in enumerate(text.splitlines(), 1)
                 if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines:
            raise ParseError("empty design file", 1)
        n0, header = lines[0]
        try:
            v, k, b = (int(x) for x in header.split())
        except ValueError:
            raise ParseError(f"expected header 'v k b', got {header!r}", n0) from None
        blocks = []
        for n, ln in lines[1:]:
            try:
                blk = [int(x) for x in ln.split()]
            except ValueError:
                raise ParseError(f"non-integer point in {ln!r}", n) from None
            if len(blk) != k:
                raise ParseError(f"block has {len(blk)} points, header says k={k}", n)
            if any(not 0 <= x < v for x in blk):
                raise ParseError(f"point outside 0..{v - 1}", n)
            blocks.append(blk)
        if len(blocks) != b:
            raise ParseError(f"header says b={b} blocks, found {len(blocks)}", lines[-1][0])
        return cls(v, tuple(tuple(x) for x in blocks))


@dataclass(frozen=True)
class DesignParams:
    v: int
    b: int
    r: int
    k: int
    lam: int

    @property
    def symmetric(self) -> bool:
        return self.v == self.b

    @classmethod
    def symmetric_params(cls, v: int, k: int, lam: int) -> "DesignParams":
        if lam * (v - 1) != k * (k - 1):
            raise NotSymmetric(f"lambda(v-1) != k(k-1) for ({v},{k},{lam})")
        return cls(v, v, k, k, lam)

    def as_tuple(self) -> tuple[int, int, int]:
        return self.v, self.k, self.lam


def verify_bibd(d: Design, lam: int | None = None) -> DesignParams:
    """Certify that every pair of points lies in exactly ``lam`` blocks.

    With ``lam=None`` the multiplicity of the pair {0, 1} is taken as the claim.
    """
    if not d.blocks:
        raise ValueError("design has no blocks")
    k = d.k
    v = d.v
    counts = [[0] * v for _ in range(v)]
    replication = [0] * v
    for blk in d.blocks:
        for x in blk:
            replication[x] += 1
        for x, y in combinations(blk, 2):
            counts[x][y] += 1
    if lam is None:
        lam = counts[0][1] if v > 1 else 0
    for x in range(v):
        for y in range(x + 1, v):
            if counts[x][y] != lam:
                raise NotBalanced(
                    f"pair ({x},{y}) occurs in {counts[x][y]} blocks, expected {lam}", (x, y))
    r = replication[0]
    if any(rep != r for rep in replication):
        raise NotBalanced("points have unequal replication")
    return DesignParams(v, d.b, r, k, lam)


def develop_difference_set(base: Iterable[int], p: int) -> Design:
    """Blocks ``base + i (mod p)`` for ``i = 0..p-1``, in translate order."""
    base = sorted({x % p for x in base})
    return Design(p, tuple(tuple((x + i) % p for x in base) for i in range(p)))


def complement_design(d: Design) -> Design:
    pts = set(range(d.v))
    return Design(d.v, tuple(tuple(sorted(pts - set(b))) for b in d.blocks))


def incidence_matrix(d: Design) -> BinaryMatrix:
    """``m[i][j] = 1`` iff point ``i`` lies in block ``j``; square designs only.

    Non-square incidence matrices are available from :func:`incidence_array`.
    """
    if d.b != d.v:
        raise NotSymmetric(f"incidence matrix is {d.v}x{d.b}, not square")
    rows = [0] * d.v
    for j, blk in enumerate(d.blocks):
        for x in blk:
            rows[x] |= 1 << j
    return BinaryMatrix(rows, d.v)


def incidence_array(d: Design) -> np.ndarray:
    """v x b incidence matrix as a uint8 array (any design)."""
    out = np.zeros((d.v, d.b), dtype=np.uint8)
    for j, blk in enumerate(d.blocks):
        out[list(blk), j] = 1
    return out


def _as_params(params) -> DesignParams:
    if isinstance(params, DesignParams):
        return params
    v, k, lam = params
    return DesignParams.symmetric_params(v, k, lam)


def sbibd_invertible_parity(params: DesignParams | Sequence[int]) -> bool:
    """GF(2)-invertibility of a symmetric design's incidence matrix: k odd and lambda even.

    Follows from det(M)^2 = k^2 (k - lambda)^(v-1) over the integers.
    """
    p = _as_params(params)
    if not p.symmetric:
        raise NotSymmetric(f"v={p.v} != b={p.b}")
    return p.k % 2 == 1 and p.lam % 2 == 0


def sbibd_r2(params: DesignParams | Sequence[int]) -> Fraction:
    """2-density (k^2 - lambda^2) / C(v, 2) of an invertible symmetric design's incidence matrix."""
    p = _as_params(params)
    if not sbibd_invertible_parity(p):
        raise ParityViolation(f"({p.v},{p.k},{p.lam}) needs k odd and lambda even")
    return Fraction(p.k ** 2 - p.lam ** 2, comb(p.v, 2))

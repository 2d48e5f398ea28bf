"""Linear AONT codec and the array view of general transforms.

The codec works on words of ``word_bits`` bits with a 0-1 matrix ``M``:
``y = x M^{-1}`` encodes and ``x = y M`` decodes, so each output word is an
XOR of input words.

An ``(N, k, v)``-array is unbiased on a column set ``D`` when every
``|D|``-tuple appears exactly ``N / v^|D|`` times among the rows restricted
to ``D``. A bijection ``phi`` on ``X^s`` is a t-AONT exactly when the array
of rows ``(x, phi(x))`` is unbiased on the input block, the output block and
every ``I + (outputs - J)`` with ``|I| = |J| = t``.
"""

from __future__ import annotations

import itertools
import struct
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .constructions import FieldMatrix
from .errors import BadShape, NotBijective, ParseError, WordOverflow
from .gf2 import BinaryMatrix, invert

__all__ = [
    "AontCodec",
    "AontArray",
    "encode",
    "decode",
    "aont_to_array",
    "linear_aont_array",
    "check_unbiased",
    "verify_t_aont_array",
    "check_orthogonal_array",
]

TRAILER = struct.Struct("<Q")


class AontCodec:
    """Binary linear AONT over ``word_bits``-bit words."""

    def __init__(self, matrix: BinaryMatrix, word_bits: int = 8):
        if word_bits < 1:
            raise ValueError("word_bits must be positive")
        self.matrix = matrix
        self.inverse = invert(matrix)
        self.word_bits = word_bits
        s = matrix.s
        # output i of x -> x A is the XOR of x_j over rows j with A[j][i] = 1
        self._enc_masks = self.inverse.transpose().rows
        self._dec_masks = matrix.transpose().rows
        self._s = s

    @property
    def s(self) -> int:
        return self._s

    def _apply(self, masks, words: Sequence[int]) -> list[int]:
        if len(words) != self._s:
            raise ValueError(f"expected {self._s} words, got {len(words)}")
        limit = 1 << self.word_bits
        for w in words:
            if not 0 <= w < limit:
                raise WordOverflow(f"word {w} does not fit in {self.word_bits} bits")
        out = []
        for mask in masks:
            acc = 0
            j = 0
            while mask:
                if mask & 1:
                    acc ^= words[j]
                mask >>= 1
                j += 1
            out.append(acc)
        return out

    def encode(self, x: Sequence[int]) -> list[int]:
        return self._apply(self._enc_masks, x)

    def decode(self, y: Sequence[int]) -> list[int]:
        return self._apply(self._dec_masks, y)

    # byte streams: words are word_bits/8 bytes, chunks are s words

    def _apply_bytes(self, masks, data: bytes) -> bytes:
        wb = self.word_bits // 8
        arr = np.frombuffer(data, dtype=np.uint8).reshape(-1, self._s, wb)
        out = np.zeros_like(arr)
        for i, mask in enumerate(masks):
            for j in range(self._s):
                if (mask >> j) & 1:
                    out[:, i, :] ^= arr[:, j, :]
        return out.tobytes()

    def encode_bytes(self, data: bytes) -> bytes:
        """Encode, zero-padding the last chunk; an 8-byte little-endian length trailer is appended."""
        if self.word_bits % 8:
            raise ValueError("byte streams need word_bits to be a multiple of 8")
        chunk = self._s * self.word_bits // 8
        pad = (-len(data)) % chunk
        body = self._apply_bytes(self._enc_masks, data + b"\0" * pad)
        return body + TRAILER.pack(len(data))

    def decode_bytes(self, blob: bytes) -> bytes:
        if self.word_bits % 8:
            raise ValueError("byte streams need word_bits to be a multiple of 8")
        if len(blob) < TRAILER.size:
            raise ParseError("input shorter than the length trailer")
        chunk = self._s * self.word_bits // 8
        body, trailer = blob[:-TRAILER.size], blob[-TRAILER.size:]
        if len(body) % chunk:
            raise ParseError(f"payload length {len(body)} is not a multiple of {chunk}")
        (length,) = TRAILER.unpack(trailer)
        if length > len(body):
            raise ParseError("trailer length exceeds payload")
        return self._apply_bytes(self._dec_masks, body)[:length]


def encode(codec: AontCodec, x: Sequence[int]) -> list[int]:
    return codec.encode(x)


def decode(codec: AontCodec, y: Sequence[int]) -> list[int]:
    return codec.decode(y)


@dataclass(frozen=True)
class AontArray:
    """(N, k, v)-array; ``cells`` has shape (N, k) with symbols in ``range(v)``."""

    cells: np.ndarray
    v: int

    def __post_init__(self):
        cells = np.asarray(self.cells)
        if cells.ndim != 2:
            raise BadShape("array must be two-dimensional")
        if cells.size and (cells.min() < 0 or cells.max() >= self.v):
            raise BadShape(f"symbols must lie in [0, {self.v})")
        object.__setattr__(self, "cells", cells.astype(np.int64))

    @property
    def n_rows(self) -> int:
        return self.cells.shape[0]

    @property
    def width(self) -> int:
        return self.cells.shape[1]

    @property
    def alphabet_size(self) -> int:
        return self.v

    def to_tsv(self) -> str:
        lines = [f"{self.n_rows} {self.width} {self.v}"]
        lines += ["\t".join(str(int(x)) for x in row) for row in self.cells]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str) -> "AontArray":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty array file", 1)
        try:
            n, k, v = (int(x) for x in lines[0].split())
        except ValueError:
            raise ParseError(f"expected header 'N k v', got {lines[0]!r}", 1) from None
        rows = []
        for lineno, ln in enumerate(lines[1:], 2):
            try:
                row = [int(x) for x in ln.split()]
            except ValueError:
                raise ParseError(f"non-integer symbol in {ln!r}", lineno) from None
            if len(row) != k:
                raise ParseError(f"row has {len(row)} symbols, expected {k}", lineno)
            rows.append(row)
        if len(rows) != n:
            raise ParseError(f"header says N={n}, found {len(rows)} rows", len(lines))
        return cls(np.array(rows, dtype=np.int64).reshape(n, k), v)


def aont_to_array(phi: Callable[[tuple], Sequence[int]] | Mapping[tuple, Sequence[int]],
                  s: int, v: int) -> AontArray:
    """Rows ``(x, phi(x))`` for all ``x`` in ``range(v)^s`` in lexicographic order."""
    lookup = phi.__getitem__ if isinstance(phi, Mapping) else phi
    rows = []
    seen = set()
    for x in itertools.product(range(v), repeat=s):
        try:
            y = tuple(int(c) for c in lookup(x))
        except KeyError:
            raise NotBijective(f"phi is undefined at {x}") from None
        if len(y) != s or any(not 0 <= c < v for c in y):
            raise NotBijective(f"phi{x} = {y} is not in the alphabet^{s}")
        if y in seen:
            raise NotBijective(f"output {y} is hit twice")
        seen.add(y)
        rows.append(x + y)
    return AontArray(np.array(rows, dtype=np.int64), v)


def linear_aont_array(m: BinaryMatrix | FieldMatrix, word_bits: int = 1) -> AontArray:
    """Array of ``phi(x) = x M^{-1}``; binary matrices act on ``word_bits``-bit words."""
    if isinstance(m, BinaryMatrix):
        codec = AontCodec(m, word_bits)
        return aont_to_array(lambda x: codec.encode(x), m.s, 1 << word_bits)
    inv = m.inverse()
    return aont_to_array(lambda x: inv.vec_mul(x), m.s, m.field.order)


def check_unbiased(a: AontArray, cols: Iterable[int]) -> bool:
    """Census test on the 1-based column set ``cols``."""
    cols = sorted(set(cols))
    if not cols:
        return True
    if cols[0] < 1 or cols[-1] > a.width:
        raise BadShape(f"columns must lie in [1, {a.width}]")
    cells = len(cols)
    total = a.v ** cells
    if a.n_rows % total:
        return False
    code = np.zeros(a.n_rows, dtype=np.int64)
    for c in cols:
        code = code * a.v + a.cells[:, c - 1]
    counts = np.bincount(code, minlength=total)
    return bool((counts == a.n_rows // total).all())


def t_aont_column_sets(s: int, t: int):
    """The column sets checked by :func:`verify_t_aont_array`, 1-based."""
    yield tuple(range(1, s + 1))
    yield tuple(range(s + 1, 2 * s + 1))
    outputs = set(range(s + 1, 2 * s + 1))
    for inputs in itertools.combinations(range(1, s + 1), t):
        for dropped in itertools.combinations(range(s + 1, 2 * s + 1), t):
            yield tuple(sorted(set(inputs) | (outputs - set(dropped))))


def verify_t_aont_array(a: AontArray, t: int) -> bool:
    if a.width % 2:
        raise BadShape(f"width {a.width} is odd")
    s = a.width // 2
    if a.n_rows != a.v ** s:
        raise BadShape(f"expected {a.v}^{s} = {a.v ** s} rows, got {a.n_rows}")
    if not 1 <= t <= s:
        raise ValueError(f"t={t} outside [1, {s}]")
    return all(check_unbiased(a, d) for d in t_aont_column_sets(s, t))


def n_condition3_checks(s: int, t: int) -> int:
    return comb(s, t) ** 2


def check_orthogonal_array(a: AontArray, strength: int) -> bool:
    """True iff every ``strength``-subset of columns is unbiased."""
    if not 0 <= strength <= a.width:
        return False
    return all(check_unbiased(a, d)
               for d in itertools.combinations(range(1, a.width + 1), strength))

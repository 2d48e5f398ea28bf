import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import det_mod2, span_rank

from aont.errors import BothZero, IndexOutOfRange, NotInvertible, ParseError, SingularMatrix
from aont.gf2 import (
    BinaryMatrix,
    Gf2Poly,
    SubmatrixIndex,
    circulant,
    invert,
    is_invertible,
    is_invertible_2x2,
    poly_gcd,
    poly_inverse_mod,
    rank,
    submatrix,
)

EXAM_3 = BinaryMatrix.from_strings(["111", "101", "110"])


def jsi(s):
    return BinaryMatrix.ones(s) + BinaryMatrix.identity(s)


matrices = st.integers(1, 7).flatmap(
    lambda s: st.lists(st.integers(0, (1 << s) - 1), min_size=s, max_size=s).map(
        lambda rows: BinaryMatrix(rows, s)))


def invertible_matrix(rng, s):
    while True:
        m = BinaryMatrix([rng.getrandbits(s) for _ in range(s)], s)
        if is_invertible(m):
            return m


# rank and invertibility

def test_rank_examples():
    assert rank(BinaryMatrix.identity(4)) == 4
    assert rank(jsi(3)) == 2
    assert rank(jsi(4)) == 4


@given(matrices)
@settings(max_examples=300)
def test_rank_matches_span_oracle(m):
    assert rank(m) == span_rank(m.rows)


@given(matrices)
@settings(max_examples=300)
def test_invertible_iff_det_parity(m):
    assert is_invertible(m) == (det_mod2(m.to_lists()) == 1)


def test_det_parity_random_s8():
    rng = random.Random(8)
    for _ in range(40):
        m = BinaryMatrix([rng.getrandbits(8) for _ in range(8)], 8)
        assert is_invertible(m) == (det_mod2(m.to_lists()) == 1)


def _with_zeros(s, cells):
    rows = [(1 << s) - 1] * s
    for c in cells:
        rows[c // s] ^= 1 << (c % s)
    return BinaryMatrix(rows, s)


def _zero_placements(s, k, rng, limit=300):
    every = list(itertools.combinations(range(s * s), k))
    return every if len(every) <= limit else rng.sample(every, limit)


@pytest.mark.parametrize("s", range(2, 7))
def test_too_few_zeros_is_singular(s):
    # at most s - 2 zeros leaves two all-ones columns
    rng = random.Random(s)
    for k in range(s - 1):
        for cells in _zero_placements(s, k, rng):
            assert not is_invertible(_with_zeros(s, cells))


def test_one_zero_in_j4_is_singular():
    m = BinaryMatrix.ones(4).to_lists()
    m[2][1] = 0
    assert not is_invertible(BinaryMatrix.from_lists(m))


@pytest.mark.parametrize("s", range(2, 7))
def test_s_minus_1_zeros_invertible_iff_distinct_lines(s):
    rng = random.Random(s)
    for cells in _zero_placements(s, s - 1, rng, limit=3000):
        rows = {c // s for c in cells}
        cols = {c % s for c in cells}
        distinct = len(rows) == len(cols) == s - 1
        assert is_invertible(_with_zeros(s, cells)) == distinct


def test_s_minus_1_zeros_sharing_a_row_singular():
    # two zeros in row 0 leave two all-ones columns for s = 3
    m = BinaryMatrix.from_strings(["001", "111", "111"])
    assert not is_invertible(m)


@pytest.mark.parametrize("s", range(2, 13))
def test_jsi_invertible_iff_even(s):
    assert is_invertible(jsi(s)) == (s % 2 == 0)


def test_exam3_singular():
    assert not is_invertible(jsi(3))
    with pytest.raises(SingularMatrix):
        invert(jsi(3))


def test_invert_examples():
    assert invert(BinaryMatrix.identity(5)) == BinaryMatrix.identity(5)
    assert invert(jsi(4)) == jsi(4)
    assert EXAM_3 @ invert(EXAM_3) == BinaryMatrix.identity(3)


def test_inverse_roundtrip_random():
    rng = random.Random(1)
    for s in range(1, 11):
        m = invertible_matrix(rng, s)
        inv = invert(m)
        assert m @ inv == BinaryMatrix.identity(s)
        assert inv @ m == BinaryMatrix.identity(s)
        assert invert(inv) == m


# matrix plumbing

def test_entries_and_transpose():
    m = BinaryMatrix.from_lists([[1, 0, 1], [0, 0, 1], [1, 1, 0]])
    assert m[0, 2] == 1 and m[1, 0] == 0
    t = m.transpose()
    assert all(t[i, j] == m[j, i] for i in range(3) for j in range(3))
    assert m.ones_count() == 5


def test_matmul_against_lists():
    rng = random.Random(5)
    for s in (2, 3, 6):
        a = BinaryMatrix([rng.getrandbits(s) for _ in range(s)], s)
        b = BinaryMatrix([rng.getrandbits(s) for _ in range(s)], s)
        la, lb = a.to_lists(), b.to_lists()
        want = [[sum(la[i][k] * lb[k][j] for k in range(s)) % 2 for j in range(s)] for i in range(s)]
        assert (a @ b).to_lists() == want


def test_bmat_roundtrip_and_comments():
    text = EXAM_3.to_bmat(["from a worked example"])
    assert text.splitlines()[0] == "3"
    assert BinaryMatrix.from_bmat(text) == EXAM_3


@pytest.mark.parametrize("text,line", [
    ("3\n111\n10\n110\n", 3),
    ("2\n10\n2x\n", 3),
    ("x\n", 1),
    ("3\n111\n101\n", 3),
])
def test_bmat_errors_carry_line(text, line):
    with pytest.raises(ParseError) as ei:
        BinaryMatrix.from_bmat(text)
    assert ei.value.line == line
    assert str(ei.value).startswith(f"line {line}:")


def test_from_lists_rejects_non_binary():
    with pytest.raises(ValueError):
        BinaryMatrix.from_lists([[0, 2], [1, 1]])


# submatrices

def test_submatrix_convention():
    # I picks columns and J picks rows
    singular = submatrix(EXAM_3, SubmatrixIndex(cols=(1, 3), rows=(1, 2)))
    assert singular.to_lists() == [[1, 1], [1, 1]]
    assert not is_invertible(singular)
    assert is_invertible(submatrix(EXAM_3, SubmatrixIndex(cols=(2, 3), rows=(2, 3))))
    assert submatrix(EXAM_3, SubmatrixIndex((1, 2, 3), (1, 2, 3))) == EXAM_3


def test_submatrix_index_validation():
    with pytest.raises(IndexOutOfRange):
        SubmatrixIndex((1, 2), (1,))
    with pytest.raises(IndexOutOfRange):
        SubmatrixIndex((1, 1), (1, 2))
    with pytest.raises(IndexOutOfRange):
        submatrix(EXAM_3, SubmatrixIndex((1, 4), (1, 2)))


def test_exam3_has_seven_invertible_pairs():
    count = sum(is_invertible(submatrix(EXAM_3, SubmatrixIndex(i, j)))
                for i in itertools.combinations((1, 2, 3), 2)
                for j in itertools.combinations((1, 2, 3), 2))
    assert count == 7


def test_2x2_lemma_lists_six_matrices():
    six = {(1, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1), (1, 0, 0, 1), (0, 1, 1, 0)}
    for bits in itertools.product((0, 1), repeat=4):
        assert is_invertible_2x2(*bits) == (bits in six)
        a, b, c, d = bits
        assert is_invertible_2x2(*bits) == is_invertible(BinaryMatrix.from_lists([[a, b], [c, d]]))


# polynomials

def test_poly_basics():
    p = Gf2Poly.from_exponents([0, 1, 3])
    assert str(p) == "1 + x + x^3"
    assert p.degree == 3
    assert Gf2Poly(0).degree is None
    assert Gf2Poly.from_bitstring("1101") == p
    assert p.to_bitstring() == "1101"
    q, r = divmod(p * Gf2Poly(0b11) + Gf2Poly(1), p)
    assert q == Gf2Poly(0b11) and r == Gf2Poly(1)


def test_poly_gcd_examples():
    x1 = Gf2Poly(0b11)
    assert poly_gcd(Gf2Poly(0b101), x1) == x1
    f = Gf2Poly(0b1011)
    assert poly_gcd(f, Gf2Poly(0)) == f
    with pytest.raises(BothZero):
        poly_gcd(Gf2Poly(0), Gf2Poly(0))


def test_poly_inverse_examples():
    assert poly_inverse_mod(Gf2Poly(1), 7) == Gf2Poly(1)
    assert poly_inverse_mod(Gf2Poly(0b10), 5) == Gf2Poly.from_exponents([4])
    m = Gf2Poly.from_exponents([0, 2, 3, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15])
    inv = poly_inverse_mod(m, 17)
    assert inv == Gf2Poly.from_exponents([0, 1, 3, 4, 5, 6, 7, 10, 11, 12, 13, 14, 16])
    with pytest.raises(NotInvertible):
        poly_inverse_mod(Gf2Poly(0b11), 4)


@given(st.integers(1, 31), st.integers(0, 2 ** 31 - 1))
@settings(max_examples=200)
def test_circulant_invertible_iff_coprime(p, bits):
    bits &= (1 << p) - 1
    m = Gf2Poly(bits)
    mod = Gf2Poly((1 << p) | 1)
    coprime = bits != 0 and poly_gcd(m, mod) == Gf2Poly(1)
    assert is_invertible(circulant(m, p)) == coprime


def test_circulant_rows_shift_right():
    c = circulant([1, 1, 0, 0])
    assert [c.row_string(i) for i in range(4)] == ["1100", "0110", "0011", "1001"]
    assert is_invertible(circulant([1, 0, 0]))
    assert not is_invertible(circulant([1, 1, 1]))


def test_circulant_inverse_is_circulant_of_inverse():
    m = Gf2Poly.from_exponents([0, 2, 3, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15])
    inv = poly_inverse_mod(m, 17)
    assert circulant(inv, 17) @ circulant(m, 17) == BinaryMatrix.identity(17)


# invariances

@given(matrices, st.randoms(use_true_random=False))
@settings(max_examples=100)
def test_rank_invariant_under_permutation_and_transpose(m, rnd):
    rp = list(range(m.s))
    cp = list(range(m.s))
    rnd.shuffle(rp)
    rnd.shuffle(cp)
    assert rank(m.permute(rp, cp)) == rank(m) == rank(m.transpose())

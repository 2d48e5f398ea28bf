import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aont.bundle import load_matrix
from aont.constructions import FieldMatrix, cauchy_matrix, is_linear_t_aont, jsi_matrix, meq_matrix
from aont.errors import BadShape, NotBijective, ParseError, SingularMatrix, WordOverflow
from aont.field import FiniteField
from aont.gf2 import BinaryMatrix, is_invertible
from aont.transform import (
    AontArray,
    AontCodec,
    aont_to_array,
    check_orthogonal_array,
    check_unbiased,
    decode,
    encode,
    linear_aont_array,
    n_condition3_checks,
    t_aont_column_sets,
    verify_t_aont_array,
)


def all_invertible(s):
    for rows in itertools.product(range(1 << s), repeat=s):
        m = BinaryMatrix(list(rows), s)
        if is_invertible(m):
            yield m


@pytest.fixture(scope="module")
def cauchy5():
    c = cauchy_matrix(FiniteField(5), a=(0, 1), b=(2, 3))
    return linear_aont_array(c)


# codec

def test_self_inverse_codec():
    codec = AontCodec(jsi_matrix(4), word_bits=8)
    a, b, c, d = 0x11, 0x22, 0x44, 0x88
    assert encode(codec, [a, b, c, d]) == [b ^ c ^ d, a ^ c ^ d, a ^ b ^ d, a ^ b ^ c]
    assert encode(codec, [0, 0, 0, 0]) == [0, 0, 0, 0]


def test_identity_codec():
    codec = AontCodec(BinaryMatrix.identity(3), word_bits=4)
    assert codec.decode([1, 2, 3]) == [1, 2, 3] == codec.encode([1, 2, 3])


def test_decode_single_word_gives_first_row():
    m = meq_matrix(4)
    codec = AontCodec(m, word_bits=1)
    assert codec.decode([1, 0, 0, 0]) == [m[0, j] for j in range(4)]
    assert decode(codec, [0, 1, 0, 0]) == [m[1, j] for j in range(4)]


def test_codec_errors():
    codec = AontCodec(meq_matrix(3), word_bits=4)
    with pytest.raises(WordOverflow):
        codec.encode([16, 0, 0])
    with pytest.raises(WordOverflow):
        codec.decode([-1, 0, 0])
    with pytest.raises(ValueError):
        codec.encode([1, 2])
    with pytest.raises(SingularMatrix):
        AontCodec(jsi_matrix(3))


@pytest.mark.parametrize("s,r", [(2, 8), (4, 4), (8, 2), (3, 5), (16, 1)])
def test_roundtrip_exhaustive_small(s, r):
    rng = random.Random(s * 100 + r)
    while True:
        m = BinaryMatrix([rng.getrandbits(s) for _ in range(s)], s)
        if is_invertible(m):
            break
    codec = AontCodec(m, r)
    images = set()
    for x in itertools.product(range(1 << r), repeat=s):
        y = codec.encode(list(x))
        assert codec.decode(y) == list(x)
        images.add(tuple(y))
    assert len(images) == 1 << (s * r)


def test_roundtrip_example8_random():
    codec = AontCodec(load_matrix("example8"), word_bits=8)
    rng = random.Random(8)
    for _ in range(1000):
        x = [rng.randrange(256) for _ in range(8)]
        assert codec.decode(codec.encode(x)) == x


@given(st.binary(max_size=300), st.sampled_from([8, 16, 32]))
@settings(max_examples=60, deadline=None)
def test_byte_stream_roundtrip(data, r):
    codec = AontCodec(load_matrix("example5"), word_bits=r)
    blob = codec.encode_bytes(data)
    assert (len(blob) - 8) % (5 * r // 8) == 0
    assert codec.decode_bytes(blob) == data


def test_byte_stream_matches_word_api():
    codec = AontCodec(meq_matrix(4), word_bits=8)
    data = bytes([1, 2, 3, 4])
    assert codec.encode_bytes(data)[:4] == bytes(codec.encode([1, 2, 3, 4]))


def test_byte_stream_errors():
    codec = AontCodec(meq_matrix(4), word_bits=8)
    with pytest.raises(ParseError):
        codec.decode_bytes(b"abc")
    with pytest.raises(ParseError):
        codec.decode_bytes(b"abcde" + bytes(8))
    with pytest.raises(ParseError):
        codec.decode_bytes(bytes(4) + (99).to_bytes(8, "little"))
    with pytest.raises(ValueError):
        AontCodec(meq_matrix(4), word_bits=4).encode_bytes(b"x")


# arrays

def test_identity_array():
    a = aont_to_array(lambda x: x, 1, 2)
    assert a.cells.tolist() == [[0, 0], [1, 1]]
    assert verify_t_aont_array(a, 1)


def test_small_linear_arrays_have_distinct_rows():
    for m in all_invertible(2):
        a = linear_aont_array(m)
        assert (a.n_rows, a.width, a.alphabet_size) == (4, 4, 2)
        assert len({tuple(r) for r in a.cells}) == 4


def test_not_bijective():
    with pytest.raises(NotBijective):
        aont_to_array(lambda x: (0, 0), 2, 2)
    with pytest.raises(NotBijective):
        aont_to_array({(0,): (1,)}, 1, 2)
    with pytest.raises(NotBijective):
        aont_to_array(lambda x: (x[0] + 5,), 1, 2)


def test_cauchy_f5_array(cauchy5):
    assert cauchy5.cells.shape == (25, 4)
    assert verify_t_aont_array(cauchy5, 1) and verify_t_aont_array(cauchy5, 2)
    assert check_unbiased(cauchy5, {1, 4})
    assert check_orthogonal_array(cauchy5, 2)


def test_unbiased_examples(cauchy5):
    a = aont_to_array(lambda x: x, 3, 2)
    for k in range(4):
        for d in itertools.combinations((1, 2, 3), k):
            assert check_unbiased(a, d)
    const = AontArray(np.array([[0, 1], [0, 0]]), 2)
    assert not check_unbiased(const, [1])
    assert not check_unbiased(AontArray(np.zeros((3, 2), dtype=int), 2), [1])  # 2 does not divide 3
    with pytest.raises(BadShape):
        check_unbiased(cauchy5, [0])
    with pytest.raises(BadShape):
        check_unbiased(cauchy5, [5])


def test_zero_entry_fails_t1():
    m = meq_matrix(3)
    assert 0 in [m[i, j] for i in range(3) for j in range(3)]
    assert not verify_t_aont_array(linear_aont_array(m), 1)


def test_orthogonal_array_classic():
    oa = AontArray(np.array([[a, b, (a + b) % 3] for a in range(3) for b in range(3)]), 3)
    assert check_orthogonal_array(oa, 2)
    assert not check_orthogonal_array(AontArray(np.array([[0, 0], [0, 1]]), 2), 1)
    assert not check_orthogonal_array(oa, 4)


def test_condition_sets():
    sets = list(t_aont_column_sets(3, 1))
    assert sets[:2] == [(1, 2, 3), (4, 5, 6)]
    assert len(sets) - 2 == n_condition3_checks(3, 1) == 9
    assert (1, 5, 6) in sets and (3, 4, 5) in sets
    assert n_condition3_checks(5, 2) == 100


def test_verify_shape_errors(cauchy5):
    with pytest.raises(BadShape):
        verify_t_aont_array(AontArray(np.zeros((4, 3), dtype=int), 2), 1)
    with pytest.raises(BadShape):
        verify_t_aont_array(AontArray(np.zeros((5, 4), dtype=int), 2), 1)
    with pytest.raises(ValueError):
        verify_t_aont_array(cauchy5, 3)


def test_bijections_pass_block_conditions():
    rng = random.Random(0)
    points = list(itertools.product(range(3), repeat=2))
    for _ in range(20):
        image = points[:]
        rng.shuffle(image)
        a = aont_to_array(dict(zip(points, image)), 2, 3)
        assert check_unbiased(a, [1, 2]) and check_unbiased(a, [3, 4])


def test_symbol_relabelling_keeps_aont_property():
    # a nonlinear bijection: the F_5 Cauchy transform with a non-affine relabelling of outputs
    inv = cauchy_matrix(FiniteField(5), a=(0, 1), b=(2, 3)).inverse()
    sigma = [3, 0, 4, 1, 2]
    a = aont_to_array(lambda x: [sigma[y] for y in inv.vec_mul(list(x))], 2, 5)
    assert verify_t_aont_array(a, 1) and verify_t_aont_array(a, 2)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_linear_lemma_agrees_with_array_census(s):
    for m in all_invertible(s):
        a = linear_aont_array(m)
        for t in range(1, s + 1):
            assert is_linear_t_aont(m, t) == verify_t_aont_array(a, t)


def test_field_arrays_agree_with_lemma():
    f = FiniteField(3)
    rng = random.Random(3)
    for _ in range(15):
        m = FieldMatrix(f, tuple(tuple(rng.randrange(3) for _ in range(2)) for _ in range(2)))
        if not m.is_invertible():
            continue
        a = linear_aont_array(m)
        for t in (1, 2):
            assert is_linear_t_aont(m, t) == verify_t_aont_array(a, t)


# tsv

def test_tsv_roundtrip(cauchy5):
    back = AontArray.from_tsv(cauchy5.to_tsv())
    assert back.v == 5 and np.array_equal(back.cells, cauchy5.cells)
    assert cauchy5.to_tsv().splitlines()[0] == "25 4 5"


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("2 2\n", 1),
    ("2 2 2\n0\t1\n1\tx\n", 3),
    ("2 2 2\n0\t1\n1\n", 3),
    ("3 2 2\n0\t1\n1\t0\n", 3),
])
def test_tsv_errors(text, line):
    with pytest.raises(ParseError) as ei:
        AontArray.from_tsv(text)
    assert ei.value.line == line


def test_array_rejects_bad_symbols():
    with pytest.raises(BadShape):
        AontArray(np.array([[0, 2]]), 2)
    with pytest.raises(BadShape):
        AontArray(np.array([0, 1]), 2)

import binascii

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fslpolar.core import (
    CodeSpec,
    awgn_llr,
    construct_pw,
    crc_attach,
    crc_bits,
    crc_check,
    encode_frame,
    frame_rng,
    make_spec,
    modulate_bpsk,
    noise_sigma,
    polar_transform,
    pw_weights,
)


def bits_from_bytes(data: bytes) -> np.ndarray:
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8))


# --------------------------------------------------------------------------- transform

def test_transform_zero_input():
    assert not polar_transform(np.zeros(8, dtype=np.uint8)).any()


def test_transform_last_unit_vector_is_all_ones():
    u = np.zeros(8, dtype=np.uint8)
    u[7] = 1
    assert polar_transform(u).tolist() == [1] * 8


def test_transform_kernel_n2():
    assert polar_transform(np.array([1, 0], dtype=np.uint8)).tolist() == [1, 0]
    assert polar_transform(np.array([0, 1], dtype=np.uint8)).tolist() == [1, 1]


def test_transform_matches_kronecker_matrix():
    # Independent oracle: explicit F^{(x)n} matrix product over GF(2).
    f = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    g = f.copy()
    for _ in range(2):
        g = np.kron(g, f)
    rng = np.random.default_rng(7)
    for _ in range(20):
        u = rng.integers(0, 2, 8, dtype=np.uint8)
        assert np.array_equal(polar_transform(u), (u @ g) % 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**31 - 1))
def test_transform_involution_and_linearity(n_log, seed):
    n = 2**n_log
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 2, n, dtype=np.uint8)
    b = rng.integers(0, 2, n, dtype=np.uint8)
    assert np.array_equal(polar_transform(polar_transform(a)), a)
    assert np.array_equal(
        polar_transform(a ^ b), polar_transform(a) ^ polar_transform(b)
    )


def test_transform_rejects_bad_length():
    with pytest.raises(ValueError):
        polar_transform(np.zeros(6, dtype=np.uint8))


# --------------------------------------------------------------------------- CRC

def test_crc_known_value_crc16_ccitt_false():
    # Reference value from the stdlib CRC implementation (binascii.crc_hqx
    # is CRC-16/CCITT with caller-provided init, 0xFFFF gives CCITT-FALSE).
    data = b"123456789"
    expected = binascii.crc_hqx(data, 0xFFFF)
    assert expected == 0x29B1
    got = crc_bits(bits_from_bytes(data))
    assert int("".join(map(str, got)), 2) == expected


@settings(max_examples=40, deadline=None)
@given(st.binary(min_size=1, max_size=24))
def test_crc_matches_stdlib_on_byte_frames(data):
    expected = binascii.crc_hqx(data, 0xFFFF)
    got = crc_bits(bits_from_bytes(data))
    assert int("".join(map(str, got)), 2) == expected


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=120))
def test_crc_roundtrip(bits):
    frame = crc_attach(np.array(bits, dtype=np.uint8))
    assert crc_check(frame)


def test_crc_zero_payload_is_nonzero_with_ffff_init():
    # Init 0xFFFF deliberately makes the all-zero frame fail the check.
    frame = crc_attach(np.zeros(32, dtype=np.uint8))
    assert frame[-16:].any()
    assert not crc_check(np.zeros(48, dtype=np.uint8))


def test_crc_detects_all_single_bit_flips():
    rng = np.random.default_rng(3)
    frame = crc_attach(rng.integers(0, 2, 40, dtype=np.uint8))
    for i in range(frame.size):
        corrupted = frame.copy()
        corrupted[i] ^= 1
        assert not crc_check(corrupted), f"missed flip at {i}"


def test_crc_zero_length():
    assert crc_attach(np.ones(5, dtype=np.uint8), crc_len=0).size == 5
    assert crc_check(np.ones(5, dtype=np.uint8), crc_len=0)


# --------------------------------------------------------------------------- PW construction

def test_pw_small_cases():
    assert construct_pw(2, 1).tolist() == [1]
    # Enumerated by hand from w(i) = sum_j b_j * 2^(j/4):
    # N=8 weights: w7=3.603, w6=2.603, w5=2.414, w3=2.189 are the top four.
    assert construct_pw(8, 4).tolist() == [3, 5, 6, 7]
    assert construct_pw(4, 2).tolist() == [2, 3]


def test_pw_weights_match_direct_enumeration():
    beta = 2.0**0.25
    w = pw_weights(16)
    for i in range(16):
        expected = sum(beta**j for j in range(4) if (i >> j) & 1)
        assert w[i] == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("n", [8, 32, 128])
def test_pw_monotone_in_k(n):
    prev: set[int] = set()
    for k in range(1, n + 1):
        cur = set(construct_pw(n, k).tolist())
        assert prev <= cur
        prev = cur


def test_pw_rejects_bad_k():
    with pytest.raises(ValueError):
        construct_pw(8, 9)
    with pytest.raises(ValueError):
        construct_pw(8, 0)


# --------------------------------------------------------------------------- channel

def test_bpsk_mapping():
    assert modulate_bpsk(np.array([0, 1, 0])).tolist() == [1.0, -1.0, 1.0]
    assert modulate_bpsk(np.zeros(4)).tolist() == [1.0] * 4
    x = modulate_bpsk(np.array([1, 0, 1, 1, 0]))
    assert np.array_equal((1 - np.sign(x)) / 2, [1, 0, 1, 1, 0])


def test_awgn_noiseless_and_deterministic():
    c = np.array([0, 1, 1, 0], dtype=np.uint8)
    x = modulate_bpsk(c)
    llr = awgn_llr(x, np.inf, 0)
    assert np.array_equal(np.sign(llr), x)
    a = awgn_llr(x, 1.5, np.random.default_rng(42))
    b = awgn_llr(x, 1.5, np.random.default_rng(42))
    assert np.array_equal(a, b)


def test_awgn_llr_statistics():
    # At 0 dB Es/N0: sigma^2 = 0.5, E[LLR | x=+1] = 2/sigma^2 = 4,
    # std[LLR] = 2/sigma = 2*sqrt(2).  Allow 3 standard errors.
    n = 100_000
    sigma = noise_sigma(0.0)
    assert sigma**2 == pytest.approx(0.5)
    llr = awgn_llr(np.ones(n), 0.0, np.random.default_rng(11))
    se = (2.0 / sigma) / np.sqrt(n)
    assert abs(llr.mean() - 4.0) < 3 * se


def test_frame_rng_substreams_independent_and_stable():
    a = frame_rng(9, 0).standard_normal(4)
    b = frame_rng(9, 1).standard_normal(4)
    a2 = frame_rng(9, 0).standard_normal(4)
    assert np.array_equal(a, a2)
    assert not np.array_equal(a, b)


# --------------------------------------------------------------------------- CodeSpec

def test_spec_validation():
    with pytest.raises(ValueError):
        CodeSpec(n_mother=12, k_payload=4, crc_len=0, info_set=(0, 1, 2, 3))
    with pytest.raises(ValueError):
        CodeSpec(n_mother=8, k_payload=2, crc_len=0, info_set=(6, 7, 7))
    with pytest.raises(ValueError):
        CodeSpec(n_mother=8, k_payload=3, crc_len=0, info_set=(6, 7))
    spec = make_spec(64, 24)
    assert spec.k_total == 40
    assert len(spec.info_set) == 40
    assert spec.frozen_mask().sum() == 64 - 40


def test_encode_frame_is_linear_codeword():
    spec = make_spec(32, 10, crc_len=16)
    payload = np.zeros(10, dtype=np.uint8)
    cw = encode_frame(payload, spec)
    # all-zero payload still gets a nonzero CRC, hence nonzero codeword
    assert cw.any()
    u = polar_transform(cw)
    frozen = spec.frozen_mask()
    assert not u[frozen == 1].any()

import numpy as np
import pytest

from fslpolar.core import CodeSpec, encode_frame, make_spec, polar_transform
from fslpolar.construct import (
    AdjustmentError,
    adjust_info_bits,
    block_k_profile,
    block_rate_histogram,
    format_construction,
    hybrid_polar_encode,
    inner_polar_transform,
    make_hybrid_spec,
    max_syndrome_rows,
    parse_construction,
)
from fslpolar.nodes import FslParams
from fslpolar.outer import hybrid_outer_generator


def test_no_medium_rate_blocks_is_identity():
    spec = make_spec(64, 32, 0)
    profile = block_k_profile(spec, 16)
    lo = int(profile[profile < 8].max(initial=0))
    hi = int(profile[profile > lo].min(initial=16))
    adjusted = adjust_info_bits(spec, 16, lo, hi)
    assert adjusted.info_set == spec.info_set


def test_adjustment_preserves_rate_and_empties_band():
    spec = make_spec(2048, 1024, 16)
    adjusted = adjust_info_bits(spec, 16, 5, 9)
    assert len(adjusted.info_set) == len(spec.info_set)
    assert adjusted.construction == "adjusted"
    hist = block_rate_histogram(adjusted, 16)
    assert not any(5 < k < 9 for k in hist)


def test_adjustment_shrinks_syndrome_tables_1024_to_128():
    params = FslParams()
    spec = make_spec(2048, 1024, 16)
    assert max_syndrome_rows(spec, params) == 2**10
    adjusted = adjust_info_bits(spec, 16, 5, 9)
    assert max_syndrome_rows(adjusted, params) == 2**7


def test_three_blocks_at_k6_before_adjustment():
    # construction-dependent reference point; holds for this PW variant
    hist = block_rate_histogram(make_spec(2048, 1024, 16), 16)
    assert hist[6] == 3


def test_adjustment_infeasible_raises():
    # two half-rate blocks, band covering everything but the endpoints: the
    # balancing pass has no donor blocks left below the band
    info = tuple(range(8, 16)) + tuple(range(24, 32))
    spec = CodeSpec(n_mother=32, k_payload=16, crc_len=0, info_set=info)
    with pytest.raises(AdjustmentError):
        adjust_info_bits(spec, 16, 0, 16)


def test_rate1_histogram():
    spec = CodeSpec(n_mother=64, k_payload=64, crc_len=0, info_set=tuple(range(64)))
    assert block_rate_histogram(spec, 16) == {16: 4}


def test_histogram_skips_leading_frozen_blocks():
    info = tuple(range(48, 64))
    spec = CodeSpec(n_mother=64, k_payload=16, crc_len=0, info_set=info)
    hist = block_rate_histogram(spec, 16)
    assert hist == {16: 1}  # the three all-frozen prefix blocks are skipped


# --------------------------------------------------------------------------- hybrid encoding

def test_all_polar_hybrid_equals_plain_encoding():
    base = make_spec(256, 100, 16)
    allpolar = make_hybrid_spec(base, {k: "polar" for k in range(17)})
    rng = np.random.default_rng(0)
    for _ in range(10):
        p = rng.integers(0, 2, 100, dtype=np.uint8)
        assert np.array_equal(hybrid_polar_encode(p, allpolar), encode_frame(p, base))


def test_hybrid_encode_is_linear_and_injective():
    base = make_spec(64, 24, 0)  # no CRC so the map is strictly linear
    hyb = make_hybrid_spec(base)
    rng = np.random.default_rng(1)
    a = rng.integers(0, 2, 24, dtype=np.uint8)
    b = rng.integers(0, 2, 24, dtype=np.uint8)
    ea, eb = hybrid_polar_encode(a, hyb), hybrid_polar_encode(b, hyb)
    assert np.array_equal(hybrid_polar_encode(a ^ b, hyb), ea ^ eb)
    assert not hybrid_polar_encode(np.zeros(24, dtype=np.uint8), hyb).any()
    basis = np.array(
        [hybrid_polar_encode(np.eye(24, dtype=np.uint8)[i], hyb) for i in range(24)]
    )
    from fslpolar.gf2 import rank

    assert rank(basis) == 24


def test_single_block_toy_has_no_inner_stages():
    # N=16 is one outer block: the codeword is the outer codeword itself
    info = tuple(np.sort(np.argsort([bin(i).count("1") for i in range(16)])[-9:]))
    spec = CodeSpec(n_mother=16, k_payload=9, crc_len=0, info_set=info,
                    construction="hybrid")
    g = hybrid_outer_generator(9).generator
    rng = np.random.default_rng(3)
    for _ in range(10):
        p = rng.integers(0, 2, 9, dtype=np.uint8)
        assert np.array_equal(hybrid_polar_encode(p, spec), (p @ g) % 2)


def test_inner_transform_is_the_tail_of_the_full_transform():
    rng = np.random.default_rng(4)
    u = rng.integers(0, 2, 64, dtype=np.uint8)
    blockwise = u.copy()
    for s in range(0, 64, 16):
        blockwise[s : s + 16] = polar_transform(u[s : s + 16])
    assert np.array_equal(inner_polar_transform(blockwise, 16), polar_transform(u))


def test_construction_text_roundtrip():
    for spec in (
        make_spec(128, 64, 16),
        adjust_info_bits(make_spec(256, 128, 16), 16, 5, 9),
        make_hybrid_spec(make_spec(256, 128, 16)),
        make_hybrid_spec(make_spec(64, 32, 0), {10: "dual_ebch"}),
    ):
        text = format_construction(spec)
        assert parse_construction(text) == spec
    assert "families" in format_construction(make_hybrid_spec(make_spec(64, 32, 0)))

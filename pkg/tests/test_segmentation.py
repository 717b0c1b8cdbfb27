import numpy as np
import pytest

from fslpolar.core import CodeSpec, make_spec
from fslpolar.nodes import (
    B_MAX,
    FslParams,
    NodeKind,
    SegmentMode,
    classify_block,
    classify_special,
    node_census,
    segment_tree,
)


def test_params_validation():
    FslParams()  # defaults are the 16-bit envelope
    FslParams(block_len=8, flip_budget=2, patterns_per_syndrome=4)
    with pytest.raises(ValueError):
        FslParams(block_len=4)
    with pytest.raises(ValueError):
        FslParams(block_len=8, flip_budget=3)
    with pytest.raises(ValueError):
        FslParams(block_len=16, patterns_per_syndrome=16)
    assert FslParams().ml_threshold == 6  # 2^T * l_sd = 64 candidate budget


def test_classify_special_patterns():
    z = np.zeros(8, dtype=np.uint8)
    o = np.ones(8, dtype=np.uint8)
    assert classify_special(o) is NodeKind.R0
    assert classify_special(z) is NodeKind.R1
    rep = o.copy()
    rep[-1] = 0
    assert classify_special(rep) is NodeKind.REP
    spc = z.copy()
    spc[0] = 1
    assert classify_special(spc) is NodeKind.SPC
    other = z.copy()
    other[3] = 1
    assert classify_special(other) is None


def test_classify_block_rate_rule():
    # threshold 6: k=5 exhaustive, k=6 syndrome path (equal cost -> syndrome)
    mask = np.ones(16, dtype=np.uint8)
    mask[[3, 5, 6, 7, 9]] = 0
    assert classify_block(mask, 6) is NodeKind.ML
    mask[11] = 0
    assert classify_block(mask, 6) is NodeKind.GEN


def test_leading_frozen_blocks_are_skipped():
    # rate-1/2 code whose info set occupies only the upper half
    n = 1024
    info = tuple(range(512, 1024))
    spec = CodeSpec(n_mother=n, k_payload=512, crc_len=0, info_set=info)
    descs = segment_tree(spec, FslParams(), SegmentMode.FSL16)
    assert descs[0].start == 512
    assert all(d.start >= 512 for d in descs)
    full = segment_tree(spec, FslParams(), SegmentMode.FSL16, skip_leading_frozen=False)
    assert full[0].start == 0
    assert sum(d.length for d in full) == n
    assert all(d.kind is NodeKind.R0 for d in full if d.start < 512)


def test_fully_info_spec_yields_r1_runs():
    n = 256
    spec = CodeSpec(n_mother=n, k_payload=n, crc_len=0, info_set=tuple(range(n)))
    descs = segment_tree(spec, FslParams(), SegmentMode.FSL16)
    assert all(d.kind is NodeKind.R1 and d.length == B_MAX for d in descs)
    assert len(descs) == n // B_MAX


@pytest.mark.parametrize("mode", list(SegmentMode))
def test_partition_and_kind_consistency(mode):
    params = FslParams(block_len=8, flip_budget=2, patterns_per_syndrome=4) \
        if mode is SegmentMode.FSL8 else FslParams()
    for n, k in ((64, 32), (256, 100), (1024, 512)):
        spec = make_spec(n, k, 16)
        descs = segment_tree(spec, params, mode, skip_leading_frozen=False)
        frozen = spec.frozen_mask()
        pos = 0
        for d in descs:
            assert d.start == pos and d.start % d.length == 0
            assert np.array_equal(d.frozen_local, frozen[d.start : d.start + d.length])
            assert d.k_local == d.length - d.frozen_local.sum()
            if d.kind in (NodeKind.R0, NodeKind.REP, NodeKind.R1, NodeKind.SPC):
                assert classify_special(d.frozen_local) is d.kind
                assert d.length <= B_MAX
            elif mode in (SegmentMode.FSL8, SegmentMode.FSL16):
                assert d.length == params.block_len
                assert classify_special(d.frozen_local) is None
            pos += d.length
        assert pos == n
        total_info = sum(d.k_local for d in descs)
        assert total_info == spec.k_total


def test_census_counts():
    spec = make_spec(1024, 512, 16)
    descs = segment_tree(spec, FslParams(), SegmentMode.FSL16)
    census = node_census(descs)
    assert census["Total"] == len(descs)
    assert sum(v for k, v in census.items() if k != "Total") == census["Total"]
    # general blocks only appear at the fixed tile size
    assert all(d.length == 16 for d in descs if d.kind in (NodeKind.GEN, NodeKind.ML))

import numpy as np
import pytest

from fslpolar.core import (
    CodeSpec,
    awgn_llr,
    encode_frame,
    frame_rng,
    make_spec,
    modulate_bpsk,
)
from fslpolar.construct import adjust_info_bits, hybrid_polar_encode, make_hybrid_spec
from fslpolar.fsl import FslDecoder, build_tables, fsl_decode
from fslpolar.nodes import FslParams, NodeDescriptor, NodeKind
from fslpolar.scl import scl_decode
from fslpolar.syndrome import TableError

P8 = FslParams(block_len=8, flip_budget=2, patterns_per_syndrome=4)
P16 = FslParams()


def frame_for(spec, snr_db, seed, frame=0):
    rng = frame_rng(seed, frame)
    payload = rng.integers(0, 2, spec.k_payload, dtype=np.uint8)
    if spec.construction == "hybrid":
        cw = hybrid_polar_encode(payload, spec)
    else:
        cw = encode_frame(payload, spec)
    return payload, awgn_llr(modulate_bpsk(cw), snr_db, rng)


@pytest.mark.parametrize("params", [P8, P16], ids=["B8", "B16"])
@pytest.mark.parametrize("n,k", [(64, 24), (128, 60), (256, 120)])
def test_noiseless_recovery(params, n, k):
    spec = make_spec(n, k, 16)
    tables = build_tables(spec, params, use_cache=False)
    payload, llr = frame_for(spec, np.inf, seed=n)
    res = fsl_decode(llr, spec, params, tables)
    assert res.crc_ok and res.final_pm == 0.0
    assert np.array_equal(res.payload, payload)
    res_fast = FslDecoder(spec, params, tables).decode(llr)
    assert np.array_equal(res_fast.payload, payload)


def test_missing_table_raises():
    spec = make_spec(64, 24, 16)
    with pytest.raises(TableError):
        fsl_decode(np.ones(64), spec, P16, tables={})
    with pytest.raises(TableError):
        FslDecoder(spec, P16, tables={})


def test_input_validation():
    spec = make_spec(64, 24, 16)
    tables = build_tables(spec, P16, use_cache=False)
    with pytest.raises(ValueError):
        fsl_decode(np.ones(32), spec, P16, tables)


def test_determinism():
    spec = make_spec(128, 60, 16)
    tables = build_tables(spec, P16, use_cache=False)
    _, llr = frame_for(spec, 1.0, seed=5)
    a = fsl_decode(llr, spec, P16, tables)
    b = fsl_decode(llr, spec, P16, tables)
    assert np.array_equal(a.payload, b.payload) and a.final_pm == b.final_pm


@pytest.mark.parametrize(
    "spec_kind,params",
    [("pw", P16), ("pw", P8), ("adjusted", P16), ("hybrid", P16)],
)
def test_fast_twin_matches_reference(spec_kind, params):
    base = make_spec(128, 60, 16)
    if spec_kind == "adjusted":
        spec = adjust_info_bits(base, 16, 5, 9)
    elif spec_kind == "hybrid":
        spec = make_hybrid_spec(base)
    else:
        spec = base
    tables = build_tables(spec, params, use_cache=False)
    dec = FslDecoder(spec, params, tables)
    for f in range(40):
        rng = frame_rng(11, f)
        payload = rng.integers(0, 2, spec.k_payload, dtype=np.uint8)
        cw = (
            hybrid_polar_encode(payload, spec)
            if spec_kind == "hybrid"
            else encode_frame(payload, spec)
        )
        llr = awgn_llr(modulate_bpsk(cw), 0.5, rng)  # noisy enough to exercise repair
        ref = fsl_decode(llr, spec, params, tables)
        fast = dec.decode(llr)
        assert np.array_equal(ref.payload, fast.payload)
        assert ref.final_pm == pytest.approx(fast.final_pm, abs=1e-9)
        assert np.allclose(ref.path_metrics, fast.path_metrics, atol=1e-9)
        assert ref.selected_path_rank == fast.selected_path_rank


def test_matches_scl_payloads_at_high_snr():
    spec = make_spec(64, 24, 16)
    tables = build_tables(spec, P16, use_cache=False)
    dec = FslDecoder(spec, P16, tables)
    agree = 0
    frames = 300
    for f in range(frames):
        rng = frame_rng(21, f)
        payload = rng.integers(0, 2, spec.k_payload, dtype=np.uint8)
        llr = awgn_llr(modulate_bpsk(encode_frame(payload, spec)), 4.0, rng)
        r_fsl = dec.decode(llr)
        r_scl = scl_decode(llr, spec, 8)
        agree += np.array_equal(r_fsl.payload, r_scl.payload)
    assert agree / frames >= 0.99


def test_two_bit_exhaustive_blocks_degenerate_to_scl():
    # every node forced to a 2-bit exhaustive block, list wide enough that
    # nothing is pruned: paths and metrics must coincide with the plain list
    # decoder's
    spec = make_spec(8, 4, 0)
    frozen = spec.frozen_mask()
    descs = [
        NodeDescriptor(s, 2, NodeKind.ML, int(2 - frozen[s : s + 2].sum()),
                       frozen[s : s + 2].copy())
        for s in range(0, 8, 2)
    ]
    params = FslParams(list_size=16)
    rng = np.random.default_rng(31)
    for _ in range(50):
        llr = rng.standard_normal(8) * 2
        fsl = fsl_decode(llr, spec, params, descriptors=descs)
        scl = scl_decode(llr, spec, 16)
        assert np.allclose(
            np.sort(fsl.path_metrics), np.sort(scl.path_metrics), atol=1e-9
        )
        assert np.array_equal(fsl.payload, scl.payload)


def test_unproven_list_size_uses_exhaustive_fallback():
    spec = make_spec(32, 8, 0)
    params = FslParams(list_size=4)
    tables = build_tables(spec, params, use_cache=False)
    payload, llr = frame_for(spec, np.inf, seed=7)
    res = fsl_decode(llr, spec, params, tables)
    assert np.array_equal(res.payload, payload)
    fast = FslDecoder(spec, params, tables).decode(llr)
    assert np.array_equal(fast.payload, payload)


def test_hybrid_noiseless_and_crc_selection():
    spec = make_hybrid_spec(make_spec(256, 128, 16))
    tables = build_tables(spec, P16, use_cache=False)
    dec = FslDecoder(spec, P16, tables)
    payload, llr = frame_for(spec, np.inf, seed=13)
    res = dec.decode(llr)
    assert res.crc_ok and np.array_equal(res.payload, payload)

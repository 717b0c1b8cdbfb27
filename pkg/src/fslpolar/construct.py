"""Code-construction optimizations on top of the plain reliability design.

Two tools: information-bit re-adjustment, which empties a band of per-block
rates to shrink the largest syndrome tables, and hybrid outer codes, which
swap each 16-bit block's polar sub-code for a distance-optimized one and
re-apply the inner polarization stages.
"""

from __future__ import annotations

import numpy as np

from .core import CodeSpec, crc_attach, polar_transform, pw_weights
from .outer import OUTER_LEN, hybrid_outer_generator


class AdjustmentError(Exception):
    """The requested rate band cannot be emptied while preserving the rate."""


def block_k_profile(spec: CodeSpec, block_len: int) -> np.ndarray:
    """Info bits per length-block_len block, over all N/block_len blocks."""
    counts = np.zeros(spec.n_mother // block_len, dtype=np.int64)
    for i in spec.info_set:
        counts[i // block_len] += 1
    return counts


def block_rate_histogram(spec: CodeSpec, block_len: int) -> dict[int, int]:
    """Count of blocks at each K_B.

    Leading all-frozen blocks before the first information bit are excluded
    (they are skipped by the decoder), so the counts sum to N/block_len minus
    the skipped prefix blocks.
    """
    profile = block_k_profile(spec, block_len)
    first_block = spec.info_set[0] // block_len if spec.info_set else 0
    hist: dict[int, int] = {}
    for k in profile[first_block:]:
        hist[int(k)] = hist.get(int(k), 0) + 1
    return hist


def adjust_info_bits(spec: CodeSpec, block_len: int, k_low: int, k_high: int) -> CodeSpec:
    """Move info bits between blocks until no block has k_low < K_B < k_high.

    Pass 1 pushes every mid-band block to the nearer boundary (ties go up);
    pass 2 restores the total by walking blocks in ascending index, one bit at
    a time, widening the boundary outward when a level is exhausted; pass 3
    re-selects each block's most reliable positions.
    """
    if not 0 <= k_low < k_high <= block_len:
        raise ValueError("need 0 <= k_low < k_high <= block_len")
    if spec.construction == "hybrid":
        raise ValueError("adjust a plain spec before building hybrid codes")
    k_b = block_k_profile(spec, block_len)
    target = spec.k_total

    for b, k in enumerate(k_b):
        if k_low < k < k_high:
            k_b[b] = k_low if (k - k_low) < (k_high - k) else k_high

    def rebalance(level: int, step: int, bound: int) -> None:
        while k_b.sum() != target:
            if level == bound:
                raise AdjustmentError(
                    f"cannot rebalance to {target} info bits outside ({k_low}, {k_high})"
                )
            for b in range(k_b.size):
                if k_b[b] == level:
                    k_b[b] += step
                    if k_b.sum() == target:
                        break
            level += step

    if k_b.sum() > target:
        rebalance(k_low, -1, -1)  # shed bits downward from the low boundary
    elif k_b.sum() < target:
        rebalance(k_high, +1, block_len + 1)  # add bits upward from the high one

    weights = pw_weights(spec.n_mother)
    info: list[int] = []
    for b, k in enumerate(k_b):
        base = b * block_len
        idx = np.arange(base, base + block_len)
        # most reliable first; PW ties resolved toward the higher index
        order = idx[np.argsort(weights[idx], kind="stable")[::-1]]
        info.extend(int(i) for i in order[: int(k)])
    return CodeSpec(
        n_mother=spec.n_mother,
        k_payload=spec.k_payload,
        crc_len=spec.crc_len,
        info_set=tuple(sorted(info)),
        construction="adjusted",
    )


def max_syndrome_rows(spec: CodeSpec, params) -> int:
    """Largest syndrome-table row count (2^(B-K_B)) over the GEN blocks."""
    from .nodes import NodeKind, segment_tree

    descs = segment_tree(spec, params, skip_leading_frozen=False)
    rows = [1 << (d.length - d.k_local) for d in descs if d.kind is NodeKind.GEN]
    return max(rows) if rows else 0


# --------------------------------------------------------------------------- hybrid codes

def make_hybrid_spec(
    base: CodeSpec, families: dict[int, str] | None = None
) -> CodeSpec:
    """Hybrid variant of a plain spec: same block rates, optimized outer codes."""
    if base.n_mother < OUTER_LEN:
        raise ValueError("hybrid codes need N >= 16")
    return CodeSpec(
        n_mother=base.n_mother,
        k_payload=base.k_payload,
        crc_len=base.crc_len,
        info_set=base.info_set,
        construction="hybrid",
        hybrid_families=tuple(sorted(families.items())) if families else None,
    )


def inner_polar_transform(v: np.ndarray, block_len: int = OUTER_LEN) -> np.ndarray:
    """Polarization stages above the outer blocks (distances block_len..N/2)."""
    c = np.asarray(v, dtype=np.uint8).copy()
    n = c.size
    dist = block_len
    while dist < n:
        step = 2 * dist
        for j in range(dist):
            c[j::step] ^= c[j + dist::step]
        dist = step
    return c


def hybrid_polar_encode(payload: np.ndarray, spec: CodeSpec) -> np.ndarray:
    """Outer-encode each 16-bit block, concatenate, then inner-polarize.

    Payload||CRC bits feed the blocks in ascending position order, each
    block's bits mapping to its generator rows top to bottom.  With every
    family forced to "polar" the output is bit-identical to plain encoding.
    """
    if spec.construction != "hybrid":
        raise ValueError("spec is not a hybrid construction")
    payload = np.asarray(payload, dtype=np.uint8)
    if payload.size != spec.k_payload:
        raise ValueError(f"payload length {payload.size} != {spec.k_payload}")
    frame = crc_attach(payload, spec.crc_len)
    overrides = dict(spec.hybrid_families or ())
    frozen = spec.frozen_mask()
    v = np.zeros(spec.n_mother, dtype=np.uint8)
    used = 0
    for start in range(0, spec.n_mother, OUTER_LEN):
        local = frozen[start : start + OUTER_LEN]
        k = int(OUTER_LEN - local.sum())
        if k == 0:
            continue
        bits = frame[used : used + k]
        used += k
        outer = hybrid_outer_generator(k, overrides.get(k))
        if outer.family == "polar":
            # plain sub-code: bits sit on the block's own info positions
            u_local = np.zeros(OUTER_LEN, dtype=np.uint8)
            u_local[local == 0] = bits
            v[start : start + OUTER_LEN] = polar_transform(u_local)
        else:
            v[start : start + OUTER_LEN] = (bits @ outer.generator) % 2
    assert used == spec.k_total
    return inner_polar_transform(v, OUTER_LEN)


# --------------------------------------------------------------------------- archival text

def format_construction(spec: CodeSpec) -> str:
    """Human-readable, diffable description of a construction."""
    from .outer import DEFAULT_FAMILIES

    lines = [
        "[construction]",
        f"n = {spec.n_mother}",
        f"k = {spec.k_payload}",
        f"crc = {spec.crc_len}",
        f"kind = {spec.construction}",
    ]
    if spec.construction == "hybrid":
        overrides = dict(spec.hybrid_families or ())
        fams = []
        for k in sorted({*DEFAULT_FAMILIES, *overrides}):
            fams.append(f"{k}:{overrides.get(k, DEFAULT_FAMILIES.get(k, 'polar'))}")
        lines.append("families = " + " ".join(fams))
    lines.append("info_set = " + " ".join(str(i) for i in spec.info_set))
    return "\n".join(lines) + "\n"


def parse_construction(text: str) -> CodeSpec:
    """Inverse of format_construction."""
    fields: dict[str, str] = {}
    for line in text.strip().splitlines():
        line = line.strip()
        if not line or line.startswith("["):
            continue
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()
    families = None
    if "families" in fields:
        from .outer import DEFAULT_FAMILIES

        families = {}
        for item in fields["families"].split():
            k, _, fam = item.partition(":")
            if fam != DEFAULT_FAMILIES.get(int(k), "polar"):
                families[int(k)] = fam
        families = families or None
    spec = CodeSpec(
        n_mother=int(fields["n"]),
        k_payload=int(fields["k"]),
        crc_len=int(fields["crc"]),
        info_set=tuple(int(i) for i in fields["info_set"].split()),
        construction=fields["kind"],
        hybrid_families=tuple(sorted(families.items())) if families else None,
    )
    return spec

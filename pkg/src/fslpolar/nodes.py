"""Pruned-tree segmentation: carve the code into constituent blocks.

The decode tree is cut into leaf blocks processed in one shot each: special
nodes (all-frozen, repetition, single-parity-check, all-info) are taken as
large as B_MAX allows, everything else is tiled at the fixed parallel block
size B and routed to either exhaustive or syndrome-table path extension
depending on its local rate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .core import CodeSpec, is_power_of_two

B_MAX = 32  # special nodes may span up to this many leaves


class NodeKind(enum.Enum):
    R0 = "R0"
    REP = "Rep"
    R1 = "R1"
    SPC = "SPC"
    GEN = "Gen"
    ML = "ML"


class SegmentMode(enum.Enum):
    FOUR_BIT_ML = "4bit-ml"
    FAST_SSCL = "fast-sscl"
    FSL8 = "fsl8"
    FSL16 = "fsl16"


@dataclass(frozen=True)
class FslParams:
    """Knobs of the flip-syndrome block decoder.

    The pattern-table shortcut for R1/SPC nodes is proven for list size 8
    only; other list sizes fall back to exhaustive extension.  The (B, T,
    l_sd) envelope keeps syndrome tables small.
    """

    block_len: int = 16
    flip_budget: int = 3
    patterns_per_syndrome: int = 8
    list_size: int = 8
    saturation_llr: float = 1e9

    def __post_init__(self) -> None:
        if self.block_len not in (8, 16):
            raise ValueError("block_len must be 8 or 16")
        if self.flip_budget < 0 or self.patterns_per_syndrome < 1 or self.list_size < 1:
            raise ValueError("flip_budget >= 0, patterns_per_syndrome >= 1, list_size >= 1")
        limit_t, limit_lsd = (2, 4) if self.block_len == 8 else (3, 8)
        if self.flip_budget > limit_t or self.patterns_per_syndrome > limit_lsd:
            raise ValueError(
                f"B={self.block_len} supports flip_budget <= {limit_t} and "
                f"patterns_per_syndrome <= {limit_lsd}"
            )

    @property
    def ml_threshold(self) -> float:
        """Blocks with fewer local info bits than this are searched exhaustively."""
        return self.flip_budget + float(np.log2(self.patterns_per_syndrome))

    @property
    def mode(self) -> SegmentMode:
        return SegmentMode.FSL8 if self.block_len == 8 else SegmentMode.FSL16


@dataclass(frozen=True)
class NodeDescriptor:
    """One leaf of the pruned decode tree covering bits [start, start+length)."""

    start: int
    length: int
    kind: NodeKind
    k_local: int
    frozen_local: np.ndarray = field(repr=False)

    @property
    def stage(self) -> int:
        return self.length.bit_length() - 1

    @property
    def bit_range(self) -> tuple[int, int]:
        return (self.start, self.start + self.length)


def classify_special(frozen_local: np.ndarray) -> NodeKind | None:
    """Special-node kind of a frozen pattern, or None if it is a general block."""
    b = frozen_local.size
    k = int(b - frozen_local.sum())
    if k == 0:
        return NodeKind.R0
    if k == b:
        return NodeKind.R1
    if k == 1 and not frozen_local[-1]:
        return NodeKind.REP
    if k == b - 1 and frozen_local[0]:
        return NodeKind.SPC
    return None


def classify_block(frozen_local: np.ndarray, ml_threshold: int) -> NodeKind:
    """Kind of a fixed-size block: special patterns win, then the rate rule.

    Blocks whose exhaustive search (2^k paths) is cheaper than the syndrome
    path (2^T * l_sd paths) are ML; at equal cost the syndrome path wins, so
    the comparison is strict.
    """
    special = classify_special(frozen_local)
    if special is not None:
        return special
    k = int(frozen_local.size - frozen_local.sum())
    return NodeKind.ML if k < ml_threshold else NodeKind.GEN


def _descriptor(frozen: np.ndarray, start: int, size: int, kind: NodeKind) -> NodeDescriptor:
    local = frozen[start : start + size].copy()
    return NodeDescriptor(
        start=start,
        length=size,
        kind=kind,
        k_local=int(size - local.sum()),
        frozen_local=local,
    )


def segment_tree(
    spec: CodeSpec,
    params: FslParams | None = None,
    mode: SegmentMode | str | None = None,
    skip_leading_frozen: bool = True,
) -> list[NodeDescriptor]:
    """Leaf blocks of the pruned decode tree, in decoding order.

    Special nodes are matched top-down (largest first, up to B_MAX); what
    remains is tiled at the mode's parallel width.  With skip_leading_frozen,
    blocks entirely before the first information bit are dropped, so the
    emitted ranges partition [start of the first info-bearing block, N).
    """
    params = params or FslParams()
    if mode is None:
        mode = params.mode
    elif isinstance(mode, str):
        mode = SegmentMode(mode)
    if mode is SegmentMode.FSL8 and params.block_len != 8:
        raise ValueError("FSL8 segmentation needs params with block_len=8")
    if mode is SegmentMode.FSL16 and params.block_len != 16:
        raise ValueError("FSL16 segmentation needs params with block_len=16")
    frozen = spec.frozen_mask()
    out: list[NodeDescriptor] = []

    def descend(start: int, size: int) -> None:
        local = frozen[start : start + size]
        if mode is SegmentMode.FAST_SSCL:
            special = classify_special(local) if size <= B_MAX else None
            if special is not None:
                out.append(_descriptor(frozen, start, size, special))
                return
        elif mode is SegmentMode.FOUR_BIT_ML:
            if size <= B_MAX and not (size - local.sum()):
                out.append(_descriptor(frozen, start, size, NodeKind.R0))
                return
            if size == 4:
                out.append(_descriptor(frozen, start, size, NodeKind.ML))
                return
        else:
            b = params.block_len
            if size <= B_MAX:
                special = classify_special(local)
                if special is not None:
                    out.append(_descriptor(frozen, start, size, special))
                    return
            if size == b:
                kind = classify_block(local, params.ml_threshold)
                out.append(_descriptor(frozen, start, size, kind))
                return
        half = size // 2
        descend(start, half)
        descend(start + half, half)

    descend(0, spec.n_mother)
    if skip_leading_frozen and spec.info_set:
        first_info = spec.info_set[0]
        out = [d for d in out if d.start + d.length > first_info]
    return out


def node_census(descriptors: list[NodeDescriptor]) -> dict[str, int]:
    """Leaf counts per kind plus the total, keyed by kind name."""
    counts = {k.value: 0 for k in NodeKind}
    for d in descriptors:
        counts[d.kind.value] += 1
    counts["Total"] = len(descriptors)
    return counts


def census_report(spec: CodeSpec, list_size: int = 8) -> str:
    """Tabulated leaf-node census over all segmentation modes."""
    cols = ["R0", "Rep", "ML", "Gen", "SPC", "R1", "Total"]
    rows: list[tuple[str, dict[str, int]]] = []
    p8 = FslParams(block_len=8, flip_budget=2, patterns_per_syndrome=4, list_size=list_size)
    p16 = FslParams(block_len=16, flip_budget=3, patterns_per_syndrome=8, list_size=list_size)
    for name, params, mode in (
        ("4b ML", p16, SegmentMode.FOUR_BIT_ML),
        ("F-SSCL", p16, SegmentMode.FAST_SSCL),
        ("8b FSL", p8, SegmentMode.FSL8),
        ("16b FSL", p16, SegmentMode.FSL16),
    ):
        rows.append((name, node_census(segment_tree(spec, params, mode))))
    width = max(len(r[0]) for r in rows) + 2
    lines = [
        f"Leaf-node census, N={spec.n_mother} K={spec.k_payload} "
        f"(+{spec.crc_len} CRC), {spec.construction} construction",
        " " * width + "".join(f"{c:>7}" for c in cols),
    ]
    for name, counts in rows:
        lines.append(f"{name:<{width}}" + "".join(f"{counts[c]:>7}" for c in cols))
    return "\n".join(lines)

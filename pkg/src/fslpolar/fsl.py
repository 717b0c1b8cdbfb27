"""Flip-syndrome-list decoding of constituent blocks.

LLR propagation stops at each block's stage; the block's raw hard estimate is
then repaired into candidate local codewords in one shot: all-info and
single-parity-check blocks flip within a fixed 13-pattern set over the
least-reliable positions (proven to contain the 8 best sub-paths at list size
8), general blocks flip within a small budget and look the remaining error
patterns up by syndrome, low-rate blocks are searched exhaustively.  A single
global prune per block keeps the list at L.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import CodeSpec, is_power_of_two, polar_transform
from .gf2 import info_recovery_masks
from .nodes import FslParams, NodeDescriptor, NodeKind, segment_tree
from .scl import DecodeResult, select_by_crc
from .syndrome import (
    SyndromeTable,
    TableError,
    get_table,
    kernel_matrix,
    masks_from_generator,
    parity_check_masks,
    syndrome_bits,
    table_key,
)

EXHAUSTIVE_GUARD_K = 12  # refuse exhaustive extension beyond 2^12 candidates

# Flip sets in ascending-reliability index space: entry p means "flip the bit
# holding the p-th smallest |LLR|".  The all-info set covers every possible
# top-8 sub-path at list size 8; the parity-check sets additionally preserve
# (even case) or repair (odd case) the block checksum.
R1_FLIP_SETS = (
    (), (0,), (1,), (2,), (3,), (4,), (5,), (6,),
    (0, 1), (0, 2), (1, 2), (0, 3), (0, 1, 2),
)
SPC_EVEN_FLIP_SETS = (
    (), (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7),
    (1, 2), (1, 3), (1, 4), (2, 3), (0, 1, 2, 3),
)
SPC_ODD_FLIP_SETS = (
    (0,), (1,), (2,), (3,), (4,), (5,), (6,), (7,),
    (0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3), (0, 1, 4),
)

Candidate = tuple[np.ndarray, float]  # (hard codeword, metric increment)


@dataclass(frozen=True)
class SortedLlrView:
    """Block LLRs indexed by ascending reliability (|LLR| magnitude)."""

    perm: np.ndarray  # perm[p] = block position of the p-th smallest |LLR|
    magnitudes: np.ndarray  # the sorted |LLR| values

    @classmethod
    def from_llrs(cls, llrs_block: np.ndarray) -> "SortedLlrView":
        mags = np.abs(np.asarray(llrs_block, dtype=np.float64))
        perm = np.argsort(mags, kind="stable")  # magnitude ties keep index order
        return cls(perm=perm, magnitudes=mags[perm])


def hard_decision(llrs_block: np.ndarray) -> np.ndarray:
    """Raw hard estimate: bit 1 where the LLR is negative (zero maps to 0)."""
    return (np.asarray(llrs_block) < 0).astype(np.uint8)


def recover_info(beta_hat_block: np.ndarray) -> np.ndarray:
    """Stage-0 bits of a block codeword (the transform is its own inverse)."""
    return polar_transform(beta_hat_block)


def block_pm_update(
    pm: float, llrs_block: np.ndarray, beta_raw: np.ndarray, beta_hat: np.ndarray
) -> float:
    """Blockwise metric: pm plus |LLR| over every flipped position."""
    llrs_block = np.asarray(llrs_block, dtype=np.float64)
    if not (llrs_block.shape == np.shape(beta_raw) == np.shape(beta_hat)):
        raise ValueError("length mismatch")
    flipped = np.asarray(beta_raw, dtype=np.uint8) ^ np.asarray(beta_hat, dtype=np.uint8)
    return pm + float(np.abs(llrs_block)[flipped == 1].sum())


def compute_syndrome(beta: np.ndarray, node: NodeDescriptor) -> np.ndarray:
    """Syndrome bits of a block vector, rows by ascending frozen index."""
    beta = np.asarray(beta, dtype=np.uint8)
    if beta.size != node.length:
        raise ValueError("length mismatch")
    masks = parity_check_masks(node.frozen_local)
    beta_int = int(sum(int(b) << p for p, b in enumerate(beta)))
    s = syndrome_bits(beta_int, masks)
    return np.array([(s >> r) & 1 for r in range(masks.size)], dtype=np.uint8)


def syndrome_index(syndrome: np.ndarray) -> int:
    """Row label of a syndrome bit vector (bit r in the 2^r place)."""
    return int(sum(int(b) << r for r, b in enumerate(np.asarray(syndrome))))


# --------------------------------------------------------------------------- local codes

@dataclass(frozen=True)
class LocalBlockCode:
    """Generator, parity checks and info-recovery masks of one block's code."""

    generator: np.ndarray  # (k, b) over GF(2)
    h_masks: np.ndarray  # parity-check rows as position bitmasks
    recover_masks: np.ndarray  # message bit i = parity(codeword & recover_masks[i])

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def block_len(self) -> int:
        return self.generator.shape[1]

    @classmethod
    def polar(cls, frozen_local: np.ndarray) -> "LocalBlockCode":
        frozen_local = np.asarray(frozen_local, dtype=np.uint8)
        b = frozen_local.size
        g = kernel_matrix(b)
        info_pos = np.nonzero(frozen_local == 0)[0]
        # message bit i sits on sub-channel info_pos[i]; since the kernel is
        # self-inverse, u = c @ G and recovery masks are kernel columns.
        rec = np.array(
            [int(sum(int(g[p, j]) << p for p in range(b))) for j in info_pos],
            dtype=np.int64,
        )
        return cls(
            generator=g[info_pos].copy(),
            h_masks=parity_check_masks(frozen_local),
            recover_masks=rec,
        )

    @classmethod
    def from_generator(cls, generator: np.ndarray) -> "LocalBlockCode":
        generator = np.asarray(generator, dtype=np.uint8)
        return cls(
            generator=generator,
            h_masks=masks_from_generator(generator),
            recover_masks=info_recovery_masks(generator),
        )

    def codewords(self) -> np.ndarray:
        """All 2^k codewords, row m encoding the bits of message index m."""
        k, b = self.generator.shape
        msgs = ((np.arange(1 << k)[:, None] >> np.arange(k)[None, :]) & 1).astype(np.uint8)
        return (msgs @ self.generator) % 2


def local_code_for(node: NodeDescriptor, outer_generator: np.ndarray | None = None) -> LocalBlockCode:
    if outer_generator is not None:
        return LocalBlockCode.from_generator(outer_generator)
    return LocalBlockCode.polar(node.frozen_local)


# --------------------------------------------------------------------------- extensions

def _pattern_candidates(
    llrs_block: np.ndarray,
    view: SortedLlrView,
    flip_sets: tuple[tuple[int, ...], ...],
    list_size: int,
) -> list[Candidate]:
    raw = hard_decision(llrs_block)
    cands: list[Candidate] = []
    for flips in flip_sets:
        beta = raw.copy()
        dpm = 0.0
        for p in flips:
            beta[view.perm[p]] ^= 1
            dpm += view.magnitudes[p]
        cands.append((beta, dpm))
    return preselect(cands, list_size)


def preselect(cands: list[Candidate], keep: int) -> list[Candidate]:
    """Stable per-parent pre-selection: keep the lowest metrics, ties by index."""
    order = sorted(range(len(cands)), key=lambda i: (cands[i][1], i))
    return [cands[i] for i in order[:keep]]


def extend_r1(
    llrs_block: np.ndarray,
    view: SortedLlrView | None = None,
    list_size: int = 8,
) -> list[Candidate]:
    """Candidates for an all-info block, ascending metric increment.

    Uses the fixed 13-pattern set when the block is at least 8 wide and the
    list size is 8 (the regime the set is proven for); otherwise enumerates
    all 2^B hard vectors.
    """
    llrs_block = np.asarray(llrs_block, dtype=np.float64)
    b = llrs_block.size
    if b < 8 or list_size != 8:
        node = NodeDescriptor(0, b, NodeKind.R1, b, np.zeros(b, dtype=np.uint8))
        return preselect(extend_exhaustive(llrs_block, node), list_size)
    view = view or SortedLlrView.from_llrs(llrs_block)
    return _pattern_candidates(llrs_block, view, R1_FLIP_SETS, list_size)


def extend_spc(
    llrs_block: np.ndarray,
    view: SortedLlrView | None = None,
    list_size: int = 8,
) -> list[Candidate]:
    """Candidates for a single-parity-check block; every one has even parity.

    The raw estimate's checksum picks between the two 13-pattern sets: even
    keeps parity with pair flips, odd repairs it with single/triple flips.
    """
    llrs_block = np.asarray(llrs_block, dtype=np.float64)
    b = llrs_block.size
    if b < 8 or list_size != 8:
        frozen = np.zeros(b, dtype=np.uint8)
        frozen[0] = 1
        node = NodeDescriptor(0, b, NodeKind.SPC, b - 1, frozen)
        return preselect(extend_exhaustive(llrs_block, node), list_size)
    view = view or SortedLlrView.from_llrs(llrs_block)
    parity = int(hard_decision(llrs_block).sum()) & 1
    flip_sets = SPC_ODD_FLIP_SETS if parity else SPC_EVEN_FLIP_SETS
    return _pattern_candidates(llrs_block, view, flip_sets, list_size)


def extend_exhaustive(
    llrs_block: np.ndarray,
    node: NodeDescriptor,
    local_code: LocalBlockCode | None = None,
    max_k: int = EXHAUSTIVE_GUARD_K,
) -> list[Candidate]:
    """All 2^k local codewords with their metric increments, message order."""
    llrs_block = np.asarray(llrs_block, dtype=np.float64)
    code = local_code or LocalBlockCode.polar(node.frozen_local)
    if code.k > max_k:
        raise ValueError(
            f"exhaustive extension over 2^{code.k} candidates refused (max_k={max_k})"
        )
    raw = hard_decision(llrs_block)
    cws = code.codewords()
    dpms = (cws ^ raw) @ np.abs(llrs_block)
    return [(cws[m], float(dpms[m])) for m in range(cws.shape[0])]


def extend_general(
    llrs_block: np.ndarray,
    node: NodeDescriptor,
    params: FslParams,
    table: SyndromeTable,
    local_code: LocalBlockCode | None = None,
) -> list[Candidate]:
    """Budgeted flips plus syndrome-table lookup for a general block.

    Every flip mask over the flip_budget least-reliable positions yields one
    input vector; its coset's stored patterns complete it to valid codewords.
    Stored patterns touching the flip set are dropped (the saturation rule:
    re-flipping a budgeted position would carry a prohibitive penalty), which
    guarantees all emitted candidates are distinct.  Metric increments are the
    blockwise rule against the original raw estimate.
    """
    llrs_block = np.asarray(llrs_block, dtype=np.float64)
    b = llrs_block.size
    if table is None:
        raise TableError(f"syndrome table not built for block at {node.start}")
    if table.block_len != b or table.l_sd != params.patterns_per_syndrome:
        raise TableError("table does not match this node's shape")
    view = SortedLlrView.from_llrs(llrs_block)
    raw = hard_decision(llrs_block)
    raw_int = int(sum(int(x) << p for p, x in enumerate(raw)))
    t = min(params.flip_budget, b)
    t_mask = int(sum(1 << int(view.perm[p]) for p in range(t)))
    mags = np.abs(llrs_block)
    cands: list[Candidate] = []
    for m in range(1 << t):
        flip = int(sum(1 << int(view.perm[p]) for p in range(t) if (m >> p) & 1))
        v_int = raw_int ^ flip
        s = syndrome_bits(v_int, table.h_masks)
        for pat in table.patterns(s):
            pat = int(pat)
            if pat & t_mask:
                continue
            c_int = v_int ^ pat
            diff = c_int ^ raw_int
            beta = np.array([(c_int >> p) & 1 for p in range(b)], dtype=np.uint8)
            dpm = float(sum(mags[p] for p in range(b) if (diff >> p) & 1))
            cands.append((beta, dpm))
    return cands


def prune_global(
    candidates: list[tuple[int, np.ndarray, float]], list_size: int
) -> list[tuple[int, np.ndarray, float]]:
    """Keep the list_size smallest total metrics from (parent, codeword, pm)
    candidates; candidates must arrive in (parent, extension) order so that
    the stable sort implements the tie rule."""
    if not candidates:
        raise ValueError("no candidates to prune")
    order = sorted(range(len(candidates)), key=lambda i: (candidates[i][2], i))
    return [candidates[i] for i in order[:list_size]]


# --------------------------------------------------------------------------- tables

def tables_for_segmentation(
    descriptors: list[NodeDescriptor],
    params: FslParams,
    outer_generators: dict[int, np.ndarray] | None = None,
    use_cache: bool = True,
) -> dict[tuple, SyndromeTable]:
    """Build (or load from cache) the syndrome tables every GEN node needs."""
    from .syndrome import build_table_from_masks

    tables: dict[tuple, SyndromeTable] = {}
    for d in descriptors:
        if d.kind is not NodeKind.GEN:
            continue
        gen = (outer_generators or {}).get(d.start)
        if gen is None:
            masks = parity_check_masks(d.frozen_local)
            key = table_key(d.length, masks, params.patterns_per_syndrome)
            if key not in tables:
                tables[key] = get_table(
                    d.length, d.frozen_local, params.patterns_per_syndrome, use_cache
                )
        else:
            masks = masks_from_generator(gen)
            key = table_key(d.length, masks, params.patterns_per_syndrome)
            if key not in tables:
                tables[key] = build_table_from_masks(
                    d.length, masks, params.patterns_per_syndrome
                )
    return tables


def build_tables(spec: CodeSpec, params: FslParams, use_cache: bool = True):
    """Tables for a spec's segmentation (hybrid specs get code-specific ones)."""
    descs = segment_tree(spec, params, skip_leading_frozen=False)
    gens = hybrid_generator_map(spec, params) if spec.construction == "hybrid" else None
    return tables_for_segmentation(descs, params, gens, use_cache)


def hybrid_generator_map(spec: CodeSpec, params: FslParams) -> dict[int, np.ndarray]:
    """start -> outer generator for non-polar blocks of a hybrid spec."""
    from .outer import hybrid_outer_generator

    if params.block_len != 16:
        raise ValueError("hybrid codes are defined over 16-bit outer blocks")
    overrides = dict(spec.hybrid_families or ())
    frozen = spec.frozen_mask()
    gens: dict[int, np.ndarray] = {}
    for start in range(0, spec.n_mother, 16):
        local = frozen[start : start + 16]
        k = int(16 - local.sum())
        outer = hybrid_outer_generator(k, overrides.get(k))
        if outer.family != "polar":
            gens[start] = outer.generator
    return gens


# --------------------------------------------------------------------------- full decode

def _block_alpha(chan: np.ndarray, u_hat: np.ndarray, start: int, length: int) -> np.ndarray:
    """Channel-to-stage LLR propagation for one block, textbook f/g walk."""
    seg = chan
    seg_start = 0
    while seg.size > length:
        half = seg.size // 2
        a, bb = seg[:half], seg[half:]
        if start < seg_start + half:
            seg = np.sign(a) * np.sign(bb) * np.minimum(np.abs(a), np.abs(bb))
        else:
            bl = polar_transform(u_hat[seg_start : seg_start + half])
            seg = (1.0 - 2.0 * bl) * a + bb
            seg_start += half
    return seg


def _extend_block(
    llrs_block: np.ndarray,
    node: NodeDescriptor,
    params: FslParams,
    tables: dict[tuple, SyndromeTable] | None,
    code: LocalBlockCode,
) -> list[Candidate]:
    proven_list = params.list_size == 8 and node.length >= 8
    if node.kind is NodeKind.R1 and proven_list:
        return extend_r1(llrs_block, list_size=params.list_size)
    if node.kind is NodeKind.SPC and proven_list:
        return extend_spc(llrs_block, list_size=params.list_size)
    if node.kind is NodeKind.GEN:
        key = table_key(node.length, code.h_masks, params.patterns_per_syndrome)
        table = (tables or {}).get(key)
        if table is None:
            raise TableError(
                f"syndrome table not built for GEN node at bit {node.start} "
                f"(B={node.length}, K_B={node.k_local})"
            )
        cands = extend_general(llrs_block, node, params, table, code)
        return preselect(cands, params.list_size)
    # R0 / Rep / ML and the unproven-list fallbacks for R1/SPC
    cands = extend_exhaustive(llrs_block, node, code)
    return preselect(cands, params.list_size)


def fsl_decode(
    llrs: np.ndarray,
    spec: CodeSpec,
    params: FslParams | None = None,
    tables: dict[tuple, SyndromeTable] | None = None,
    descriptors: list[NodeDescriptor] | None = None,
) -> DecodeResult:
    """Blockwise list decode of one frame; contract matches scl_decode.

    Reference implementation composed from the public block operations; the
    simulation campaigns run the JIT twin in fsl_fast, which is pinned to
    this function by equivalence tests.
    """
    params = params or FslParams()
    llrs = np.ascontiguousarray(llrs, dtype=np.float64)
    if llrs.shape != (spec.n_mother,):
        raise ValueError(f"expected {spec.n_mother} LLRs, got {llrs.shape}")
    if descriptors is None:
        descriptors = segment_tree(spec, params, skip_leading_frozen=False)
    gens = hybrid_generator_map(spec, params) if spec.construction == "hybrid" else {}
    codes = {d.start: local_code_for(d, gens.get(d.start)) for d in descriptors}

    L = params.list_size
    n = spec.n_mother
    u_hat = [np.zeros(n, dtype=np.uint8)]
    info = [np.zeros(spec.k_total, dtype=np.uint8)]
    pm = [0.0]
    info_offset = 0
    for node in descriptors:
        code = codes[node.start]
        cands: list[tuple[int, np.ndarray, float]] = []
        for parent in range(len(pm)):
            alpha = _block_alpha(llrs, u_hat[parent], node.start, node.length)
            for beta, dpm in _extend_block(alpha, node, params, tables, code):
                cands.append((parent, beta, pm[parent] + dpm))
        survivors = prune_global(cands, L)
        new_u, new_info, new_pm = [], [], []
        for parent, beta, total in survivors:
            u = u_hat[parent].copy()
            u[node.start : node.start + node.length] = recover_info(beta)
            fr = info[parent].copy()
            for i, mask in enumerate(code.recover_masks):
                bits = beta[[p for p in range(node.length) if (int(mask) >> p) & 1]]
                fr[info_offset + i] = bits.sum() & 1
            new_u.append(u)
            new_info.append(fr)
            new_pm.append(total)
        u_hat, info, pm = new_u, new_info, new_pm
        info_offset += code.k
    return select_by_crc(np.array(pm), np.array(info), spec)


# --------------------------------------------------------------------------- JIT twin

_R1_MASKS = np.array([sum(1 << p for p in f) for f in R1_FLIP_SETS], dtype=np.int64)
_SPC_EVEN_MASKS = np.array(
    [sum(1 << p for p in f) for f in SPC_EVEN_FLIP_SETS], dtype=np.int64
)
_SPC_ODD_MASKS = np.array(
    [sum(1 << p for p in f) for f in SPC_ODD_FLIP_SETS], dtype=np.int64
)


def _bits_to_words(bit_rows: np.ndarray) -> np.ndarray:
    b = bit_rows.shape[1]
    weights = (np.int64(1) << np.arange(b, dtype=np.int64))
    return (bit_rows.astype(np.int64) @ weights).astype(np.int64)


@dataclass(frozen=True)
class _KernelPlan:
    starts: np.ndarray
    lens: np.ndarray
    routes: np.ndarray
    info_base: np.ndarray
    exh_off: np.ndarray
    exh_cnt: np.ndarray
    exh_words: np.ndarray
    h_off: np.ndarray
    h_cnt: np.ndarray
    h_words: np.ndarray
    pat_off: np.ndarray
    pat_words: np.ndarray
    rec_off: np.ndarray
    rec_cnt: np.ndarray
    rec_words: np.ndarray
    k_tot: int


def _build_plan(
    spec: CodeSpec,
    params: FslParams,
    tables: dict[tuple, SyndromeTable] | None,
    descriptors: list[NodeDescriptor],
    gens: dict[int, np.ndarray],
) -> _KernelPlan:
    """Flatten segmentation, tables and local codes into kernel arrays."""
    n_desc = len(descriptors)
    starts = np.zeros(n_desc, dtype=np.int64)
    lens = np.zeros(n_desc, dtype=np.int64)
    routes = np.zeros(n_desc, dtype=np.int64)
    info_base = np.zeros(n_desc, dtype=np.int64)
    exh_off = np.zeros(n_desc, dtype=np.int64)
    exh_cnt = np.zeros(n_desc, dtype=np.int64)
    h_off = np.zeros(n_desc, dtype=np.int64)
    h_cnt = np.zeros(n_desc, dtype=np.int64)
    pat_off = np.zeros(n_desc, dtype=np.int64)
    rec_off = np.zeros(n_desc, dtype=np.int64)
    rec_cnt = np.zeros(n_desc, dtype=np.int64)
    exh_words: list[np.ndarray] = []
    h_words: list[np.ndarray] = []
    pat_words: list[np.ndarray] = []
    rec_words: list[np.ndarray] = []
    exh_total = h_total = pat_total = rec_total = 0
    offset = 0
    for i, d in enumerate(descriptors):
        code = local_code_for(d, gens.get(d.start))
        starts[i] = d.start
        lens[i] = d.length
        info_base[i] = offset
        offset += code.k
        rec_off[i] = rec_total
        rec_cnt[i] = code.k
        rec_words.append(code.recover_masks)
        rec_total += code.k
        proven_list = params.list_size == 8 and d.length >= 8
        if d.kind is NodeKind.R1 and proven_list:
            routes[i] = _kernels.ROUTE_R1
        elif d.kind is NodeKind.SPC and proven_list:
            routes[i] = _kernels.ROUTE_SPC
        elif d.kind is NodeKind.GEN:
            routes[i] = _kernels.ROUTE_GEN
            key = table_key(d.length, code.h_masks, params.patterns_per_syndrome)
            table = (tables or {}).get(key)
            if table is None:
                raise TableError(
                    f"syndrome table not built for GEN node at bit {d.start} "
                    f"(B={d.length}, K_B={d.k_local})"
                )
            if table.truncated:
                raise TableError("truncated table cannot drive the kernel")
            h_off[i] = h_total
            h_cnt[i] = table.h_masks.size
            h_words.append(table.h_masks.astype(np.int64))
            h_total += table.h_masks.size
            pat_off[i] = pat_total
            flat = table.rows.astype(np.int64).ravel()
            pat_words.append(flat)
            pat_total += flat.size
        else:
            routes[i] = _kernels.ROUTE_EXH
            if code.k > EXHAUSTIVE_GUARD_K:
                raise ValueError(
                    f"block at bit {d.start} needs exhaustive extension over "
                    f"2^{code.k} candidates; unsupported (use list_size=8 patterns)"
                )
            words = _bits_to_words(code.codewords())
            exh_off[i] = exh_total
            exh_cnt[i] = words.size
            exh_words.append(words)
            exh_total += words.size
    if offset != spec.k_total:
        raise AssertionError("segmentation does not cover the info set")

    def cat(parts, total):
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    return _KernelPlan(
        starts=starts,
        lens=lens,
        routes=routes,
        info_base=info_base,
        exh_off=exh_off,
        exh_cnt=exh_cnt,
        exh_words=cat(exh_words, exh_total),
        h_off=h_off,
        h_cnt=h_cnt,
        h_words=cat(h_words, h_total),
        pat_off=pat_off,
        pat_words=cat(pat_words, pat_total),
        rec_off=rec_off,
        rec_cnt=rec_cnt,
        rec_words=cat(rec_words, rec_total),
        k_tot=spec.k_total,
    )


class FslDecoder:
    """Reusable flip-syndrome decoder: builds tables and the kernel plan once.

    Decode results are identical to fsl_decode (the op-composed reference);
    the per-frame work runs in the compiled kernel.
    """

    def __init__(
        self,
        spec: CodeSpec,
        params: FslParams | None = None,
        tables: dict[tuple, SyndromeTable] | None = None,
        use_cache: bool = True,
    ):
        self.spec = spec
        self.params = params or FslParams()
        self.descriptors = segment_tree(spec, self.params, skip_leading_frozen=False)
        gens = (
            hybrid_generator_map(spec, self.params)
            if spec.construction == "hybrid"
            else {}
        )
        if tables is None:
            tables = tables_for_segmentation(
                self.descriptors, self.params, gens or None, use_cache
            )
        self.tables = tables
        self._plan = _build_plan(spec, self.params, tables, self.descriptors, gens)

    def decode(self, llrs: np.ndarray) -> DecodeResult:
        llrs = np.ascontiguousarray(llrs, dtype=np.float64)
        if llrs.shape != (self.spec.n_mother,):
            raise ValueError(f"expected {self.spec.n_mother} LLRs, got {llrs.shape}")
        p = self._plan
        pm, info, nact = _kernels.fsl_kernel(
            llrs,
            p.starts,
            p.lens,
            p.routes,
            p.info_base,
            p.exh_off,
            p.exh_cnt,
            p.exh_words,
            p.h_off,
            p.h_cnt,
            p.h_words,
            p.pat_off,
            p.pat_words,
            p.rec_off,
            p.rec_cnt,
            p.rec_words,
            _R1_MASKS,
            _SPC_EVEN_MASKS,
            _SPC_ODD_MASKS,
            self.params.list_size,
            self.params.flip_budget,
            self.params.patterns_per_syndrome,
            p.k_tot,
        )
        return select_by_crc(pm[:nact], info[:nact], self.spec)


def fsl_decode_fast(
    llrs: np.ndarray,
    spec: CodeSpec,
    params: FslParams | None = None,
    tables: dict[tuple, SyndromeTable] | None = None,
) -> DecodeResult:
    """One-shot convenience wrapper over FslDecoder."""
    return FslDecoder(spec, params, tables).decode(llrs)

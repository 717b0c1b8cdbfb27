"""CRC-aided successive-cancellation list decoder.

This is the golden reference the block decoder is measured against: the
textbook recursions with the hardware-friendly min-sum LLR updates and the
absolute-LLR path-metric penalty.  List pruning is stable: on equal metrics
the lower parent index survives, then the lower extension bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import CodeSpec, crc_check


def f_update(a, b):
    """Min-sum check-node update: sgn(a) sgn(b) min(|a|, |b|)."""
    return np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))


def g_update(a, b, bit):
    """Variable-node update (1 - 2 bit) a + b."""
    return (1.0 - 2.0 * bit) * np.asarray(a, dtype=np.float64) + b


def beta_update(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Combine child hard estimates: (left ^ right) || right."""
    left = np.asarray(left, dtype=np.uint8)
    right = np.asarray(right, dtype=np.uint8)
    if left.shape != right.shape:
        raise ValueError("length mismatch")
    return np.concatenate([left ^ right, right])


def pm_update(pm: float, llr: float, u_hat: int, beta: int) -> float:
    """Path metric penalty: unchanged on agreement, else pm + |llr|."""
    return pm if u_hat == beta else pm + abs(llr)


@dataclass(frozen=True)
class DecodeResult:
    """Outcome of a list decode after CRC-based selection."""

    payload: np.ndarray
    crc_ok: bool
    final_pm: float
    selected_path_rank: int
    path_metrics: np.ndarray  # all surviving metrics, ascending
    info_frame: np.ndarray  # payload || crc of the selected path


def select_by_crc(
    pm: np.ndarray, frames: np.ndarray, spec: CodeSpec
) -> DecodeResult:
    """Pick the lowest-metric CRC-passing path, else the lowest-metric one."""
    order = np.argsort(pm, kind="stable")
    rank = 0
    crc_ok = False
    for r, p in enumerate(order):
        if crc_check(frames[p], spec.crc_len):
            rank = r
            crc_ok = True
            break
    chosen = order[rank]
    frame = frames[chosen]
    return DecodeResult(
        payload=frame[: spec.k_payload].copy(),
        crc_ok=crc_ok,
        final_pm=float(pm[chosen]),
        selected_path_rank=rank,
        path_metrics=pm[order].copy(),
        info_frame=frame.copy(),
    )


def scl_decode(llrs: np.ndarray, spec: CodeSpec, list_size: int) -> DecodeResult:
    """List-decode one frame of channel LLRs.

    Bit-exact SC when list_size == 1.  The returned metrics are exactly the
    accumulated |llr| disagreement penalties of each surviving path.
    """
    llrs = np.ascontiguousarray(llrs, dtype=np.float64)
    if llrs.shape != (spec.n_mother,):
        raise ValueError(f"expected {spec.n_mother} LLRs, got {llrs.shape}")
    if list_size < 1:
        raise ValueError("list_size must be >= 1")
    pm, uhat, nact = _kernels.scl_kernel(llrs, spec.frozen_mask(), list_size)
    info = np.asarray(spec.info_set, dtype=np.intp)
    frames = uhat[:nact, info]
    return select_by_crc(pm[:nact], frames, spec)

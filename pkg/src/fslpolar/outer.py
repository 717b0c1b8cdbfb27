"""Distance-optimized outer codes for length-16 constituent blocks.

Low rates use repetition-extended simplex codes, mid rates extended-BCH codes,
high rates the duals of those codes brought to generator form; the remaining
rates keep the plain polar sub-codes.  Every replacement either raises the
minimum distance or thins out the minimum-weight codewords relative to the
(16, k) polar code of the same dimension.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .core import construct_pw
from .gf2 import null_space, rank
from .syndrome import kernel_matrix

OUTER_LEN = 16

# Families by local dimension: simplex repetitions where they beat polar
# distance outright, eBCH at 6..7, duals of those codes at high rate.
DEFAULT_FAMILIES: dict[int, str] = {
    2: "simplex",
    3: "simplex",
    4: "simplex",
    6: "ebch",
    7: "ebch",
    8: "dual_ebch",
    9: "dual_ebch",
    12: "dual_simplex",
    13: "dual_simplex",
    14: "dual_simplex",
}

FAMILIES = ("polar", "simplex", "ebch", "dual_ebch", "dual_simplex")


def _rows(text: str) -> np.ndarray:
    return np.array(
        [[int(c) for c in line.split()] for line in text.strip().splitlines()],
        dtype=np.uint8,
    )


_S2 = _rows("1 1 0\n1 0 1")
_S3 = _rows("1 1 1 1 0 0 0\n1 1 0 0 1 1 0\n1 0 1 0 1 0 1")
_S4 = _rows(
    """
    1 1 1 1 1 1 1 1 0 0 0 0 0 0 0
    1 1 1 1 0 0 0 0 1 1 1 1 0 0 0
    1 1 0 0 1 1 0 0 1 1 0 0 1 1 0
    1 0 1 0 1 0 1 0 1 0 1 0 1 0 1
    """
)
_G2 = np.concatenate([np.tile(_S2, (1, 5)), np.array([[1], [1]], dtype=np.uint8)], axis=1)
_G3 = np.concatenate(
    [_S3, _S3, np.array([[1, 1], [1, 1], [1, 0]], dtype=np.uint8)], axis=1
)
_G4 = np.concatenate([_S4, np.ones((4, 1), dtype=np.uint8)], axis=1)
_G6 = _rows(
    """
    0 0 1 0 0 1 0 0 1 1 1 0 1 0 0 0
    1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0
    1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 0
    1 1 0 0 1 1 0 0 1 1 0 0 1 1 0 0
    1 0 1 0 1 0 1 0 1 0 1 0 1 0 1 0
    1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1
    """
)
_G7 = np.concatenate(
    [_rows("0 1 1 1 0 0 1 0 0 0 1 0 1 0 0 0"), _G6], axis=0
)

_SIMPLEX = {2: _G2, 3: _G3, 4: _G4}
_EBCH = {6: _G6, 7: _G7}


@dataclass(frozen=True)
class OuterCode:
    """An outer block code: family label, dimension, generator matrix."""

    family: str
    k_local: int
    generator: np.ndarray

    def __post_init__(self) -> None:
        if self.generator.shape != (self.k_local, OUTER_LEN):
            raise ValueError("generator shape must be (k_local, 16)")
        if self.k_local and rank(self.generator) != self.k_local:
            raise ValueError("generator must have full row rank")


@dataclass(frozen=True)
class WeightSpectrum:
    """Codeword counts by Hamming weight, index w in [0, block_len]."""

    counts: np.ndarray

    @property
    def min_distance(self) -> int:
        nz = np.nonzero(self.counts[1:])[0]
        return int(nz[0]) + 1 if nz.size else 0

    def a(self, w: int) -> int:
        return int(self.counts[w])

    def as_dict(self) -> dict[int, int]:
        return {w: int(c) for w, c in enumerate(self.counts) if c and w}


def polar_outer_generator(k: int) -> np.ndarray:
    """Kernel rows on the k most reliable sub-channels of a length-16 block."""
    if k == 0:
        return np.zeros((0, OUTER_LEN), dtype=np.uint8)
    return kernel_matrix(OUTER_LEN)[construct_pw(OUTER_LEN, k)].copy()


def dual_generator(primal: np.ndarray) -> np.ndarray:
    """Generator of the dual code: the primal's parity checks, row-reduced."""
    return null_space(primal)


@functools.lru_cache(maxsize=None)
def _dual_ebch8() -> np.ndarray:
    """Distance-optimized 8-dim subcode of the dual of the (16, 7) eBCH code.

    No primal of dimension 8 exists in the extended-BCH chain, so the code is
    pinned down by exhaustive search over the hyperplane subcodes of the
    9-dim dual, maximizing (min distance, -multiplicity); the search is
    deterministic (first best hyperplane in mask order wins).
    """
    d9 = null_space(_G7)
    msgs = ((np.arange(512)[:, None] >> np.arange(9)[None, :]) & 1).astype(np.uint8)
    weights = ((msgs @ d9) % 2).sum(1)
    best_key, best_lam = None, 0
    for lam in range(1, 512):
        lam_bits = np.array([(lam >> i) & 1 for i in range(9)], dtype=np.uint8)
        sel = ((msgs @ lam_bits) % 2) == 0
        counts = np.bincount(weights[sel], minlength=OUTER_LEN + 1)
        d = int(np.nonzero(counts[1:])[0][0]) + 1
        key = (d, -int(counts[d]))
        if best_key is None or key > best_key:
            best_key, best_lam = key, lam
    lam_bits = np.array([(best_lam >> i) & 1 for i in range(9)], dtype=np.uint8)
    sub = null_space(lam_bits[None, :])  # (8, 9) message-space basis
    return (sub @ d9) % 2


@functools.lru_cache(maxsize=None)
def _generator_for(k: int, family: str) -> np.ndarray:
    if family == "polar":
        return polar_outer_generator(k)
    if family == "simplex":
        return _SIMPLEX[k].copy()
    if family == "ebch":
        return _EBCH[k].copy()
    if family == "dual_ebch":
        if k == 9:
            return dual_generator(_G7)
        if k == 10:
            return dual_generator(_G6)
        if k == 8:
            return _dual_ebch8()
        raise KeyError(k)
    if family == "dual_simplex":
        primal = {12: _G4, 13: _G3, 14: _G2}[k]
        return dual_generator(primal)
    raise ValueError(f"unknown family {family!r}")


def hybrid_outer_generator(k_local: int, family: str | None = None) -> OuterCode:
    """The outer code used for a block with k_local info bits.

    The default family assignment keeps polar for k in {0, 1, 5, 10, 11, 15,
    16}; the 10-dim dual-eBCH code exists for callers that want it but is not
    selected by default.
    """
    if not 0 <= k_local <= OUTER_LEN:
        raise ValueError(f"k_local must be in [0, 16], got {k_local}")
    if family is None:
        family = DEFAULT_FAMILIES.get(k_local, "polar")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    return OuterCode(
        family=family, k_local=k_local, generator=_generator_for(k_local, family)
    )


def weight_spectrum(code: OuterCode | np.ndarray, max_k: int = 20) -> WeightSpectrum:
    """Exact spectrum by enumerating all 2^k codewords."""
    g = code.generator if isinstance(code, OuterCode) else np.asarray(code, dtype=np.uint8)
    k, n = g.shape
    if k > max_k:
        raise ValueError(f"refusing to enumerate 2^{k} codewords (max_k={max_k})")
    msgs = ((np.arange(1 << k)[:, None] >> np.arange(k)[None, :]) & 1).astype(np.uint8)
    w = ((msgs @ g) % 2).sum(1)
    return WeightSpectrum(counts=np.bincount(w, minlength=n + 1))

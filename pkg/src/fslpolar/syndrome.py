"""Syndrome -> error-pattern lookup tables for general constituent blocks.

Each table row holds the lowest-weight error patterns of one syndrome coset,
in canonical order: ascending weight, ties by ascending lexicographic order of
the flip-position tuple.  A pattern stores block position p in the 2^p place,
which makes the hex rendering of small tables directly comparable across
implementations.

File format (version 1, all little-endian):
    magic  b"FSLT" | version u16 | block_len u16 | k_local u16 | l_sd u16
    frozen_mask u32 (bit p set = position p frozen)
    2^(block_len - k_local) rows of l_sd pattern words (u16 each)
    crc32 u32 over everything above
"""

from __future__ import annotations

import itertools
import os
import struct
import zlib
from dataclasses import dataclass
from hashlib import sha256
from pathlib import Path

import numpy as np

_MAGIC = b"FSLT"
_VERSION = 1
CACHE_ENV = "FSLPOLAR_TABLE_CACHE"


class TableError(Exception):
    """Corrupt, missing or mismatched syndrome table."""


def kernel_matrix(block_len: int) -> np.ndarray:
    """F^(x)s for the block: entry [i, j] = 1 iff supp(j) is within supp(i)."""
    i = np.arange(block_len)
    return ((i[:, None] & i[None, :]) == i[None, :]).astype(np.uint8)


def parity_check_masks(frozen_local: np.ndarray) -> np.ndarray:
    """H rows as position bitmasks, ordered by ascending frozen index.

    Row r is column f_r of the block kernel, so a local codeword satisfies
    parity(beta & mask_r) = 0 for every r.
    """
    frozen_local = np.asarray(frozen_local, dtype=np.uint8)
    b = frozen_local.size
    g = kernel_matrix(b)
    masks = []
    for f in np.nonzero(frozen_local)[0]:
        masks.append(int(sum(int(g[p, f]) << p for p in range(b))))
    return np.array(masks, dtype=np.int64)


def masks_from_generator(generator: np.ndarray) -> np.ndarray:
    """Parity-check masks of an arbitrary linear block code given its generator."""
    from .gf2 import null_space

    h = null_space(np.asarray(generator, dtype=np.uint8))
    b = generator.shape[1]
    return np.array(
        [int(sum(int(row[p]) << p for p in range(b))) for row in h], dtype=np.int64
    )


def syndrome_bits(beta_int: int, h_masks: np.ndarray) -> int:
    """Syndrome as an integer: bit r = parity(beta & mask_r)."""
    s = 0
    for r, m in enumerate(h_masks):
        s |= (int(beta_int) & int(m)).bit_count() % 2 << r
    return s


@dataclass(frozen=True)
class SyndromeTable:
    """Per-syndrome lists of the l_sd lowest-weight error patterns."""

    block_len: int
    k_local: int
    l_sd: int
    h_masks: np.ndarray  # parity-check rows as bitmasks
    rows: np.ndarray  # (2^(b-k), l_sd) patterns as ints
    row_fill: np.ndarray  # valid entries per row (== l_sd unless truncated)
    frozen_mask: int | None = None  # set for polar blocks, None for hybrid codes

    @property
    def truncated(self) -> bool:
        return bool((self.row_fill < self.l_sd).any())

    def patterns(self, syndrome: int) -> np.ndarray:
        return self.rows[syndrome, : self.row_fill[syndrome]]


def _canonical_patterns(block_len: int):
    """All 2^b patterns, ascending weight then position-tuple lex order."""
    for w in range(block_len + 1):
        for pos in itertools.combinations(range(block_len), w):
            yield sum(1 << p for p in pos)


def build_table_from_masks(
    block_len: int, h_masks: np.ndarray, l_sd: int, frozen_mask: int | None = None
) -> SyndromeTable:
    """Scan patterns in canonical order, filling each coset row up to l_sd."""
    h_masks = np.asarray(h_masks, dtype=np.int64)
    n_rows = 1 << h_masks.size
    rows = np.zeros((n_rows, l_sd), dtype=np.int64)
    fill = np.zeros(n_rows, dtype=np.int64)
    remaining = n_rows * l_sd
    for pattern in _canonical_patterns(block_len):
        s = syndrome_bits(pattern, h_masks)
        if fill[s] < l_sd:
            rows[s, fill[s]] = pattern
            fill[s] += 1
            remaining -= 1
            if remaining == 0:
                break
    return SyndromeTable(
        block_len=block_len,
        k_local=block_len - int(h_masks.size),
        l_sd=l_sd,
        h_masks=h_masks,
        rows=rows,
        row_fill=fill,
        frozen_mask=frozen_mask,
    )


def build_table(block_len: int, frozen_local: np.ndarray, l_sd: int) -> SyndromeTable:
    """Table for a polar block with the given local frozen pattern."""
    from .core import is_power_of_two

    frozen_local = np.asarray(frozen_local, dtype=np.uint8)
    if not is_power_of_two(block_len) or frozen_local.size != block_len:
        raise ValueError("block_len must be a power of two matching the mask")
    if l_sd < 1:
        raise ValueError("l_sd must be >= 1")
    fmask = int(sum(int(b) << p for p, b in enumerate(frozen_local)))
    return build_table_from_masks(
        block_len, parity_check_masks(frozen_local), l_sd, frozen_mask=fmask
    )


# --------------------------------------------------------------------------- serialization

def serialize_table(table: SyndromeTable) -> bytes:
    if table.frozen_mask is None:
        raise TableError("only polar-block tables (with a frozen mask) serialize")
    if table.block_len > 16:
        raise TableError("file format stores u16 patterns; block_len > 16 unsupported")
    head = _MAGIC + struct.pack(
        "<HHHHI", _VERSION, table.block_len, table.k_local, table.l_sd, table.frozen_mask
    )
    body = table.rows.astype("<u2").tobytes()
    payload = head + body
    return payload + struct.pack("<I", zlib.crc32(payload))


def load_table(data: bytes) -> SyndromeTable:
    if len(data) < 18 or data[:4] != _MAGIC:
        raise TableError("not a syndrome table file")
    payload, (crc,) = data[:-4], struct.unpack("<I", data[-4:])
    if zlib.crc32(payload) != crc:
        raise TableError("checksum mismatch")
    version, block_len, k_local, l_sd, fmask = struct.unpack("<HHHHI", data[4:16])
    if version != _VERSION:
        raise TableError(f"unsupported table version {version}")
    n_rows = 1 << (block_len - k_local)
    rows = np.frombuffer(data[16 : 16 + n_rows * l_sd * 2], dtype="<u2")
    rows = rows.reshape(n_rows, l_sd).astype(np.int64)
    frozen_local = np.array([(fmask >> p) & 1 for p in range(block_len)], dtype=np.uint8)
    return SyndromeTable(
        block_len=block_len,
        k_local=k_local,
        l_sd=l_sd,
        h_masks=parity_check_masks(frozen_local),
        rows=rows,
        row_fill=np.full(n_rows, l_sd, dtype=np.int64),
        frozen_mask=fmask,
    )


# --------------------------------------------------------------------------- disk cache

def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "fslpolar" / "tables"


def table_key(block_len: int, h_masks: np.ndarray, l_sd: int) -> tuple:
    return (block_len, tuple(int(m) for m in h_masks), l_sd)


def get_table(
    block_len: int, frozen_local: np.ndarray, l_sd: int, use_cache: bool = True
) -> SyndromeTable:
    """Build a polar-block table, round-tripping through the disk cache."""
    if not use_cache:
        return build_table(block_len, frozen_local, l_sd)
    masks = parity_check_masks(np.asarray(frozen_local, dtype=np.uint8))
    digest = sha256(repr(table_key(block_len, masks, l_sd)).encode()).hexdigest()[:24]
    path = cache_dir() / f"{digest}.fst"
    if path.exists():
        try:
            return load_table(path.read_bytes())
        except TableError:
            path.unlink()
    table = build_table(block_len, frozen_local, l_sd)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(serialize_table(table))
    return table

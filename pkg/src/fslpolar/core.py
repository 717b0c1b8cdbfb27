"""Mother-code arithmetic shared by every decoder.

Polar transform over GF(2), CRC-16 attachment, polarization-weight code
construction, BPSK mapping and the AWGN/LLR channel model.

Conventions (used consistently across the package):
  * bits are 0/1 stored in ``uint8`` numpy arrays,
  * LLRs are natural-log, positive LLR means bit 0 is more likely,
  * ``sgn(0)`` counts as positive, so a zero LLR hard-decides to bit 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Transmit power is unit (BPSK symbols +-1); snr_db is Es/N0 unless a
# caller converts from Eb/N0 first (see esn0_from_ebn0).
NOISELESS_LLR = 1e6

CRC16_POLY = 0x1021  # CRC-16/CCITT-FALSE
CRC16_INIT = 0xFFFF
DEFAULT_CRC_LEN = 16


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class CodeSpec:
    """A mother polar code: length, payload size, CRC width and info set.

    ``info_set`` holds the k_payload + crc_len sub-channel indices carrying
    payload and CRC bits; every other sub-channel is frozen to zero.  The CRC
    bits are appended to, but not counted in, ``k_payload``.
    """

    n_mother: int
    k_payload: int
    crc_len: int
    info_set: tuple[int, ...]
    construction: str = "pw"  # "pw" | "adjusted" | "hybrid"
    # hybrid only: overrides of the default k -> outer family assignment
    hybrid_families: tuple[tuple[int, str], ...] | None = None

    def __post_init__(self) -> None:
        if not is_power_of_two(self.n_mother) or self.n_mother < 2:
            raise ValueError(f"n_mother must be a power of two >= 2, got {self.n_mother}")
        if self.crc_len < 0 or self.k_payload < 1:
            raise ValueError("k_payload must be >= 1 and crc_len >= 0")
        info = tuple(sorted(int(i) for i in self.info_set))
        if len(set(info)) != len(info):
            raise ValueError("info_set has duplicate indices")
        if len(info) != self.k_payload + self.crc_len:
            raise ValueError(
                f"info_set size {len(info)} != k_payload + crc_len = "
                f"{self.k_payload + self.crc_len}"
            )
        if info and (info[0] < 0 or info[-1] >= self.n_mother):
            raise ValueError("info_set indices out of [0, N)")
        object.__setattr__(self, "info_set", info)

    @property
    def k_total(self) -> int:
        return self.k_payload + self.crc_len

    @property
    def stages(self) -> int:
        return self.n_mother.bit_length() - 1

    def frozen_mask(self) -> np.ndarray:
        """uint8 mask of length N, 1 = frozen."""
        mask = np.ones(self.n_mother, dtype=np.uint8)
        mask[list(self.info_set)] = 0
        return mask

    def rate(self) -> float:
        return self.k_payload / self.n_mother


def make_spec(n: int, k: int, crc_len: int = DEFAULT_CRC_LEN) -> CodeSpec:
    """Polarization-weight CodeSpec for an (n, k) code with crc_len CRC bits."""
    info = construct_pw(n, k + crc_len)
    return CodeSpec(n_mother=n, k_payload=k, crc_len=crc_len, info_set=tuple(info))


# --------------------------------------------------------------------------- transform

def polar_transform(u: np.ndarray) -> np.ndarray:
    """Multiply by the n-fold Kronecker power of [[1,0],[1,1]] over GF(2).

    Self-inverse; accepts any power-of-two length.
    """
    u = np.asarray(u, dtype=np.uint8)
    n = u.shape[-1]
    if not is_power_of_two(n):
        raise ValueError(f"length {n} is not a power of two")
    c = u.copy()
    dist = 1
    while dist < n:
        step = 2 * dist
        for j in range(dist):
            c[..., j::step] ^= c[..., j + dist::step]
        dist = step
    return c


# --------------------------------------------------------------------------- CRC

def _crc16(bits: np.ndarray) -> int:
    """CRC-16/CCITT-FALSE over a bit sequence, MSB-first, init 0xFFFF."""
    reg = CRC16_INIT
    for b in bits:
        reg ^= int(b) << 15
        reg <<= 1
        if reg & 0x10000:
            reg ^= CRC16_POLY | 0x10000
    return reg & 0xFFFF


def crc_bits(payload: np.ndarray, crc_len: int = DEFAULT_CRC_LEN) -> np.ndarray:
    """CRC field for a payload bit vector, MSB first."""
    if crc_len == 0:
        return np.zeros(0, dtype=np.uint8)
    if crc_len != 16:
        raise ValueError("only 16-bit CRC is supported")
    reg = _crc16(np.asarray(payload, dtype=np.uint8))
    return np.array([(reg >> (15 - i)) & 1 for i in range(16)], dtype=np.uint8)


def crc_attach(payload: np.ndarray, crc_len: int = DEFAULT_CRC_LEN) -> np.ndarray:
    """payload || CRC(payload)."""
    payload = np.asarray(payload, dtype=np.uint8)
    return np.concatenate([payload, crc_bits(payload, crc_len)])


def crc_check(frame: np.ndarray, crc_len: int = DEFAULT_CRC_LEN) -> bool:
    """True iff the trailing crc_len bits equal the CRC of the leading bits."""
    frame = np.asarray(frame, dtype=np.uint8)
    if crc_len == 0:
        return True
    if frame.size < crc_len:
        raise ValueError("frame shorter than CRC field")
    return bool(np.array_equal(frame[-crc_len:], crc_bits(frame[:-crc_len], crc_len)))


# --------------------------------------------------------------------------- construction

_PW_BETA = 2.0 ** 0.25


def pw_weights(n: int) -> np.ndarray:
    """Polarization weight of each sub-channel: w(i) = sum_j b_j * beta^j."""
    if not is_power_of_two(n):
        raise ValueError(f"length {n} is not a power of two")
    stages = n.bit_length() - 1
    i = np.arange(n)
    w = np.zeros(n)
    for j in range(stages):
        w += ((i >> j) & 1) * _PW_BETA**j
    return w


def pw_order(n: int) -> np.ndarray:
    """Sub-channels sorted by descending reliability (ties: higher index first)."""
    w = pw_weights(n)
    # argsort ascending on (w, index); reversing yields descending w with
    # higher index winning ties.
    return np.argsort(w, kind="stable")[::-1].copy()


def construct_pw(n: int, k_total: int) -> np.ndarray:
    """The k_total most reliable sub-channel indices, sorted ascending."""
    if not 0 < k_total <= n:
        raise ValueError(f"k_total must be in (0, {n}], got {k_total}")
    return np.sort(pw_order(n)[:k_total])


# --------------------------------------------------------------------------- channel

def modulate_bpsk(c: np.ndarray) -> np.ndarray:
    """Map bits to unit-energy symbols: x = 1 - 2c."""
    return 1.0 - 2.0 * np.asarray(c, dtype=np.float64)


def noise_sigma(snr_db: float) -> float:
    """Noise standard deviation for Es/N0 = snr_db with unit symbol energy."""
    return float(np.sqrt(1.0 / (2.0 * 10.0 ** (snr_db / 10.0))))


def esn0_from_ebn0(ebn0_db: float, rate: float) -> float:
    """Convert Eb/N0 to Es/N0 for BPSK at the given code rate."""
    return ebn0_db + 10.0 * np.log10(rate)


def awgn_llr(x: np.ndarray, snr_db: float, rng: np.random.Generator | int) -> np.ndarray:
    """Pass symbols through AWGN and return channel LLRs 2y/sigma^2.

    ``snr_db`` is Es/N0 in dB; ``snr_db = inf`` is the noiseless limit and
    returns +-NOISELESS_LLR. Output is a pure function of (x, snr_db, seed).
    """
    x = np.asarray(x, dtype=np.float64)
    if np.isinf(snr_db):
        return np.where(x >= 0, NOISELESS_LLR, -NOISELESS_LLR)
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    sigma = noise_sigma(snr_db)
    y = x + sigma * rng.standard_normal(x.shape)
    return 2.0 * y / (sigma * sigma)


def frame_rng(seed: int, frame_index: int) -> np.random.Generator:
    """Independent per-frame substream; reproducible under any parallelism."""
    return np.random.default_rng(np.random.SeedSequence((int(seed), int(frame_index))))


# --------------------------------------------------------------------------- encode

def encode_frame(payload: np.ndarray, spec: CodeSpec) -> np.ndarray:
    """CRC-attach, place on info sub-channels, polar-transform."""
    if spec.construction == "hybrid":
        raise ValueError("hybrid specs encode via construct.hybrid_polar_encode")
    payload = np.asarray(payload, dtype=np.uint8)
    if payload.size != spec.k_payload:
        raise ValueError(f"payload length {payload.size} != {spec.k_payload}")
    u = np.zeros(spec.n_mother, dtype=np.uint8)
    u[list(spec.info_set)] = crc_attach(payload, spec.crc_len)
    return polar_transform(u)

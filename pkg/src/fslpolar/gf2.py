"""Dense GF(2) matrix helpers for small block codes (dimensions <= 32)."""

from __future__ import annotations

import numpy as np


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot column list."""
    r = np.array(m, dtype=np.uint8) & 1
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        hit = np.nonzero(r[row:, col])[0]
        if hit.size == 0:
            continue
        k = row + hit[0]
        if k != row:
            r[[row, k]] = r[[k, row]]
        elim = np.nonzero(r[:, col])[0]
        for e in elim:
            if e != row:
                r[e] ^= r[row]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: np.ndarray) -> int:
    return len(rref(m)[1])


def null_space(m: np.ndarray) -> np.ndarray:
    """Basis of {x : m @ x = 0 (mod 2)} as rows, in RREF."""
    m = np.array(m, dtype=np.uint8) & 1
    _, cols = m.shape
    r, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for prow, pc in enumerate(pivots):
            basis[i, pc] = r[prow, fc]
    return rref(basis)[0] if basis.size else basis


def inverse(m: np.ndarray) -> np.ndarray:
    """Inverse of a square GF(2) matrix."""
    m = np.array(m, dtype=np.uint8) & 1
    k = m.shape[0]
    aug = np.concatenate([m, np.eye(k, dtype=np.uint8)], axis=1)
    r, pivots = rref(aug)
    if pivots[:k] != list(range(k)):
        raise ValueError("matrix is singular over GF(2)")
    return r[:, k:]


def info_recovery_masks(g: np.ndarray) -> np.ndarray:
    """Bitmasks m_i with message_i = parity(codeword & m_i), for c = msg @ g.

    g must have full row rank; returns an int64 array of g.shape[0] masks over
    the codeword bit positions (bit p of a mask is the 2^p place).
    """
    g = np.array(g, dtype=np.uint8) & 1
    k, n = g.shape
    _, pivots = rref(g)
    if len(pivots) != k:
        raise ValueError("generator does not have full row rank")
    inv = inverse(g[:, pivots])
    masks = np.zeros(k, dtype=np.int64)
    for i in range(k):
        for j in range(k):
            if inv[j, i]:
                masks[i] |= 1 << pivots[j]
    return masks

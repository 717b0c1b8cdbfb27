"""JIT-compiled decoder hot loops.

Both list decoders spend their time in per-bit / per-block scalar loops that
numpy cannot express efficiently for a single frame, so the full decode of one
frame is implemented here as an njit kernel.  The kernels fall back to plain
Python when numba is unavailable (or NUMBA_DISABLE_JIT is set), which keeps
them debuggable; the test suite pins their behaviour against independent
reference implementations.

Shared memory layout: per path, LLRs live in a heap array of size N-1 holding
stages 0..n-1 (stage s occupies [2^s - 1, 2^(s+1) - 1)), while the stage-n
channel LLRs are shared read-only across paths.  Hard-decision feedback for
g-updates is recomputed on demand from the decided bits via the local
butterfly transform instead of being stored per stage.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):  # type: ignore
        def wrap(fn):
            return fn

        return wrap if not (args and callable(args[0])) else args[0]


@njit(cache=True, nogil=True)
def _stable_order(keys: np.ndarray) -> np.ndarray:
    """Indices sorting keys ascending; equal keys keep ascending index order."""
    idx = np.argsort(keys)
    m = idx.shape[0]
    start = 0
    for end in range(1, m + 1):
        if end == m or keys[idx[end]] != keys[idx[start]]:
            if end - start > 1:
                for a in range(start + 1, end):
                    v = idx[a]
                    b = a - 1
                    while b >= start and idx[b] > v:
                        idx[b + 1] = idx[b]
                        b -= 1
                    idx[b + 1] = v
            start = end
    return idx


@njit(cache=True, nogil=True, inline="always")
def _local_transform(bits: np.ndarray, length: int) -> None:
    """In-place GF(2) butterfly over bits[0:length] (length a power of two)."""
    dist = 1
    while dist < length:
        step = dist << 1
        for a in range(0, length, step):
            for b in range(dist):
                bits[a + b] ^= bits[a + b + dist]
        dist = step


@njit(cache=True, nogil=True)
def _propagate(
    chan: np.ndarray,
    alpha: np.ndarray,
    uhat: np.ndarray,
    btmp: np.ndarray,
    l: int,
    pos: int,
    n: int,
    stop_stage: int,
) -> None:
    """Fill the alpha heap of path l down to stop_stage for leaf position pos.

    pos must be a multiple of 2**stop_stage.  For pos == 0 this is a pure
    f-cascade from the channel; otherwise a g-update runs at the lowest stage
    where pos opens a right child, using the transform of the already decided
    bits of the left sibling.
    """
    if pos == 0:
        top = n
    else:
        t = stop_stage
        while ((pos >> t) & 1) == 0:
            t += 1
        half = 1 << t
        base = ((pos >> t) - 1) << t
        for j in range(half):
            btmp[j] = uhat[l, base + j]
        _local_transform(btmp, half)
        if t + 1 == n:
            for j in range(half):
                s = 1.0 - 2.0 * btmp[j]
                alpha[l, (half - 1) + j] = s * chan[j + base] + chan[j + base + half]
        else:
            po = (1 << (t + 1)) - 1
            for j in range(half):
                s = 1.0 - 2.0 * btmp[j]
                alpha[l, (half - 1) + j] = s * alpha[l, po + j] + alpha[l, po + j + half]
        top = t
    for s in range(top - 1, stop_stage - 1, -1):
        half = 1 << s
        node = pos >> (s + 1)
        if s + 1 == n:
            base = node << (s + 1)
            for j in range(half):
                a = chan[base + j]
                b = chan[base + j + half]
                sa = -1.0 if a < 0.0 else 1.0
                sb = -1.0 if b < 0.0 else 1.0
                am = -a if a < 0.0 else a
                bm = -b if b < 0.0 else b
                alpha[l, (half - 1) + j] = sa * sb * (am if am < bm else bm)
        else:
            po = (1 << (s + 1)) - 1
            for j in range(half):
                a = alpha[l, po + j]
                b = alpha[l, po + j + half]
                sa = -1.0 if a < 0.0 else 1.0
                sb = -1.0 if b < 0.0 else 1.0
                am = -a if a < 0.0 else a
                bm = -b if b < 0.0 else b
                alpha[l, (half - 1) + j] = sa * sb * (am if am < bm else bm)


@njit(cache=True, nogil=True, inline="always")
def _popcount(x: int) -> int:
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True, nogil=True)
def scl_kernel(chan: np.ndarray, frozen: np.ndarray, L: int):
    """CRC-agnostic SCL decode of one frame.

    Returns (pm, uhat, nact): path metrics and decided bits for the nact
    surviving paths, ordered so that equal metrics keep the stable
    (parent index, extension index) pruning order.
    """
    N = chan.shape[0]
    n = 0
    while (1 << n) < N:
        n += 1
    heap = max(N - 1, 1)
    alpha = np.zeros((L, heap), dtype=np.float64)
    alpha_buf = np.zeros((L, heap), dtype=np.float64)
    uhat = np.zeros((L, N), dtype=np.uint8)
    uhat_buf = np.zeros((L, N), dtype=np.uint8)
    pm = np.zeros(L, dtype=np.float64)
    pm_buf = np.zeros(L, dtype=np.float64)
    btmp = np.zeros(N, dtype=np.uint8)
    cand_pm = np.zeros(2 * L, dtype=np.float64)
    cand_parent = np.zeros(2 * L, dtype=np.int64)
    cand_bit = np.zeros(2 * L, dtype=np.uint8)
    nact = 1

    for i in range(N):
        for l in range(nact):
            _propagate(chan, alpha, uhat, btmp, l, i, n, 0)
        if frozen[i]:
            for l in range(nact):
                a = alpha[l, 0]
                if a < 0.0:
                    pm[l] -= a
                uhat[l, i] = 0
        else:
            m = 2 * nact
            for l in range(nact):
                a = alpha[l, 0]
                pen = -a if a < 0.0 else a
                hd = np.uint8(1) if a < 0.0 else np.uint8(0)
                cand_parent[2 * l] = l
                cand_bit[2 * l] = 0
                cand_pm[2 * l] = pm[l] + (pen if hd != 0 else 0.0)
                cand_parent[2 * l + 1] = l
                cand_bit[2 * l + 1] = 1
                cand_pm[2 * l + 1] = pm[l] + (pen if hd != 1 else 0.0)
            order = _stable_order(cand_pm[:m])
            keep = L if m > L else m
            for r in range(keep):
                c = order[r]
                p = cand_parent[c]
                for j in range(heap):
                    alpha_buf[r, j] = alpha[p, j]
                for j in range(N):
                    uhat_buf[r, j] = uhat[p, j]
                uhat_buf[r, i] = cand_bit[c]
                pm_buf[r] = cand_pm[c]
            tmp_a = alpha
            alpha = alpha_buf
            alpha_buf = tmp_a
            tmp_u = uhat
            uhat = uhat_buf
            uhat_buf = tmp_u
            for r in range(keep):
                pm[r] = pm_buf[r]
            nact = keep
    return pm, uhat, nact


@njit(cache=True, nogil=True, inline="always")
def _topk_insert(top_dpm, top_word, cnt, cap, dpm, word):
    """Insert (dpm, word) into a bounded ascending list; stable on equal keys
    because callers insert in canonical candidate order and the comparison is
    strict."""
    if cnt < cap:
        pos = cnt
        while pos > 0 and top_dpm[pos - 1] > dpm:
            top_dpm[pos] = top_dpm[pos - 1]
            top_word[pos] = top_word[pos - 1]
            pos -= 1
        top_dpm[pos] = dpm
        top_word[pos] = word
        return cnt + 1
    if dpm >= top_dpm[cap - 1]:
        return cnt
    pos = cap - 1
    while pos > 0 and top_dpm[pos - 1] > dpm:
        top_dpm[pos] = top_dpm[pos - 1]
        top_word[pos] = top_word[pos - 1]
        pos -= 1
    top_dpm[pos] = dpm
    top_word[pos] = word
    return cnt


# candidate-generation routes inside fsl_kernel
ROUTE_EXH = 0
ROUTE_R1 = 1
ROUTE_SPC = 2
ROUTE_GEN = 3


@njit(cache=True, nogil=True)
def fsl_kernel(
    chan,
    starts,
    lens,
    routes,
    info_base,
    exh_off,
    exh_cnt,
    exh_words,
    h_off,
    h_cnt,
    h_words,
    pat_off,
    pat_words,
    rec_off,
    rec_cnt,
    rec_words,
    r1_masks,
    spc_even_masks,
    spc_odd_masks,
    L,
    flip_budget,
    l_sd,
    k_tot,
):
    """Blockwise list decode of one frame over a precompiled segmentation plan.

    Mirrors fsl.fsl_decode candidate-for-candidate: same canonical candidate
    order, same stable pruning, same metric arithmetic.  Returns (pm, info,
    nact) where info rows are the recovered payload||crc bit frames.
    """
    N = chan.shape[0]
    n = 0
    while (1 << n) < N:
        n += 1
    heap = max(N - 1, 1)
    n_desc = starts.shape[0]

    alpha = np.zeros((L, heap), dtype=np.float64)
    alpha_buf = np.zeros((L, heap), dtype=np.float64)
    uhat = np.zeros((L, N), dtype=np.uint8)
    uhat_buf = np.zeros((L, N), dtype=np.uint8)
    info = np.zeros((L, k_tot), dtype=np.uint8)
    info_buf = np.zeros((L, k_tot), dtype=np.uint8)
    pm = np.zeros(L, dtype=np.float64)
    btmp = np.zeros(N, dtype=np.uint8)

    mags = np.zeros(64, dtype=np.float64)  # natural block order
    smag = np.zeros(64, dtype=np.float64)  # ascending magnitudes
    perm = np.zeros(64, dtype=np.int64)  # smag[p] == mags[perm[p]]
    top_dpm = np.zeros((L, L), dtype=np.float64)
    top_word = np.zeros((L, L), dtype=np.int64)
    top_cnt = np.zeros(L, dtype=np.int64)
    cand_pm = np.zeros(L * L, dtype=np.float64)
    cand_parent = np.zeros(L * L, dtype=np.int64)
    cand_word = np.zeros(L * L, dtype=np.int64)
    nact = 1

    for d in range(n_desc):
        start = starts[d]
        blen = lens[d]
        stage = 0
        while (1 << stage) < blen:
            stage += 1
        route = routes[d]
        off_s = (1 << stage) - 1

        for l in range(nact):
            if stage < n:
                _propagate(chan, alpha, uhat, btmp, l, start, n, stage)

            raw = 0
            for j in range(blen):
                a = chan[j] if stage == n else alpha[l, off_s + j]
                mags[j] = -a if a < 0.0 else a
                if a < 0.0:
                    raw |= 1 << j

            cnt = 0
            if route == ROUTE_EXH:
                for c in range(exh_cnt[d]):
                    word = exh_words[exh_off[d] + c]
                    diff = word ^ raw
                    dpm = 0.0
                    for j in range(blen):
                        if (diff >> j) & 1:
                            dpm += mags[j]
                    cnt = _topk_insert(top_dpm[l], top_word[l], cnt, L, dpm, word)
            else:
                # stable ascending-magnitude order of the block positions
                for j in range(blen):
                    smag[j] = mags[j]
                    perm[j] = j
                for a_i in range(1, blen):
                    key = smag[a_i]
                    kp = perm[a_i]
                    b_i = a_i - 1
                    while b_i >= 0 and smag[b_i] > key:
                        smag[b_i + 1] = smag[b_i]
                        perm[b_i + 1] = perm[b_i]
                        b_i -= 1
                    smag[b_i + 1] = key
                    perm[b_i + 1] = kp
                if route == ROUTE_R1 or route == ROUTE_SPC:
                    if route == ROUTE_R1:
                        sets = r1_masks
                    else:
                        sets = spc_odd_masks if (_popcount(raw) & 1) else spc_even_masks
                    for t in range(sets.shape[0]):
                        pmask = sets[t]
                        word = raw
                        dpm = 0.0
                        for p in range(8):
                            if (pmask >> p) & 1:
                                word ^= 1 << perm[p]
                                dpm += smag[p]
                        cnt = _topk_insert(top_dpm[l], top_word[l], cnt, L, dpm, word)
                else:  # ROUTE_GEN
                    t_budget = flip_budget if flip_budget < blen else blen
                    t_mask = 0
                    for p in range(t_budget):
                        t_mask |= 1 << perm[p]
                    nrows = h_cnt[d]
                    for m in range(1 << t_budget):
                        v = raw
                        base_dpm = 0.0
                        for p in range(t_budget):
                            if (m >> p) & 1:
                                v ^= 1 << perm[p]
                                base_dpm += smag[p]
                        syn = 0
                        for r in range(nrows):
                            syn |= (_popcount(v & h_words[h_off[d] + r]) & 1) << r
                        row = pat_off[d] + syn * l_sd
                        for r in range(l_sd):
                            pat = pat_words[row + r]
                            if pat & t_mask:
                                continue
                            word = v ^ pat
                            dpm = base_dpm
                            for j in range(blen):
                                if (pat >> j) & 1:
                                    dpm += mags[j]
                            cnt = _topk_insert(
                                top_dpm[l], top_word[l], cnt, L, dpm, word
                            )
            top_cnt[l] = cnt

        total = 0
        for l in range(nact):
            for r in range(top_cnt[l]):
                cand_pm[total] = pm[l] + top_dpm[l, r]
                cand_parent[total] = l
                cand_word[total] = top_word[l, r]
                total += 1
        order = _stable_order(cand_pm[:total])
        keep = L if total > L else total
        for r in range(keep):
            c = order[r]
            p = cand_parent[c]
            word = cand_word[c]
            for j in range(heap):
                alpha_buf[r, j] = alpha[p, j]
            for j in range(N):
                uhat_buf[r, j] = uhat[p, j]
            for j in range(blen):
                uhat_buf[r, start + j] = (word >> j) & 1
            _local_transform(uhat_buf[r, start : start + blen], blen)
            for j in range(k_tot):
                info_buf[r, j] = info[p, j]
            for i in range(rec_cnt[d]):
                bit = _popcount(word & rec_words[rec_off[d] + i]) & 1
                info_buf[r, info_base[d] + i] = bit
        for r in range(keep):
            pm[r] = cand_pm[order[r]]
        tmp_a = alpha
        alpha = alpha_buf
        alpha_buf = tmp_a
        tmp_u = uhat
        uhat = uhat_buf
        uhat_buf = tmp_u
        tmp_i = info
        info = info_buf
        info_buf = tmp_i
        nact = keep
    return pm, info, nact

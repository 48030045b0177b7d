"""Maximum-likelihood sequence decoding with the space-time branch metric.

The decoder is a standard Viterbi over the code trellis; only the branch
metric changes: for received vector r_t and branch label (c_1..c_n),

    metric = sum_s | r_{t,s} - sqrt(Es) * sum_i h_{i,s} c_i |^2.

`decode_many` is the batched engine used by the Monte Carlo driver; `decode`
is the single-frame wrapper.  Ties are broken toward the smaller input word,
then the smaller predecessor state, so noiseless runs are exactly
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization, ReceivedFrame
from .encoder import Trellis


@dataclass(frozen=True)
class DecodeResult:
    info_bits: np.ndarray
    path_metric: float


def branch_metric(received: np.ndarray, gains: np.ndarray, label: np.ndarray,
                  esn0: float) -> float:
    """Metric of one branch: received (m,), gains (n, m), label (n,)."""
    pred = np.sqrt(esn0) * (label @ gains)
    return float(np.sum(np.abs(received - pred) ** 2))


def _incoming_tables(trellis: Trellis):
    """Per-state incoming branches sorted by (input word, predecessor)."""
    S, W = trellis.n_states, trellis.n_words
    pred = np.zeros((S, W), dtype=np.int64)
    word = np.zeros((S, W), dtype=np.int64)
    branch = np.zeros((S, W), dtype=np.int64)
    fill = [0] * S
    for w in range(W):
        for s in range(S):
            ns = int(trellis.next_state[s, w])
            j = fill[ns]
            pred[ns, j] = s
            word[ns, j] = w
            branch[ns, j] = s * W + w
            fill[ns] += 1
    if any(f != W for f in fill):
        raise ValueError("trellis is not input-regular")
    return pred, word, branch


def decode_many(rx: np.ndarray, blocks: np.ndarray, assignment: np.ndarray,
                trellis: Trellis, esn0: float) -> tuple[np.ndarray, np.ndarray]:
    """Decode a batch of frames.

    rx: (B, N, m); blocks: (B, L, n, m); assignment: (N,) block index per time.
    Returns (info_words (B, N_info), path_metrics (B,)).
    """
    cfg = trellis.config
    B, N, m = rx.shape
    S, W = trellis.n_states, trellis.n_words
    labels = trellis.out_symbols.reshape(S * W, cfg.n)
    pred, word, branch = _incoming_tables(trellis)
    sqrt_es = np.sqrt(esn0)

    tail_start = N - (cfg.mu - 1) if cfg.zero_tail else N
    tail_penalty = np.where(word == 0, 0.0, np.inf)      # (S, W) applied in tail

    pm = np.full((B, S), np.inf)
    pm[:, 0] = 0.0
    back = np.zeros((B, N, S), dtype=np.uint8)

    for t in range(N):
        h_t = blocks[:, assignment[t]]                   # (B, n, m)
        pred_sym = sqrt_es * np.einsum("fn,bnm->bfm", labels, h_t)
        diff = rx[:, t, None, :] - pred_sym
        bm = np.einsum("bfm,bfm->bf", diff, diff.conj()).real    # (B, S*W)
        cand = pm[:, pred] + bm[:, branch]               # (B, S, W)
        if t >= tail_start:
            cand = cand + tail_penalty
        choice = np.argmin(cand, axis=2)                 # first min: (word, pred) order
        pm = np.take_along_axis(cand, choice[:, :, None], axis=2)[:, :, 0]
        back[:, t] = choice

    final_state = np.zeros(B, dtype=np.int64) if cfg.zero_tail \
        else np.argmin(pm, axis=1)
    metrics = pm[np.arange(B), final_state]

    words = np.zeros((B, N), dtype=np.int64)
    s = final_state
    rows = np.arange(B)
    for t in range(N - 1, -1, -1):
        j = back[rows, t, s]
        words[:, t] = word[s, j]
        s = pred[s, j]
    n_info_words = (N - cfg.mu + 1) if cfg.zero_tail else N
    return words[:, :n_info_words], metrics


def words_to_bits(words: np.ndarray, k: int) -> np.ndarray:
    """(B, T) words -> (B, T*k) bits, first bit of each word first."""
    B, T = words.shape
    bits = np.zeros((B, T, k), dtype=np.uint8)
    for j in range(k):
        bits[:, :, j] = (words >> (k - 1 - j)) & 1
    return bits.reshape(B, T * k)


def decode(received: ReceivedFrame, realization: ChannelRealization,
           trellis: Trellis, esn0: float) -> DecodeResult:
    """ML-decode one frame (wrapper around the batched engine)."""
    rx = received.samples[None, :, :]
    blocks = realization.blocks[None, :, :, :]
    words, metrics = decode_many(rx, blocks, realization.assignment, trellis, esn0)
    bits = words_to_bits(words, trellis.config.k)[0]
    return DecodeResult(info_bits=bits, path_metric=float(metrics[0]))

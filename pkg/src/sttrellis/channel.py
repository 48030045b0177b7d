"""MIMO block-fading Rayleigh channel with AWGN and periodic symbol interleaving.

The fading gains are constant over blocks of B consecutive transmitted
super-symbols and independent from block to block (L = N/B blocks per frame).
The per-antenna symbol interleaver is periodic, so after de-interleaving the
code-time axis cycles through the L blocks: t -> ((t-1) mod L) + 1.  All
gains are unit-power circular complex Gaussian; noise is complex Gaussian
with variance N0/2 per dimension and N0 = 1, so the symbol SNR is set purely
through Es.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ChannelConfig:
    n: int
    m: int
    L: int
    N: int
    esn0: float            # linear Es/N0
    seed: int = 0

    def __post_init__(self):
        if self.N % self.L:
            raise ValueError(f"L={self.L} does not divide N={self.N}")
        if self.esn0 <= 0:
            raise ValueError("Es/N0 must be positive")

    @property
    def block_len(self) -> int:
        return self.N // self.L


@dataclass(frozen=True)
class ChannelRealization:
    """L gain matrices (n x m) plus the de-interleaved time -> block map."""

    blocks: np.ndarray        # (L, n, m) complex
    assignment: np.ndarray    # (N,) int, values in 0..L-1

    def gains_at(self, t: int) -> np.ndarray:
        return self.blocks[self.assignment[t]]


@dataclass(frozen=True)
class ReceivedFrame:
    samples: np.ndarray       # (N, m) complex


def assign_blocks(N: int, L: int, mode: str = "periodic") -> np.ndarray:
    """Block index (0-based) seen by each de-interleaved time 0..N-1."""
    if N % L:
        raise ValueError(f"L={L} does not divide N={N}")
    if mode != "periodic":
        raise ValueError(f"unknown assignment mode {mode!r}")
    return np.arange(N, dtype=np.int64) % L


def ebn0_to_esn0(ebn0: float, k: int, n: int, h: int,
                 mu: int = 2, N: int = 0, zero_tail: bool = True,
                 tail_correction: bool = False) -> float:
    """Es = Eb * h * R with R = k/(n*h), i.e. Es/N0 = Eb/N0 * k/n.

    With tail_correction the rate accounts for the mu-1 forced tail words,
    R = k(N-mu+1)/(N*n*h); off by default since the tail loss for the frame
    lengths of interest is far below plot resolution.
    """
    rate = k / (n * h)
    if tail_correction:
        if N <= 0:
            raise ValueError("tail correction needs the frame length N")
        rate = k * (N - mu + 1) / (N * n * h) if zero_tail else rate
    return ebn0 * h * rate


def sample_channel(config: ChannelConfig, rng: np.random.Generator) -> ChannelRealization:
    """Draw one realization: L*n*m i.i.d. unit-power complex Gaussian gains."""
    shape = (config.L, config.n, config.m)
    blocks = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return ChannelRealization(blocks=blocks,
                              assignment=assign_blocks(config.N, config.L))


def transmit(codeword: np.ndarray, realization: ChannelRealization,
             config: ChannelConfig, rng: np.random.Generator,
             noiseless: bool = False) -> ReceivedFrame:
    """r_t = sqrt(Es) c_t H_t + eta_t with eta ~ CN(0, N0), N0 = 1."""
    N = codeword.shape[0]
    if N != config.N:
        raise ValueError("codeword length does not match channel config")
    gains = realization.blocks[realization.assignment]      # (N, n, m)
    clean = np.sqrt(config.esn0) * np.einsum("tn,tnm->tm", codeword, gains)
    if noiseless:
        return ReceivedFrame(samples=clean)
    noise = (rng.standard_normal(clean.shape) + 1j * rng.standard_normal(clean.shape))
    noise *= np.sqrt(0.5)
    return ReceivedFrame(samples=clean + noise)

"""Space-time trellis encoders built from convolutional generators.

A rate k/(n*h) encoder is realized in controller canonical form: one shift
register of k*mu bits advanced k bits per step.  Each of the n*h generators
is a tap mask over the register; the n*h output bits are split into n groups
of h bits and Gray-mapped, one symbol per transmit antenna.

Octal convention: a generator string is the octal rendering of its tap mask,
left-padded to k*mu bits, with the leftmost bit tapping the newest register
cell (the first bit of the current input word) and the rightmost bit the
oldest cell.  For k = 1 this is the textbook convention where e.g. "5" with
mu = 3 means taps 101, i.e. 1 + D^2.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

_SQRT2 = math.sqrt(2.0)


class GeneratorError(ValueError):
    """Malformed or inconsistent generator specification."""


@dataclass(frozen=True)
class EncoderConfig:
    """Static description of one space-time code instance.

    n transmit antennas, m receive antennas, k input bits per step, h bits
    per modulation symbol (1 = BPSK, 2 = QPSK), constraint length mu, frame
    length N super-symbols.  With zero_tail the last mu-1 input words are
    forced to zero so every frame terminates in the all-zero state.
    """

    n: int
    k: int
    h: int
    mu: int
    N: int
    m: int = 1
    zero_tail: bool = True

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("antenna counts must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.h not in (1, 2):
            raise ValueError("h must be 1 (BPSK) or 2 (QPSK)")
        if self.mu < 2:
            raise ValueError("mu must be >= 2")
        if self.N < self.mu:
            raise ValueError("frame length N must be >= mu")

    @property
    def nh(self) -> int:
        return self.n * self.h

    @property
    def n_states(self) -> int:
        return 1 << (self.k * (self.mu - 1))

    @property
    def rate(self) -> float:
        return self.k / self.nh

    @property
    def info_bits_per_frame(self) -> int:
        if self.zero_tail:
            return self.k * (self.N - self.mu + 1)
        return self.k * self.N


@dataclass(frozen=True)
class GeneratorSet:
    """The tap masks of one encoder, stored as the parsed octal values."""

    values: tuple[int, ...]
    k: int
    mu: int

    def __post_init__(self):
        width = self.k * self.mu
        for v in self.values:
            if v < 0 or v.bit_length() > width:
                raise GeneratorError(f"generator {v:o} needs more than {width} bits")

    @property
    def width(self) -> int:
        return self.k * self.mu

    @property
    def octal_digits(self) -> int:
        return max(1, math.ceil(self.width / 3))

    def octal_strings(self) -> tuple[str, ...]:
        return tuple(f"{v:0{self.octal_digits}o}" for v in self.values)

    def taps(self) -> tuple[tuple[int, ...], ...]:
        """Bit vectors of length k*mu; index j taps the register cell at delay j."""
        w = self.width
        return tuple(tuple((v >> (w - 1 - j)) & 1 for j in range(w)) for v in self.values)

    def __str__(self) -> str:
        return "(" + ",".join(self.octal_strings()) + ")_8"


def parse_generators(octal_strings, k: int, mu: int, count: int | None = None) -> GeneratorSet:
    """Parse octal generator strings into a GeneratorSet.

    Raises GeneratorError on non-octal digits, masks wider than k*mu bits, or
    (when `count` is given) the wrong number of generators.
    """
    strings = [s.strip() for s in octal_strings]
    if count is not None and len(strings) != count:
        raise GeneratorError(f"expected {count} generators, got {len(strings)}")
    values = []
    for s in strings:
        if not s:
            raise GeneratorError("empty generator string")
        try:
            values.append(int(s, 8))
        except ValueError:
            raise GeneratorError(f"invalid octal generator {s!r}") from None
    return GeneratorSet(values=tuple(values), k=k, mu=mu)


def generators_from_string(text: str, k: int, mu: int, count: int | None = None) -> GeneratorSet:
    """Parse "(g1,g2,...)_8", "(g1,g2,...)" or "g1,g2,..." forms."""
    s = text.strip()
    if s.endswith("_8"):
        s = s[:-2]
    s = s.strip().strip("()")
    return parse_generators(s.split(","), k, mu, count=count)


def map_symbol(bits, h: int) -> complex:
    """Gray-map h bits to a unit-modulus symbol.

    BPSK: b -> 2b-1.  QPSK: (a, b) -> ((2a-1) + j(2b-1)) / sqrt(2), with the
    first bit on the in-phase axis.
    """
    if h == 1:
        (b,) = bits
        return complex(2 * b - 1, 0.0)
    if h == 2:
        a, b = bits
        return complex((2 * a - 1) / _SQRT2, (2 * b - 1) / _SQRT2)
    raise ValueError("h must be 1 or 2")


@dataclass(frozen=True)
class Trellis:
    """Tabulated encoder trellis.

    next_state[s, w] and out_bits[s, w] (n*h bits) describe the transition
    from state s under input word w; out_symbols[s, w] is the super-symbol
    label (n complex entries).  Words pack their k bits first-bit-first
    (first input bit = most significant bit of w).
    """

    config: EncoderConfig
    generators: GeneratorSet
    next_state: np.ndarray     # (S, 2^k) int32
    out_bits: np.ndarray       # (S, 2^k, n*h) uint8
    out_symbols: np.ndarray    # (S, 2^k, n) complex128

    @property
    def n_states(self) -> int:
        return self.next_state.shape[0]

    @property
    def n_words(self) -> int:
        return self.next_state.shape[1]

    def predecessors(self, state: int) -> list[tuple[int, int]]:
        """(prev_state, word) pairs entering `state`, sorted by (word, prev)."""
        found = [(int(w), int(s))
                 for s in range(self.n_states)
                 for w in range(self.n_words)
                 if self.next_state[s, w] == state]
        return [(s, w) for w, s in sorted(found)]


def build_trellis(generators: GeneratorSet, config: EncoderConfig) -> Trellis:
    if generators.k != config.k or generators.mu != config.mu:
        raise GeneratorError("generator set and config disagree on k or mu")
    if len(generators.values) != config.nh:
        raise GeneratorError(
            f"need {config.nh} generators for n={config.n}, h={config.h}; "
            f"got {len(generators.values)}")
    k, mu, n, h = config.k, config.mu, config.n, config.h
    n_states, n_words = config.n_states, 1 << k
    width = k * mu
    mem_bits = k * (mu - 1)

    next_state = np.zeros((n_states, n_words), dtype=np.int32)
    out_bits = np.zeros((n_states, n_words, config.nh), dtype=np.uint8)
    out_symbols = np.zeros((n_states, n_words, n), dtype=np.complex128)

    for s in range(n_states):
        for w in range(n_words):
            reg = (w << mem_bits) | s          # bit (width-1-j) = register cell j
            bits = [bin(g & reg).count("1") & 1 for g in generators.values]
            if mu > 2:
                nxt = (w << (mem_bits - k)) | (s >> k)
            else:
                nxt = w
            next_state[s, w] = nxt
            out_bits[s, w] = bits
            for i in range(n):
                out_symbols[s, w, i] = map_symbol(bits[h * i:h * i + h], h)
    return Trellis(config=config, generators=generators,
                   next_state=next_state, out_bits=out_bits, out_symbols=out_symbols)


def bits_to_words(bits, k: int) -> list[int]:
    if len(bits) % k:
        raise ValueError("bit count not a multiple of k")
    return [int("".join(str(int(b)) for b in bits[i:i + k]), 2)
            for i in range(0, len(bits), k)]


def encode_frame(info_bits, trellis: Trellis) -> np.ndarray:
    """Encode one frame to an (N, n) array of super-symbols.

    With zero_tail, info_bits has k*(N-mu+1) entries and the tail is appended
    here; otherwise k*N entries are consumed as-is.
    """
    cfg = trellis.config
    expected = cfg.info_bits_per_frame
    if len(info_bits) != expected:
        raise ValueError(f"expected {expected} info bits, got {len(info_bits)}")
    words = bits_to_words(info_bits, cfg.k)
    if cfg.zero_tail:
        words = words + [0] * (cfg.mu - 1)
    out = np.zeros((cfg.N, cfg.n), dtype=np.complex128)
    s = 0
    for t, w in enumerate(words):
        out[t] = trellis.out_symbols[s, w]
        s = int(trellis.next_state[s, w])
    if cfg.zero_tail and s != 0:
        raise AssertionError("zero-tailed frame did not terminate in state 0")
    return out


def encode_bits(info_bits, trellis: Trellis) -> np.ndarray:
    """Raw coded bits, (N, n*h) uint8, same input contract as encode_frame."""
    cfg = trellis.config
    if len(info_bits) != cfg.info_bits_per_frame:
        raise ValueError("info bit count mismatch")
    words = bits_to_words(info_bits, cfg.k)
    if cfg.zero_tail:
        words = words + [0] * (cfg.mu - 1)
    out = np.zeros((cfg.N, cfg.nh), dtype=np.uint8)
    s = 0
    for t, w in enumerate(words):
        out[t] = trellis.out_bits[s, w]
        s = int(trellis.next_state[s, w])
    return out


def _zero_output_sccs(trellis: Trellis):
    """Strongly connected components of the zero-output-weight edge subgraph."""
    S = trellis.n_states
    adj: list[list[tuple[int, int]]] = [[] for _ in range(S)]
    for s in range(S):
        for w in range(trellis.n_words):
            if not trellis.out_bits[s, w].any():
                adj[s].append((int(trellis.next_state[s, w]), w))
    # Tarjan, iterative
    index = [-1] * S
    low = [0] * S
    on_stack = [False] * S
    stack: list[int] = []
    comp = [-1] * S
    counter = 0
    n_comp = 0
    for root in range(S):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for ei in range(pi, len(adj[v])):
                u = adj[v][ei][0]
                if index[u] == -1:
                    work[-1] = (v, ei + 1)
                    work.append((u, 0))
                    recurse = True
                    break
                if on_stack[u]:
                    low[v] = min(low[v], index[u])
            if recurse:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp[u] = n_comp
                    if u == v:
                        break
                n_comp += 1
    return adj, comp


def is_catastrophic(generators: GeneratorSet, config: EncoderConfig) -> bool:
    """True iff the error trellis has a cycle with nonzero input weight and
    zero output weight (the all-zero self-loop excepted)."""
    trellis = build_trellis(generators, config)
    adj, comp = _zero_output_sccs(trellis)
    for s in range(trellis.n_states):
        for u, w in adj[s]:
            if w != 0 and comp[u] == comp[s]:
                return True
    return False


def binary_poly_gcd(a: int, b: int) -> int:
    """GCD of GF(2)[D] polynomials packed as ints (bit i = coeff of D^i)."""
    while b:
        while a.bit_length() >= b.bit_length() and a:
            a ^= b << (a.bit_length() - b.bit_length())
        a, b = b, a
    return a


def generator_polynomial(value: int, width: int) -> int:
    """Tap mask -> GF(2)[D] polynomial int (delay j -> coeff of D^j). k = 1 only."""
    p = 0
    for j in range(width):
        if (value >> (width - 1 - j)) & 1:
            p |= 1 << j
    return p


def is_catastrophic_gcd(generators: GeneratorSet) -> bool:
    """Polynomial-GCD criterion, valid for k = 1: catastrophic iff the GCD of
    the generator polynomials is not a pure power of D."""
    if generators.k != 1:
        raise ValueError("GCD criterion applies to k = 1 encoders only")
    polys = [generator_polynomial(v, generators.width) for v in generators.values]
    g = 0
    for p in polys:
        g = binary_poly_gcd(g, p)
    if g == 0:
        return True
    return (g & (g - 1)) != 0


def free_distance(trellis: Trellis) -> int:
    """Minimum output bit-Hamming weight over nonzero error events (paths
    leaving and re-entering the all-zero state)."""
    S, W = trellis.n_states, trellis.n_words
    weights = trellis.out_bits.sum(axis=2).astype(int)
    INF = float("inf")
    dist = [INF] * S
    heap: list[tuple[int, int]] = []
    for w in range(1, W):
        nxt = int(trellis.next_state[0, w])
        d = weights[0, w]
        if d < dist[nxt]:
            dist[nxt] = d
            heapq.heappush(heap, (d, nxt))
    best = INF
    while heap:
        d, s = heapq.heappop(heap)
        if d > dist[s]:
            continue
        for w in range(W):
            nxt = int(trellis.next_state[s, w])
            nd = d + weights[s, w]
            if nxt == 0:
                best = min(best, nd)
            elif nd < dist[nxt]:
                dist[nxt] = nd
                heapq.heappush(heap, (nd, nxt))
    return int(best)

"""Transfer polynomials of the error trellis, with exact matrix exponents.

Every pairwise error event maps to an L-tuple of exact Hermitian integer
matrices (one accumulator per fading block).  The polynomial enumerating all
events is built by a forward pass over the error trellis:

  * exponents multiply by adding matrices into the block slot of the step,
  * like terms merge by exact key equality,
  * terms are pruned by output Hamming weight, by partial diversity (rank of
    a partial sum never decreases when more PSD terms are added) and by
    partial eigen-product (same monotonicity), so pruned terms can never
    re-enter the minimum-diversity set.

Three reference conventions are supported:

  * "average": matrix labels; node weights are vectors indexed by the code
    state, the enumeration averages over transmitted sequences with the
    per-step input probability 2^-k (dropped on forced tail steps).
  * "fixed": scalar labels relative to an explicit reference input sequence
    (default all-zero); weights are plain event counts.

and three event scopes:

  * "first_event" with a start phase: paths leaving the zero error state at
    that time and absorbed at first re-merge (the split-state construction;
    in average mode the source carries the all-ones vector and the merged
    weight is read off the zero-state component).
  * "all_start": sum of first_event polynomials over every start phase.
  * "full": every error sequence over the whole frame; the correct-path
    term (weight 1, zero exponent) is subtracted.  This is the form that
    matches brute-force enumeration over codeword pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import hermitian
from .encoder import Trellis
from .pairwise import difference_scale, outer_key_from_bits, pep_prefactor


class TermBudgetError(RuntimeError):
    """The forward pass exceeded the per-node term budget."""

    def __init__(self, policy: "TruncationPolicy", count: int):
        super().__init__(f"term budget exceeded: {count} terms under policy {policy}")
        self.policy = policy
        self.count = count


@dataclass(frozen=True)
class TruncationPolicy:
    """Pruning thresholds for the forward pass.

    max_hamming: retain terms with output bit Hamming weight <= max_hamming.
    max_product_ratio: among candidates, drop terms whose partial eigen
        product exceeds ratio * (current minimum product at minimum rank).
    rank_slack: drop terms whose partial diversity exceeds the best merged
        diversity + slack (None disables rank pruning).
    max_terms: in-flight term cap; exceeding it raises TermBudgetError.
    """

    max_hamming: float = math.inf
    max_product_ratio: float = math.inf
    rank_slack: int | None = 0
    max_terms: int = 10_000

    @classmethod
    def untruncated(cls) -> "TruncationPolicy":
        return cls(max_hamming=math.inf, max_product_ratio=math.inf,
                   rank_slack=None, max_terms=10 ** 7)


@dataclass(frozen=True)
class AnalysisMode:
    reference: str = "average"       # "average" | "fixed"
    scope: str = "first_event"       # "first_event" | "all_start" | "full"
    ref_words: tuple[int, ...] | None = None   # fixed-mode reference input words

    def __post_init__(self):
        if self.reference not in ("average", "fixed"):
            raise ValueError(f"unknown reference mode {self.reference!r}")
        if self.scope not in ("first_event", "all_start", "full"):
            raise ValueError(f"unknown scope {self.scope!r}")


class ErrorLabels:
    """Precomputed error-trellis labels for one code.

    For the error transition (s_e, w_e) and the code transition (i, w_c) the
    exponent is the outer-product matrix of the label difference between the
    code branch and its error-shifted twin.  a_table[s_e, w_e, i, w_c] indexes
    into a_keys; target[s_e, w_e] is the next error state.
    """

    def __init__(self, trellis: Trellis):
        cfg = trellis.config
        self.trellis = trellis
        self.n = cfg.n
        self.h = cfg.h
        self.k = cfg.k
        self.mu = cfg.mu
        self.scale = difference_scale(cfg.h)
        S, W = trellis.n_states, trellis.n_words
        self.S, self.W = S, W

        key_ids: dict[tuple[int, ...], int] = {}
        a_keys: list[tuple[int, ...]] = []
        a_table = np.zeros((S, W, S, W), dtype=np.int32)
        out_bits = trellis.out_bits
        nxt = trellis.next_state
        for s_e in range(S):
            for w_e in range(W):
                for i in range(S):
                    for w_c in range(W):
                        key = outer_key_from_bits(out_bits[i, w_c],
                                                  out_bits[s_e ^ i, w_c ^ w_e],
                                                  self.n, self.h)
                        kid = key_ids.get(key)
                        if kid is None:
                            kid = len(a_keys)
                            key_ids[key] = kid
                            a_keys.append(key)
                        a_table[s_e, w_e, i, w_c] = kid
        self.a_keys = a_keys
        self.a_trace = [hermitian.trace(key, self.n) for key in a_keys]
        self.a_ham = [t // self.scale for t in self.a_trace]
        self.zero_id = key_ids[hermitian.zero_key(self.n)]
        self.a_table = a_table
        self.target = np.array([[nxt[s_e, w_e] for w_e in range(W)] for s_e in range(S)],
                               dtype=np.int64)

        # representative of the component orbit {i, s ^ i} at error state s
        self.rep = [[min(i, s ^ i) for i in range(S)] for s in range(S)]

        # flight entries (target error state != 0), filtered to orbit-representative
        # code targets; merge entries (target error state 0) keep code target 0 only.
        # Each carries the source component to read (its representative).
        self._flight: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
        self._flight_tail: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
        self._merge: dict[tuple[int, int], list[tuple[int, int]]] = {}
        self._merge_tail: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for s_e in range(S):
            for w_e in range(W):
                s2 = int(self.target[s_e, w_e])
                fl, flt, mg, mgt = [], [], [], []
                for i in range(S):
                    src = self.rep[s_e][i]
                    for w_c in range(W):
                        j = int(nxt[i, w_c])
                        aid = int(a_table[s_e, w_e, i, w_c])
                        if s2 == 0:
                            if j == 0:
                                mg.append((src, aid))
                                if w_c == 0:
                                    mgt.append((src, aid))
                        else:
                            if self.rep[s2][j] == j:
                                fl.append((src, j, aid))
                                if w_c == 0:
                                    flt.append((src, j, aid))
                self._flight[(s_e, w_e)] = fl
                self._flight_tail[(s_e, w_e)] = flt
                self._merge[(s_e, w_e)] = mg
                self._merge_tail[(s_e, w_e)] = mgt

        # raw (unfiltered) entries, used by full scope and fixed mode
        self._raw: dict[tuple[int, int], list[tuple[int, int, int, int]]] = {}
        for s_e in range(S):
            for w_e in range(W):
                lst = []
                for i in range(S):
                    for w_c in range(W):
                        lst.append((i, w_c, int(nxt[i, w_c]),
                                    int(a_table[s_e, w_e, i, w_c])))
                self._raw[(s_e, w_e)] = lst

    def label_matrix(self, s_e: int, w_e: int) -> list[list[tuple[int, ...] | None]]:
        """The (code-state indexed) matrix label of one error transition, as
        exponent keys (None where the code transition does not exist)."""
        S = self.S
        out: list[list[tuple[int, ...] | None]] = [[None] * S for _ in range(S)]
        for i, w_c, j, aid in self._raw[(s_e, w_e)]:
            out[i][j] = self.a_keys[aid]
        return out


def build_error_labels(trellis: Trellis) -> ErrorLabels:
    return ErrorLabels(trellis)


class EventPolynomial:
    """Weighted inventory of error events keyed by exact matrix exponents.

    terms maps an L-tuple of matrix keys to its exact rational weight; the
    output Hamming weight of a term is trace-derived so it never needs to be
    carried separately.
    """

    def __init__(self, terms: dict[tuple, Fraction], n: int, L: int, h: int):
        self.terms = {k: w for k, w in terms.items() if w != 0}
        self.n = n
        self.L = L
        self.h = h
        self._spectra = None

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def hamming(self, keys) -> int:
        tr = sum(hermitian.trace(key, self.n) for key in keys)
        return tr // difference_scale(self.h)

    def spectra(self):
        """List of (keys, weight, diversity, eigen_product, hamming)."""
        if self._spectra is None:
            out = []
            for keys, w in self.terms.items():
                div = 0
                prod = 1
                for key in keys:
                    s = hermitian.eigen_summary(key, self.n)
                    div += s.rank
                    prod *= s.product
                out.append((keys, w, div, prod, self.hamming(keys)))
            self._spectra = out
        return self._spectra


@dataclass(frozen=True)
class CodeMetrics:
    """Ranking key extracted from a transfer polynomial."""

    min_diversity: int
    perf_factor: Fraction        # sum over min-diversity terms of w * product^-m,
                                 # times the frame multiplier
    m: int
    frame_multiplier: int
    min_term_count: int
    term_count: int

    def asymptotic_bound(self, esn0: float) -> float:
        gamma = esn0 / 4.0
        d = self.m * self.min_diversity
        return float(pep_prefactor(d) * self.perf_factor) * gamma ** (-d)


def polynomial_metrics(poly: EventPolynomial, m: int,
                       frame_multiplier: int = 1) -> CodeMetrics:
    if not poly.terms:
        raise ValueError("empty polynomial has no metrics")
    spectra = poly.spectra()
    eta_min = min(s[2] for s in spectra)
    f = Fraction(0)
    count = 0
    for _, w, div, prod, _ in spectra:
        if div == eta_min:
            if prod == 0:
                raise ArithmeticError("zero eigen product on a nonzero term")
            f += w * Fraction(1, prod ** m)
            count += 1
    return CodeMetrics(min_diversity=eta_min,
                       perf_factor=f * frame_multiplier,
                       m=m, frame_multiplier=frame_multiplier,
                       min_term_count=count, term_count=len(spectra))


def _slot_update(keys: tuple, block: int, a_key: tuple[int, ...]) -> tuple:
    slot = hermitian.add_keys(keys[block], a_key)
    return keys[:block] + (slot,) + keys[block + 1:]


class _PruneState:
    """Shared pruning bookkeeping for one forward pass."""

    def __init__(self, labels: ErrorLabels, policy: TruncationPolicy, L: int):
        self.labels = labels
        self.policy = policy
        self.L = L
        self.n = labels.n
        self.best_eta: int | None = None
        self.min_prod_by_eta: dict[int, int] = {}
        self.eta_cache: dict[tuple, int] = {}
        self.prod_cache: dict[tuple, int] = {}
        self.use_rank = policy.rank_slack is not None
        self.use_prod = math.isfinite(policy.max_product_ratio)

    def eta_of(self, keys: tuple) -> int:
        e = self.eta_cache.get(keys)
        if e is None:
            e = sum(hermitian.eigen_summary(k, self.n).rank for k in keys)
            self.eta_cache[keys] = e
        return e

    def prod_of(self, keys: tuple) -> int:
        p = self.prod_cache.get(keys)
        if p is None:
            p = 1
            for k in keys:
                p *= hermitian.eigen_summary(k, self.n).product
            self.prod_cache[keys] = p
        return p

    def note_merged(self, keys: tuple) -> None:
        if not (self.use_rank or self.use_prod):
            return
        eta = self.eta_of(keys)
        if self.best_eta is None or eta < self.best_eta:
            self.best_eta = eta
        if self.use_prod:
            prod = self.prod_of(keys)
            cur = self.min_prod_by_eta.get(eta)
            if cur is None or prod < cur:
                self.min_prod_by_eta[eta] = prod

    def keep_in_flight(self, keys: tuple) -> bool:
        if self.use_rank and self.best_eta is not None:
            if self.eta_of(keys) > self.best_eta + self.policy.rank_slack:
                return False
        if self.use_prod and self.best_eta is not None:
            ref = self.min_prod_by_eta.get(self.best_eta)
            if ref is not None and self.prod_of(keys) > self.policy.max_product_ratio * ref:
                return False
        return True


def _pass_average_first_event(labels: ErrorLabels, N: int, L: int,
                              assignment: np.ndarray, policy: TruncationPolicy,
                              phase: int = 0) -> dict[tuple, Fraction]:
    k, mu, W = labels.k, labels.mu, labels.W
    n = labels.n
    max_h = policy.max_hamming
    zero_keys = (hermitian.zero_key(n),) * L
    a_keys, a_ham, zero_id = labels.a_keys, labels.a_ham, labels.zero_id
    prune = _PruneState(labels, policy, L)

    merged: dict[tuple, Fraction] = {}
    last_free = N - mu + 1            # 1-based step of the last free input word

    # divergence step
    t_abs = phase + 1
    if t_abs > last_free:
        return {}
    block = int(assignment[t_abs - 1])
    exp_bits = k
    active: dict[int, dict[int, dict[tuple, tuple[int, int]]]] = {}
    for w_e in range(1, W):
        s2 = int(labels.target[0, w_e])
        comps = active.setdefault(s2, {})
        for src, j, aid in labels._flight[(0, w_e)]:
            ham = a_ham[aid]
            if ham > max_h:
                continue
            nk = _slot_update(zero_keys, block, a_keys[aid])
            d = comps.setdefault(j, {})
            cur = d.get(nk)
            d[nk] = (cur[0] + 1, ham) if cur else (1, ham)

    step = 2
    while active and phase + step <= N:
        t_abs = phase + step
        tail = t_abs > last_free
        block = int(assignment[t_abs - 1])
        exp_next = exp_bits if tail else exp_bits + k
        err_words = (0,) if tail else range(W)
        new_active: dict[int, dict[int, dict[tuple, tuple[int, int]]]] = {}
        count = 0
        for s_e, comps in active.items():
            for w_e in err_words:
                s2 = int(labels.target[s_e, w_e])
                if s2 == 0:
                    entries = labels._merge_tail[(s_e, w_e)] if tail \
                        else labels._merge[(s_e, w_e)]
                    for src, aid in entries:
                        d = comps.get(src)
                        if not d:
                            continue
                        if aid == zero_id:
                            for keys, (num, ham) in d.items():
                                w = Fraction(num, 1 << exp_next)
                                merged[keys] = merged.get(keys, 0) + w
                                prune.note_merged(keys)
                        else:
                            a_key = a_keys[aid]
                            dh = a_ham[aid]
                            for keys, (num, ham) in d.items():
                                if ham + dh > max_h:
                                    continue
                                nk = _slot_update(keys, block, a_key)
                                w = Fraction(num, 1 << exp_next)
                                merged[nk] = merged.get(nk, 0) + w
                                prune.note_merged(nk)
                else:
                    entries = labels._flight_tail[(s_e, w_e)] if tail \
                        else labels._flight[(s_e, w_e)]
                    tcomps = new_active.setdefault(s2, {})
                    for src, j, aid in entries:
                        d = comps.get(src)
                        if not d:
                            continue
                        td = tcomps.setdefault(j, {})
                        if aid == zero_id:
                            for keys, (num, ham) in d.items():
                                cur = td.get(keys)
                                td[keys] = (cur[0] + num, ham) if cur else (num, ham)
                        else:
                            a_key = a_keys[aid]
                            dh = a_ham[aid]
                            for keys, (num, ham) in d.items():
                                nh = ham + dh
                                if nh > max_h:
                                    continue
                                nk = _slot_update(keys, block, a_key)
                                cur = td.get(nk)
                                td[nk] = (cur[0] + num, nh) if cur else (num, nh)
        # prune and count
        for s2, tcomps in new_active.items():
            for j, td in list(tcomps.items()):
                if prune.best_eta is not None and (prune.use_rank or prune.use_prod):
                    drop = [keys for keys in td if not prune.keep_in_flight(keys)]
                    for keys in drop:
                        del td[keys]
                count += len(td)
        if count > policy.max_terms:
            raise TermBudgetError(policy, count)
        active = new_active
        exp_bits = exp_next
        step += 1
    return merged


def _pass_average_full(labels: ErrorLabels, N: int, L: int,
                       assignment: np.ndarray,
                       policy: TruncationPolicy) -> dict[tuple, Fraction]:
    k, mu, W, S = labels.k, labels.mu, labels.W, labels.S
    n = labels.n
    max_h = policy.max_hamming
    zero_keys = (hermitian.zero_key(n),) * L
    a_keys, a_ham, zero_id = labels.a_keys, labels.a_ham, labels.zero_id
    last_free = N - mu + 1

    active: dict[int, dict[int, dict[tuple, tuple[int, int]]]] = {0: {0: {zero_keys: (1, 0)}}}
    exp_bits = 0
    for step in range(1, N + 1):
        tail = step > last_free
        block = int(assignment[step - 1])
        exp_bits = exp_bits if tail else exp_bits + k
        err_words = (0,) if tail else range(W)
        new_active: dict[int, dict[int, dict[tuple, tuple[int, int]]]] = {}
        count = 0
        for s_e, comps in active.items():
            for w_e in err_words:
                s2 = int(labels.target[s_e, w_e])
                tcomps = new_active.setdefault(s2, {})
                for i, w_c, j, aid in labels._raw[(s_e, w_e)]:
                    if tail and w_c != 0:
                        continue
                    d = comps.get(i)
                    if not d:
                        continue
                    td = tcomps.setdefault(j, {})
                    if aid == zero_id:
                        for keys, (num, ham) in d.items():
                            cur = td.get(keys)
                            td[keys] = (cur[0] + num, ham) if cur else (num, ham)
                    else:
                        a_key = a_keys[aid]
                        dh = a_ham[aid]
                        for keys, (num, ham) in d.items():
                            nh = ham + dh
                            if nh > max_h:
                                continue
                            nk = _slot_update(keys, block, a_key)
                            cur = td.get(nk)
                            td[nk] = (cur[0] + num, nh) if cur else (num, nh)
        for tcomps in new_active.values():
            count += sum(len(td) for td in tcomps.values())
        if count > policy.max_terms:
            raise TermBudgetError(policy, count)
        active = new_active
    final = active.get(0, {}).get(0, {})
    out: dict[tuple, Fraction] = {}
    for keys, (num, _) in final.items():
        out[keys] = Fraction(num, 1 << exp_bits)
    # remove the correct-path contribution
    if zero_keys in out:
        out[zero_keys] -= 1
        if out[zero_keys] == 0:
            del out[zero_keys]
    else:
        raise AssertionError("correct path missing from full-scope polynomial")
    return out


def _reference_path(labels: ErrorLabels, N: int,
                    ref_words: tuple[int, ...] | None) -> list[tuple[int, int]]:
    """(state, word) of the reference input sequence at steps 1..N."""
    cfg = labels.trellis.config
    if ref_words is None:
        return [(0, 0)] * N
    words = list(ref_words)
    if cfg.zero_tail:
        words = words + [0] * (cfg.mu - 1)
    if len(words) != N:
        raise ValueError("reference word count does not match frame length")
    path = []
    s = 0
    for w in words:
        path.append((s, w))
        s = int(labels.trellis.next_state[s, w])
    return path


def _pass_fixed_first_event(labels: ErrorLabels, N: int, L: int,
                            assignment: np.ndarray, policy: TruncationPolicy,
                            ref_words: tuple[int, ...] | None,
                            phase: int = 0) -> dict[tuple, Fraction]:
    k, mu, W = labels.k, labels.mu, labels.W
    n = labels.n
    max_h = policy.max_hamming
    zero_keys = (hermitian.zero_key(n),) * L
    a_keys, a_ham, zero_id = labels.a_keys, labels.a_ham, labels.zero_id
    a_table = labels.a_table
    ref = _reference_path(labels, N, ref_words)
    prune = _PruneState(labels, policy, L)
    last_free = N - mu + 1

    merged: dict[tuple, Fraction] = {}
    t_abs = phase + 1
    if t_abs > last_free:
        return {}
    block = int(assignment[t_abs - 1])
    sb, wb = ref[t_abs - 1]
    active: dict[int, dict[tuple, tuple[int, int]]] = {}
    for w_e in range(1, W):
        s2 = int(labels.target[0, w_e])
        aid = int(a_table[0, w_e, sb, wb])
        ham = a_ham[aid]
        if ham > max_h:
            continue
        nk = _slot_update(zero_keys, block, a_keys[aid])
        d = active.setdefault(s2, {})
        cur = d.get(nk)
        d[nk] = (cur[0] + 1, ham) if cur else (1, ham)

    step = 2
    while active and phase + step <= N:
        t_abs = phase + step
        tail = t_abs > last_free
        block = int(assignment[t_abs - 1])
        sb, wb = ref[t_abs - 1]
        err_words = (0,) if tail else range(W)
        new_active: dict[int, dict[tuple, tuple[int, int]]] = {}
        count = 0
        for s_e, d in active.items():
            for w_e in err_words:
                s2 = int(labels.target[s_e, w_e])
                aid = int(a_table[s_e, w_e, sb, wb])
                a_key = a_keys[aid]
                dh = a_ham[aid]
                if s2 == 0:
                    for keys, (num, ham) in d.items():
                        if ham + dh > max_h:
                            continue
                        nk = keys if aid == zero_id else _slot_update(keys, block, a_key)
                        merged[nk] = merged.get(nk, 0) + Fraction(num)
                        prune.note_merged(nk)
                else:
                    td = new_active.setdefault(s2, {})
                    for keys, (num, ham) in d.items():
                        nh = ham + dh
                        if nh > max_h:
                            continue
                        nk = keys if aid == zero_id else _slot_update(keys, block, a_key)
                        cur = td.get(nk)
                        td[nk] = (cur[0] + num, nh) if cur else (num, nh)
        for s2, td in new_active.items():
            if prune.best_eta is not None and (prune.use_rank or prune.use_prod):
                drop = [keys for keys in td if not prune.keep_in_flight(keys)]
                for keys in drop:
                    del td[keys]
            count += len(td)
        if count > policy.max_terms:
            raise TermBudgetError(policy, count)
        active = new_active
        step += 1
    return merged


def _pass_fixed_full(labels: ErrorLabels, N: int, L: int,
                     assignment: np.ndarray, policy: TruncationPolicy,
                     ref_words: tuple[int, ...] | None) -> dict[tuple, Fraction]:
    k, mu, W = labels.k, labels.mu, labels.W
    n = labels.n
    max_h = policy.max_hamming
    zero_keys = (hermitian.zero_key(n),) * L
    a_keys, a_ham, zero_id = labels.a_keys, labels.a_ham, labels.zero_id
    a_table = labels.a_table
    ref = _reference_path(labels, N, ref_words)
    last_free = N - mu + 1

    active: dict[int, dict[tuple, tuple[int, int]]] = {0: {zero_keys: (1, 0)}}
    for step in range(1, N + 1):
        tail = step > last_free
        block = int(assignment[step - 1])
        sb, wb = ref[step - 1]
        err_words = (0,) if tail else range(W)
        new_active: dict[int, dict[tuple, tuple[int, int]]] = {}
        count = 0
        for s_e, d in active.items():
            for w_e in err_words:
                s2 = int(labels.target[s_e, w_e])
                aid = int(a_table[s_e, w_e, sb, wb])
                a_key = a_keys[aid]
                dh = a_ham[aid]
                td = new_active.setdefault(s2, {})
                for keys, (num, ham) in d.items():
                    nh = ham + dh
                    if nh > max_h:
                        continue
                    nk = keys if aid == zero_id else _slot_update(keys, block, a_key)
                    cur = td.get(nk)
                    td[nk] = (cur[0] + num, nh) if cur else (num, nh)
        count = sum(len(td) for td in new_active.values())
        if count > policy.max_terms:
            raise TermBudgetError(policy, count)
        active = new_active
    final = active.get(0, {})
    out: dict[tuple, Fraction] = {keys: Fraction(num) for keys, (num, _) in final.items()}
    if zero_keys in out:
        out[zero_keys] -= 1
        if out[zero_keys] == 0:
            del out[zero_keys]
    return out


def forward_polynomial(labels: ErrorLabels, N: int, L: int,
                       assignment: np.ndarray | None = None,
                       policy: TruncationPolicy | None = None,
                       mode: AnalysisMode | None = None,
                       phase: int = 0) -> EventPolynomial:
    """Run the forward pass and return the event polynomial."""
    policy = policy or TruncationPolicy()
    mode = mode or AnalysisMode()
    if assignment is None:
        if N % L:
            raise ValueError("periodic assignment needs L | N")
        assignment = np.arange(N, dtype=np.int64) % L
    if mode.reference == "average":
        if mode.scope == "first_event":
            terms = _pass_average_first_event(labels, N, L, assignment, policy, phase)
        elif mode.scope == "full":
            terms = _pass_average_full(labels, N, L, assignment, policy)
        else:
            terms = {}
            for r in range(N):
                part = _pass_average_first_event(labels, N, L, assignment, policy, r)
                for keys, w in part.items():
                    terms[keys] = terms.get(keys, 0) + w
    else:
        if mode.scope == "first_event":
            terms = _pass_fixed_first_event(labels, N, L, assignment, policy,
                                            mode.ref_words, phase)
        elif mode.scope == "full":
            terms = _pass_fixed_full(labels, N, L, assignment, policy, mode.ref_words)
        else:
            terms = {}
            for r in range(N):
                part = _pass_fixed_first_event(labels, N, L, assignment, policy,
                                               mode.ref_words, r)
                for keys, w in part.items():
                    terms[keys] = terms.get(keys, 0) + w
    return EventPolynomial(terms, labels.n, L, labels.h)


def transfer_polynomial(trellis: Trellis, L: int,
                        policy: TruncationPolicy | None = None,
                        mode: AnalysisMode | None = None,
                        N: int | None = None) -> EventPolynomial:
    """Convenience wrapper: build labels and run the forward pass."""
    N = N or trellis.config.N
    labels = build_error_labels(trellis)
    return forward_polynomial(labels, N, L, None, policy, mode)

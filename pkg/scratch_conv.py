"""Experiment: which first-event convention reproduces the printed tables.

Variants over (source init, merge extraction):
  A: all-ones source, merge pinned to code state 0   (current implementation)
  B: e0 source,      merge summed over code states
  C: e0 source,      merge pinned to code state 0
  D: all-ones source, merge summed, divided by N_s
"""
import sys
from fractions import Fraction

import sttrellis as st
from sttrellis import hermitian, transfer


def raw_pass(labels, N, L, dH, source, merge_mode):
    k, mu, W, S = labels.k, labels.mu, labels.W, labels.S
    n = labels.n
    zero_keys = (hermitian.zero_key(n),) * L
    a_keys, a_ham, zero_id = labels.a_keys, labels.a_ham, labels.zero_id
    last_free = N - mu + 1
    merged = {}
    # step 1
    block = 0 % L
    exp_bits = k
    active = {}
    for w_e in range(1, W):
        s2 = int(labels.target[0, w_e])
        comps = active.setdefault(s2, {})
        for i, w_c, j, aid in labels._raw[(0, w_e)]:
            if source == "e0" and i != 0:
                continue
            ham = a_ham[aid]
            if ham > dH:
                continue
            nk = transfer._slot_update(zero_keys, block, a_keys[aid])
            d = comps.setdefault(j, {})
            cur = d.get(nk)
            d[nk] = (cur[0] + 1, ham) if cur else (1, ham)
    step = 2
    while active and step <= N:
        tail = step > last_free
        block = (step - 1) % L
        exp_next = exp_bits if tail else exp_bits + k
        err_words = (0,) if tail else range(W)
        new_active = {}
        for s_e, comps in active.items():
            for w_e in err_words:
                s2 = int(labels.target[s_e, w_e])
                for i, w_c, j, aid in labels._raw[(s_e, w_e)]:
                    if tail and w_c != 0:
                        continue
                    d = comps.get(i)
                    if not d:
                        continue
                    a_key = a_keys[aid]
                    dh = a_ham[aid]
                    if s2 == 0:
                        if merge_mode == "comp0" and j != 0:
                            continue
                        for keys, (num, ham) in d.items():
                            if ham + dh > dH:
                                continue
                            nk = keys if aid == zero_id else transfer._slot_update(keys, block, a_key)
                            merged[nk] = merged.get(nk, 0) + Fraction(num, 1 << exp_next)
                    else:
                        td = new_active.setdefault(s2, {}).setdefault(j, {})
                        for keys, (num, ham) in d.items():
                            nh = ham + dh
                            if nh > dH:
                                continue
                            nk = keys if aid == zero_id else transfer._slot_update(keys, block, a_key)
                            cur = td.get(nk)
                            td[nk] = (cur[0] + num, nh) if cur else (num, nh)
        active = new_active
        exp_bits = exp_next
        step += 1
    return merged


def fmin(terms, n, m=1):
    by_eta = {}
    for keys, w in terms.items():
        eta = sum(hermitian.eigen_summary(kk, n).rank for kk in keys)
        prod = 1
        for kk in keys:
            prod *= hermitian.eigen_summary(kk, n).product
        by_eta.setdefault(eta, []).append((w, prod))
    eta_min = min(by_eta)
    f = sum(w * Fraction(1, p ** m) for w, p in by_eta[eta_min])
    return eta_min, float(f)


rows = [("(1,2)", 2, 5, 0.083), ("(3,4)", 3, 9, 0.151), ("(13,15)", 4, 11, 0.217),
        ("(1,3)", 2, 5, 0.096), ("(5,7)", 3, 9, 0.191), ("(15,17)", 4, 11, 0.359)]
for g, mu, dH, want in rows:
    cfg = st.EncoderConfig(n=2, k=1, h=1, mu=mu, N=130, m=1)
    tr = st.build_trellis(st.generators_from_string(g, 1, mu), cfg)
    labels = st.build_error_labels(tr)
    res = {}
    for tag, src, mm in (("A", "ones", "comp0"), ("B", "e0", "sum"), ("C", "e0", "comp0"),
                         ("D", "ones", "sum")):
        terms = raw_pass(labels, 130, 1, dH, src, mm)
        eta, f = fmin(terms, 2)
        if tag == "D":
            f /= tr.n_states
        res[tag] = f
    print(f"{g}: want {want}:  A={res['A']:.4f}  B={res['B']:.4f}  C={res['C']:.4f}  D={res['D']:.4f}")

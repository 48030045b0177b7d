"""Exact integer Hermitian matrices for pairwise-distance analysis.

Difference outer products of BPSK/QPSK super-symbols have entries that are
even Gaussian integers, so ranks and nonzero-eigenvalue products can be
computed exactly from principal minors.  A matrix is stored as a flat tuple
of Python ints ("key"):

    (d_0, ..., d_{n-1}, re_01, im_01, re_02, im_02, ..., re_{n-2,n-1}, im_{n-2,n-1})

i.e. the real diagonal followed by the upper triangle in row-major order.
Keys are hashable, addition is component-wise, and equality of keys is
exact equality of matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

_FLOAT_RANK_RTOL = 1e-9


def key_size(n: int) -> int:
    return n + n * (n - 1)


def zero_key(n: int) -> tuple[int, ...]:
    return (0,) * key_size(n)


def add_keys(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def trace(key: tuple[int, ...], n: int) -> int:
    return sum(key[:n])


def outer_difference_key(za: tuple[complex, ...], zb: tuple[complex, ...] | None = None,
                         scale: int = 1) -> tuple[int, ...]:
    """Key of scale * z z^H for an integer complex vector z = za (zb unused hook)."""
    z = za
    n = len(z)
    diag = [scale * int(round((z[p] * z[p].conjugate()).real)) for p in range(n)]
    off = []
    for p in range(n):
        for q in range(p + 1, n):
            v = z[p] * z[q].conjugate()
            off.append(scale * int(round(v.real)))
            off.append(scale * int(round(v.imag)))
    return tuple(diag + off)


def key_to_matrix(key: tuple[int, ...], n: int) -> np.ndarray:
    m = np.zeros((n, n), dtype=complex)
    for p in range(n):
        m[p, p] = key[p]
    idx = n
    for p in range(n):
        for q in range(p + 1, n):
            re, im = key[idx], key[idx + 1]
            idx += 2
            m[p, q] = complex(re, im)
            m[q, p] = complex(re, -im)
    return m


def _entry(key: tuple[int, ...], n: int, p: int, q: int) -> tuple[int, int]:
    """Exact (re, im) of entry (p, q)."""
    if p == q:
        return key[p], 0
    if p > q:
        re, im = _entry(key, n, q, p)
        return re, -im
    # offset of pair (p, q), p < q, in the packed upper triangle
    idx = n + 2 * ((p * (2 * n - p - 1)) // 2 + (q - p - 1))
    return key[idx], key[idx + 1]


def _det_exact(rows: list[list[tuple[int, int]]]) -> tuple[int, int]:
    """Determinant of a small matrix of exact complex ints, by cofactor expansion."""
    k = len(rows)
    if k == 1:
        return rows[0][0]
    if k == 2:
        (a, b), (c, d) = rows[0], rows[1]
        ad = (a[0] * d[0] - a[1] * d[1], a[0] * d[1] + a[1] * d[0])
        cb = (c[0] * b[0] - c[1] * b[1], c[0] * b[1] + c[1] * b[0])
        return ad[0] - cb[0], ad[1] - cb[1]
    re_acc, im_acc = 0, 0
    for j in range(k):
        a = rows[0][j]
        if a == (0, 0):
            continue
        minor = [[row[c] for c in range(k) if c != j] for row in rows[1:]]
        d = _det_exact(minor)
        term = (a[0] * d[0] - a[1] * d[1], a[0] * d[1] + a[1] * d[0])
        if j % 2:
            re_acc -= term[0]
            im_acc -= term[1]
        else:
            re_acc += term[0]
            im_acc += term[1]
    return re_acc, im_acc


def char_coeffs(key: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Sums of k x k principal minors, k = 1..n (elementary symmetric functions
    of the eigenvalues).  Exact integers; for a Hermitian matrix every minor
    sum is real."""
    coeffs = []
    for k in range(1, n + 1):
        total = 0
        for subset in combinations(range(n), k):
            rows = [[_entry(key, n, p, q) for q in subset] for p in subset]
            re, im = _det_exact(rows)
            if im != 0:
                raise ArithmeticError(f"non-real principal minor for key {key}")
            total += re
        coeffs.append(total)
    return tuple(coeffs)


class NotPositiveSemidefiniteError(ArithmeticError):
    """A matrix expected to be PSD has a negative principal-minor sum."""


@dataclass(frozen=True)
class EigenSummary:
    rank: int
    product: int          # product of the nonzero eigenvalues (1 for the zero matrix)
    coeffs: tuple[int, ...]

    def eigenvalues(self, n: int, key: tuple[int, ...]) -> np.ndarray:
        return np.linalg.eigvalsh(key_to_matrix(key, n))


_SUMMARY_CACHE: dict[tuple[int, tuple[int, ...]], EigenSummary] = {}


def eigen_summary(key: tuple[int, ...], n: int) -> EigenSummary:
    """Rank and exact nonzero-eigenvalue product of a PSD integer matrix.

    rank = largest k with a nonzero k x k principal-minor sum; the product of
    the nonzero eigenvalues equals that minor sum.  Exact for any n, but the
    cost grows combinatorially; beyond n = 4 prefer `eigen_summary_float`.
    """
    cached = _SUMMARY_CACHE.get((n, key))
    if cached is not None:
        return cached
    coeffs = char_coeffs(key, n)
    rank = 0
    product = 1
    for k in range(n, 0, -1):
        if coeffs[k - 1] != 0:
            rank = k
            product = coeffs[k - 1]
            break
    if product < 0 or any(c < 0 for c in coeffs):
        raise NotPositiveSemidefiniteError(f"negative principal minor sum: {coeffs}")
    out = EigenSummary(rank=rank, product=product, coeffs=coeffs)
    _SUMMARY_CACHE[(n, key)] = out
    return out


def eigen_summary_float(key: tuple[int, ...], n: int) -> tuple[int, float, np.ndarray]:
    """Floating fallback: (rank, nonzero-eigenvalue product, eigenvalues).

    Rank uses the relative threshold `_FLOAT_RANK_RTOL * lambda_max`.
    """
    ev = np.linalg.eigvalsh(key_to_matrix(key, n))
    lam_max = float(ev[-1]) if len(ev) else 0.0
    if lam_max <= 0.0:
        return 0, 1.0, ev
    nonzero = ev[ev > _FLOAT_RANK_RTOL * lam_max]
    return len(nonzero), float(np.prod(nonzero)), ev


def rank_of(key: tuple[int, ...], n: int) -> int:
    return eigen_summary(key, n).rank

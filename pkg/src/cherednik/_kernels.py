"""Hot loops over batches of compositions.

Each kernel has a numba version and a plain numpy version with identical
output. Set ``CHEREDNIK_NO_NUMBA=1`` to force the numpy path (also used when
numba is not importable). ``CHEREDNIK_THREADS`` caps numba's thread pool.
"""
from __future__ import annotations

import os
from itertools import combinations
from math import comb

import numpy as np

_FORCE_NUMPY = os.environ.get("CHEREDNIK_NO_NUMBA", "").strip() not in ("", "0")

try:
    if _FORCE_NUMPY:
        raise ImportError
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
    # an old system TBB only produces a warning; try the other layers first
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
    _threads = os.environ.get("CHEREDNIK_THREADS")
    if _threads:
        numba.set_num_threads(max(1, min(int(_threads), numba.config.NUMBA_NUM_THREADS)))
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# --------------------------------------------------------------------------
# numpy implementations


def np_compositions(n: int, degree: int) -> np.ndarray:
    """All compositions of ``degree`` into ``n`` non-negative parts (lex order, descending first part)."""
    if n == 0:
        return np.zeros((1 if degree == 0 else 0, 0), dtype=np.int64)
    if n == 1:
        return np.array([[degree]], dtype=np.int64)
    bars = np.array(list(combinations(range(degree + n - 1), n - 1)), dtype=np.int64).reshape(-1, n - 1)
    m = bars.shape[0]
    left = np.concatenate([np.full((m, 1), -1, dtype=np.int64), bars], axis=1)
    right = np.concatenate([bars, np.full((m, 1), degree + n - 1, dtype=np.int64)], axis=1)
    return (right - left - 1)[::-1].copy()


def np_sort_rows(A: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (α⁻, w⁻¹, w) row-wise, 1-indexed permutations, longest-w tie break."""
    N, n = A.shape
    key = A * n + (n - 1 - np.arange(n, dtype=np.int64))[None, :]
    order = np.argsort(key, axis=1, kind="stable")
    am = np.take_along_axis(A, order, axis=1)
    winv = order + 1
    w = np.empty_like(order)
    np.put_along_axis(w, order, np.broadcast_to(np.arange(1, n + 1, dtype=np.int64), (N, n)), axis=1)
    return am, winv, w


def np_masks(am, winv, kind, t1, t2, k) -> np.ndarray:
    """Bit j set when the row lies in predicate j (type 1: α⁻_{t1} ≥ k; type 2: see module docs)."""
    N = am.shape[0]
    out = np.zeros(N, dtype=np.int64)
    for j in range(len(kind)):
        a = am[:, t1[j] - 1]
        if kind[j] == 1:
            hit = a >= k[j]
        else:
            diff = a - am[:, t2[j] - 1]
            hit = (diff > k[j]) | ((diff == k[j]) & (winv[:, t1[j] - 1] < winv[:, t2[j] - 1]))
        out |= hit.astype(np.int64) << j
    return out


def np_spectra(A, w, beta_of_entry, ct_of_entry, dtable, cscale, L, r):
    """Scaled z-eigenvalues and ζ-exponents for each (row, position)."""
    b = beta_of_entry[w - 1]
    ct = ct_of_entry[w - 1]
    z = (A + 1) * L - dtable[b, A % r] - ct * cscale
    zeta = (b - A) % r
    return z, zeta


# --------------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:

    @njit(cache=True)
    def _nb_compositions(n, degree, count):
        out = np.zeros((count, n), dtype=np.int64)
        cur = np.zeros(n, dtype=np.int64)
        cur[0] = degree
        for row in range(count):
            out[row, :] = cur
            if row == count - 1:
                break
            # next composition in the same order as the numpy path
            j = n - 2
            while cur[j] == 0:
                j -= 1
            cur[j] -= 1
            tail = cur[n - 1] + 1
            cur[n - 1] = 0
            cur[j + 1] = tail
        return out

    @njit(parallel=True, cache=True)
    def _nb_sort_rows(A):
        N, n = A.shape
        am = np.empty_like(A)
        winv = np.empty_like(A)
        w = np.empty_like(A)
        for r in prange(N):
            order = np.empty(n, dtype=np.int64)
            for i in range(n):
                order[i] = i
            # insertion sort on (value, -index)
            for i in range(1, n):
                x = order[i]
                j = i - 1
                while j >= 0 and (A[r, order[j]] > A[r, x] or (A[r, order[j]] == A[r, x] and order[j] < x)):
                    order[j + 1] = order[j]
                    j -= 1
                order[j + 1] = x
            for s in range(n):
                am[r, s] = A[r, order[s]]
                winv[r, s] = order[s] + 1
                w[r, order[s]] = s + 1
        return am, winv, w

    @njit(parallel=True, cache=True)
    def _nb_masks(am, winv, kind, t1, t2, k):
        N = am.shape[0]
        out = np.zeros(N, dtype=np.int64)
        m = kind.shape[0]
        for r in prange(N):
            bits = 0
            for j in range(m):
                a = am[r, t1[j] - 1]
                if kind[j] == 1:
                    hit = a >= k[j]
                else:
                    diff = a - am[r, t2[j] - 1]
                    hit = diff > k[j] or (diff == k[j] and winv[r, t1[j] - 1] < winv[r, t2[j] - 1])
                if hit:
                    bits |= 1 << j
            out[r] = bits
        return out

    @njit(parallel=True, cache=True)
    def _nb_spectra(A, w, beta_of_entry, ct_of_entry, dtable, cscale, L, r):
        N, n = A.shape
        z = np.empty_like(A)
        zeta = np.empty_like(A)
        for row in prange(N):
            for i in range(n):
                e = w[row, i] - 1
                b = beta_of_entry[e]
                a = A[row, i]
                z[row, i] = (a + 1) * L - dtable[b, a % r] - ct_of_entry[e] * cscale
                zeta[row, i] = (b - a) % r
        return z, zeta


# --------------------------------------------------------------------------
# dispatch


def compositions(n: int, degree: int, backend: str | None = None) -> np.ndarray:
    if (backend or BACKEND) == "numba" and n > 1:
        return _nb_compositions(n, degree, comb(degree + n - 1, n - 1))
    return np_compositions(n, degree)


def sort_rows(A: np.ndarray, backend: str | None = None):
    if (backend or BACKEND) == "numba":
        return _nb_sort_rows(A)
    return np_sort_rows(A)


def masks(am, winv, kind, t1, t2, k, backend: str | None = None) -> np.ndarray:
    args = [np.asarray(x, dtype=np.int64) for x in (kind, t1, t2, k)]
    if (backend or BACKEND) == "numba":
        return _nb_masks(am, winv, *args)
    return np_masks(am, winv, *args)


def spectra(A, w, beta_of_entry, ct_of_entry, dtable, cscale: int, L: int, r: int, backend: str | None = None):
    if (backend or BACKEND) == "numba":
        return _nb_spectra(A, w, beta_of_entry, ct_of_entry, dtable, cscale, L, r)
    return np_spectra(A, w, beta_of_entry, ct_of_entry, dtable, cscale, L, r)


def available_backends() -> list[str]:
    return ["numpy", "numba"] if HAVE_NUMBA else ["numpy"]

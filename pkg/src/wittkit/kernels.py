"""Dense linear algebra modulo a prime on int64 arrays.

Each kernel has a numba-compiled version and a pure-numpy version. The public
names pick numba unless ``WITTKIT_DISABLE_NUMBA=1`` is set or numba is not
importable. Moduli must be below 2**31 so products fit in int64.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("WITTKIT_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError("disabled by WITTKIT_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _check_modulus(p: int):
    if not 2 <= p < 2**31:
        raise ValueError("modulus must be in [2, 2**31)")


# numpy versions


def matmul_mod_numpy(A, B, p):
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    # one rank-1 update per inner index keeps every product below 2**62
    for k in range(A.shape[1]):
        out = (out + np.outer(A[:, k], B[k, :])) % p
    return out


def _eliminate_numpy(M, p, want_det):
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    rank = 0
    det = 1
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(M[rank:, c])[0]
        if nz.size == 0:
            if want_det:
                return 0, 0
            continue
        piv = rank + nz[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
            det = -det
        inv = pow(int(M[rank, c]), p - 2, p)
        det = det * int(M[rank, c]) % p
        M[rank] = M[rank] * inv % p
        below = M[rank + 1:, c].copy()
        M[rank + 1:] = (M[rank + 1:] - np.outer(below, M[rank])) % p
        rank += 1
    return rank, det % p


def rank_mod_numpy(M, p):
    return _eliminate_numpy(M, p, False)[0]


def det_mod_numpy(M, p):
    M = np.asarray(M)
    if M.shape[0] != M.shape[1]:
        raise ValueError("square matrix expected")
    if M.shape[0] == 0:
        return 1
    return _eliminate_numpy(M, p, True)[1]


# numba versions


@njit(cache=False)
def _matmul_mod_jit(A, B, p):
    n, k = A.shape
    m = B.shape[1]
    out = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        for t in range(k):
            a = A[i, t]
            if a != 0:
                for j in range(m):
                    out[i, j] = (out[i, j] + a * B[t, j]) % p
    return out


@njit(cache=False)
def _powmod(a, e, p):
    r = 1
    a = a % p
    while e > 0:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


@njit(cache=False)
def _eliminate_jit(M, p, want_det):
    rows, cols = M.shape
    rank = 0
    det = 1
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if M[r, c] != 0:
                piv = r
                break
        if piv < 0:
            if want_det:
                return 0, 0
            continue
        if piv != rank:
            for j in range(cols):
                tmp = M[rank, j]
                M[rank, j] = M[piv, j]
                M[piv, j] = tmp
            det = -det
        det = det * M[rank, c] % p
        inv = _powmod(M[rank, c], p - 2, p)
        for j in range(cols):
            M[rank, j] = M[rank, j] * inv % p
        for r in range(rank + 1, rows):
            f = M[r, c]
            if f != 0:
                for j in range(c, cols):
                    M[r, j] = (M[r, j] - f * M[rank, j]) % p
        rank += 1
    return rank, det % p


def matmul_mod_numba(A, B, p):
    A = np.ascontiguousarray(np.asarray(A, dtype=np.int64) % p)
    B = np.ascontiguousarray(np.asarray(B, dtype=np.int64) % p)
    return _matmul_mod_jit(A, B, np.int64(p))


def rank_mod_numba(M, p):
    M = np.array(M, dtype=np.int64) % p
    return int(_eliminate_jit(M, np.int64(p), False)[0])


def det_mod_numba(M, p):
    M = np.array(M, dtype=np.int64) % p
    if M.shape[0] != M.shape[1]:
        raise ValueError("square matrix expected")
    if M.shape[0] == 0:
        return 1
    return int(_eliminate_jit(M, np.int64(p), True)[1])


def matmul_mod(A, B, p: int):
    _check_modulus(p)
    return (matmul_mod_numba if HAVE_NUMBA else matmul_mod_numpy)(A, B, p)


def rank_mod(M, p: int) -> int:
    _check_modulus(p)
    return int((rank_mod_numba if HAVE_NUMBA else rank_mod_numpy)(M, p))


def det_mod(M, p: int) -> int:
    _check_modulus(p)
    return int((det_mod_numba if HAVE_NUMBA else det_mod_numpy)(M, p))

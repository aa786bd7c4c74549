import os
import subprocess
import sys

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from wittkit import kernels

PRIMES = [5, 13, 101, 2_147_483_629]

@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("n", [1, 3, 6])
def test_backends_agree_with_sympy(p, n):
    rng = np.random.default_rng(p + n)
    A = rng.integers(0, p, size=(n, n), dtype=np.int64)
    B = rng.integers(0, p, size=(n, n), dtype=np.int64)
    ref_mul = (sympy.Matrix(A.tolist()) * sympy.Matrix(B.tolist())).applyfunc(lambda e: e % p)
    ref_det = int(sympy.Matrix(A.tolist()).det()) % p
    for mul, det in [(kernels.matmul_mod_numpy, kernels.det_mod_numpy),
                     (kernels.matmul_mod_numba, kernels.det_mod_numba)]:
        assert np.array_equal(mul(A, B, p), np.array(ref_mul.tolist(), dtype=np.int64))
        assert det(A, p) == ref_det

@settings(max_examples=40)
@given(st.integers(1, 7), st.integers(1, 7), st.sampled_from(PRIMES[:3]), st.integers(0, 2**32))
def test_rank_backends_agree(rows, cols, p, seed):
    rng = np.random.default_rng(seed)
    # low-rank products exercise pivot skipping
    k = int(rng.integers(0, min(rows, cols) + 1))
    A = kernels.matmul_mod_numpy(rng.integers(0, p, (rows, k)), rng.integers(0, p, (k, cols)), p) if k \
        else np.zeros((rows, cols), dtype=np.int64)
    r1 = kernels.rank_mod_numpy(A, p)
    r2 = kernels.rank_mod_numba(A, p)
    assert r1 == r2 <= k
    F = sympy.GF(p)
    from sympy.polys.matrices import DomainMatrix

    assert r1 == DomainMatrix([[F(int(v)) for v in row] for row in A.tolist()], (rows, cols), F).rank()

def test_modulus_guard():
    with pytest.raises(ValueError):
        kernels.det_mod(np.eye(2, dtype=np.int64), 2**31 + 11)

def test_empty_determinant():
    assert kernels.det_mod(np.zeros((0, 0), dtype=np.int64), 7) == 1

def test_env_flag_selects_numpy():
    env = dict(os.environ, WITTKIT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from wittkit import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"

import os
import random
import subprocess
import sys

import pytest

from lgcy import _kernels
from lgcy._kernels import pure
from lgcy.mf.factorization import build_koszul_minus
from lgcy.mf.potential import fermat_split

needs_compiled = pytest.mark.skipif(_kernels.compiled is None, reason="compiled kernels not built")


def test_backend_flag():
    assert _kernels.BACKEND in ("cython", "python")
    assert (_kernels.BACKEND == "cython") == (_kernels.compiled is not None)


def test_pure_override_env():
    env = dict(os.environ, LGCY_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from lgcy import _kernels; print(_kernels.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


@needs_compiled
def test_mb_integrand_agrees():
    rng = random.Random(7)
    c = _kernels.compiled
    for _ in range(1000):
        s = complex(rng.uniform(-0.3, -0.03), rng.uniform(-40, 40))
        lv = complex(rng.uniform(-10, 2), rng.uniform(-6, 6))
        l = rng.choice([-1, 0, 1, 2])
        a = pure.mb_integrand(s, lv, l, 1.0)
        b = c.mb_integrand(s, lv, l, 1.0)
        scale = max(abs(x) for x in a) or 1.0
        assert max(abs(x - y) for x, y in zip(a, b)) <= 1e-12 * scale


@needs_compiled
def test_loggamma_derivs_agree():
    rng = random.Random(8)
    for _ in range(500):
        z = complex(rng.uniform(0.5, 40), rng.uniform(-40, 40))
        for a, b in zip(pure.loggamma_derivs(z), _kernels.compiled.loggamma_derivs(z)):
            assert abs(a - b) <= 1e-13 * max(1.0, abs(a))


@needs_compiled
def test_sparse_matmul_agrees():
    K = build_koszul_minus(fermat_split(), validate=False)
    assert pure.sparse_matmul(K.rows, K.rows) == _kernels.compiled.sparse_matmul(K.rows, K.rows)
    rows = [0, 5, 17]
    assert pure.sparse_matmul(K.rows, K.rows, rows) == _kernels.compiled.sparse_matmul(K.rows, K.rows, rows)


@needs_compiled
def test_poly_mul_agrees():
    a = {1: 2, 5: -3, 1 << 70: 1}
    b = {2: 1, 5: 3}
    assert pure.poly_mul(a, b) == _kernels.compiled.poly_mul(a, b)


def test_mb_line_matches_pointwise():
    ys = [-3.0, 0.0, 2.5]
    line = _kernels.mb_integrand_line(-1 / 6, ys, complex(-3, -3), 0)
    for y, row in zip(ys, line):
        assert list(row) == list(_kernels.mb_integrand(complex(-1 / 6, y), complex(-3, -3), 0))

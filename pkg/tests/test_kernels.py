import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F3, F5, polys
from ffcn import _kernels_py, kernels
from ffcn.ff_core import factor, legendre_symbol

try:
    from ffcn import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

BACKENDS = [_kernels_py] + ([_kernels_c] if _kernels_c else [])
needs_ext = pytest.mark.skipif(_kernels_c is None, reason="compiled extension not built")


def _jacobi_by_factoring(a, b):
    out = 1
    for p, e in factor(b).factors:
        out *= legendre_symbol(a, p) ** e
    return out


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@given(data=st.data())
def test_jacobi_is_product_of_legendre(impl, data):
    ctx = data.draw(st.sampled_from([F3, F5]))
    a = data.draw(polys(ctx, 7))
    b = data.draw(polys(ctx, 6, monic=True))
    assert impl.jacobi(list(a.coeffs), list(b.coeffs), ctx.q) == _jacobi_by_factoring(a, b)


@needs_ext
@given(data=st.data())
def test_char_sums_backends_agree(data):
    ctx = data.draw(st.sampled_from([F3, F5]))
    d0 = data.draw(polys(ctx, 4, nonzero=True))
    n = data.draw(st.integers(0, 4 if ctx.q == 3 else 3))
    c = list(d0.coeffs)
    assert _kernels_py.char_sums(ctx.q, c, n) == _kernels_c.char_sums(ctx.q, c, n)


@needs_ext
@given(data=st.data())
def test_quadratic_char_sum_backends_agree(data):
    ctx = data.draw(st.sampled_from([F3, F5]))
    n = data.draw(st.integers(1, 3))
    modulus = next(m for m in ctx.monic_polys(n) if len(factor(m).factors) == 1 and factor(m).factors[0][1] == 1)
    f = data.draw(polys(ctx, 5, nonzero=True))
    args = (ctx.q, list(modulus.coeffs), list(f.coeffs))
    assert _kernels_py.quadratic_char_sum(*args) == _kernels_c.quadratic_char_sum(*args)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_char_sums_elliptic_example(impl):
    # y^2 = t^3 + 2t + 1 over F_3: L(u) = 1 + 3u + 3u^2
    assert impl.char_sums(3, [1, 2, 0, 1], 5) == [1, 3, 3, 0, 0, 0]


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_quadratic_char_sum_examples(impl):
    curve = [1, 2, 0, 1]
    # all three values t^3 + 2t + 1 takes on F_3 are 1
    assert impl.quadratic_char_sum(3, [0, 1], curve) == 3
    # over F_9 = F_3[x]/(x^2+1): N_2 = 9 + 1 + S = 7 from the L-polynomial
    assert impl.quadratic_char_sum(3, [1, 0, 1], curve) == -3


def test_backend_selection_env():
    env = dict(os.environ, FFCN_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import ffcn.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("python", "cython")


@needs_ext
def test_compiled_rejects_oversized_input():
    with pytest.raises(ValueError):
        _kernels_c.jacobi([1] * 70, [1], 3)


@pytest.mark.parametrize("suite", ["classnum", "theta"])
def test_fallback_backend_passes_suites(suite):
    env = dict(os.environ, FFCN_PURE_PYTHON="1")
    proc = subprocess.run(
        [sys.executable, "-m", "ffcn", "verify", "--suite", suite], env=env, capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    assert '"backend": "python"' in proc.stdout

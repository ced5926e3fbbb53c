"""Compiled and numpy kernels must agree, and the fallback must be selectable."""

import os
import subprocess
import sys

import numpy as np
import pytest

from qbohr import _pykernels
from qbohr.quaternion import Quaternion

from helpers import _ckernels, naive_eval, rand_coeffs

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def test_pure_python_override_selects_fallback():
    env = dict(os.environ, QBOHR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import qbohr; print(qbohr.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
def test_default_backend_is_compiled():
    env = {k: v for k, v in os.environ.items() if k != "QBOHR_PURE_PYTHON"}
    out = subprocess.run([sys.executable, "-c", "import qbohr; print(qbohr.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "cython"


@needs_ext
@pytest.mark.parametrize("na,nb,n_out", [(1, 1, 1), (5, 3, 7), (9, 9, 4), (40, 17, 80), (3, 8, 2)])
def test_star_convolve_backends_agree(rng, na, nb, n_out):
    a, b = rand_coeffs(rng, na), rand_coeffs(rng, nb)
    got = _ckernels.star_convolve(a, b, n_out)
    ref = _pykernels.star_convolve(a, b, n_out)
    assert got.shape == ref.shape == (n_out, 4)
    np.testing.assert_allclose(got, ref, atol=1e-13)


@needs_ext
def test_horner_backends_agree(rng):
    c = rand_coeffs(rng, 30)
    pts = rng.uniform(-0.7, 0.7, (50, 4))
    np.testing.assert_allclose(_ckernels.horner(c, pts), _pykernels.horner(c, pts), atol=1e-13)


@needs_ext
def test_real_inverse_backends_agree(rng):
    s = np.concatenate([[1.5], rng.uniform(-1, 1, 12)])
    np.testing.assert_allclose(_ckernels.real_inverse(s, 60), _pykernels.real_inverse(s, 60),
                               rtol=1e-12, atol=1e-12)


def test_horner_matches_explicit_powers(rng):
    c = rand_coeffs(rng, 12)
    for _ in range(20):
        q = Quaternion(*rng.uniform(-0.6, 0.6, 4))
        expect = naive_eval(c, q)
        for mod in filter(None, (_pykernels, _ckernels)):
            got = Quaternion(*mod.horner(c, np.array([q.as_tuple()]))[0])
            assert abs(got - expect) <= 1e-13


def test_real_inverse_is_inverse_under_convolution(rng):
    s = np.concatenate([[0.8], rng.uniform(-1, 1, 6)])
    g = _pykernels.real_inverse(s, 25)
    prod = np.convolve(s, g)[:25]
    np.testing.assert_allclose(prod, np.eye(1, 25)[0], atol=1e-10)


def test_empty_and_degenerate_shapes():
    z = np.zeros((0, 4))
    assert _pykernels.star_convolve(z, z, 3).shape == (3, 4)
    assert _pykernels.real_inverse(np.array([2.0]), 0).shape == (0,)
    assert _pykernels.horner(z, np.zeros((2, 4))).shape == (2, 4)

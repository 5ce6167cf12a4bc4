import math
import os
import subprocess
import sys

import numpy as np
import pytest

from qstnet import _kernels_py, kernels


def _random_system(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n))
    lam, v = np.linalg.eigh(a + a.T)
    return v[0] * v[-1], lam - 0.5 * (lam[0] + lam[-1])


def _direct(w, lam, t):
    return abs(np.sum(w * np.exp(-1j * lam * t))) ** 2


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("seed", range(5))
def test_fidelity_at_matches_direct_sum(backend, seed):
    w, lam = _random_system(7, seed)
    for t in (0.0, 0.3, 2.7, 133.0):
        assert backend.fidelity_at(w, lam, t) == pytest.approx(_direct(w, lam, t), abs=1e-14)


def test_fidelity_grid_matches_pointwise(backend):
    w, lam = _random_system(9, 11)
    times = np.linspace(0, 50, 200_001)  # crosses the chunk boundary
    vals = backend.fidelity_grid(w, lam, times)
    idx = [0, 1, 65_535, 65_536, 65_537, 200_000]
    for k in idx:
        assert vals[k] == pytest.approx(_direct(w, lam, times[k]), abs=1e-13)


def test_backends_agree():
    cy = pytest.importorskip("qstnet._kernels")
    w, lam = _random_system(12, 5)
    times = np.linspace(0, 100, 50_001)
    a = cy.fidelity_grid(w, lam, times)
    b = _kernels_py.fidelity_grid(w, lam, times)
    assert np.max(np.abs(a - b)) < 1e-13
    assert np.array_equal(cy.local_maxima(b), _kernels_py.local_maxima(b))
    ta, fa = cy.golden_max(w, lam, 1.0, 1.5, 1e-12)
    tb, fb = _kernels_py.golden_max(w, lam, 1.0, 1.5, 1e-12)
    assert abs(ta - tb) < 1e-8 and abs(fa - fb) < 1e-13


def test_local_maxima(backend):
    vals = np.array([3.0, 1.0, 2.0, 2.0, 0.5, 4.0, 1.0, 5.0])
    assert list(backend.local_maxima(vals)) == [0, 2, 3, 5, 7]
    assert list(backend.local_maxima(np.array([1.0]))) == [0]


def test_golden_max_cosine(backend):
    # f = cos^2(t) on [2, 4] peaks at pi
    w = np.array([0.5, 0.5])
    lam = np.array([-1.0, 1.0])
    t, f = backend.golden_max(w, lam, 2.0, 4.0, 1e-12)
    assert abs(t - math.pi) < 1e-6
    assert f == pytest.approx(1.0, abs=1e-14)


def test_env_forces_python_fallback():
    env = dict(os.environ, QSTNET_PURE_PYTHON="1")
    proc = subprocess.run(
        [sys.executable, "-c", "import qstnet; print(qstnet.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )  # fmt: skip
    assert proc.stdout.strip() == "python"

"""The numba and numpy kernel paths must agree exactly."""

import numpy as np
import pytest

from rolecomm import _kernels_numpy as knp
from rolecomm._accel import HAVE_NUMBA
from rolecomm.stability import autocovariance, markov_process

from conftest import random_connected_weights, random_symmetric

pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


@pytest.fixture(scope="module")
def knb():
    from rolecomm import _kernels_numba

    return _kernels_numba


@pytest.mark.parametrize("n", [2, 3, 10, 60])
def test_prim_parity(knb, rng, n):
    z = random_symmetric(rng, n)
    assert np.array_equal(knb.prim_mst(z), knp.prim_mst(z))
    # heavy ties
    zt = np.round(z, 1)
    assert np.array_equal(knb.prim_mst(zt), knp.prim_mst(zt))


def test_mlink_parity(knb, rng):
    n = 40
    z = random_symmetric(rng, n)
    tree = knp.prim_mst(z)
    w = z[tree[:, 0], tree[:, 1]]
    order = np.lexsort((tree[:, 1], tree[:, 0], w))
    args = (n, tree[order, 0].copy(), tree[order, 1].copy(), w[order].copy())
    m1, ok1 = knb.mlink_union_find(*args)
    m2, ok2 = knp.mlink_union_find(*args)
    assert ok1 and ok2
    assert np.array_equal(m1, m2)


def test_mlink_cycle_flag(knb):
    eu = np.array([0, 1, 0])
    ev = np.array([1, 2, 2])
    ew = np.array([0.1, 0.2, 0.3])
    assert not knb.mlink_union_find(3, eu, ev, ew)[1]
    assert not knp.mlink_union_find(3, eu, ev, ew)[1]


@pytest.mark.parametrize("t", [0.3, 3.0, 30.0])
def test_local_moves_parity(knb, rng, t):
    w = random_connected_weights(rng, 30, p=0.15)
    b = autocovariance(markov_process(w), t)
    order = rng.permutation(30)
    c1, m1 = knb.louvain_local_moves(b, order, 1e-14)
    c2, m2 = knp.louvain_local_moves(b, order, 1e-14)
    assert m1 == m2
    assert np.array_equal(c1, c2)


@pytest.mark.parametrize("flag, expected", [("1", "numpy"), ("", "numba")])
def test_env_flag_selects_backend(flag, expected):
    import os
    import subprocess
    import sys

    env = dict(os.environ, ROLECOMM_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", "import rolecomm.kernels as k; print(k.backend_name())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected

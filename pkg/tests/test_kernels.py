import math

import numpy as np
import pytest

from aspir8 import BoundarySpec, CatheterConfig, Grid, SimState, VesselParams, run
from aspir8.kernels import available_backends

from conftest import A0, U_INIT

needs_compiled = pytest.mark.skipif(
    "compiled" not in available_backends(),
    reason="compiled kernel extension not built")


def random_inputs(N=37, seed=0):
    rng = np.random.default_rng(seed)
    A_l = A0 * (1 + 0.2 * rng.random(N))
    u_l = U_INIT * (1 - 0.4 * rng.random(N))
    w = -5000.0 * rng.random(N)
    A_r = A0 * (1 + 0.2 * rng.random(N))
    u_r = U_INIT * (1 - 0.4 * rng.random(N))
    cpl = rng.uniform(-1.0, 1.0, 9) + np.array(
        [A0, U_INIT, A0 * U_INIT, 3e4, -100.0, A0, U_INIT, A0 * U_INIT, 3e4])
    ghosts = (A_l[0], u_l[0], w[0], A_r[-1], u_r[-1])
    return A_l, u_l, w, A_r, u_r, ghosts, cpl


def call(kernel, N=37, seed=0):
    A_l, u_l, w, A_r, u_r, ghosts, cpl = random_inputs(N, seed)
    outs = [np.empty(N) for _ in range(5)]
    flux_out = np.empty(6)
    beta = 338513.7501286537
    kernel(A_l, u_l, w, A_r, u_r, *outs, *ghosts, *cpl,
           beta, 1.0, math.pi * 0.01, math.sqrt(A0), 1000.0, 9e-4, flux_out)
    return outs, flux_out


@needs_compiled
@pytest.mark.parametrize("seed", range(5))
def test_backends_bit_identical(seed):
    backends = available_backends()
    outs_py, flux_py = call(backends["python"], seed=seed)
    outs_c, flux_c = call(backends["compiled"], seed=seed)
    for a, b in zip(outs_py, outs_c):
        assert np.array_equal(a, b)
    assert np.array_equal(flux_py, flux_c)


@needs_compiled
def test_backends_agree_over_full_run(params, cath):
    # whole-run bit identity, exercising boundary and coupling paths
    backends = available_backends()
    finals = []
    for name in ("python", "compiled"):
        st = SimState.uniform(Grid(64), A=A0, u=U_INIT, w=-5000.0)
        res = run(st, BoundarySpec(), params, cath, 2e-3,
                  kernel=backends[name])
        finals.append(res.state)
    a, b = finals
    assert np.array_equal(a.A, b.A)
    assert np.array_equal(a.u, b.u)
    assert np.array_equal(a.w, b.w)

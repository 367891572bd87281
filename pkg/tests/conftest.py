import math

import pytest

from aspir8 import CatheterConfig, Side, TraceData, VesselParams, pressure

A0 = math.pi / 4
U_INIT = 254.65


@pytest.fixture
def params() -> VesselParams:
    return VesselParams.from_elasticity(A0=A0, E=3e6, h0=0.05, rho=1.0)


@pytest.fixture
def cath() -> CatheterConfig:
    return CatheterConfig(A_c=math.pi * 0.01)


@pytest.fixture
def no_cath() -> CatheterConfig:
    return CatheterConfig(A_c=0.0)


def equilibrium_trace(params: VesselParams, cath: CatheterConfig,
                      u: float = U_INIT, w: float = 0.0) -> TraceData:
    """Traces of the uniform initial configuration, auxiliary inputs set to
    the physical fluxes."""
    p1 = pressure(A0, Side.CATHETERIZED, params, cath)
    p2 = pressure(A0, Side.FREE, params, cath)
    return TraceData(
        A_minus=A0, u_minus=u, vA_minus=A0 * u,
        vu_minus=p1 / params.rho + 0.5 * u * u, w_minus=w,
        A_plus=A0, u_plus=u, vA_plus=A0 * u,
        vu_plus=p2 / params.rho + 0.5 * u * u,
    )

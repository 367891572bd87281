"""Outer boundary conditions via ghost cells.

Supported: homogeneous Neumann on either end, a prescribed inlet pressure on
the proximal (catheterized) end, a terminal reflection coefficient on the
distal (free) end and a fixed or Neumann device velocity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

from .physio import CatheterConfig, Side, VesselParams, inverse_pressure, wave_speed


@dataclass(frozen=True)
class Neumann:
    """Ghost copies the adjacent interior cell."""


@dataclass(frozen=True)
class InletPressure:
    """Prescribed gauge pressure p_in(t) at the proximal end."""

    p_in: Callable[[float], float]


@dataclass(frozen=True)
class Reflection:
    """Terminal reflection of the outgoing characteristic, coefficient R_T."""

    R_T: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.R_T <= 1.0:
            raise ValueError(f"R_T must lie in [0, 1], got {self.R_T}")


@dataclass(frozen=True)
class FixedVelocity:
    """Prescribed device velocity at the proximal end."""

    w: float


LeftCondition = Union[Neumann, InletPressure]
RightCondition = Union[Neumann, Reflection]
DeviceCondition = Union[Neumann, FixedVelocity]


@dataclass(frozen=True)
class BoundarySpec:
    left: LeftCondition = field(default_factory=Neumann)
    right: RightCondition = field(default_factory=Neumann)
    device_left: DeviceCondition = field(default_factory=Neumann)


@dataclass(frozen=True)
class GhostCells:
    A_left: float
    u_left: float
    w_left: float
    A_right: float
    u_right: float


def _inlet_ghost(
    A_int: float, u_int: float, p_target: float,
    params: VesselParams, cath: CatheterConfig
) -> tuple[float, float]:
    # Characteristic inlet: the incoming invariant is imposed from the target
    # state (A(p_in), u = 0) while the outgoing one is extrapolated from the
    # interior, so reflected waves leave the vessel instead of bouncing off a
    # pinned pressure.  The catheterized-side invariants have no elementary
    # closed form; they are linearized about the interior state with slope
    # k = c(A)/A:
    #   incoming: u_g + k (A_g - A_target) = 0
    #   outgoing: u_g - u_int - k (A_g - A_int) = 0
    A_target = inverse_pressure(p_target, Side.CATHETERIZED, params, cath)
    c_int = wave_speed(A_int, Side.CATHETERIZED, params, cath)
    k = c_int / A_int
    A_g = 0.5 * (A_target + A_int) - u_int / (2.0 * k)
    u_g = u_int + k * (A_g - A_int)
    if not A_g > 0.0:
        raise ValueError(
            f"inlet boundary produced non-positive ghost area {A_g}"
        )
    return A_g, u_g


def _reflection_ghost(
    A_int: float, u_int: float, R_T: float, params: VesselParams
) -> tuple[float, float]:
    # Free-side Riemann invariants W_{1,2} = u +- 4 c(A) with
    # c(A) = sqrt(beta/(2 rho)) A^(1/4).  The outgoing invariant W_1 is
    # extrapolated from the interior; the incoming one is set to reflect the
    # outgoing deviation from the reference state (A0, 0) scaled by -R_T.
    scale = math.sqrt(params.beta / (2.0 * params.rho))
    c_int = scale * A_int**0.25
    c_ref = scale * params.A0**0.25
    W1 = u_int + 4.0 * c_int
    W1_ref = 4.0 * c_ref
    W2_ref = -4.0 * c_ref
    W2 = W2_ref - R_T * (W1 - W1_ref)
    u_g = 0.5 * (W1 + W2)
    c_g = (W1 - W2) / 8.0
    if not c_g > 0.0:
        raise ValueError(
            f"reflection boundary produced non-positive wave speed {c_g}"
        )
    A_g = (c_g / scale) ** 4
    return A_g, u_g


def ghost_states(state, spec: BoundarySpec, t: float,
                 params: VesselParams, cath: CatheterConfig) -> GhostCells:
    """Ghost-cell values for both vessel ends and the device field."""
    if isinstance(spec.left, Neumann):
        A_lg, u_lg = float(state.A_left[0]), float(state.u_left[0])
    elif isinstance(spec.left, InletPressure):
        A_lg, u_lg = _inlet_ghost(
            float(state.A_left[0]), float(state.u_left[0]),
            spec.left.p_in(t), params, cath
        )
    else:
        raise TypeError(f"unsupported left boundary condition: {spec.left!r}")

    if isinstance(spec.right, Neumann):
        A_rg, u_rg = float(state.A_right[-1]), float(state.u_right[-1])
    elif isinstance(spec.right, Reflection):
        A_rg, u_rg = _reflection_ghost(
            float(state.A_right[-1]), float(state.u_right[-1]), spec.right.R_T, params
        )
    else:
        raise TypeError(f"unsupported right boundary condition: {spec.right!r}")

    if isinstance(spec.device_left, Neumann):
        w_lg = float(state.w[0])
    elif isinstance(spec.device_left, FixedVelocity):
        w_lg = spec.device_left.w
    else:
        raise TypeError(f"unsupported device boundary condition: {spec.device_left!r}")

    return GhostCells(A_left=A_lg, u_left=u_lg, w_left=w_lg,
                      A_right=A_rg, u_right=u_rg)

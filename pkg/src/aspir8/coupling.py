"""Interface Riemann solver at the catheter tip.

Maps nine trace values (left and right of the tip) to nine coupling values
that lie on the Lax curves of the linear relaxation system and satisfy the
area, velocity and auxiliary-flux coupling conditions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "TraceData",
    "CouplingData",
    "CouplingFailure",
    "device_boundary_velocity",
    "solve_area_coupling",
    "solve_velocity_coupling",
    "riemann_solve",
    "quadratic_roots",
]

# Below this device area the quadratic for sigma_u^+ degenerates to a linear
# equation (its leading coefficient vanishes with A_c).
DEGENERATE_A_C = 1e-14


@dataclass(frozen=True)
class TraceData:
    """Trace values adjacent to the tip; minus = catheterized, plus = free."""

    A_minus: float
    u_minus: float
    vA_minus: float
    vu_minus: float
    w_minus: float
    A_plus: float
    u_plus: float
    vA_plus: float
    vu_plus: float

    def __post_init__(self) -> None:
        if not (self.A_minus > 0.0 and self.A_plus > 0.0):
            raise ValueError(
                f"trace areas must be positive: A_minus={self.A_minus}, "
                f"A_plus={self.A_plus}"
            )


@dataclass(frozen=True)
class CouplingData:
    """Coupling/boundary values: R-states feed the catheterized side, L-states
    the free side."""

    A_R: float
    u_R: float
    vA_R: float
    vu_R: float
    w_R: float
    A_L: float
    u_L: float
    vA_L: float
    vu_L: float

    def residuals(self, A_c: float, w_minus: float | None = None) -> dict[str, float]:
        """Absolute residuals of the coupling conditions (diagnostics).

        With ``w_minus`` given, also reports how far w_R sits above the
        admissible set (-inf, min(0, -w_minus)].
        """
        gross = self.A_R + A_c
        out = {
            "area": self.A_L - gross,
            "velocity": (self.A_R * self.u_R + A_c * self.w_R) / gross - self.u_L,
            "aux_area": self.vA_L - (self.vA_R + A_c * self.w_R),
            "aux_velocity": self.vu_L
            - (self.vu_R + 0.5 * (self.u_L**2 - self.u_R**2)),
        }
        if w_minus is not None:
            out["device_admissible"] = max(0.0, self.w_R - min(0.0, -w_minus))
        return out


class CouplingFailure(Exception):
    """The interface solver could not produce admissible coupling data."""

    def __init__(self, message: str, trace: TraceData, **info: float):
        super().__init__(message)
        self.trace = trace
        self.info = info


def device_boundary_velocity(w_minus: float) -> float:
    """Boundary datum for the device velocity: w_R = -|w_minus|."""
    return -abs(w_minus)


def solve_area_coupling(
    trace: TraceData, lam: float, A_c: float, w_R: float
) -> tuple[float, float, float, float]:
    """Closed-form coupling data for the area states.

    Returns (A_R, A_L, vA_R, vA_L); the pairs lie on the Lax curves through
    the traces and satisfy A_L = A_R + A_c and vA_L = vA_R + A_c * w_R
    exactly.
    """
    if not lam > 0.0:
        raise ValueError(f"relaxation speed must be positive, got {lam}")
    A_R = 0.5 * (trace.A_minus + trace.A_plus - A_c) + (0.5 / lam) * (
        trace.vA_minus - trace.vA_plus + A_c * w_R
    )
    A_L = A_R + A_c
    vA_R = 0.5 * (trace.vA_minus + trace.vA_plus - A_c * w_R) + (0.5 * lam) * (
        trace.A_minus - trace.A_plus + A_c
    )
    vA_L = vA_R + A_c * w_R
    if not A_R > 0.0:
        raise CouplingFailure(
            f"vessel collapse at the tip: coupling area A_R={A_R} <= 0",
            trace,
            A_R=A_R,
            A_c=A_c,
            w_R=w_R,
            lam=lam,
        )
    return A_R, A_L, vA_R, vA_L


def quadratic_roots(a: float, b: float, c: float) -> tuple[float, float]:
    """Both real roots of a x^2 + b x + c = 0, numerically stable.

    Requires a != 0 and a non-negative discriminant.
    """
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        raise ValueError(f"negative discriminant {disc}")
    sq = math.sqrt(disc)
    if b >= 0.0:
        q = -0.5 * (b + sq)
    else:
        q = -0.5 * (b - sq)
    if q == 0.0:
        # b == 0 and c*a <= 0: symmetric roots
        return sq / (2.0 * a), -sq / (2.0 * a)
    return q / a, c / q


def _select_min_abs(r1: float, r2: float) -> float:
    # Tie (equal magnitude, opposite sign): take the non-negative root.
    if abs(r1) < abs(r2):
        return r1
    if abs(r2) < abs(r1):
        return r2
    return max(r1, r2)


def solve_velocity_coupling(
    trace: TraceData,
    A_R: float,
    A_L: float,
    w_R: float,
    lam: float,
    A_c: float | None = None,
    clamp_negative_discriminant: bool = False,
) -> tuple[float, float, float, float]:
    """Coupling data (u_R, u_L, vu_R, vu_L) from the Lax-curve parameters.

    Eliminates the left parameter through the velocity coupling condition and
    solves the resulting quadratic for the right parameter sigma_u^+,
    selecting the real root of minimal absolute value.  For A_c below
    ``DEGENERATE_A_C`` the quadratic degenerates to a linear equation which is
    solved directly.
    """
    if A_c is None:
        A_c = A_L - A_R
    ratio = A_L / A_R
    s0 = A_R * trace.u_minus + A_c * w_R - A_L * trace.u_plus
    s1 = trace.vu_minus + 0.5 * (trace.u_plus**2 - trace.u_minus**2) - trace.vu_plus

    a = 0.5 * (ratio * ratio - 1.0)
    b = (
        lam * (1.0 + ratio)
        + trace.u_minus * ratio
        - trace.u_plus
        - s0 * A_L / (A_R * A_R)
    )
    c = (s0 / (2.0 * A_R) - lam - trace.u_minus) * (s0 / A_R) - s1

    if A_c < DEGENERATE_A_C:
        sigma_p = -c / b if b != 0.0 else 0.0
    else:
        disc = b * b - 4.0 * a * c
        if disc < 0.0:
            if clamp_negative_discriminant:
                sigma_p = -b / (2.0 * a)
            else:
                raise CouplingFailure(
                    "no real root of the velocity coupling quadratic "
                    f"(discriminant {disc})",
                    trace,
                    discriminant=disc,
                    s0=s0,
                    s1=s1,
                )
        else:
            sigma_p = _select_min_abs(*quadratic_roots(a, b, c))

    sigma_m = s0 / A_R - ratio * sigma_p
    u_R = trace.u_minus - sigma_m
    vu_R = trace.vu_minus + lam * sigma_m
    u_L = trace.u_plus + sigma_p
    vu_L = trace.vu_plus + lam * sigma_p
    return u_R, u_L, vu_R, vu_L


def riemann_solve(
    trace: TraceData,
    lam: float,
    A_c: float,
    clamp_negative_discriminant: bool = False,
) -> CouplingData:
    """Full interface solve: device datum, area coupling, velocity coupling."""
    w_R = device_boundary_velocity(trace.w_minus)
    A_R, A_L, vA_R, vA_L = solve_area_coupling(trace, lam, A_c, w_R)
    u_R, u_L, vu_R, vu_L = solve_velocity_coupling(
        trace,
        A_R,
        A_L,
        w_R,
        lam,
        A_c=A_c,
        clamp_negative_discriminant=clamp_negative_discriminant,
    )
    return CouplingData(
        A_R=A_R,
        u_R=u_R,
        vA_R=vA_R,
        vu_R=vu_R,
        w_R=w_R,
        A_L=A_L,
        u_L=u_L,
        vA_L=vA_L,
        vu_L=vu_L,
    )

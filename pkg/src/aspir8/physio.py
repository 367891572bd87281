"""Vessel mechanics: pressure laws, their inverses and characteristic speeds.

All quantities are in CGS units (cm, g, s, dyne).  Pressures are gauge
pressures; the external pressure is stored on :class:`VesselParams` but never
enters the dynamics because only the pressure gradient appears in the
momentum flux.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

SQRT_PI = math.sqrt(math.pi)


class Side(Enum):
    """Selects the tube law of a vessel segment.

    The catheterized segment carries the device footprint ``A_c`` inside the
    wall law; the free segment does not.
    """

    CATHETERIZED = 1
    FREE = 2


@dataclass(frozen=True)
class VesselParams:
    """Mechanical constants of the vessel wall and the blood.

    A0     reference cross-section area (cm^2)
    beta   wall stiffness (dyne/cm^3)
    rho    blood density (g/cm^3)
    E      Young modulus (dyne/cm^2)
    h0     wall thickness (cm)
    P_ext  external pressure (dyne/cm^2), stored only
    """

    A0: float
    beta: float
    rho: float
    E: float
    h0: float
    P_ext: float = 0.0

    def __post_init__(self) -> None:
        for name in ("A0", "beta", "rho", "E", "h0"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ValueError(f"{name} must be positive, got {value}")
        expected = self.E * self.h0 * SQRT_PI / self.A0
        if abs(self.beta - expected) > 1e-12 * abs(expected):
            raise ValueError(
                f"beta={self.beta} inconsistent with E*h0*sqrt(pi)/A0={expected}"
            )

    @classmethod
    def from_elasticity(
        cls, A0: float, E: float, h0: float, rho: float, P_ext: float = 0.0
    ) -> "VesselParams":
        """Build parameters with the stiffness derived from (E, h0, A0)."""
        return cls(A0=A0, beta=E * h0 * SQRT_PI / A0, rho=rho, E=E, h0=h0, P_ext=P_ext)


@dataclass(frozen=True)
class CatheterConfig:
    """Geometry and suction mode of the aspiration device.

    A_c               device cross-section area (cm^2)
    tip_position      axial coordinate of the tip (cm)
    suction_velocity  prescribed device velocity w (cm/s, <= 0 for aspiration)
    """

    A_c: float
    tip_position: float = 0.0
    suction_velocity: float = 0.0

    def __post_init__(self) -> None:
        if self.A_c < 0.0:
            raise ValueError(f"A_c must be non-negative, got {self.A_c}")

    def check_fits(self, params: VesselParams) -> None:
        """The device must fit inside the vessel's reference cross-section."""
        if not self.A_c < params.A0:
            raise ValueError(
                f"device area A_c={self.A_c} does not fit inside A0={params.A0}"
            )


def _check_positive_area(A) -> None:
    A = np.asarray(A)
    if np.any(A <= 0.0):
        bad = float(np.min(A))
        raise ValueError(f"non-positive cross-section area: {bad}")


def pressure(A, side: Side, params: VesselParams, cath: CatheterConfig):
    """Gauge pressure of the tube law on the given side.

    Catheterized: beta * (sqrt(A + A_c) - sqrt(A0)); free: beta * (sqrt(A) -
    sqrt(A0)).  Accepts scalars or arrays; strictly increasing in ``A``.
    """
    _check_positive_area(A)
    A = np.asarray(A, dtype=float)
    if side is Side.CATHETERIZED:
        p = params.beta * (np.sqrt(A + cath.A_c) - math.sqrt(params.A0))
    else:
        p = params.beta * (np.sqrt(A) - math.sqrt(params.A0))
    return p if p.ndim else float(p)


def inverse_pressure(p, side: Side, params: VesselParams, cath: CatheterConfig):
    """Area at which the tube law attains gauge pressure ``p``.

    Both laws invert in closed form.  Raises ValueError if ``p`` lies outside
    the range of the law (the resulting area would be non-positive).
    """
    p = np.asarray(p, dtype=float)
    root = p / params.beta + math.sqrt(params.A0)
    if side is Side.CATHETERIZED:
        lower = params.beta * (math.sqrt(cath.A_c) - math.sqrt(params.A0))
        if np.any(p <= lower):
            raise ValueError(
                f"pressure {float(np.min(p))} outside the catheterized law's "
                f"range (> {lower})"
            )
        A = root * root - cath.A_c
    else:
        lower = -params.beta * math.sqrt(params.A0)
        if np.any(p <= lower):
            raise ValueError(
                f"pressure {float(np.min(p))} outside the free law's range "
                f"(> {lower})"
            )
        A = root * root
    return A if A.ndim else float(A)


def wave_speed(A, side: Side, params: VesselParams, cath: CatheterConfig):
    """Characteristic speed c of the given side's subsystem.

    Catheterized: sqrt(beta/(2 rho)) * sqrt(A) / (A + A_c)^(1/4); free:
    sqrt(beta/(2 rho)) * A^(1/4).
    """
    _check_positive_area(A)
    A = np.asarray(A, dtype=float)
    scale = math.sqrt(params.beta / (2.0 * params.rho))
    if side is Side.CATHETERIZED:
        c = scale * np.sqrt(A) / (A + cath.A_c) ** 0.25
    else:
        c = scale * A**0.25
    return c if c.ndim else float(c)

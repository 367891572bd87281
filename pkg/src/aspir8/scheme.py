"""Conservative finite-volume scheme on the two-segment domain [-5,0] u [0,5].

Central relaxation fluxes away from the tip, interface fluxes built from the
coupling data of the interface Riemann solver, forward-Euler updates and
adaptive CFL time stepping with a single global relaxation speed per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .boundary import BoundarySpec, GhostCells, ghost_states
from .coupling import CouplingData, TraceData, riemann_solve
from .physio import CatheterConfig, Side, VesselParams, pressure, wave_speed

CFL_NUMBER = 0.9


class StepFailure(Exception):
    """A time step produced an inadmissible state."""

    def __init__(self, message: str, t: float, segment: str | None = None,
                 cell: int | None = None):
        super().__init__(message)
        self.t = t
        self.segment = segment
        self.cell = cell


@dataclass(frozen=True)
class Grid:
    """Uniform grid with N cells per half-domain; the tip sits at x = 0."""

    N: int
    half_length: float = 5.0

    def __post_init__(self) -> None:
        if self.N < 2:
            raise ValueError(f"need at least 2 cells per segment, got N={self.N}")

    @property
    def dx(self) -> float:
        return self.half_length / self.N

    @property
    def x_left(self) -> np.ndarray:
        """Cell centers of the catheterized segment [-L, 0]."""
        return -self.half_length + (np.arange(self.N) + 0.5) * self.dx

    @property
    def x_right(self) -> np.ndarray:
        """Cell centers of the free segment [0, L]."""
        return (np.arange(self.N) + 0.5) * self.dx

    @property
    def x(self) -> np.ndarray:
        return np.concatenate([self.x_left, self.x_right])


@dataclass
class SimState:
    """Cell-averaged fields of both segments plus the device velocity."""

    grid: Grid
    t: float
    A_left: np.ndarray
    u_left: np.ndarray
    w: np.ndarray
    A_right: np.ndarray
    u_right: np.ndarray

    def __post_init__(self) -> None:
        N = self.grid.N
        for name in ("A_left", "u_left", "w", "A_right", "u_right"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=float)
            setattr(self, name, arr)
            if arr.shape != (N,):
                raise ValueError(f"{name} must have shape ({N},), got {arr.shape}")
        if np.any(self.A_left <= 0.0) or np.any(self.A_right <= 0.0):
            raise ValueError("cross-section areas must be positive")

    @classmethod
    def uniform(cls, grid: Grid, A: float, u: float, w: float,
                t: float = 0.0) -> "SimState":
        N = grid.N
        return cls(grid, t, np.full(N, A), np.full(N, u), np.full(N, w),
                   np.full(N, A), np.full(N, u))

    @property
    def A(self) -> np.ndarray:
        return np.concatenate([self.A_left, self.A_right])

    @property
    def u(self) -> np.ndarray:
        return np.concatenate([self.u_left, self.u_right])

    def copy(self) -> "SimState":
        return SimState(self.grid, self.t, self.A_left.copy(), self.u_left.copy(),
                        self.w.copy(), self.A_right.copy(), self.u_right.copy())


@dataclass
class FluxSet:
    """Numerical fluxes at all cell interfaces of both segments.

    Left arrays have N+1 entries; index 0 is the outer boundary, index N the
    tip interface seen from the catheterized side.  Right arrays have N+1
    entries; index 0 is the tip interface seen from the free side.
    """

    F_left: np.ndarray
    G_left: np.ndarray
    H: np.ndarray
    F_right: np.ndarray
    G_right: np.ndarray


@dataclass(frozen=True)
class StepDiagnostics:
    lam: float
    dt: float
    truncated: bool
    F_left_boundary: float
    F_interface_left: float
    F_interface_right: float
    F_right_boundary: float
    H_left_boundary: float
    H_interface: float
    coupling: CouplingData


@dataclass
class RunResult:
    state: SimState
    lambdas: list[float] = field(default_factory=list)
    dts: list[float] = field(default_factory=list)

    @property
    def n_steps(self) -> int:
        return len(self.dts)


def compute_lambda(state: SimState, params: VesselParams,
                   cath: CatheterConfig) -> float:
    """Global relaxation speed: max over cells of |u| + c and |w|."""
    c1 = wave_speed(state.A_left, Side.CATHETERIZED, params, cath)
    c2 = wave_speed(state.A_right, Side.FREE, params, cath)
    return float(max(
        np.max(np.abs(state.u_left) + c1),
        np.max(np.abs(state.u_right) + c2),
        np.max(np.abs(state.w)),
    ))


def traces(state: SimState, params: VesselParams,
           cath: CatheterConfig) -> TraceData:
    """Trace tuple for the interface solver; the auxiliary inputs are the
    physical fluxes of the cells adjacent to the tip."""
    A_m = float(state.A_left[-1])
    u_m = float(state.u_left[-1])
    A_p = float(state.A_right[0])
    u_p = float(state.u_right[0])
    p1 = pressure(A_m, Side.CATHETERIZED, params, cath)
    p2 = pressure(A_p, Side.FREE, params, cath)
    return TraceData(
        A_minus=A_m,
        u_minus=u_m,
        vA_minus=A_m * u_m,
        vu_minus=p1 / params.rho + 0.5 * u_m**2,
        w_minus=float(state.w[-1]),
        A_plus=A_p,
        u_plus=u_p,
        vA_plus=A_p * u_p,
        vu_plus=p2 / params.rho + 0.5 * u_p**2,
    )


def _central(q_l, q_r, f_l, f_r, lam):
    return 0.5 * (f_l + f_r) - 0.5 * lam * (q_r - q_l)


def interior_fluxes(state: SimState, lam: float, params: VesselParams,
                    cath: CatheterConfig) -> FluxSet:
    """Fluxes between adjacent cells of each segment.

    Boundary and interface entries (which need ghost cells and coupling data)
    are left as NaN; ``compute_fluxes`` fills everything.
    """
    nan = math.nan

    def seg(A, u, side):
        f_A = A * u
        f_u = pressure(A, side, params, cath) / params.rho + 0.5 * u * u
        F = np.full(A.size + 1, nan)
        G = np.full(A.size + 1, nan)
        F[1:-1] = _central(A[:-1], A[1:], f_A[:-1], f_A[1:], lam)
        G[1:-1] = _central(u[:-1], u[1:], f_u[:-1], f_u[1:], lam)
        return F, G

    F_l, G_l = seg(state.A_left, state.u_left, Side.CATHETERIZED)
    F_r, G_r = seg(state.A_right, state.u_right, Side.FREE)
    f_w = 0.5 * state.w * state.w
    H = np.full(state.w.size + 1, nan)
    H[1:-1] = _central(state.w[:-1], state.w[1:], f_w[:-1], f_w[1:], lam)
    return FluxSet(F_left=F_l, G_left=G_l, H=H, F_right=F_r, G_right=G_r)


def interface_fluxes(state: SimState, cpl: CouplingData, lam: float,
                     params: VesselParams, cath: CatheterConfig
                     ) -> tuple[float, float, float, float]:
    """The tip fluxes (F1, F2, G1, G2) built from the coupling data."""
    tr = traces(state, params, cath)
    F1 = _central(tr.A_minus, cpl.A_R, tr.vA_minus, cpl.vA_R, lam)
    F2 = _central(cpl.A_L, tr.A_plus, cpl.vA_L, tr.vA_plus, lam)
    G1 = _central(tr.u_minus, cpl.u_R, tr.vu_minus, cpl.vu_R, lam)
    G2 = _central(cpl.u_L, tr.u_plus, cpl.vu_L, tr.vu_plus, lam)
    return F1, F2, G1, G2


def interface_device_flux(state: SimState, cpl: CouplingData, lam: float) -> float:
    """Burgers flux between the last device cell and the boundary datum w_R."""
    w_m = float(state.w[-1])
    return _central(w_m, cpl.w_R, 0.5 * w_m * w_m, 0.5 * cpl.w_R * cpl.w_R, lam)


def compute_fluxes(state: SimState, ghosts: GhostCells, cpl: CouplingData,
                   lam: float, params: VesselParams,
                   cath: CatheterConfig) -> FluxSet:
    """Complete flux set including boundary and interface entries."""
    fs = interior_fluxes(state, lam, params, cath)

    # outer boundaries
    A0l, u0l = float(state.A_left[0]), float(state.u_left[0])
    fs.F_left[0] = _central(ghosts.A_left, A0l, ghosts.A_left * ghosts.u_left,
                            A0l * u0l, lam)
    p_g = (pressure(ghosts.A_left, Side.CATHETERIZED, params, cath) / params.rho
           + 0.5 * ghosts.u_left**2)
    p_i = (pressure(A0l, Side.CATHETERIZED, params, cath) / params.rho
           + 0.5 * u0l**2)
    fs.G_left[0] = _central(ghosts.u_left, u0l, p_g, p_i, lam)

    Anr, unr = float(state.A_right[-1]), float(state.u_right[-1])
    fs.F_right[-1] = _central(Anr, ghosts.A_right, Anr * unr,
                              ghosts.A_right * ghosts.u_right, lam)
    p_i = pressure(Anr, Side.FREE, params, cath) / params.rho + 0.5 * unr**2
    p_g = (pressure(ghosts.A_right, Side.FREE, params, cath) / params.rho
           + 0.5 * ghosts.u_right**2)
    fs.G_right[-1] = _central(unr, ghosts.u_right, p_i, p_g, lam)

    w0 = float(state.w[0])
    fs.H[0] = _central(ghosts.w_left, w0, 0.5 * ghosts.w_left**2,
                       0.5 * w0 * w0, lam)
    fs.H[-1] = interface_device_flux(state, cpl, lam)

    # tip interface
    F1, F2, G1, G2 = interface_fluxes(state, cpl, lam, params, cath)
    fs.F_left[-1] = F1
    fs.G_left[-1] = G1
    fs.F_right[0] = F2
    fs.G_right[0] = G2
    return fs


def step(state: SimState, bc: BoundarySpec, params: VesselParams,
         cath: CatheterConfig, *, dt_max: float | None = None,
         kernel: Callable | None = None,
         clamp_negative_discriminant: bool = False
         ) -> tuple[SimState, StepDiagnostics]:
    """Advance the state by one CFL-limited forward-Euler step.

    ``dt_max`` truncates the step (used to hit the final time exactly); any
    other step satisfies dt * lambda = 0.9 dx.
    """
    if kernel is None:
        kernel = kernels.step_kernel
    grid = state.grid
    N = grid.N
    lam = compute_lambda(state, params, cath)
    dt = CFL_NUMBER * grid.dx / lam
    truncated = False
    if dt_max is not None and dt > dt_max:
        dt = dt_max
        truncated = True

    ghosts = ghost_states(state, bc, state.t, params, cath)
    cpl = riemann_solve(traces(state, params, cath), lam, cath.A_c,
                        clamp_negative_discriminant=clamp_negative_discriminant)

    A_l_new = np.empty(N)
    u_l_new = np.empty(N)
    w_new = np.empty(N)
    A_r_new = np.empty(N)
    u_r_new = np.empty(N)
    flux_out = np.empty(6)
    kernel(
        state.A_left, state.u_left, state.w, state.A_right, state.u_right,
        A_l_new, u_l_new, w_new, A_r_new, u_r_new,
        ghosts.A_left, ghosts.u_left, ghosts.w_left,
        ghosts.A_right, ghosts.u_right,
        cpl.A_R, cpl.u_R, cpl.vA_R, cpl.vu_R, cpl.w_R,
        cpl.A_L, cpl.u_L, cpl.vA_L, cpl.vu_L,
        params.beta, params.rho, cath.A_c, math.sqrt(params.A0),
        lam, dt / grid.dx, flux_out,
    )

    for name, arr in (("catheterized", A_l_new), ("free", A_r_new)):
        if np.any(arr <= 0.0):
            cell = int(np.argmin(arr))
            raise StepFailure(
                f"positivity loss in segment '{name}' at cell {cell} "
                f"(A={arr[cell]}) at t={state.t}",
                t=state.t, segment=name, cell=cell,
            )

    new_state = SimState(grid, state.t + dt, A_l_new, u_l_new, w_new,
                         A_r_new, u_r_new)
    diag = StepDiagnostics(
        lam=lam, dt=dt, truncated=truncated,
        F_left_boundary=flux_out[0], F_interface_left=flux_out[1],
        F_interface_right=flux_out[2], F_right_boundary=flux_out[3],
        H_left_boundary=flux_out[4], H_interface=flux_out[5],
        coupling=cpl,
    )
    return new_state, diag


class SnapshotObserver:
    """Calls ``callback(t_target, state)`` once per requested time, at the
    first state whose time has reached it (within one step, by construction)."""

    def __init__(self, times: Iterable[float],
                 callback: Callable[[float, SimState], None]):
        self._pending = sorted(times)
        self._callback = callback

    @property
    def pending(self) -> list[float]:
        return list(self._pending)

    def notify(self, state: SimState) -> None:
        while self._pending and state.t >= self._pending[0] - 1e-12 * max(
                1.0, abs(self._pending[0])):
            self._callback(self._pending.pop(0), state)


def run(initial: SimState, bc: BoundarySpec, params: VesselParams,
        cath: CatheterConfig, t_end: float,
        observers: Sequence[SnapshotObserver] = (), *,
        kernel: Callable | None = None,
        clamp_negative_discriminant: bool = False) -> RunResult:
    """Step until ``t_end`` (last step truncated to hit it exactly)."""
    if t_end < initial.t:
        raise ValueError(f"t_end={t_end} before initial time {initial.t}")
    state = initial
    result = RunResult(state=state)
    for obs in observers:
        obs.notify(state)
    eps = 1e-14 * max(1.0, abs(t_end))
    while t_end - state.t > eps:
        state, diag = step(
            state, bc, params, cath, dt_max=t_end - state.t, kernel=kernel,
            clamp_negative_discriminant=clamp_negative_discriminant,
        )
        result.lambdas.append(diag.lam)
        result.dts.append(diag.dt)
        for obs in observers:
            obs.notify(state)
    result.state = state
    return result

"""Pure-numpy fallback of the per-step flux/update kernel.

Must stay arithmetically identical (same operations, same order) to the
compiled kernel in ``_kernels_c.pyx`` so that both backends produce
bit-identical states.
"""

from __future__ import annotations

import numpy as np


def step_kernel(
    A_l,
    u_l,
    w,
    A_r,
    u_r,
    A_l_new,
    u_l_new,
    w_new,
    A_r_new,
    u_r_new,
    gA_l,
    gu_l,
    gw,
    gA_r,
    gu_r,
    A_R,
    u_R,
    vA_R,
    vu_R,
    w_R,
    A_L,
    u_L,
    vA_L,
    vu_L,
    beta,
    rho,
    A_c,
    sqrt_A0,
    lam,
    dtdx,
    flux_out,
):
    """One conservative update of both segments and the device field.

    Extended arrays carry [left datum, cells, right datum]; for the left
    segment the right datum is the coupling state, for the right segment the
    left datum is.  ``flux_out`` receives (F left boundary, F at the
    interface seen from the left, F at the interface seen from the right,
    F right boundary, H left boundary, H at the interface).
    """
    # left (catheterized) segment
    qA = np.concatenate(([gA_l], A_l, [A_R]))
    qu = np.concatenate(([gu_l], u_l, [u_R]))
    qw = np.concatenate(([gw], w, [w_R]))
    fA = qA * qu
    fA[-1] = vA_R
    fu = (beta * (np.sqrt(qA + A_c) - sqrt_A0)) / rho + 0.5 * qu * qu
    fu[-1] = vu_R
    fw = 0.5 * qw * qw

    F = 0.5 * (fA[:-1] + fA[1:]) - 0.5 * lam * (qA[1:] - qA[:-1])
    G = 0.5 * (fu[:-1] + fu[1:]) - 0.5 * lam * (qu[1:] - qu[:-1])
    H = 0.5 * (fw[:-1] + fw[1:]) - 0.5 * lam * (qw[1:] - qw[:-1])

    A_l_new[:] = A_l - dtdx * (F[1:] - F[:-1])
    u_l_new[:] = u_l - dtdx * (G[1:] - G[:-1])
    w_new[:] = w - dtdx * (H[1:] - H[:-1])
    flux_out[0] = F[0]
    flux_out[1] = F[-1]
    flux_out[4] = H[0]
    flux_out[5] = H[-1]

    # right (free) segment
    qA = np.concatenate(([A_L], A_r, [gA_r]))
    qu = np.concatenate(([u_L], u_r, [gu_r]))
    fA = qA * qu
    fA[0] = vA_L
    fu = (beta * (np.sqrt(qA) - sqrt_A0)) / rho + 0.5 * qu * qu
    fu[0] = vu_L

    F = 0.5 * (fA[:-1] + fA[1:]) - 0.5 * lam * (qA[1:] - qA[:-1])
    G = 0.5 * (fu[:-1] + fu[1:]) - 0.5 * lam * (qu[1:] - qu[:-1])

    A_r_new[:] = A_r - dtdx * (F[1:] - F[:-1])
    u_r_new[:] = u_r - dtdx * (G[1:] - G[:-1])
    flux_out[2] = F[0]
    flux_out[3] = F[-1]

# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernel: per-step flux evaluation and conservative update.

Arithmetically identical to the fallback in ``_kernels_py.py`` (same
operations in the same order) so both backends produce bit-identical states.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt


def step_kernel(
    double[::1] A_l,
    double[::1] u_l,
    double[::1] w,
    double[::1] A_r,
    double[::1] u_r,
    double[::1] A_l_new,
    double[::1] u_l_new,
    double[::1] w_new,
    double[::1] A_r_new,
    double[::1] u_r_new,
    double gA_l,
    double gu_l,
    double gw,
    double gA_r,
    double gu_r,
    double A_R,
    double u_R,
    double vA_R,
    double vu_R,
    double w_R,
    double A_L,
    double u_L,
    double vA_L,
    double vu_L,
    double beta,
    double rho,
    double A_c,
    double sqrt_A0,
    double lam,
    double dtdx,
    double[::1] flux_out,
):
    cdef Py_ssize_t N = A_l.shape[0]
    cdef Py_ssize_t i
    cdef double half_lam = 0.5 * lam

    cdef cnp.ndarray[double, ndim=1] qA_ = np.empty(N + 2)
    cdef cnp.ndarray[double, ndim=1] qu_ = np.empty(N + 2)
    cdef cnp.ndarray[double, ndim=1] qw_ = np.empty(N + 2)
    cdef cnp.ndarray[double, ndim=1] fA_ = np.empty(N + 2)
    cdef cnp.ndarray[double, ndim=1] fu_ = np.empty(N + 2)
    cdef cnp.ndarray[double, ndim=1] fw_ = np.empty(N + 2)
    cdef cnp.ndarray[double, ndim=1] F_ = np.empty(N + 1)
    cdef cnp.ndarray[double, ndim=1] G_ = np.empty(N + 1)
    cdef cnp.ndarray[double, ndim=1] H_ = np.empty(N + 1)
    cdef double[::1] qA = qA_, qu = qu_, qw = qw_
    cdef double[::1] fA = fA_, fu = fu_, fw = fw_
    cdef double[::1] F = F_, G = G_, H = H_

    # left (catheterized) segment
    qA[0] = gA_l
    qu[0] = gu_l
    qw[0] = gw
    for i in range(N):
        qA[i + 1] = A_l[i]
        qu[i + 1] = u_l[i]
        qw[i + 1] = w[i]
    qA[N + 1] = A_R
    qu[N + 1] = u_R
    qw[N + 1] = w_R
    for i in range(N + 2):
        fA[i] = qA[i] * qu[i]
        fu[i] = (beta * (sqrt(qA[i] + A_c) - sqrt_A0)) / rho + (0.5 * qu[i]) * qu[i]
        fw[i] = (0.5 * qw[i]) * qw[i]
    fA[N + 1] = vA_R
    fu[N + 1] = vu_R

    for i in range(N + 1):
        F[i] = 0.5 * (fA[i] + fA[i + 1]) - half_lam * (qA[i + 1] - qA[i])
        G[i] = 0.5 * (fu[i] + fu[i + 1]) - half_lam * (qu[i + 1] - qu[i])
        H[i] = 0.5 * (fw[i] + fw[i + 1]) - half_lam * (qw[i + 1] - qw[i])
    for i in range(N):
        A_l_new[i] = A_l[i] - dtdx * (F[i + 1] - F[i])
        u_l_new[i] = u_l[i] - dtdx * (G[i + 1] - G[i])
        w_new[i] = w[i] - dtdx * (H[i + 1] - H[i])
    flux_out[0] = F[0]
    flux_out[1] = F[N]
    flux_out[4] = H[0]
    flux_out[5] = H[N]

    # right (free) segment
    qA[0] = A_L
    qu[0] = u_L
    for i in range(N):
        qA[i + 1] = A_r[i]
        qu[i + 1] = u_r[i]
    qA[N + 1] = gA_r
    qu[N + 1] = gu_r
    for i in range(N + 2):
        fA[i] = qA[i] * qu[i]
        fu[i] = (beta * (sqrt(qA[i]) - sqrt_A0)) / rho + (0.5 * qu[i]) * qu[i]
    fA[0] = vA_L
    fu[0] = vu_L

    for i in range(N + 1):
        F[i] = 0.5 * (fA[i] + fA[i + 1]) - half_lam * (qA[i + 1] - qA[i])
        G[i] = 0.5 * (fu[i] + fu[i + 1]) - half_lam * (qu[i + 1] - qu[i])
    for i in range(N):
        A_r_new[i] = A_r[i] - dtdx * (F[i + 1] - F[i])
        u_r_new[i] = u_r[i] - dtdx * (G[i + 1] - G[i])
    flux_out[2] = F[0]
    flux_out[3] = F[N]

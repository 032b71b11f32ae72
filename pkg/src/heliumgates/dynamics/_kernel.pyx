# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 propagation of the master and Schrodinger equations.

Hamiltonians arrive pre-sampled on the half-step grid: ``hs[2k]`` is H(t_k)
and ``hs[2k + 1]`` is H(t_k + dt/2).  Collapse operators are restricted to
single transitions |m><n| given as index/rate arrays.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef double complex cplx


cdef inline void _lindblad(const cplx* h, const cplx* rho, cplx* out, int d,
                           const long* jm, const long* jn, const double* jr,
                           int nj) noexcept nogil:
    cdef int i, j, k, q
    cdef cplx acc
    cdef long m, n
    cdef double half
    for i in range(d):
        for j in range(d):
            acc = 0
            for k in range(d):
                acc = acc + h[i * d + k] * rho[k * d + j] - rho[i * d + k] * h[k * d + j]
            out[i * d + j] = -1j * acc
    for q in range(nj):
        m = jm[q]
        n = jn[q]
        half = 0.5 * jr[q]
        out[m * d + m] = out[m * d + m] + jr[q] * rho[n * d + n]
        for k in range(d):
            out[n * d + k] = out[n * d + k] - half * rho[n * d + k]
            out[k * d + n] = out[k * d + n] - half * rho[k * d + n]


cdef inline void _schrodinger(const cplx* h, const cplx* u, cplx* out,
                              int d) noexcept nogil:
    cdef int i, j, k
    cdef cplx acc
    for i in range(d):
        for j in range(d):
            acc = 0
            for k in range(d):
                acc = acc + h[i * d + k] * u[k * d + j]
            out[i * d + j] = -1j * acc


def rk4_lindblad(cplx[:, ::1] rho0, cplx[:, :, ::1] hs,
                 long[::1] jump_to, long[::1] jump_from, double[::1] jump_rate,
                 double dt, int stride):
    """Integrate d rho/dt with fixed-step RK4, recording every ``stride`` steps.

    The initial and final states are always recorded.
    """
    cdef int d = rho0.shape[0]
    cdef int n_steps = (hs.shape[0] - 1) // 2
    cdef int nj = jump_to.shape[0]
    cdef int dd = d * d
    cdef int n_out = (n_steps + stride - 1) // stride + 1
    out_arr = np.empty((n_out, d, d), dtype=np.complex128)
    cdef cplx[:, :, ::1] out = out_arr
    work_arr = np.empty((6, dd), dtype=np.complex128)
    cdef cplx[:, ::1] w = work_arr
    cdef cplx* rho = &w[0, 0]
    cdef cplx* tmp = &w[1, 0]
    cdef cplx* k1 = &w[2, 0]
    cdef cplx* k2 = &w[3, 0]
    cdef cplx* k3 = &w[4, 0]
    cdef cplx* k4 = &w[5, 0]
    cdef const long* pm = &jump_to[0] if nj > 0 else NULL
    cdef const long* pn = &jump_from[0] if nj > 0 else NULL
    cdef const double* pr = &jump_rate[0] if nj > 0 else NULL
    cdef int s, i, rec = 0
    cdef double h2 = 0.5 * dt, h6 = dt / 6.0
    with nogil:
        for i in range(dd):
            rho[i] = (&rho0[0, 0])[i]
            (&out[0, 0, 0])[i] = rho[i]
        rec = 1
        for s in range(n_steps):
            _lindblad(&hs[2 * s, 0, 0], rho, k1, d, pm, pn, pr, nj)
            for i in range(dd):
                tmp[i] = rho[i] + h2 * k1[i]
            _lindblad(&hs[2 * s + 1, 0, 0], tmp, k2, d, pm, pn, pr, nj)
            for i in range(dd):
                tmp[i] = rho[i] + h2 * k2[i]
            _lindblad(&hs[2 * s + 1, 0, 0], tmp, k3, d, pm, pn, pr, nj)
            for i in range(dd):
                tmp[i] = rho[i] + dt * k3[i]
            _lindblad(&hs[2 * s + 2, 0, 0], tmp, k4, d, pm, pn, pr, nj)
            for i in range(dd):
                rho[i] = rho[i] + h6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            if (s + 1) % stride == 0 or s + 1 == n_steps:
                for i in range(dd):
                    (&out[rec, 0, 0])[i] = rho[i]
                rec += 1
    return out_arr


def rk4_unitary(cplx[:, ::1] u0, cplx[:, :, ::1] hs, double dt):
    """Integrate dU/dt = -i H U with fixed-step RK4 and return U at the end."""
    cdef int d = u0.shape[0]
    cdef int n_steps = (hs.shape[0] - 1) // 2
    cdef int dd = d * d
    res = np.array(u0, dtype=np.complex128, copy=True)
    cdef cplx[:, ::1] r = res
    work_arr = np.empty((5, dd), dtype=np.complex128)
    cdef cplx[:, ::1] w = work_arr
    cdef cplx* u = &r[0, 0]
    cdef cplx* tmp = &w[0, 0]
    cdef cplx* k1 = &w[1, 0]
    cdef cplx* k2 = &w[2, 0]
    cdef cplx* k3 = &w[3, 0]
    cdef cplx* k4 = &w[4, 0]
    cdef int s, i
    cdef double h2 = 0.5 * dt, h6 = dt / 6.0
    with nogil:
        for s in range(n_steps):
            _schrodinger(&hs[2 * s, 0, 0], u, k1, d)
            for i in range(dd):
                tmp[i] = u[i] + h2 * k1[i]
            _schrodinger(&hs[2 * s + 1, 0, 0], tmp, k2, d)
            for i in range(dd):
                tmp[i] = u[i] + h2 * k2[i]
            _schrodinger(&hs[2 * s + 1, 0, 0], tmp, k3, d)
            for i in range(dd):
                tmp[i] = u[i] + dt * k3[i]
            _schrodinger(&hs[2 * s + 2, 0, 0], tmp, k4, d)
            for i in range(dd):
                u[i] = u[i] + h6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    return res

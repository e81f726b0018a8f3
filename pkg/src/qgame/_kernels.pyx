# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled payoff kernels: scalar closed-form state evolution per strategy
pair, no 4x4 matrix products.  Mirrors _kernels_py to within rounding."""

import numpy as np

from libc.math cimport cos, sin

BACKEND = "cython"


cdef inline void _fill_components(
    const double[::1] thetas,
    const double[::1] phis,
    double complex[:, ::1] u_c,
    double complex[:, ::1] u_d,
    double complex[:, ::1] du_c,
    double complex[:, ::1] du_d,
) noexcept nogil:
    cdef Py_ssize_t i, n = thetas.shape[0]
    cdef double c, s
    cdef double complex ph
    for i in range(n):
        c = cos(thetas[i] * 0.5)
        s = sin(thetas[i] * 0.5)
        ph = cos(phis[i]) + 1j * sin(phis[i])
        u_c[0, i] = ph * c
        u_c[1, i] = -s
        u_d[0, i] = s
        u_d[1, i] = ph.conjugate() * c
        # Defect move sends (v0, v1) -> (v1, -v0).
        du_c[0, i] = u_c[1, i]
        du_c[1, i] = -u_c[0, i]
        du_d[0, i] = u_d[1, i]
        du_d[1, i] = -u_d[0, i]


def payoff_matrices(double gamma, thetas_a, phis_a, thetas_b, phis_b,
                    weights_a, weights_b=None):
    """Expected-payoff matrices over the cross product of two node lists.

    Same contract as the NumPy fallback: (A, B) with B None when
    ``weights_b`` is None.
    """
    cdef double[::1] ta = np.ascontiguousarray(thetas_a, dtype=np.float64)
    cdef double[::1] pa = np.ascontiguousarray(phis_a, dtype=np.float64)
    cdef double[::1] tb = np.ascontiguousarray(thetas_b, dtype=np.float64)
    cdef double[::1] pb = np.ascontiguousarray(phis_b, dtype=np.float64)
    cdef double[::1] wa = np.ascontiguousarray(weights_a, dtype=np.float64)
    cdef bint has_b = weights_b is not None
    cdef double[::1] wb = (
        np.ascontiguousarray(weights_b, dtype=np.float64) if has_b
        else np.zeros(4)
    )

    cdef Py_ssize_t n_a = ta.shape[0], n_b = tb.shape[0]
    a_arr = np.empty((n_a, n_b))
    b_arr = np.empty((n_a, n_b)) if has_b else None
    cdef double[:, ::1] out_a = a_arr
    cdef double[:, ::1] out_b = b_arr if has_b else a_arr

    comp_a = np.empty((8, n_a), dtype=np.complex128)
    comp_b = np.empty((8, n_b), dtype=np.complex128)
    cdef double complex[:, ::1] ca_ = comp_a
    cdef double complex[:, ::1] cb_ = comp_b

    cdef double c = cos(gamma / 2), s = sin(gamma / 2)
    cdef double c2 = c * c, s2 = s * s, cs = c * s
    cdef double complex ics = 1j * cs
    cdef Py_ssize_t i, m, j, k
    cdef double complex psi
    cdef double prob, pay_a, pay_b

    with nogil:
        _fill_components(ta, pa, ca_[0:2], ca_[2:4], ca_[4:6], ca_[6:8])
        _fill_components(tb, pb, cb_[0:2], cb_[2:4], cb_[4:6], cb_[6:8])
        for i in range(n_a):
            for m in range(n_b):
                pay_a = 0.0
                pay_b = 0.0
                for j in range(2):
                    for k in range(2):
                        psi = (
                            c2 * (ca_[j, i] * cb_[k, m])
                            - ics * (ca_[2 + j, i] * cb_[2 + k, m]
                                     - ca_[4 + j, i] * cb_[4 + k, m])
                            + s2 * (ca_[6 + j, i] * cb_[6 + k, m])
                        )
                        prob = psi.real * psi.real + psi.imag * psi.imag
                        pay_a += wa[2 * j + k] * prob
                        pay_b += wb[2 * j + k] * prob
                out_a[i, m] = pay_a
                if has_b:
                    out_b[i, m] = pay_b
    return a_arr, b_arr


def payoff_pair(double gamma, double theta_a, double phi_a,
                double theta_b, double phi_b, weights_a, weights_b):
    """Scalar fast path: one strategy pair, both players' payoffs."""
    cdef double[::1] wa = np.ascontiguousarray(weights_a, dtype=np.float64)
    cdef double[::1] wb = np.ascontiguousarray(weights_b, dtype=np.float64)
    cdef double c = cos(gamma / 2), s = sin(gamma / 2)
    cdef double c2 = c * c, s2 = s * s
    cdef double complex ics = 1j * (c * s)

    cdef double ca = cos(theta_a / 2), sa = sin(theta_a / 2)
    cdef double cb = cos(theta_b / 2), sb = sin(theta_b / 2)
    cdef double complex pha = cos(phi_a) + 1j * sin(phi_a)
    cdef double complex phb = cos(phi_b) + 1j * sin(phi_b)

    cdef double complex a_c0 = pha * ca, a_c1 = -sa
    cdef double complex a_d0 = sa, a_d1 = pha.conjugate() * ca
    cdef double complex b_c0 = phb * cb, b_c1 = -sb
    cdef double complex b_d0 = sb, b_d1 = phb.conjugate() * cb

    cdef double complex a_c[2]
    cdef double complex a_d[2]
    cdef double complex da_c[2]
    cdef double complex da_d[2]
    cdef double complex b_c[2]
    cdef double complex b_d[2]
    cdef double complex db_c[2]
    cdef double complex db_d[2]
    a_c[0], a_c[1] = a_c0, a_c1
    a_d[0], a_d[1] = a_d0, a_d1
    da_c[0], da_c[1] = a_c1, -a_c0
    da_d[0], da_d[1] = a_d1, -a_d0
    b_c[0], b_c[1] = b_c0, b_c1
    b_d[0], b_d[1] = b_d0, b_d1
    db_c[0], db_c[1] = b_c1, -b_c0
    db_d[0], db_d[1] = b_d1, -b_d0

    cdef double pay_a = 0.0, pay_b = 0.0
    cdef double prob
    cdef double complex psi
    cdef Py_ssize_t j, k
    for j in range(2):
        for k in range(2):
            psi = (
                c2 * (a_c[j] * b_c[k])
                - ics * (a_d[j] * b_d[k] - da_c[j] * db_c[k])
                + s2 * (da_d[j] * db_d[k])
            )
            prob = psi.real * psi.real + psi.imag * psi.imag
            pay_a += wa[2 * j + k] * prob
            pay_b += wb[2 * j + k] * prob
    return pay_a, pay_b

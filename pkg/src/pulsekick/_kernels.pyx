# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled time-stepping kernels for the two-level Schrodinger equation.

Signatures mirror pulsekick._kernels_py; the backend selector picks whichever
is importable. Both kernels return the full (n_steps + 1, 2) complex state
history, row 0 being the initial state.
"""

import numpy as np

from libc.math cimport cos, exp, sin, sqrt

BACKEND_NAME = "compiled"


cdef inline double _drive(double t, double rabi_peak, double center,
                          double width, double omega_d, bint carrier) nogil:
    cdef double u = (t - center) / width
    cdef double om = rabi_peak * exp(-u * u)
    if carrier:
        om *= cos(omega_d * t)
    return om


def evolve_magnus2(double complex a0, double complex a1, double omega0,
                   double rabi_peak, double center, double width,
                   double omega_d, bint carrier, double t_start, double dt,
                   Py_ssize_t n_steps):
    """Midpoint-sampled exact SU(2) exponential per step (unitary)."""
    out = np.empty((n_steps + 1, 2), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double complex p0 = a0, p1 = a1, u00, u01, q0, q1
    cdef double hz = 0.5 * omega0
    cdef double hx, nrm, th, c, s, tm
    cdef Py_ssize_t i
    o[0, 0] = p0
    o[0, 1] = p1
    for i in range(n_steps):
        tm = t_start + (i + 0.5) * dt
        hx = _drive(tm, rabi_peak, center, width, omega_d, carrier)
        nrm = sqrt(hx * hx + hz * hz)
        th = dt * nrm
        c = cos(th)
        if nrm > 0.0:
            s = sin(th) / nrm
        else:
            s = dt
        u00 = c - 1j * s * hz
        u01 = -1j * s * hx
        q0 = u00 * p0 + u01 * p1
        q1 = u01 * p0 + (c + 1j * s * hz) * p1
        p0 = q0
        p1 = q1
        o[i + 1, 0] = p0
        o[i + 1, 1] = p1
    return out


def evolve_rk4(double complex a0, double complex a1, double omega0,
               double rabi_peak, double center, double width,
               double omega_d, bint carrier, double t_start, double dt,
               Py_ssize_t n_steps):
    """Classical 4th-order Runge-Kutta on the coupled amplitude ODEs."""
    out = np.empty((n_steps + 1, 2), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double complex p0 = a0, p1 = a1
    cdef double complex k10, k11, k20, k21, k30, k31, k40, k41, y0, y1
    cdef double w = 0.5 * omega0
    cdef double t, om_a, om_m, om_b
    cdef Py_ssize_t i
    o[0, 0] = p0
    o[0, 1] = p1
    for i in range(n_steps):
        t = t_start + i * dt
        om_a = _drive(t, rabi_peak, center, width, omega_d, carrier)
        om_m = _drive(t + 0.5 * dt, rabi_peak, center, width, omega_d, carrier)
        om_b = _drive(t + dt, rabi_peak, center, width, omega_d, carrier)

        k10 = -1j * (w * p0 + om_a * p1)
        k11 = -1j * (om_a * p0 - w * p1)
        y0 = p0 + 0.5 * dt * k10
        y1 = p1 + 0.5 * dt * k11
        k20 = -1j * (w * y0 + om_m * y1)
        k21 = -1j * (om_m * y0 - w * y1)
        y0 = p0 + 0.5 * dt * k20
        y1 = p1 + 0.5 * dt * k21
        k30 = -1j * (w * y0 + om_m * y1)
        k31 = -1j * (om_m * y0 - w * y1)
        y0 = p0 + dt * k30
        y1 = p1 + dt * k31
        k40 = -1j * (w * y0 + om_b * y1)
        k41 = -1j * (om_b * y0 - w * y1)

        p0 = p0 + dt / 6.0 * (k10 + 2.0 * k20 + 2.0 * k30 + k40)
        p1 = p1 + dt / 6.0 * (k11 + 2.0 * k21 + 2.0 * k31 + k41)
        o[i + 1, 0] = p0
        o[i + 1, 1] = p1
    return out

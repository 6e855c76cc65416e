"""Pure-Python fallback time-stepping kernels.

Same contract as the compiled module pulsekick._kernels: scalar inner loops
with drive samples precomputed in bulk, so the fallback stays usable (a few
seconds for the longest preset) when the extension is not built.
"""

from __future__ import annotations

from cmath import exp as cexp
from math import cos, sin, sqrt

import numpy as np

BACKEND_NAME = "python"


def _drive_samples(t, rabi_peak, center, width, omega_d, carrier):
    u = (t - center) / width
    om = rabi_peak * np.exp(-u * u)
    if carrier:
        om = om * np.cos(omega_d * t)
    return om


def evolve_magnus2(a0, a1, omega0, rabi_peak, center, width, omega_d,
                   carrier, t_start, dt, n_steps):
    """Midpoint-sampled exact SU(2) exponential per step (unitary)."""
    out = np.empty((n_steps + 1, 2), dtype=np.complex128)
    tm = t_start + (np.arange(n_steps) + 0.5) * dt
    hxs = _drive_samples(tm, rabi_peak, center, width, omega_d, carrier)
    hz = 0.5 * omega0
    p0 = complex(a0)
    p1 = complex(a1)
    out[0, 0] = p0
    out[0, 1] = p1
    for i in range(n_steps):
        hx = hxs[i]
        nrm = sqrt(hx * hx + hz * hz)
        th = dt * nrm
        c = cos(th)
        s = sin(th) / nrm if nrm > 0.0 else dt
        u00 = c - 1j * s * hz
        u01 = -1j * s * hx
        p0, p1 = u00 * p0 + u01 * p1, u01 * p0 + (c + 1j * s * hz) * p1
        out[i + 1, 0] = p0
        out[i + 1, 1] = p1
    return out


def evolve_rk4(a0, a1, omega0, rabi_peak, center, width, omega_d,
               carrier, t_start, dt, n_steps):
    """Classical 4th-order Runge-Kutta on the coupled amplitude ODEs."""
    out = np.empty((n_steps + 1, 2), dtype=np.complex128)
    ts = t_start + np.arange(n_steps) * dt
    om_as = _drive_samples(ts, rabi_peak, center, width, omega_d, carrier)
    om_ms = _drive_samples(ts + 0.5 * dt, rabi_peak, center, width, omega_d,
                           carrier)
    om_bs = _drive_samples(ts + dt, rabi_peak, center, width, omega_d,
                           carrier)
    w = 0.5 * omega0
    p0 = complex(a0)
    p1 = complex(a1)
    out[0, 0] = p0
    out[0, 1] = p1
    half = 0.5 * dt
    sixth = dt / 6.0
    for i in range(n_steps):
        om_a = om_as[i]
        om_m = om_ms[i]
        om_b = om_bs[i]

        k10 = -1j * (w * p0 + om_a * p1)
        k11 = -1j * (om_a * p0 - w * p1)
        y0 = p0 + half * k10
        y1 = p1 + half * k11
        k20 = -1j * (w * y0 + om_m * y1)
        k21 = -1j * (om_m * y0 - w * y1)
        y0 = p0 + half * k20
        y1 = p1 + half * k21
        k30 = -1j * (w * y0 + om_m * y1)
        k31 = -1j * (om_m * y0 - w * y1)
        y0 = p0 + dt * k30
        y1 = p1 + dt * k31
        k40 = -1j * (w * y0 + om_b * y1)
        k41 = -1j * (om_b * y0 - w * y1)

        p0 = p0 + sixth * (k10 + 2.0 * (k20 + k30) + k40)
        p1 = p1 + sixth * (k11 + 2.0 * (k21 + k31) + k41)
        out[i + 1, 0] = p0
        out[i + 1, 1] = p1
    return out

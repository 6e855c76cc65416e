"""Gaussian drive envelopes and pulse calibration.

Converts between the three equivalent descriptions of a drive pulse used
throughout the package: dimensionless pulse area, peak electric-field
amplitude, and control voltage at the device. All inputs and outputs are SI
(s, rad/s, V/m, C*m, V).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .constants import HBAR

# Fraction of the total pulse area that may fall outside the integration
# window before area_of warns about truncation.
TAIL_WARN_FRACTION = 1e-6


@dataclass(frozen=True)
class QubitParams:
    """Device-side parameters of the driven two-level system."""

    omega0: float  # transition angular frequency, rad/s
    dipole_moment: float  # transition dipole moment, C*m

    def __post_init__(self):
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if self.dipole_moment <= 0:
            raise ValueError(
                f"dipole_moment must be positive, got {self.dipole_moment}"
            )


#: Transmon-like defaults: 4.5 GHz transition, dipole moment in the
#: 0.1-1 e*Angstrom range reported for superconducting qubits.
DEFAULT_QUBIT = QubitParams(omega0=2 * math.pi * 4.5e9, dipole_moment=3e-25)


@dataclass(frozen=True)
class PulseSpec:
    """A single Gaussian pulse: A0 * exp(-(t - t0)^2 / tau^2), optionally
    multiplied by a cos(omega_D t) carrier.

    With the carrier disabled the drive is the bare envelope, i.e. the
    finite-width realization of an instantaneous x-kick.
    """

    amplitude: float  # peak electric field A0, V/m
    center: float  # pulse center t0, s
    width: float  # pulse duration tau, s
    carrier_frequency: float = 0.0  # omega_D, rad/s
    carrier_enabled: bool = True

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError(f"width must be positive, got {self.width}")
        if self.amplitude < 0:
            raise ValueError(f"amplitude must be >= 0, got {self.amplitude}")
        if self.carrier_frequency < 0:
            raise ValueError(
                f"carrier_frequency must be >= 0, got {self.carrier_frequency}"
            )

    @classmethod
    def from_area(
        cls,
        area: float,
        params: QubitParams,
        center: float,
        width: float,
        carrier_frequency: float = 0.0,
        carrier_enabled: bool = True,
    ) -> "PulseSpec":
        """Build a pulse whose envelope integrates to the given area.

        The amplitude is resolved eagerly through amplitude_for_area, so the
        stored spec is always amplitude-based.
        """
        return cls(
            amplitude=amplitude_for_area(area, params, width),
            center=center,
            width=width,
            carrier_frequency=carrier_frequency,
            carrier_enabled=carrier_enabled,
        )


@dataclass(frozen=True)
class DeviceGeometry:
    """Geometric factor relating control voltage to field at the qubit."""

    effective_length: float = 20e-6  # L_eff, m

    def __post_init__(self):
        if self.effective_length <= 0:
            raise ValueError(
                f"effective_length must be positive, got {self.effective_length}"
            )


def envelope_at(spec: PulseSpec, t):
    """Electric-field envelope E(t) in V/m. Accepts scalars or arrays."""
    u = (np.asarray(t) - spec.center) / spec.width
    out = spec.amplitude * np.exp(-u * u)
    return float(out) if np.isscalar(t) else out


def drive_at(spec: PulseSpec, params: QubitParams, t):
    """Instantaneous coupling in rad/s: mu E(t) cos(omega_D t) / hbar.

    With the carrier disabled this is the bare Rabi frequency mu E(t)/hbar.
    """
    omega = params.dipole_moment * envelope_at(spec, t) / HBAR
    if spec.carrier_enabled:
        omega = omega * np.cos(spec.carrier_frequency * np.asarray(t))
        if np.isscalar(t):
            omega = float(omega)
    return omega


def amplitude_for_area(area: float, params: QubitParams, width: float) -> float:
    """Peak field A0 such that the envelope Rabi frequency integrates to
    the given area: A0 = area * hbar / (mu sqrt(pi) tau)."""
    if area <= 0:
        raise ValueError(f"area must be positive, got {area}")
    if width <= 0:
        raise ValueError(f"width must be positive, got {width}")
    return area * HBAR / (params.dipole_moment * math.sqrt(math.pi) * width)


def area_of(
    spec: PulseSpec,
    params: QubitParams,
    window: tuple[float, float] | None = None,
) -> float:
    """Pulse area: numerical integral of the envelope Rabi frequency
    mu E(t)/hbar (no carrier) over the window.

    The default window [t0 - 6 tau, t0 + 6 tau] truncates less than 1e-15
    of a Gaussian. Warns if the requested window cuts off more than
    TAIL_WARN_FRACTION of the total area.
    """
    if window is None:
        window = (spec.center - 6 * spec.width, spec.center + 6 * spec.width)
    lo, hi = window
    if hi <= lo:
        raise ValueError(f"empty integration window {window}")

    if spec.amplitude > 0:
        tail = 0.5 * (
            math.erfc((spec.center - lo) / spec.width)
            + math.erfc((hi - spec.center) / spec.width)
        )
        if tail > TAIL_WARN_FRACTION:
            warnings.warn(
                f"integration window {window} truncates {tail:.2e} of the "
                "pulse area",
                stacklevel=2,
            )

    t = np.linspace(lo, hi, 8193)
    omega = params.dipole_moment * envelope_at(spec, t) / HBAR
    return float(simpson(omega, x=t))


def effective_kick_area(spec: PulseSpec, params: QubitParams) -> float:
    """Carrier-weighted pulse area: integral of mu E(t) cos(omega_D t)/hbar.

    Closed form for the Gaussian envelope:
    alpha * exp(-omega_D^2 tau^2 / 4) * cos(omega_D t0).
    Equals the plain area when the carrier is disabled. This is the angle
    that controls the finite-width kick fidelity.
    """
    alpha = (
        params.dipole_moment
        * spec.amplitude
        * math.sqrt(math.pi)
        * spec.width
        / HBAR
    )
    if not spec.carrier_enabled:
        return alpha
    wd = spec.carrier_frequency
    return alpha * math.exp(-(wd * spec.width) ** 2 / 4) * math.cos(wd * spec.center)


def field_to_voltage(field: float, geometry: DeviceGeometry) -> float:
    """Control voltage producing the given field: V = E * L_eff."""
    return field * geometry.effective_length


def peak_voltage_pi(
    params: QubitParams, width: float, geometry: DeviceGeometry
) -> float:
    """Peak control voltage for a pi-area pulse:
    V_peak = sqrt(pi) hbar L_eff / (mu tau)."""
    if width <= 0:
        raise ValueError(f"width must be positive, got {width}")
    return (
        math.sqrt(math.pi)
        * HBAR
        * geometry.effective_length
        / (params.dipole_moment * width)
    )

"""State evolution for the driven two-level system.

The lab-frame Hamiltonian is H(t)/hbar = (omega0/2) sigma_z + W(t) sigma_x
with W(t) the instantaneous coupling from pulses.drive_at. Two fixed-step
integrators are provided: a midpoint-sampled exact SU(2) exponential
(unitary by construction) and classical RK4 (independent cross-check).
Analytic unitaries for the instantaneous-kick limit and RWA rotations live
here as well.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import get_kernels
from .constants import HBAR
from .pulses import PulseSpec, QubitParams, drive_at

#: Tolerance on |a0|^2 + |a1|^2 - 1 accepted by QubitState.
NORM_TOL = 1e-6

#: Norm drift above which evolve refuses to return a trajectory.
DRIFT_FAIL = 1e-6

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

METHODS = ("magnus2", "rk4")


class NormDriftError(RuntimeError):
    """Raised when the integrator loses more norm than DRIFT_FAIL allows."""


@dataclass(frozen=True)
class QubitState:
    """Complex amplitude pair on the computational basis.

    |0> is the +1 eigenstate of sigma_z (the +omega0/2 diagonal entry acts
    on a0).
    """

    a0: complex
    a1: complex

    def __post_init__(self):
        n = abs(self.a0) ** 2 + abs(self.a1) ** 2
        if abs(n - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 = {n!r} is not 1 within {NORM_TOL}")

    @classmethod
    def ket0(cls) -> "QubitState":
        return cls(1.0 + 0j, 0j)

    @classmethod
    def ket1(cls) -> "QubitState":
        return cls(0j, 1.0 + 0j)

    @classmethod
    def from_vector(cls, vec) -> "QubitState":
        return cls(complex(vec[0]), complex(vec[1]))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a0, self.a1], dtype=complex)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid. dt is adjusted to divide the span exactly; the
    realized step is the `step` property."""

    t_start: float
    t_end: float
    dt: float

    def __post_init__(self):
        if self.t_end <= self.t_start:
            raise ValueError("t_end must exceed t_start")
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if (self.t_end - self.t_start) / self.dt < 2:
            raise ValueError("grid must contain at least 2 steps")

    @property
    def n_steps(self) -> int:
        return max(2, round((self.t_end - self.t_start) / self.dt))

    @property
    def step(self) -> float:
        return (self.t_end - self.t_start) / self.n_steps

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.n_steps + 1)


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered state history on a grid, with integration diagnostics.

    amplitudes[i] = (a0, a1) at times[i]; no renormalization is ever
    applied, norm_drift records max over samples of | ||psi|| - 1 |.
    """

    times: np.ndarray
    amplitudes: np.ndarray
    method: str
    norm_drift: float
    qubit: QubitParams
    pulse: PulseSpec
    initial: QubitState = field(repr=False, default=None)  # type: ignore[assignment]

    def __len__(self) -> int:
        return len(self.times)

    def state(self, i: int) -> QubitState:
        return QubitState(complex(self.amplitudes[i, 0]),
                          complex(self.amplitudes[i, 1]))

    @property
    def final_state(self) -> QubitState:
        return self.state(len(self.times) - 1)


def hamiltonian_at(params: QubitParams, spec: PulseSpec, t: float) -> np.ndarray:
    """H(t)/hbar in rad/s: (omega0/2) sigma_z + W(t) sigma_x. Hermitian and
    traceless by construction."""
    w = drive_at(spec, params, t)
    return np.array(
        [[0.5 * params.omega0, w], [w, -0.5 * params.omega0]], dtype=complex
    )


def su2_exp(hx: float, hy: float, hz: float, dt: float) -> np.ndarray:
    """Closed-form exp(-i dt (hx sx + hy sy + hz sz)) =
    cos(theta) I - i sin(theta) n.sigma, theta = dt |h|."""
    nrm = math.sqrt(hx * hx + hy * hy + hz * hz)
    theta = dt * nrm
    c = math.cos(theta)
    # sin(theta)/|h| with a series-safe branch for |h| -> 0
    s = math.sin(theta) / nrm if nrm > 0.0 else dt
    return np.array(
        [
            [c - 1j * s * hz, -1j * s * hx - s * hy],
            [-1j * s * hx + s * hy, c + 1j * s * hz],
        ],
        dtype=complex,
    )


def step_magnus2(
    state: QubitState, params: QubitParams, spec: PulseSpec, t: float, dt: float
) -> QubitState:
    """One midpoint-exponential step over [t, t+dt]: applies the exact
    exponential of H(t + dt/2)/hbar. Norm-preserving; local error O(dt^3)."""
    hx = drive_at(spec, params, t + 0.5 * dt)
    u = su2_exp(hx, 0.0, 0.5 * params.omega0, dt)
    return QubitState.from_vector(u @ state.vector)


def step_rk4(
    state: QubitState, params: QubitParams, spec: PulseSpec, t: float, dt: float
) -> QubitState:
    """One classical RK4 step on i d/dt psi = (H/hbar) psi. Local error
    O(dt^5); not exactly norm-preserving."""

    def deriv(tt: float, psi: np.ndarray) -> np.ndarray:
        return -1j * (hamiltonian_at(params, spec, tt) @ psi)

    psi = state.vector
    k1 = deriv(t, psi)
    k2 = deriv(t + 0.5 * dt, psi + 0.5 * dt * k1)
    k3 = deriv(t + 0.5 * dt, psi + 0.5 * dt * k2)
    k4 = deriv(t + dt, psi + dt * k3)
    return QubitState.from_vector(psi + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4))


def _run_kernel(initial, params, spec, grid, method):
    kern = get_kernels()
    try:
        fn = {"magnus2": kern.evolve_magnus2, "rk4": kern.evolve_rk4}[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}, expected one of {METHODS}")
    rabi_peak = params.dipole_moment * spec.amplitude / HBAR
    return fn(
        complex(initial.a0),
        complex(initial.a1),
        params.omega0,
        rabi_peak,
        spec.center,
        spec.width,
        spec.carrier_frequency,
        spec.carrier_enabled,
        grid.t_start,
        grid.step,
        grid.n_steps,
    )


def evolve(
    initial: QubitState,
    params: QubitParams,
    spec: PulseSpec,
    grid: TimeGrid,
    method: str = "magnus2",
) -> Trajectory:
    """Integrate the driven Schrodinger equation over the grid.

    Deterministic: a fixed sequential loop, no renormalization. Raises
    NormDriftError when the final norm drifts by more than DRIFT_FAIL,
    which signals an inadequate dt.
    """
    amps = _run_kernel(initial, params, spec, grid, method)
    norms = np.abs(np.linalg.norm(amps, axis=1) - 1.0)
    drift = float(norms.max())
    if abs(np.linalg.norm(amps[-1]) - 1.0) > DRIFT_FAIL:
        raise NormDriftError(
            f"norm drifted by {norms[-1]:.3e} (> {DRIFT_FAIL}) with "
            f"method={method}, dt={grid.step:.3e}"
        )
    return Trajectory(
        times=grid.times,
        amplitudes=amps,
        method=method,
        norm_drift=drift,
        qubit=params,
        pulse=spec,
        initial=initial,
    )


def propagator(
    params: QubitParams,
    spec: PulseSpec,
    grid: TimeGrid,
    method: str = "magnus2",
) -> np.ndarray:
    """Numeric time-ordered propagator over the grid: both basis states are
    evolved, so the columns reproduce evolve from |0> and |1> exactly."""
    c0 = _run_kernel(QubitState.ket0(), params, spec, grid, method)[-1]
    c1 = _run_kernel(QubitState.ket1(), params, spec, grid, method)[-1]
    return np.column_stack([c0, c1])


def free_propagator(params: QubitParams, duration: float) -> np.ndarray:
    """Drive-free precession: diag(e^{-i w0 d / 2}, e^{+i w0 d / 2})."""
    ph = 0.5 * params.omega0 * duration
    return np.array(
        [[cmath.exp(-1j * ph), 0.0], [0.0, cmath.exp(1j * ph)]], dtype=complex
    )


def delta_kick_unitary(area: float) -> np.ndarray:
    """Instantaneous x-kick: exp(-i area sigma_x)."""
    return math.cos(area) * np.eye(2, dtype=complex) - 1j * math.sin(area) * SIGMA_X


def delta_kick_apply(state: QubitState, area: float) -> QubitState:
    """Apply the instantaneous kick: cos(a) I - i sin(a) sigma_x.

    The rotation angle on the Bloch sphere is 2*area, double what an RWA
    rotation of the same area produces."""
    return QubitState.from_vector(delta_kick_unitary(area) @ state.vector)


def kicked_propagator(
    area: float, params: QubitParams, t: float, t0: float
) -> np.ndarray:
    """Analytic kicked-regime unitary for a kick of the given area at t0,
    observed at t >= t0 (post-kick evolution).

    Phase convention follows the published closed form: diagonal
    e^{+-i w0 t} cos(a), off-diagonal -i e^{+-i w0 (t - 2 t0)} sin(a). The
    entry moduli are convention-free; see kick_with_precession for the
    unitary consistent with this package's Schrodinger-equation signs.
    """
    w = params.omega0
    c = math.cos(area)
    s = math.sin(area)
    return np.array(
        [
            [cmath.exp(1j * w * t) * c, -1j * cmath.exp(1j * w * (t - 2 * t0)) * s],
            [-1j * cmath.exp(-1j * w * (t - 2 * t0)) * s, cmath.exp(-1j * w * t) * c],
        ],
        dtype=complex,
    )


def kick_with_precession(
    area: float, params: QubitParams, t: float, t0: float
) -> np.ndarray:
    """Instantaneous kick at t0 composed with free precession on either
    side, in this package's sign convention: F(t - t0) K F(t0). This is the
    reference unitary the numeric propagator converges to as tau -> 0."""
    return (
        free_propagator(params, t - t0)
        @ delta_kick_unitary(area)
        @ free_propagator(params, t0)
    )


def rwa_rotation(axis: str, angle: float) -> np.ndarray:
    """Half-angle rotation exp(-i angle/2 sigma_axis); R_x(pi) = -i X."""
    sigma = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}.get(axis)
    if sigma is None:
        raise ValueError(f"axis must be one of x, y, z; got {axis!r}")
    h = 0.5 * angle
    return math.cos(h) * np.eye(2, dtype=complex) - 1j * math.sin(h) * sigma


def phase_aligned_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Operator-norm (spectral) distance between u and e^{i phi} v with the
    global phase phi chosen from the trace alignment."""
    tr = np.trace(v.conj().T @ u)
    phase = tr / abs(tr) if abs(tr) > 0 else 1.0
    return float(np.linalg.norm(u - phase * v, 2))

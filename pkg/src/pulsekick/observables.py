"""Scalar quantifiers of qubit states and trajectories: magnetization,
Bloch vectors, l1 coherence, and NOT-gate / state fidelities."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .propagation import QubitState, Trajectory

#: Tolerance for recognizing a computational basis state.
BASIS_TOL = 1e-9


@dataclass(frozen=True)
class BlochPoint:
    """Expectation triple (<sx>, <sy>, <sz>); unit length for pure states."""

    x: float
    y: float
    z: float


@dataclass(frozen=True)
class RunSummary:
    """Aggregated per-run quantities.

    final_fidelity is None when the trajectory does not start in a
    computational basis state (the NOT-gate figure of merit is undefined
    there).
    """

    final_fidelity: float | None
    max_coherence: float
    final_coherence: float
    final_bloch: BlochPoint
    norm_drift: float


def expect_sigma_z(state: QubitState) -> float:
    """<sigma_z> = |a0|^2 - |a1|^2."""
    return abs(state.a0) ** 2 - abs(state.a1) ** 2


def bloch_vector(state: QubitState) -> BlochPoint:
    """(2 Re a0* a1, 2 Im a0* a1, |a0|^2 - |a1|^2)."""
    cross = state.a0.conjugate() * state.a1
    return BlochPoint(2 * cross.real, 2 * cross.imag, expect_sigma_z(state))


def l1_coherence(state: QubitState) -> float:
    """Off-diagonal coherence 2 |a0| |a1|; equals sqrt(1 - <sz>^2) for pure
    normalized states."""
    return 2 * abs(state.a0) * abs(state.a1)


def state_fidelity(state: QubitState, target: QubitState) -> float:
    """Overlap fidelity |<target|state>|^2; 1 iff equal up to global phase."""
    ov = target.a0.conjugate() * state.a0 + target.a1.conjugate() * state.a1
    return abs(ov) ** 2


def not_gate_fidelity(traj: Trajectory) -> float:
    """Population transferred to the opposite basis state by the end of the
    run: |a1(T)|^2 for a trajectory starting at |0>, |a0(T)|^2 for |1>.

    This is the population figure of merit (phase-insensitive); use
    state_fidelity for overlap against an explicit target.
    """
    a0, a1 = traj.amplitudes[0]
    if abs(abs(a0) ** 2 - 1.0) <= BASIS_TOL:
        return float(abs(traj.amplitudes[-1, 1]) ** 2)
    if abs(abs(a1) ** 2 - 1.0) <= BASIS_TOL:
        return float(abs(traj.amplitudes[-1, 0]) ** 2)
    raise ValueError("trajectory does not start in a computational basis state")


def rotating_frame(
    state: QubitState, t: float, frame_frequency: float
) -> QubitState:
    """View the state in a frame rotating at the given frequency:
    diag(e^{+i w t / 2}, e^{-i w t / 2}). Leaves <sz> and coherence
    unchanged."""
    ph = 0.5 * frame_frequency * t
    return QubitState(
        state.a0 * cmath.exp(1j * ph), state.a1 * cmath.exp(-1j * ph)
    )


def coherence_series(traj: Trajectory) -> np.ndarray:
    """l1 coherence at every stored sample."""
    return 2 * np.abs(traj.amplitudes[:, 0]) * np.abs(traj.amplitudes[:, 1])


def sigma_z_series(traj: Trajectory) -> np.ndarray:
    """<sigma_z> at every stored sample."""
    return np.abs(traj.amplitudes[:, 0]) ** 2 - np.abs(traj.amplitudes[:, 1]) ** 2


def summarize(traj: Trajectory) -> RunSummary:
    """Aggregate fidelity, coherence extrema, final Bloch point, and the
    integrator's norm drift. Coherence extrema are taken over the stored
    grid samples."""
    coh = coherence_series(traj)
    try:
        fid = not_gate_fidelity(traj)
    except ValueError:
        fid = None
    return RunSummary(
        final_fidelity=fid,
        max_coherence=float(coh.max()),
        final_coherence=float(coh[-1]),
        final_bloch=bloch_vector(traj.final_state),
        norm_drift=traj.norm_drift,
    )

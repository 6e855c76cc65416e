"""Pulse-level simulator of single-qubit gates on a driven two-level
system, from adiabatic Rabi drives to picosecond diabatic kicks.

The time-stepping inner loop runs in a compiled Cython extension when
available and falls back to pure Python otherwise; ``pulsekick.BACKEND``
reports which one is active.
"""

from ._backend import BACKEND, get_kernels
from .constants import HBAR
from .experiments import (
    ScenarioConfig,
    SweepResult,
    SweepRow,
    classify_regime,
    kick_vs_analytic,
    rabi_doubling_check,
    run,
    scenario_adiabatic,
    scenario_kick,
    sweep_tau,
)
from .observables import (
    BlochPoint,
    RunSummary,
    bloch_vector,
    coherence_series,
    expect_sigma_z,
    l1_coherence,
    not_gate_fidelity,
    rotating_frame,
    sigma_z_series,
    state_fidelity,
    summarize,
)
from .propagation import (
    NormDriftError,
    QubitState,
    TimeGrid,
    Trajectory,
    delta_kick_apply,
    evolve,
    hamiltonian_at,
    kick_with_precession,
    kicked_propagator,
    phase_aligned_distance,
    propagator,
    rwa_rotation,
    step_magnus2,
    step_rk4,
    su2_exp,
)
from .pulses import (
    DEFAULT_QUBIT,
    DeviceGeometry,
    PulseSpec,
    QubitParams,
    amplitude_for_area,
    area_of,
    drive_at,
    effective_kick_area,
    envelope_at,
    field_to_voltage,
    peak_voltage_pi,
)

__version__ = "0.1.0"

"""Driven, dissipative dynamics of the 6-level spin x Rydberg system."""

from ._backend import BACKEND
from .hamiltonian import (
    ControlledU,
    Coupling,
    RydbergControlSpinRabi,
    SingleQubitFourDrive,
    build_hamiltonian,
    couplings,
    default_pulse,
    sample_hamiltonian,
)
from .lindblad import (
    LindbladChannel,
    Trajectory,
    check_trajectory,
    evolve,
    lindblad_rhs,
    rydberg_channels,
    unitary_propagator,
)
from .experiments import (
    OperatingPoint,
    decay_rate_sweep,
    entangling_trajectory,
    fidelity_vs_field,
    run_cnot_table,
    run_rydberg_control_gate,
    run_single_qubit_average,
    run_single_qubit_table,
)

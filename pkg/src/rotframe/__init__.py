"""Golden-rule rates and population dynamics for spin models whose
protecting Hamiltonian lives in a rotating frame."""

__version__ = "0.1.0"

from .dynamics import Trajectory, evolve, observables, steady_state
from .eigensolver import (
    EigenDecomposition,
    diagonalize_hermitian,
    ground_state_of_sector,
    resolve_sectors,
)
from .models import (
    IonParams,
    ModelSpec,
    build_bare_qubits,
    build_compass4,
    build_xy_pair,
    ca40_preset,
    compass_symmetry_sectors,
    ms_coupling,
)
from .operators import PauliString, embed, lowering, pauli_matrix, string_matrix
from .rates import (
    BathSpec,
    CouplingProfile,
    Profile,
    closed_form_lab,
    closed_form_rotating,
    closed_form_rotating_zero_t,
    emission_rate_matrix,
    golden_rule_matrix,
    occupation,
)

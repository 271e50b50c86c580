"""Ground-state cooling by resonant ancilla transitions.

A dense statevector simulator for the two-ancilla cooling loop: build the
register Hamiltonian, evolve for the half period of the resonant transfer,
measure the probe ancilla, and either purify toward the ground state or scan
the reference eigenvalue to locate the ground energy.
"""
from .acceptance import CheckResult, render_results, run_checks
from .cooling import (
    CoolingReport,
    DivergentTail,
    IterationRecord,
    RestartCapExceeded,
    ZeroBranch,
    compute_a0,
    ground_overlap,
    measure_first_ancilla,
    prepare_register,
    purified_state_model,
    render_report,
    run_algorithm,
    run_iteration,
    success_probability_bound,
)
from .evolution import (
    BlockAmplitudes,
    analytic_amplitudes,
    exact_step,
    step_propagator,
    trotter_propagator,
)
from .hamiltonian import (
    AlgorithmConfig,
    OffResonanceConfig,
    SystemModel,
    assemble_hamiltonian,
    build_algorithm_hamiltonian,
    extract_blocks,
    load_matrix_file,
    resonance_reference,
    save_matrix_file,
    split_parts,
)
from .linalg import (
    DimensionMismatch,
    EigenSystem,
    NotHermitian,
    NotNormalized,
    align_global_phase,
    fidelity,
    hermitian_eig,
    kron,
    kron_all,
    propagator,
)
from .models import (
    BadDimension,
    SizeCap,
    SpinOperators,
    build_aklt,
    build_diagonal,
    from_registry,
    ground_truth,
    pair_swap,
    spin_operators,
)
from .sweep import (
    FlatCurve,
    SweepConfig,
    SweepResult,
    excitation_probability,
    render_csv,
    scan,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AlgorithmConfig",
    "BadDimension",
    "BlockAmplitudes",
    "CheckResult",
    "CoolingReport",
    "DimensionMismatch",
    "DivergentTail",
    "EigenSystem",
    "FlatCurve",
    "IterationRecord",
    "NotHermitian",
    "NotNormalized",
    "OffResonanceConfig",
    "RestartCapExceeded",
    "SizeCap",
    "SpinOperators",
    "SweepConfig",
    "SweepResult",
    "SystemModel",
    "ZeroBranch",
    "align_global_phase",
    "analytic_amplitudes",
    "assemble_hamiltonian",
    "build_aklt",
    "build_algorithm_hamiltonian",
    "build_diagonal",
    "compute_a0",
    "excitation_probability",
    "exact_step",
    "extract_blocks",
    "fidelity",
    "from_registry",
    "ground_overlap",
    "ground_truth",
    "hermitian_eig",
    "kron",
    "kron_all",
    "load_matrix_file",
    "measure_first_ancilla",
    "pair_swap",
    "prepare_register",
    "propagator",
    "purified_state_model",
    "render_csv",
    "render_report",
    "render_results",
    "resonance_reference",
    "run_algorithm",
    "run_checks",
    "run_iteration",
    "save_matrix_file",
    "scan",
    "spin_operators",
    "split_parts",
    "step_propagator",
    "success_probability_bound",
    "trotter_propagator",
    "write_csv",
]

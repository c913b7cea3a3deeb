"""CHSH Bell tests on truncated bosonic Fock spaces, inertial and accelerated.

The package is layered bottom-up:

* `fockspace` -- dense states/operators over tensor-product factors, partial
  trace/transpose, expectations, log-negativity.
* `rindler`   -- accelerated-frame mode expansions and the acceleration <->
  squeeze mapping, with both faithful and compat truncated ladders.
* `wigner`    -- the friend-in-a-box Bell experiment: branch states,
  Pauli-patterned observables, the CHSH statistic, and the term-by-term
  wedge-traced density used as a cross-check oracle.
* `sweep`     -- the CLI driver: S-versus-acceleration sweeps, crossing
  detection, CSV/JSON persistence.
"""

from .fockspace import (
    ATOL_ALGEBRAIC,
    ATOL_SPECTRAL,
    DensityOperator,
    FactorDims,
    Ket,
    NumericalConsistencyError,
    ZeroNormError,
    basis_ket,
    expectation,
    identity,
    log_negativity,
    normalize,
    outer,
    partial_trace,
    partial_transpose,
    tensor,
    tensor_op,
)
from .rindler import (
    EPSILON_FLOOR,
    TruncationSpec,
    acceleration_from_squeeze,
    particle_compat,
    particle_two_mode,
    squeeze_from_acceleration,
    truncation_level,
    vacuum_compat,
    vacuum_two_mode,
)
from .sweep import (
    CrossingReport,
    SweepRow,
    SweepSpec,
    find_crossing,
    run_sweep,
    write_output,
)
from .wigner import (
    ChshResult,
    ExperimentConfig,
    bell_basis,
    chsh,
    chsh_from_density,
    entanglement_curve,
    friend_composite_state,
    initial_field_state,
    message_factorization_check,
    observables,
    post_measurement_state,
    schmidt_rank,
    termwise_reduced_density,
)

__all__ = [
    "ATOL_ALGEBRAIC",
    "ATOL_SPECTRAL",
    "ChshResult",
    "CrossingReport",
    "DensityOperator",
    "EPSILON_FLOOR",
    "ExperimentConfig",
    "FactorDims",
    "Ket",
    "NumericalConsistencyError",
    "SweepRow",
    "SweepSpec",
    "TruncationSpec",
    "ZeroNormError",
    "acceleration_from_squeeze",
    "basis_ket",
    "bell_basis",
    "chsh",
    "chsh_from_density",
    "entanglement_curve",
    "expectation",
    "find_crossing",
    "friend_composite_state",
    "identity",
    "initial_field_state",
    "log_negativity",
    "message_factorization_check",
    "normalize",
    "observables",
    "outer",
    "partial_trace",
    "partial_transpose",
    "particle_compat",
    "particle_two_mode",
    "post_measurement_state",
    "run_sweep",
    "schmidt_rank",
    "squeeze_from_acceleration",
    "tensor",
    "tensor_op",
    "termwise_reduced_density",
    "truncation_level",
    "vacuum_compat",
    "vacuum_two_mode",
    "write_output",
]

"""
Exact dynamics of a Lambda-type three-level atom in a two-mode cavity
Closed-form amplitudes, nonclassicality indicators and an RK4 cross-check
"""

# Import models
from .models import (
    COLUMNS, BlockSolution, EntropyRecord, JointState, ModelConfig, MomentSet,
    Nonlinearity, NonlinearityKind, ObservableRecord, ObservableSeries, PhaseGrid, SweepSpec,
)

# Import errors
from .errors import (
    CSIUndefined, ConfigError, DegenerateCubicError, DegenerateRootsError, DimensionError,
    LambdaAtomError, NumericalError, OutputError, QUndefined, ResolutionError,
    StepSizeError, TruncationError, VerificationError,
)

# Import solvers
from .model_core import (
    BlockTable, block_amplitudes, block_constants, block_weights, cardano_roots,
    cubic_coefficients, kerr_shift, solve_block, solve_blocks,
)
from .field_state import (
    assemble_state, coherent_weights, marginal_distributions, number_distribution,
)
from .observables import (
    csi_parameter, direct_squeezing, mandel_q, moments, sum_squeezing, two_mode_squeezing,
)
from .phase_entropy import entropies, phase_distribution
from .oracle import (
    SparseHamiltonian, VerificationReport, build_hamiltonian, integrate, trajectory,
    verify_against_oracle,
)
from .presets import PRESET_NAMES, presets, resolve_preset
from .sweep import dump_phase_snapshot, evaluate_sample, run_sweep

__version__ = "1.0.0"

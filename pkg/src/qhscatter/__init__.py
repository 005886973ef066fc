"""Scattering, first-order metric corrections and bound states for 1D complex potentials.

Units are hbar = 2m = 1, so ``H = -d^2/dx^2 + V`` and free waves have ``E = k^2``.
"""

from .analytic import (
    SingleDeltaParams,
    TwoDeltaParams,
    single_delta_amplitudes,
    single_delta_total,
    two_delta_amplitudes,
    two_delta_total,
)
from .boundstate import (
    BoundStateSolution,
    ThreeDeltaModel,
    eigenvalue_residual,
    large_L_kappa,
    pt_symmetry_check,
    solve_kappa,
)
from .current import PiecewiseWave, WaveRegion, continuity_defect, probability_current
from .errors import (
    BoundaryError,
    BracketError,
    ConvergenceError,
    DegenerateBranchError,
    OverlapError,
    PlacementError,
    QHScatterError,
    ResolutionError,
    SingularCompositionError,
)
from .metric import (
    CorrectedWave,
    MetricKernelFirstOrder,
    corrected_flux_factors,
    corrected_plane_waves,
    corrected_wavefunction,
    eta1_value,
    intertwining_residual,
)
from .model import (
    DeltaSpike,
    Potential1D,
    ProbabilitySummary,
    ScatteringAmplitudes,
    UniformSegment,
    build_potential,
    single_delta_potential,
    square_well_potential,
    two_delta_potential,
)
from .transfer import (
    Matrix2c,
    delta_interface_matrix,
    probability_summary,
    scattering_coefficients,
    scattering_wave,
    segment_propagation_matrix,
)

__version__ = "0.1.0"

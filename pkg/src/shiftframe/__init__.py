"""Sampling stability and Gabor frame bounds for shift-invariant spaces
generated by totally positive and related windows."""

__version__ = "0.1.0"

from .backend import backend_name
from .errors import (
    DegenerateMatrix,
    DuplicatePoints,
    EmptyWindow,
    IllConditioned,
    IndexOutOfRange,
    Infeasible,
    JitterTooLarge,
    NonConvergent,
    ShiftframeError,
    TooFewPoints,
    UnsupportedKind,
    WindowTooLarge,
    ZeroOnContour,
)
from .generator import (
    AccuracyCert,
    GeneratorSpec,
    Seq,
    accuracy_cert,
    decay_radius,
    derivative_bound,
    evaluate,
    evaluate_complex,
    fourier_eval,
    from_json,
    gaussian,
    global_max_bound,
    modulated,
    one_sided_exp,
    reduce,
    sech,
    side_radii,
    tail_sum_bound,
    to_json,
    wiener_norm_bound,
)
from .pointset import (
    DensityEstimate,
    PointSet,
    beurling,
    from_points,
    lattice,
    make_jittered,
    paired_integers,
    rel_separation,
    separation,
)
from .pregramian import (
    PreGramianWindow,
    SamplingBounds,
    build,
    sampling_bounds,
    schur_upper,
    sigma_extremes,
)
from .zak import (
    ZakGrid,
    modulated_zak,
    quasi_periodicity_residual,
    zak_eval,
    zak_grid,
    zak_zero_search,
)
from .gabor import FrameReport, frame_bounds, lattice_sweep, scale_window
from .reconstruct import CoeffSeq, ReconstructionResult, interpolate, recover, synthesize
from .analytic import (
    DiscreteMeasure,
    FockSample,
    ZeroReport,
    apply_factor,
    disk_zero_count,
    fock_weighted,
    jensen_audit,
    rolle_audit,
    stft_measure,
    zero_count,
)

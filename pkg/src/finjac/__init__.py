"""The functional F, the matrix J and closed formulas for finite Jacobi matrices."""

from .contfrac import ConvergenceError, ConvergentPair, cf_limit, classical_cf, convergents
from .ffunc import (
    TailSeq,
    TruncationError,
    f_direct_sum,
    f_finite,
    f_forward,
    f_infinite,
    f_rescaled_head,
    f_split,
    f_truncated,
    truncate_left,
    two_sequence_identity,
)
from .jacobi import (
    JacobiMatrix,
    NormalizedJacobi,
    char_antisym_value,
    charpoly_antisym,
    charpoly_oracle,
    continuant,
    det_constant_offdiag,
    det_oracle,
    kernel_vector_antisym,
    normalize,
)
from .jtable import j_entry, j_entry_f, j_entry_recurrence
from .lineardiag import (
    BasisMatrix,
    LinearDiagMatrix,
    RankOneForm,
    SpectralAccuracyError,
    SpectralResult,
    char_at_integer_via_j,
    char_red_at_integer,
    charpoly_closed,
    charpoly_det,
    charpoly_f,
    charpoly_via_antisym,
    eigen_x,
    k_matrix,
    kw_xz_coefficient,
    rank_one_form,
    reduce_charpoly,
    resolvent,
    resolvent_denominator,
    spectrum,
    v_basis,
)
from .numeric import ModeError, Poly, gamma_ratio, interpolate, newton_binom, poly_eval
from .special import (
    bessel_j,
    bessel_j_series,
    bessel_ratio_cf,
    bessel_sequence,
    bessel_y_via_derivative,
    f_closed_int,
    f_closed_nu,
    f_geometric_series,
    geometric_sequence,
    jy_closed_part,
    jy_residual,
    q_exp,
    q_phi01,
)

__version__ = "0.1.0"

"""Numerical workbench for Mellin and Hankel representations of eta and zeta."""

from .contour import (
    ContourSpec,
    Domain,
    Kernel,
    Normalization,
    QuadratureResult,
    build_hankel,
    integrate_contour,
    integrate_real_axis,
    mellin,
)
from .errors import (
    AccuracyError,
    BoundaryZeroError,
    ConditioningError,
    ConfigError,
    DomainError,
    NearIntegerWarning,
    PhaseTrackingError,
    PoleError,
    ZetaMellinError,
)
from .identity import (
    MatrixOperand,
    PhaseBranch,
    Spectrum,
    exp_tr_det_check,
    hc_relation_check,
    normalization_constant,
    random_matrix,
    scalar_det_side,
    spectral_zeta,
    theorem_lhs,
    theorem_residual,
    theorem_rhs,
)
from .special import BranchConvention, cpow, gamma, log_gamma, reflection_weight, rgamma
from .zeta import (
    count_zeros_rectangle,
    eta_hankel,
    eta_mellin_real,
    eta_series,
    find_zeros,
    hardy_z,
    involution_check,
    riemann_siegel_theta,
    zeta_hankel,
    zeta_mellin_real,
    zeta_ref,
)

__version__ = "0.1.0"

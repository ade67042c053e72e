"""Exact ROC analysis for linear discriminant analysis classifiers."""
__version__ = "0.1.0"

from ._accel import backend_name
from .errors import (
    DatasetError,
    DegenerateHalfSpaceError,
    DegenerateModelError,
    DimensionError,
    DomainError,
    LdaRocError,
    NotPositiveDefiniteError,
)
from .gaussnum import (
    QuadratureRule,
    gauss_legendre_rule,
    integrate_gauss_weighted,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
)
from .symmat import SymMatrix, cholesky, quad_form, solve_spd, spectral
from .mvn import HalfSpace, MvnDistribution, density, halfspace_mass, sample
from .lda import LabeledDataset, LdaModel, fit, log_density_ratio, model_from_params, score
from .roc import (
    ConfusionDistribution,
    RocCurve,
    RocPoint,
    YoudenResult,
    auc,
    confusion_at,
    fpr_at,
    roc_derivatives,
    roc_tpr_from_fpr,
    sample_roc,
    tpr_at,
    youden,
)
from .empirical import (
    ScoredSample,
    VerificationReport,
    empirical_roc,
    mc_confusion,
    score_dataset,
    simulate_dataset,
    trapezoid_auc,
)

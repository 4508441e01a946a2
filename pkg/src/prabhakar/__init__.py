"""Prabhakar fractional calculus on uniform grids.

Submodules: :mod:`~prabhakar.specfun` (Mittag-Leffler and Wright functions,
spectral kernel), :mod:`~prabhakar.grid` (sampled functions, CSV),
:mod:`~prabhakar.operators`, :mod:`~prabhakar.oracles` (closed-form
identities), :mod:`~prabhakar.bounds` (norm, Opial and Hardy inequalities),
:mod:`~prabhakar.probability` (densities and normalization) and
:mod:`~prabhakar.cli`.
"""

from prabhakar.errors import (
    CSVFormatError,
    DomainError,
    EvaluationError,
    HypothesisViolated,
    NonConvergent,
    PrabhakarError,
    TailTooLarge,
    UnsupportedOrder,
)
from prabhakar.grid import SampledFn, UniformGrid, read_csv, sample, write_csv
from prabhakar.operators import (
    OperatorSpec,
    OpKind,
    apply,
    hilfer_prabhakar,
    prabhakar_derivative,
    prabhakar_derivative_regularized,
    prabhakar_integral,
)
from prabhakar.specfun import (
    DEFAULT_CONFIG,
    PrabhakarParams,
    SeriesConfig,
    ml3,
    prabhakar_kernel,
    spectral_K,
    uniform_bound,
    wright_phi,
)

__version__ = "0.1.0"

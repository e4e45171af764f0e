"""Recover functions on [-pi, pi] from their Fourier coefficients.

The coefficients a_k define an inner analytic function w(z) = sum a_k z^k
in the open unit disk; the function is the radial limit of Re w (cosine
sequences) or Im w (sine sequences).  The radial limit exists even for
many divergent Fourier series, provided the coefficients do not grow
exponentially -- which :func:`classify` checks.
"""

from .coeffs import (CoefficientSequence, absolute_mean, catalog_series, fourier_coefficients,
                     parse_sequence, synthetic, verify_zero_average)
from .core import (PeriodicFunctionSpec, catalog, combine, evaluate_spec, mean_value, parse_function,
                   remove_mean, sample_table, split_parity)
from .disk import (DiskPoint, LadderConfig, ReconstructionResult, compare_to_oracle,
                   conjugate_reconstruct, evaluate_series, reconstruct, theta_grid)
from .errors import (DegenerateSequenceError, DomainError, ExclusionError, GrowthGateError,
                     InnerFourierError, ParityError, QuadratureError, SingularPointError,
                     TruncationError)
from .growth import GrowthReport, classify, log_linear_threshold
from .kernels import delta_kernel, evaluate_kernel, reproducing_test, uniqueness_harness
from .quadrature import QuadratureConfig, integrate

__version__ = "0.1.0"

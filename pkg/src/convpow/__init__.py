"""Convolution powers of finitely supported complex functions on the integers.

Exact lattice arithmetic and symbol evaluation, fast/oracle convolution
powers, classification of the modulus-maximizing frequencies, numerical
attractor kernels with certified truncation, and empirical verification
of the sup-norm scaling and local limit approximations.
"""

from .attractor import (AttractorSpec, QuadratureCert, airy_oracle,
                        attractor_eval, decay_envelope, rescale, vdc_bounds)
from .catalog import builtin_example, threepoint
from .engine import (PowerResult, evaluate_extension, parseval_gap,
                     power_dft, power_direct, sup_norm)
from .errors import (ClassificationError, ConvpowError, DftSizeError,
                     FunctionFileError, InvalidKernelError,
                     MaxPointClusterWarning, NotAdmissibleError,
                     QuadratureError, SingularSymbolError,
                     StrongHypothesisError)
from .funcfile import emit_function_file, parse_function_file
from .lattice import (LatticeFunction, convolve, delta, evaluate_symbol,
                      make_lattice_function, symbol_derivative, total_mass,
                      zero_function)
from .limits import (LimitReport, packet_check, residual_report,
                     strong_approx, supnorm_scaling, weak_approx)
from .symbol import (MaxPoint, SymbolAnalysis, analyze, autocorrelation,
                     classify_point, find_max_points, find_sup, gamma_series,
                     moment_constants, strong_hypothesis_holds)

__version__ = "0.1.0"

__all__ = [
    "AttractorSpec", "QuadratureCert", "airy_oracle", "attractor_eval",
    "decay_envelope", "rescale", "vdc_bounds",
    "builtin_example", "threepoint",
    "PowerResult", "evaluate_extension", "parseval_gap", "power_dft",
    "power_direct", "sup_norm",
    "ClassificationError", "ConvpowError", "DftSizeError", "FunctionFileError",
    "InvalidKernelError", "MaxPointClusterWarning", "NotAdmissibleError",
    "QuadratureError", "SingularSymbolError", "StrongHypothesisError",
    "emit_function_file", "parse_function_file",
    "LatticeFunction", "convolve", "delta", "evaluate_symbol",
    "make_lattice_function", "symbol_derivative", "total_mass", "zero_function",
    "LimitReport", "packet_check", "residual_report", "strong_approx",
    "supnorm_scaling", "weak_approx",
    "MaxPoint", "SymbolAnalysis", "analyze", "autocorrelation",
    "classify_point", "find_max_points", "find_sup", "gamma_series",
    "moment_constants", "strong_hypothesis_holds",
]

"""Exception types shared across the package."""


class ConvpowError(Exception):
    """Base class for all package-specific errors."""


class NotAdmissibleError(ConvpowError, ValueError):
    """Raised when an operation needs a support with at least two points."""


class SingularSymbolError(ConvpowError, ValueError):
    """Raised when the symbol vanishes at a point where a log/ratio is needed."""


class ClassificationError(ConvpowError, RuntimeError):
    """Raised when a max point cannot be classified consistently."""


class StrongHypothesisError(ConvpowError, ValueError):
    """Raised when an operation requires the uniform-limit hypothesis and it fails."""


class QuadratureError(ConvpowError, RuntimeError):
    """Raised when a quadrature fails to converge to the requested accuracy."""


class InvalidKernelError(ConvpowError, ValueError):
    """Raised for kernel parameters outside the admissible (m, beta) family."""


class DftSizeError(ConvpowError, ValueError):
    """Raised when a transform length would exceed the configured memory cap."""


class FunctionFileError(ConvpowError, ValueError):
    """Raised for malformed function files; carries line/field diagnostics."""

    def __init__(self, message, line=None, field=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", field {field!r}" if field else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.field = field


class MaxPointClusterWarning(UserWarning):
    """Emitted when near-maximal critical points form a cluster wider than the
    dedup radius, so the reported point set may have merged distinct maxima."""

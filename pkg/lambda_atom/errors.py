"""
Exception hierarchy for the Lambda-atom simulator
Every error carries the CLI exit code it maps to
"""
from typing import Any, Dict, Optional


EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_OUTPUT = 4


class LambdaAtomError(Exception):
    """Base exception with an exit code and optional structured details"""

    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None,
                 exit_code: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}
        if exit_code is not None:
            self.exit_code = exit_code

    def to_dict(self) -> Dict[str, Any]:
        response = {"error": self.message, "type": type(self).__name__}
        if self.details:
            response["details"] = self.details
        return response

    def annotate(self, **details) -> "LambdaAtomError":
        """Attach context (e.g. the offending tau) and return self for re-raising"""
        self.details.update(details)
        return self


class ConfigError(LambdaAtomError):
    """Bad preset name, invalid parameter values or unreadable config file"""
    exit_code = EXIT_CONFIG


class OutputError(LambdaAtomError):
    """Result files could not be written"""
    exit_code = EXIT_OUTPUT


class NumericalError(LambdaAtomError):
    """A numerical precondition or postcondition failed"""
    exit_code = EXIT_NUMERICAL


class DegenerateCubicError(NumericalError):
    """The block cubic has complex roots (non-Hermitian block)"""


class DegenerateRootsError(NumericalError):
    """Two cubic roots coincide within the degeneracy tolerance"""


class TruncationError(NumericalError):
    """Initial field weights lose more tail mass than allowed"""


class ResolutionError(NumericalError):
    """Phase mesh is too coarse for the Fock support of the state"""


class StepSizeError(NumericalError):
    """Oracle step too large or norm drifted during integration"""


class DimensionError(NumericalError):
    """State vector does not match the truncated joint-space layout"""


class QUndefined(NumericalError):
    """Mandel Q requested for a mode with vanishing mean photon number"""


class CSIUndefined(NumericalError):
    """Cauchy-Schwartz ratio requested with vanishing <n1 n2>"""


class VerificationError(NumericalError):
    """Closed-form state disagrees with the integrated oracle state"""

"""Exception hierarchy and the CLI error boundary"""

import logging
from functools import wraps
from typing import Any, Callable, Dict, Optional

from pydantic import ValidationError

logger = logging.getLogger(__name__)


class BetaGapError(Exception):
    """Base exception carrying a stable code and a process exit code"""

    def __init__(self, code: str, message: str, exit_code: int = 1, details: Optional[dict] = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.exit_code = exit_code
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'success': False,
            'error': {
                'code': self.code,
                'message': self.message,
                'details': self.details,
            },
        }


class InputDomainError(BetaGapError):
    """Input outside the domain of an operation"""

    def __init__(self, message: str = "Input outside operation domain", details: Optional[dict] = None):
        super().__init__('INPUT_DOMAIN', message, 1, details)


class DegenerateInputError(BetaGapError):
    """Singular input where an invertible one is required.

    `distance` and `nearest` hold the trivial answer (0 and the input itself)
    so callers that expect degeneracy can recover it.
    """

    def __init__(self, message: str, distance: float = 0.0, nearest: Any = None,
                 details: Optional[dict] = None):
        super().__init__('DEGENERATE_INPUT', message, 1, details)
        self.distance = distance
        self.nearest = nearest


class DegeneratePencilError(BetaGapError):
    """Matrix pencil or matrix polynomial that is singular everywhere"""

    def __init__(self, message: str = "Combination is identically singular", details: Optional[dict] = None):
        super().__init__('DEGENERATE_PENCIL', message, 1, details)


class UnsupportedBetaError(BetaGapError):
    """Closed form or sampler not available for this beta"""

    def __init__(self, beta: float, supported=(1, 2, 4), operation: str = ""):
        where = f" for {operation}" if operation else ""
        super().__init__(
            'UNSUPPORTED_BETA',
            f"beta={beta} is not supported{where}; expected one of {list(supported)}",
            1,
            {'beta': beta, 'supported': list(supported)},
        )


class ConvergenceError(BetaGapError):
    """Iteration or refinement cap reached"""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__('NO_CONVERGENCE', message, 1, details)


class UsageError(BetaGapError):
    """Bad command-line usage"""

    def __init__(self, message: str = "Invalid usage", details: Optional[dict] = None):
        super().__init__('USAGE', message, 2, details)


class OutputError(BetaGapError):
    """Result document could not be written"""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__('OUTPUT', message, 1, details)


def _validation_message(error: ValidationError) -> str:
    parts = []
    for item in error.errors(include_url=False):
        where = '.'.join(str(loc) for loc in item['loc'])
        parts.append(f"{where}: {item['msg']}" if where else item['msg'])
    return '; '.join(parts) or str(error)


def handle_errors(f: Callable[..., int]) -> Callable[..., int]:
    """Decorator turning library exceptions into logged error documents and exit codes.

    Model validation failures are usage errors at this boundary; any other
    ValueError escaping numerical code is treated as an input-domain error.
    """
    @wraps(f)
    def decorated_function(*args, **kwargs) -> int:
        try:
            return f(*args, **kwargs)
        except BetaGapError as e:
            logger.error(f"{e.code}: {e.message}", extra={'details': e.details})
            return e.exit_code
        except ValidationError as e:
            error = UsageError(_validation_message(e), {'fields': [list(item['loc']) for item in e.errors()]})
            logger.error(f"{error.code}: {error.message}", extra={'details': error.details})
            return error.exit_code
        except ValueError as e:
            error = InputDomainError(str(e))
            logger.error(f"{error.code}: {error.message}")
            return error.exit_code

    return decorated_function

"""
Пакет исключений движка.

Предоставляет централизованный доступ ко всем исключениям.

Example:
    >>> from app.core.exceptions import DifferentialError
    >>> raise DifferentialError(degree=2)
"""

from .v1.abelian.abelian import (IllDefinedHomError, NotComposableError,
                                 ShapeMismatchError, TailMismatchError)
from .v1.ahss.ahss import DegenerateCoupleError, NonConstantTargetError
from .v1.base import BaseEngineException, WindowExhaustedError
from .v1.cli.cli import (InstanceParseError, InvariantViolationError,
                         TaskError, UsageError)
from .v1.complexes.complexes import (ChainMapError, DifferentialError,
                                     HomotopyError, NotBoundedAboveError)
from .v1.procat.procat import (IncompatibleGermError, MissingFactorizationError,
                               NonCommutingSquareError, NotCofinalError)

__all__ = [
    "BaseEngineException",
    "WindowExhaustedError",
    "ShapeMismatchError",
    "IllDefinedHomError",
    "NotComposableError",
    "TailMismatchError",
    "DifferentialError",
    "ChainMapError",
    "HomotopyError",
    "NotBoundedAboveError",
    "NotCofinalError",
    "IncompatibleGermError",
    "NonCommutingSquareError",
    "MissingFactorizationError",
    "NonConstantTargetError",
    "DegenerateCoupleError",
    "InstanceParseError",
    "TaskError",
    "InvariantViolationError",
    "UsageError",
]

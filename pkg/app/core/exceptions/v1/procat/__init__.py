from .procat import (IncompatibleGermError, MissingFactorizationError,
                     NonCommutingSquareError, NotCofinalError)

__all__ = [
    "IncompatibleGermError",
    "MissingFactorizationError",
    "NonCommutingSquareError",
    "NotCofinalError",
]

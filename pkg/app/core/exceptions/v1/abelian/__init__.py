from .abelian import (IllDefinedHomError, NotComposableError,
                      ShapeMismatchError, TailMismatchError)

__all__ = [
    "IllDefinedHomError",
    "NotComposableError",
    "ShapeMismatchError",
    "TailMismatchError",
]

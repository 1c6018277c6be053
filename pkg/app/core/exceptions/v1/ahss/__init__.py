from .ahss import DegenerateCoupleError, NonConstantTargetError

__all__ = [
    "NonConstantTargetError",
    "DegenerateCoupleError",
]

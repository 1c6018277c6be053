from .complexes import (ChainMapError, DifferentialError, HomotopyError,
                        NotBoundedAboveError)

__all__ = [
    "ChainMapError",
    "DifferentialError",
    "HomotopyError",
    "NotBoundedAboveError",
]

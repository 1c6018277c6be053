from .verdicts import (ConvergenceVerdict, Lim1Status, Scope, SequenceKind,
                       TailKind, Verdict, WeqRoute, WeqStrategy)

__all__ = [
    "ConvergenceVerdict",
    "Lim1Status",
    "Scope",
    "SequenceKind",
    "TailKind",
    "Verdict",
    "WeqRoute",
    "WeqStrategy",
]

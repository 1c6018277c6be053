"""
Пакет точной арифметики конечно порожденных абелевых групп.
"""

from .colimits import (ColimClass, Colimit, FGDirectSystem, GermClass,
                       GermDirectSystem, colim_eq, colim_is_zero, colim_system)
from .groups import (Cokernel, FGAbelianGroup, GroupHom, HomGroup, Image,
                     Kernel, cokernel, direct_sum, factor_through_injection,
                     group_from_presentation, hom_group, hom_module, image,
                     is_exact_at, kernel)
from .matrix import IntMatrix, Vector, add_vectors, scale_vector, unit_vector
from .snf import (SmithForm, hermite_basis, in_span, kernel_basis,
                  smith_normal_form, solve, solve_matrix)
from .towers import (GroupTower, Lim1Result, LimResult, TailRule,
                     analyze_endomorphism, tower_lim, tower_lim1)

__all__ = [
    "IntMatrix",
    "Vector",
    "add_vectors",
    "scale_vector",
    "unit_vector",
    "SmithForm",
    "smith_normal_form",
    "hermite_basis",
    "kernel_basis",
    "solve",
    "solve_matrix",
    "in_span",
    "FGAbelianGroup",
    "GroupHom",
    "HomGroup",
    "Kernel",
    "Image",
    "Cokernel",
    "group_from_presentation",
    "direct_sum",
    "kernel",
    "image",
    "cokernel",
    "is_exact_at",
    "factor_through_injection",
    "hom_group",
    "hom_module",
    "TailRule",
    "GroupTower",
    "LimResult",
    "Lim1Result",
    "analyze_endomorphism",
    "tower_lim",
    "tower_lim1",
    "FGDirectSystem",
    "ColimClass",
    "Colimit",
    "GermClass",
    "GermDirectSystem",
    "colim_system",
    "colim_eq",
    "colim_is_zero",
]

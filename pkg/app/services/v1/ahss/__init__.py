"""
Пакет спектральной последовательности Атьи-Хирцебруха для про-спектров:
башни сечений и накрытий цели, точные пары, страницы и сходимость.
"""

from .couples import (BigradedGroups, CoupleCheck, ExactCouple, FilteredMaps,
                      HomColimits, Page, TwoStage, couple_of, derive,
                      filtered_couple, skeletal_inclusion, skeleton,
                      two_stage_couple)
from .filtrations import (CofiberCheck, SectionFamily, cofiber_checks,
                          connective_stage, connective_tower, cover_diagonal,
                          cover_weak_equivalence, postnikov_stage,
                          postnikov_tower, section_tail)
from .spectral import (AbutmentReport, ConvergenceReport, E2Check,
                       SpectralSequence, build_exact_couple, compare_abutment,
                       convergence_report, e2_identification, pages, stencil,
                       valid_window)

__all__ = [
    "section_tail",
    "postnikov_stage",
    "connective_stage",
    "SectionFamily",
    "postnikov_tower",
    "connective_tower",
    "CofiberCheck",
    "cofiber_checks",
    "cover_diagonal",
    "cover_weak_equivalence",
    "BigradedGroups",
    "CoupleCheck",
    "ExactCouple",
    "Page",
    "derive",
    "HomColimits",
    "FilteredMaps",
    "filtered_couple",
    "couple_of",
    "skeleton",
    "skeletal_inclusion",
    "TwoStage",
    "two_stage_couple",
    "SpectralSequence",
    "E2Check",
    "ConvergenceReport",
    "AbutmentReport",
    "stencil",
    "valid_window",
    "build_exact_couple",
    "pages",
    "e2_identification",
    "convergence_report",
    "compare_abutment",
]

"""
Пакет про-категорий: башни, их морфизмы и распознавание про-изоморфизмов.
"""

from .homs import (ProHom, fixed_degree_tail, hom_colimit, homology_tower,
                   pro_hom, tower_invariants)
from .isomorphisms import (Assembly, FactorizationSearch, FactorizationWitness,
                           ProIsoCertificate, TailPlan,
                           assemble_factorizations, compose_certificates,
                           is_pro_isomorphism)
from .maps import ProMap, level_representation, reindex
from .theories import (GROUPS, SPECTRA, Constraint, GroupTheory, LevelTheory,
                       SpectrumTheory, theory_of)
from .towers import (BiTower, Diagonal, Reindex, ReindexKind, Tower,
                     as_group_tower, constant, diagonalize, map_levels,
                     reindexed_tail)

__all__ = [
    "LevelTheory",
    "Constraint",
    "GroupTheory",
    "SpectrumTheory",
    "GROUPS",
    "SPECTRA",
    "theory_of",
    "Tower",
    "constant",
    "map_levels",
    "as_group_tower",
    "ReindexKind",
    "Reindex",
    "reindexed_tail",
    "BiTower",
    "Diagonal",
    "diagonalize",
    "ProMap",
    "reindex",
    "level_representation",
    "ProHom",
    "pro_hom",
    "hom_colimit",
    "fixed_degree_tail",
    "homology_tower",
    "tower_invariants",
    "FactorizationWitness",
    "ProIsoCertificate",
    "FactorizationSearch",
    "Assembly",
    "TailPlan",
    "is_pro_isomorphism",
    "compose_certificates",
    "assemble_factorizations",
]

"""
Пакет гомотопической теории про-спектров: про-группы гомотопий,
π*-слабые эквивалентности, точные последовательности, постниковская
замена и гомотопические классы про-отображений.
"""

from .builtins import (FORMAL_KU, NaiveColimit, PeriodicFamily, counterexample,
                       cpn_tower, ku, naive_cohomology_colimit)
from .cohomology import (CohomologyMap, ProMapsResult, WhiteheadCheck,
                         WhiteheadReport, cohomology_map, maps_to_constant,
                         ordinary_cohomology, pro_maps, whitehead_check)
from .equivalences import (NEquivalenceCertificate, WeakEqCertificate,
                           WeakEquivalenceSearch, ess_levelwise_n_equivalence,
                           is_pi_weak_equivalence)
from .homotopy import (as_level_map, homotopy_map, pro_homotopy_group,
                       shift_pro, shift_pro_map, zero_map, zero_tower)
from .postnikov import (BoundedAboveReport, EssentiallyConstant,
                        PostnikovReplacement, essentially_constant,
                        is_essentially_bounded_above, postnikov_replacement,
                        replacement_tail)
from .sequences import (ExactnessCheck, ExactSequences, LongExactSequence,
                        cofiber_les, fiber_les, regrade)

__all__ = [
    "pro_homotopy_group",
    "homotopy_map",
    "shift_pro",
    "shift_pro_map",
    "as_level_map",
    "zero_tower",
    "zero_map",
    "counterexample",
    "PeriodicFamily",
    "FORMAL_KU",
    "ku",
    "cpn_tower",
    "NaiveColimit",
    "naive_cohomology_colimit",
    "NEquivalenceCertificate",
    "WeakEqCertificate",
    "WeakEquivalenceSearch",
    "ess_levelwise_n_equivalence",
    "is_pi_weak_equivalence",
    "ExactnessCheck",
    "LongExactSequence",
    "ExactSequences",
    "regrade",
    "cofiber_les",
    "fiber_les",
    "PostnikovReplacement",
    "replacement_tail",
    "postnikov_replacement",
    "BoundedAboveReport",
    "is_essentially_bounded_above",
    "EssentiallyConstant",
    "essentially_constant",
    "maps_to_constant",
    "ProMapsResult",
    "pro_maps",
    "ordinary_cohomology",
    "CohomologyMap",
    "cohomology_map",
    "WhiteheadReport",
    "WhiteheadCheck",
    "whitehead_check",
]

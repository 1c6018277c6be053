"""
Пакет формальных спектров: цепные комплексы свободных групп как модель
стабильной гомотопической категории.
"""

from .constructions import (Cone, Cylinder, Fiber, blocks, cone, cone_map, cpn,
                            cylinder, cylinder_map, direct_sum, direct_sum_map,
                            em_spectrum, fiber, fiber_map, shift, shift_map,
                            sphere)
from .equivalences import (Factorization, cone_is_n_coconnected,
                           cone_is_n_connected, factor_n, factor_n_map,
                           is_co_n_equivalence, is_n_equivalence)
from .homology import Homology, homology, homology_module, induced_map
from .homotopy import (HomComplex, HomotopyClasses, homotopy_classes,
                       homotopy_module)
from .spectrum import ChainHomotopy, ChainMap, FormalSpectrum, degree_span
from .truncations import (Cover, Truncation, connected_cover, cover_inclusion,
                          cover_map, postnikov, postnikov_map)

__all__ = [
    "FormalSpectrum",
    "ChainMap",
    "ChainHomotopy",
    "degree_span",
    "Homology",
    "homology",
    "homology_module",
    "induced_map",
    "blocks",
    "em_spectrum",
    "sphere",
    "shift",
    "shift_map",
    "direct_sum",
    "direct_sum_map",
    "Cone",
    "Cylinder",
    "Fiber",
    "cone",
    "cone_map",
    "cylinder",
    "cylinder_map",
    "fiber",
    "fiber_map",
    "cpn",
    "HomComplex",
    "HomotopyClasses",
    "homotopy_classes",
    "homotopy_module",
    "Truncation",
    "Cover",
    "postnikov",
    "postnikov_map",
    "connected_cover",
    "cover_map",
    "cover_inclusion",
    "Factorization",
    "is_n_equivalence",
    "is_co_n_equivalence",
    "cone_is_n_connected",
    "cone_is_n_coconnected",
    "factor_n",
    "factor_n_map",
]

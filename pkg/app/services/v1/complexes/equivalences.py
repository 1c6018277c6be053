"""
Модуль n-эквивалентностей и факторизации отображений.

Включает в себя:
- is_n_equivalence / is_co_n_equivalence: проверки по гомологиям
- cone_is_n_connected / cone_is_n_coconnected: те же условия через конус
- factor_n: разложение f = p∘i, где i n-эквивалентность и расщепимая
  инъекция, p ко-n-эквивалентность и сюръекция
- factor_n_map: функториальность разложения по квадратам
"""

import logging
from typing import NamedTuple

from app.services.v1.abelian import IntMatrix

from .constructions import (blocks, cone, cone_map, cylinder, cylinder_map,
                            fiber, fiber_map)
from .homology import homology, induced_map
from .spectrum import ChainMap, FormalSpectrum, degree_span
from .truncations import postnikov, postnikov_map

logger = logging.getLogger(__name__)


def is_n_equivalence(f: ChainMap, n: int) -> bool:
    """
    H_k(f) изоморфизм при k < n и эпиморфизм при k = n.
    """
    span = degree_span(f.source, f.target)
    lower = span.start if span else n
    for k in range(min(lower, n), n):
        if not induced_map(f, k).is_isomorphism():
            return False
    return induced_map(f, n).is_surjective()


def is_co_n_equivalence(f: ChainMap, n: int) -> bool:
    """
    H_k(f) изоморфизм при k > n и мономорфизм при k = n.
    """
    span = degree_span(f.source, f.target)
    upper = span.stop if span else n
    for k in range(n + 1, max(upper, n + 1)):
        if not induced_map(f, k).is_isomorphism():
            return False
    return induced_map(f, n).is_injective()


def cone_is_n_connected(f: ChainMap, n: int) -> bool:
    """
    H_k C(f) = 0 при k ≤ n; равносильно is_n_equivalence(f, n).
    """
    C = cone(f).spectrum
    return all(homology(C, k).is_trivial() for k in C.degrees if k <= n)


def cone_is_n_coconnected(f: ChainMap, n: int) -> bool:
    """
    H_k C(f) = 0 при k ≥ n+1; равносильно is_co_n_equivalence(f, n).
    """
    C = cone(f).spectrum
    return all(homology(C, k).is_trivial() for k in C.degrees if k >= n + 1)


class Factorization(NamedTuple):
    """
    Разложение f = p∘i через промежуточный спектр.

    Attributes:
        spectrum (FormalSpectrum): Промежуточный Z
        inclusion (ChainMap): i: X → Z
        projection (ChainMap): p: Z → Y
    """

    spectrum: FormalSpectrum
    inclusion: ChainMap
    projection: ChainMap


def _fiber_inclusion(f: ChainMap, n: int):
    """
    Строит Z0 = F(Y → P_n C(f)) и i0: X → Z0, p0: Z0 → Y с p0∘i0 = f.

    i0(x) = (f x, -π_{k+1}(x, 0)), где π проекция C(f) → P_n C(f).
    """
    X, Y = f.source, f.target
    C, into_cone, _ = cone(f)
    _, projection = postnikov(C, n)
    g = projection @ into_cone
    Z0, p0, _ = fiber(g)
    components = {}
    for k in X.degrees:
        # (x, 0) ∈ C_{k+1} = X_k ⊕ Y_{k+1}
        embed = blocks(
            (X.rank(k), Y.rank(k + 1)),
            (X.rank(k),),
            {(0, 0): IntMatrix.identity(X.rank(k))},
        )
        tail = (projection.component(k + 1) @ embed).scale(-1)
        components[k] = IntMatrix.vstack(X.rank(k), f.component(k), tail)
    i0 = ChainMap.build(X, Z0, components)
    return g, Z0, i0, p0


def factor_n(f: ChainMap, n: int) -> Factorization:
    """
    Разложение f = p∘i с i n-эквивалентностью и p ко-n-эквивалентностью.

    Конструкция: g = π∘ι: Y → P_n C(f), Z0 = F(g), затем цилиндр
    отображения i0: X → Z0 делает i расщепимой инъекцией, а p = p0∘q
    сюръекцией; p∘i = f выполняется точно.

    Args:
        f: Отображение X → Y
        n: Степень

    Returns:
        Factorization(Z, i, p)
    """
    _, _, i0, p0 = _fiber_inclusion(f, n)
    Z, i, _, q = cylinder(i0)
    p = p0 @ q
    logger.debug("factor_n: n=%s, Z в степенях [%s, %s]", n, Z.lo, Z.hi)
    return Factorization(Z, i, p)


def factor_n_map(
    f: ChainMap, g: ChainMap, a: ChainMap, b: ChainMap, n: int
) -> ChainMap:
    """
    Отображение Z_n(f) → Z_n(g) для квадрата g∘a = b∘f, согласованное с
    i и p обоих разложений.
    """
    gf, _, i0_f, _ = _fiber_inclusion(f, n)
    gg, _, i0_g, _ = _fiber_inclusion(g, n)
    on_cones = cone_map(f, g, a, b)
    on_truncations = postnikov_map(on_cones, n)
    on_fibers = fiber_map(gf, gg, b, on_truncations)
    return cylinder_map(i0_f, i0_g, a, on_fibers)

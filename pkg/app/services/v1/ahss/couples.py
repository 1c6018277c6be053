"""
Модуль точных пар и их производных.

Включает в себя:
- BigradedGroups: биградуированное семейство групп в окне (p, q)
- ExactCouple: точная пара (D, E, i, j, k) с проверкой точности
- Page: страница E_r с дифференциалами d_r = j∘k
- derive: производная пара D' = im i, E' = H(E, d)
- FilteredMaps / filtered_couple / couple_of: пара фильтрации F_q → F_{q+1}
  цели над про-спектром X
- skeleton / two_stage_couple: клеточный остов и пара с ненулевым d_2
"""

import logging
from dataclasses import dataclass, field
from typing import (Callable, Dict, FrozenSet, List, NamedTuple, Optional,
                    Tuple)

from app.core.exceptions import DegenerateCoupleError
from app.services.v1.abelian import (ColimClass, Colimit, Cokernel,
                                     FGAbelianGroup, GroupHom, Image,
                                     IntMatrix, Kernel, Vector, cokernel,
                                     factor_through_injection, image,
                                     is_exact_at, kernel, solve, unit_vector)
from app.services.v1.complexes import (ChainMap, Cone, FormalSpectrum,
                                       HomotopyClasses, cone, em_spectrum,
                                       shift, shift_map, sphere)
from app.services.v1.procat import SPECTRA, Tower, constant
from app.services.v1.prospectra import maps_to_constant

logger = logging.getLogger(__name__)

Position = Tuple[int, int]
Window = Tuple[int, int, int, int]

I_DEGREE: Position = (-1, 1)
J_DEGREE: Position = (1, -1)
K_DEGREE: Position = (1, 0)


def _add(a: Position, b: Position) -> Position:
    return a[0] + b[0], a[1] + b[1]


def _sub(a: Position, b: Position) -> Position:
    return a[0] - b[0], a[1] - b[1]


def _key(position: Position) -> str:
    return f"{position[0]},{position[1]}"


def window_positions(window: Window) -> List[Position]:
    p_lo, p_hi, q_lo, q_hi = window
    return [(p, q) for p in range(p_lo, p_hi + 1) for q in range(q_lo, q_hi + 1)]


@dataclass(frozen=True)
class BigradedGroups:
    """
    Группы G^{p,q} в прямоугольном окне.

    Attributes:
        window (Window): (p_lo, p_hi, q_lo, q_hi) включительно
        entries (Dict[Position, Optional[FGAbelianGroup]]): None для
            неопределенных позиций
    """

    window: Window
    entries: Dict[Position, Optional[FGAbelianGroup]]

    def __getitem__(self, position: Position) -> Optional[FGAbelianGroup]:
        return self.entries.get(position)

    @property
    def positions(self) -> List[Position]:
        return sorted(p for p, group in self.entries.items() if group is not None)

    @property
    def indeterminate(self) -> List[Position]:
        return [p for p in window_positions(self.window) if self[p] is None]

    def nonzero(self) -> Dict[Position, FGAbelianGroup]:
        return {
            p: group
            for p, group in sorted(self.entries.items())
            if group is not None and not group.is_trivial()
        }

    def diagonal(self, n: int) -> Dict[Position, Optional[FGAbelianGroup]]:
        """
        Позиции окна с p + q = n.
        """
        return {p: self[p] for p in window_positions(self.window) if sum(p) == n}

    def to_dict(self) -> dict:
        return {
            "window": list(self.window),
            "entries": {
                _key(p): None if group is None else group.describe()
                for p, group in sorted(self.entries.items())
            },
        }


class CoupleCheck(NamedTuple):
    """
    Проверка im = ker в одной позиции пары.

    Attributes:
        position (Position): Бистепень
        term (str): "D:i→j", "D:k→i" или "E:j→k"
        exact (bool): Итог
    """

    position: Position
    term: str
    exact: bool


@dataclass(frozen=True)
class Page:
    """
    Страница E_r.

    Attributes:
        r (int): Номер страницы
        groups (BigradedGroups): E_r^{p,q}
        differentials (Dict[Position, GroupHom]): d_r с источником в позиции
        degree (Position): Бистепень d_r, равная (r, 1 - r)
        flagged (FrozenSet[Position]): Позиции с невычисленным копределом
    """

    r: int
    groups: BigradedGroups
    differentials: Dict[Position, GroupHom]
    degree: Position
    flagged: FrozenSet[Position] = frozenset()

    @property
    def degenerate(self) -> bool:
        return all(d.is_zero() for d in self.differentials.values())

    def nonzero_differentials(self) -> List[Position]:
        return [e for e, d in sorted(self.differentials.items()) if not d.is_zero()]

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "degree": list(self.degree),
            "groups": self.groups.to_dict(),
            "differentials": {
                _key(e): self.differentials[e].matrix.to_lists()
                for e in self.nonzero_differentials()
            },
            "degenerate": self.degenerate,
            "flagged": [_key(p) for p in sorted(self.flagged)],
        }


@dataclass(frozen=True)
class ExactCouple:
    """
    Точная пара D →i D →j E →k D.

    Отображения хранятся по позиции источника; i, k имеют степени
    (-1, 1) и (1, 0), степень j растет с каждой производной парой.

    Attributes:
        page (int): Номер страницы E
        D (BigradedGroups): D^{p,q}
        E (BigradedGroups): E^{p,q}
        i (Dict[Position, GroupHom]): D^{p,q} → D^{p-1,q+1}
        j (Dict[Position, GroupHom]): D^{p,q} → E^{(p,q)+j_degree}
        k (Dict[Position, GroupHom]): E^{p,q} → D^{p+1,q}
        j_degree (Position): Степень j
        flagged (FrozenSet[Position]): Позиции с неразрешенными копределами
    """

    page: int
    D: BigradedGroups
    E: BigradedGroups
    i: Dict[Position, GroupHom]
    j: Dict[Position, GroupHom]
    k: Dict[Position, GroupHom]
    j_degree: Position = J_DEGREE
    flagged: FrozenSet[Position] = frozenset()

    @property
    def d_degree(self) -> Position:
        return _add(K_DEGREE, self.j_degree)

    def differential(self, e: Position) -> Optional[GroupHom]:
        a = _add(e, K_DEGREE)
        if e not in self.k or a not in self.j:
            return None
        return self.j[a] @ self.k[e]

    def differentials(self) -> Dict[Position, GroupHom]:
        result = {}
        for e in self.E.positions:
            d = self.differential(e)
            if d is not None:
                result[e] = d
        return result

    def checks(self) -> List[CoupleCheck]:
        """
        Все проверки точности, для которых обе стрелки вычислены.
        """
        results = []
        for a in self.D.positions:
            if a in self.flagged:
                continue
            before = _sub(a, I_DEGREE)
            if before in self.i and a in self.j:
                exact = is_exact_at(self.i[before], self.j[a])
                results.append(CoupleCheck(a, "D:i→j", exact))
            source = _sub(a, K_DEGREE)
            if source in self.k and a in self.i:
                exact = is_exact_at(self.k[source], self.i[a])
                results.append(CoupleCheck(a, "D:k→i", exact))
        for e in self.E.positions:
            if e in self.flagged:
                continue
            source = _sub(e, self.j_degree)
            if source in self.j and e in self.k:
                exact = is_exact_at(self.j[source], self.k[e])
                results.append(CoupleCheck(e, "E:j→k", exact))
        return results

    @property
    def exact(self) -> bool:
        return all(check.exact for check in self.checks())

    def squares_vanish(self) -> bool:
        differentials = self.differentials()
        degree = self.d_degree
        return all(
            (differentials[_add(e, degree)] @ d).is_zero()
            for e, d in differentials.items()
            if _add(e, degree) in differentials
        )

    def page_view(self) -> Page:
        return Page(
            self.page, self.E, self.differentials(), self.d_degree, self.flagged
        )


def _lift(h: GroupHom, element: Vector, position: Position) -> Vector:
    # x с h(x) = element в target(h); для инъекций и сюръекций
    target = h.target
    span = IntMatrix.hstack(target.generators, h.matrix, target.relations)
    solution = solve(span, element)
    if solution is None:
        raise DegenerateCoupleError(position, "элемент не поднимается")
    return tuple(solution[: h.source.generators])


def _local_homology(
    group: FGAbelianGroup,
    d_in: Optional[GroupHom],
    d_out: Optional[GroupHom],
    position: Position,
) -> Optional[Tuple[Kernel, Cokernel]]:
    if group.is_trivial():
        zero = FGAbelianGroup.zero()
        d_in = d_in or GroupHom.zero(zero, group)
        d_out = d_out or GroupHom.zero(group, zero)
    if d_in is None or d_out is None:
        return None
    cycles = kernel(d_out)
    boundary = factor_through_injection(d_in, cycles.inclusion)
    if boundary is None:
        raise DegenerateCoupleError(position, "d_r ∘ d_r ≠ 0")
    return cycles, cokernel(boundary)


def derive(couple: ExactCouple) -> ExactCouple:
    """
    Производная пара: D' = im i, E' = ker d / im d, d = j∘k.

    i' есть ограничение i, j'(i y) = [j y], k'[z] = k z. Позиции, где
    не хватает стрелок окна, становятся неопределенными.

    Raises:
        DegenerateCoupleError: Пара не точна и подъем не существует
    """
    images: Dict[Position, Image] = {}
    for a in couple.D.positions:
        before = _sub(a, I_DEGREE)
        if before in couple.i:
            images[a] = image(couple.i[before])

    differentials = couple.differentials()
    d_degree = couple.d_degree
    homology: Dict[Position, Tuple[Kernel, Cokernel]] = {}
    for e in couple.E.positions:
        local = _local_homology(
            couple.E[e],
            differentials.get(_sub(e, d_degree)),
            differentials.get(e),
            e,
        )
        if local is not None:
            homology[e] = local

    i_map: Dict[Position, GroupHom] = {}
    for a, current in images.items():
        after = _add(a, I_DEGREE)
        if after in images:
            i_map[a] = images[after].projection @ current.inclusion

    j_degree = _sub(couple.j_degree, I_DEGREE)
    j_map: Dict[Position, GroupHom] = {}
    for a, current in images.items():
        before = _sub(a, I_DEGREE)
        target = _add(a, j_degree)
        if before not in couple.j or target not in homology:
            continue
        cycles, quotient = homology[target]
        columns = []
        for index in range(current.group.generators):
            unit = unit_vector(current.group.generators, index)
            y = _lift(current.projection, unit, a)
            z = couple.j[before].apply(y)
            columns.append(quotient.projection.apply(_lift(cycles.inclusion, z, a)))
        j_map[a] = GroupHom(
            current.group,
            quotient.group,
            IntMatrix.from_columns(columns, quotient.group.generators),
        )

    k_map: Dict[Position, GroupHom] = {}
    for e, (cycles, quotient) in homology.items():
        target = _add(e, K_DEGREE)
        if e not in couple.k or target not in images:
            continue
        inclusion = images[target].inclusion
        columns = []
        for index in range(quotient.group.generators):
            unit = unit_vector(quotient.group.generators, index)
            z = cycles.inclusion.apply(_lift(quotient.projection, unit, e))
            columns.append(_lift(inclusion, couple.k[e].apply(z), e))
        k_map[e] = GroupHom(
            quotient.group,
            inclusion.source,
            IntMatrix.from_columns(columns, inclusion.source.generators),
        )

    positions = window_positions(couple.D.window)
    D = BigradedGroups(
        couple.D.window,
        {a: images[a].group if a in images else None for a in positions},
    )
    E = BigradedGroups(
        couple.E.window,
        {e: homology[e][1].group if e in homology else None for e in positions},
    )
    logger.debug(
        "📐 страница %s: %s определенных позиций E",
        couple.page + 1,
        len(E.positions),
    )
    return ExactCouple(
        couple.page + 1, D, E, i_map, j_map, k_map, j_degree, couple.flagged
    )


class HomColimits:
    """
    [X, F]^n = colim_t [X_t, F]^n с модулями гомотопических классов уровней.

    Attributes:
        X (Tower): Про-спектр
        target (FormalSpectrum): Постоянная цель F
        n (int): Степень
        colimit (Colimit): Копредел из maps_to_constant
    """

    def __init__(self, X: Tower, target: FormalSpectrum, n: int):
        self.X = X
        self.target = target
        self.n = n
        self.colimit: Colimit = maps_to_constant(X, target, n)
        self._modules: Dict[int, HomotopyClasses] = {}

    @property
    def group(self) -> Optional[FGAbelianGroup]:
        return self.colimit.group

    def module(self, t: int) -> HomotopyClasses:
        if t not in self._modules:
            self._modules[t] = SPECTRA.hom_module(
                shift(self.X.level(t), -self.n), self.target
            )
        return self._modules[t]

    def induced(
        self, other: "HomColimits", action: Callable[[ChainMap], ChainMap]
    ) -> GroupHom:
        """
        Гомоморфизм копределов, заданный действием на представителях.
        """
        generators = self.group.generators
        columns = []
        for index in range(generators):
            cls = self.colimit.representative(unit_vector(generators, index))
            moved = action(self.module(cls.level).representative(cls.element))
            element = other.module(cls.level).class_of(moved)
            columns.append(
                other.colimit.coordinates(ColimClass(cls.level, tuple(element)))
            )
        return GroupHom(
            self.group,
            other.group,
            IntMatrix.from_columns(columns, other.group.generators),
        )


class FilteredMaps:
    """
    Группы и стрелки пары фильтрации F_q → F_{q+1} постоянной цели.

    D^{p,q} = [X, F_q]^{p+q}, E^{p,q} = [X, C_q]^{p+q}, где C_q конус
    вложения F_q → F_{q+1}. Слои, вложения, конусы и копределы
    кэшируются.

    Attributes:
        X (Tower): Про-спектр источника
        stage (Callable[[int], FormalSpectrum]): q ↦ F_q
        inclusion (Callable[[int], ChainMap]): q ↦ (F_q → F_{q+1})
    """

    def __init__(
        self,
        X: Tower,
        stage: Callable[[int], FormalSpectrum],
        inclusion: Callable[[int], ChainMap],
    ):
        self.X = X
        self._stage = stage
        self._inclusion = inclusion
        self._stages: Dict[int, FormalSpectrum] = {}
        self._inclusions: Dict[int, ChainMap] = {}
        self._cones: Dict[int, Cone] = {}
        self._d: Dict[Position, HomColimits] = {}
        self._e: Dict[Position, HomColimits] = {}

    def stage(self, q: int) -> FormalSpectrum:
        if q not in self._stages:
            self._stages[q] = self._stage(q)
        return self._stages[q]

    def inclusion(self, q: int) -> ChainMap:
        if q not in self._inclusions:
            self._inclusions[q] = self._inclusion(q)
        return self._inclusions[q]

    def cone(self, q: int) -> Cone:
        if q not in self._cones:
            self._cones[q] = cone(self.inclusion(q))
        return self._cones[q]

    def D(self, position: Position) -> HomColimits:
        if position not in self._d:
            self._d[position] = HomColimits(
                self.X, self.stage(position[1]), sum(position)
            )
        return self._d[position]

    def E(self, position: Position) -> HomColimits:
        if position not in self._e:
            self._e[position] = HomColimits(
                self.X, self.cone(position[1]).spectrum, sum(position)
            )
        return self._e[position]

    def i(self, a: Position) -> GroupHom:
        v = self.inclusion(a[1])
        return self.D(a).induced(self.D(_add(a, I_DEGREE)), lambda f: v @ f)

    def j(self, a: Position) -> GroupHom:
        v = self.cone(a[1] - 1).inclusion
        return self.D(a).induced(self.E(_add(a, J_DEGREE)), lambda f: v @ f)

    def k(self, e: Position) -> GroupHom:
        # C_q → ΣF_q и десуспензия в степень n + 1
        v = self.cone(e[1]).projection
        return self.E(e).induced(
            self.D(_add(e, K_DEGREE)), lambda f: shift_map(v @ f, -1)
        )


def filtered_couple(
    X: Tower,
    stage: Callable[[int], FormalSpectrum],
    inclusion: Callable[[int], ChainMap],
    p_range: Tuple[int, int],
    q_range: Tuple[int, int],
    name: str = "",
) -> ExactCouple:
    """
    Точная пара второй страницы для фильтрации цели.

    Стрелки строятся только между позициями окна с вычисленными
    копределами; остальные позиции попадают во flagged.

    Args:
        X: Про-спектр источника
        stage: q ↦ F_q
        inclusion: q ↦ (F_q → F_{q+1})
        p_range: Окно по p
        q_range: Окно по q
        name: Имя для логов

    Returns:
        ExactCouple страницы 2
    """
    return couple_of(FilteredMaps(X, stage, inclusion), p_range, q_range, name)


def couple_of(
    maps: FilteredMaps,
    p_range: Tuple[int, int],
    q_range: Tuple[int, int],
    name: str = "",
) -> ExactCouple:
    """
    Точная пара второй страницы по готовым (кэширующим) группам фильтрации.
    """
    window: Window = (*p_range, *q_range)
    positions = window_positions(window)
    D = {a: maps.D(a).group for a in positions}
    E = {e: maps.E(e).group for e in positions}
    flagged = frozenset(
        position
        for position in positions
        if D[position] is None or E[position] is None
    )

    def known(groups: Dict[Position, Optional[FGAbelianGroup]], p: Position) -> bool:
        return groups.get(p) is not None

    i_map, j_map, k_map = {}, {}, {}
    for a in positions:
        if not known(D, a):
            continue
        if known(D, _add(a, I_DEGREE)):
            i_map[a] = maps.i(a)
        if known(E, _add(a, J_DEGREE)):
            j_map[a] = maps.j(a)
    for e in positions:
        if known(E, e) and known(D, _add(e, K_DEGREE)):
            k_map[e] = maps.k(e)

    if flagged:
        logger.info("❓ пара %s: %s позиций не определены", name, len(flagged))
    logger.info("📐 пара %s построена в окне %s", name, window)
    return ExactCouple(
        2,
        BigradedGroups(window, D),
        BigradedGroups(window, E),
        i_map,
        j_map,
        k_map,
        J_DEGREE,
        flagged,
    )


def skeleton(V: FormalSpectrum, n: int) -> FormalSpectrum:
    """
    Клетки степеней ≤ n.

    Example:
        >>> from app.services.v1.complexes import homology
        >>> V = em_spectrum(FGAbelianGroup.cyclic(2), 0)
        >>> homology(skeleton(V, 0), 0).describe()
        'Z'
    """
    cells = {k: V.rank(k) for k in V.degrees if k <= n}
    diffs = {k: V.d(k) for k in V.degrees if V.lo < k <= n}
    return FormalSpectrum.build(cells, diffs, name=f"sk_{n} {V.name}".strip())


def skeletal_inclusion(V: FormalSpectrum, n: int) -> ChainMap:
    return ChainMap.build(
        skeleton(V, n),
        skeleton(V, n + 1),
        {k: IntMatrix.identity(V.rank(k)) for k in V.degrees if k <= n},
    )


@dataclass(frozen=True)
class TwoStage:
    """
    Пара двухклеточной цели Z → Z с приклеивающим отображением order.

    Attributes:
        order (int): Степень приклеивающего отображения
        couple (ExactCouple): Пара второй страницы
        target (FormalSpectrum): Цель em(Z/order, 0)
    """

    order: int
    couple: ExactCouple
    target: FormalSpectrum = field(repr=False)


def two_stage_couple(
    order: int = 2,
    p_range: Tuple[int, int] = (-2, 4),
    q_range: Tuple[int, int] = (-3, 0),
) -> TwoStage:
    """
    Пара фильтрации em(Z/order, 0) остовами над сферой.

    E_2 содержит Z в (0, -1) и (2, -2), d_2 между ними это ±order,
    поэтому E_3^{2,-2} = Z/order, а E_3^{0,-1} = 0.
    """
    V = em_spectrum(FGAbelianGroup.cyclic(order), 0)
    X = constant(sphere(0), 2, "S^0")
    couple = filtered_couple(
        X,
        lambda q: skeleton(V, q + 1),
        lambda q: skeletal_inclusion(V, q + 1),
        p_range,
        q_range,
        f"остовы {V.name}".strip(),
    )
    return TwoStage(order, couple, V)

"""
Модуль длинных точных последовательностей про-групп гомотопий.

Включает в себя:
- ExactnessCheck: проверка точности в одном члене на одном уровне
- LongExactSequence: последовательность отображений про-групп и отчет
- ExactSequences: поуровневые конусы и слои с проверкой точности
- cofiber_les / fiber_les: точки входа
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from app.core.exceptions import TailMismatchError
from app.schemas.v1.verdicts import SequenceKind
from app.services.v1.abelian import GroupHom, IntMatrix, is_exact_at, unit_vector
from app.services.v1.base import WindowedService
from app.services.v1.complexes import (ChainMap, Cone, Fiber, FormalSpectrum,
                                       cone, cone_map, degree_span, fiber,
                                       fiber_map, homology_module, induced_map,
                                       shift)
from app.services.v1.procat import (SPECTRA, FactorizationSearch, ProMap,
                                    Tower)

from .homotopy import (as_level_map, homotopy_map, pro_homotopy_group,
                       shift_pro)


def regrade(X: FormalSpectrum, m: int, k: int) -> GroupHom:
    """
    Канонический изоморфизм H_k(X) → H_{k+m}(Σ^m X): циклы те же, меняется
    только степень и знак дифференциала.
    """
    source = homology_module(X, k)
    target = homology_module(shift(X, m), k + m)
    n = source.group.generators
    columns = [
        target.class_of(source.representative(unit_vector(n, j))) for j in range(n)
    ]
    return GroupHom(
        source.group,
        target.group,
        IntMatrix.from_columns(columns, target.group.generators),
    )


@dataclass(frozen=True)
class ExactnessCheck:
    """
    Точность A → B → C в среднем члене на уровне s.

    Attributes:
        level (int): Уровень s
        term (str): Средний член, например "π_2 Y"
        exact (bool): im = ker
    """

    level: int
    term: str
    exact: bool

    def to_dict(self) -> dict:
        return {"level": self.level, "term": self.term, "exact": self.exact}


@dataclass(frozen=True)
class LongExactSequence:
    """
    Длинная точная последовательность про-групп гомотопий.

    Attributes:
        kind (SequenceKind): Конус или слой
        third (Tower): Поуровневый C(f_s) или F(f_s)
        degrees (Tuple[int, int]): Отрезок степеней
        maps (Tuple[ProMap, ...]): Отображения в порядке последовательности,
            от старших степеней к младшим
        checks (Tuple[ExactnessCheck, ...]): Проверки точности в окне
    """

    kind: SequenceKind
    third: Tower
    degrees: Tuple[int, int]
    maps: Tuple[ProMap, ...]
    checks: Tuple[ExactnessCheck, ...]

    @property
    def exact(self) -> bool:
        return all(check.exact for check in self.checks)

    @property
    def failures(self) -> List[ExactnessCheck]:
        return [check for check in self.checks if not check.exact]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "third": self.third.name,
            "degrees": list(self.degrees),
            "maps": [f.name for f in self.maps],
            "exact": self.exact,
            "checked": len(self.checks),
            "failures": [check.to_dict() for check in self.failures],
        }


class ExactSequences(WindowedService):
    """
    Длинные точные последовательности поуровневых конусов и слоев.

    Конус и слой строятся поуровнево, поэтому последовательность про-групп
    точна, если точны последовательности уровней; это и проверяется в окне.
    """

    def __init__(self, window: Optional[int] = None):
        super().__init__(window)
        self.isomorphisms = FactorizationSearch(window)

    def _third_tower(
        self,
        f: ProMap,
        level: Callable[[int], FormalSpectrum],
        bond: Callable[[ChainMap, ChainMap, ChainMap, ChainMap], ChainMap],
        name: str,
    ) -> Tower:
        def bonds(s: int) -> ChainMap:
            return bond(
                f.component(s + 1),
                f.component(s),
                f.source.bond(s),
                f.target.bond(s),
            )

        plan = self.isomorphisms.tail_plan(f)
        # при нечетном сдвиге C(Σ^m f) отличается от Σ^m C(f) знаком блока f
        if plan is not None and (plan.exhaustive or plan.shift % 2 == 0):
            tail = plan.rule()
            try:
                return Tower(
                    SPECTRA, level, bonds, max(f.window, tail.base_end), tail, name
                )
            except TailMismatchError:
                self.logger.debug("хвост %s не подтвердился", name)
        return Tower(SPECTRA, level, bonds, f.window, None, name)

    def _degrees(self, f: ProMap, top: int) -> Tuple[int, int]:
        spans = [
            degree_span(f.source.level(s), f.target.level(s)) for s in range(top + 1)
        ]
        spans = [span for span in spans if len(span)]
        if not spans:
            return 0, 0
        return min(span.start for span in spans), max(span.stop for span in spans)

    def _checks(
        self, maps: List[ProMap], top: int, terms: List[str]
    ) -> Tuple[ExactnessCheck, ...]:
        checks = []
        for s in range(top + 1):
            for (a, b), term in zip(zip(maps, maps[1:]), terms):
                exact = is_exact_at(a.component(s), b.component(s))
                checks.append(ExactnessCheck(s, term, exact))
        return tuple(checks)

    def cofiber_les(self, f: ProMap) -> LongExactSequence:
        """
        ⋯ → π_k X → π_k Y → π_k C(f) → π_{k-1} X → ⋯ поуровнево.

        Args:
            f: Морфизм про-спектров (переиндексация переносится в источник)

        Returns:
            LongExactSequence с проверками точности на уровнях окна
        """
        f = as_level_map(f)
        cones: Dict[int, Cone] = {}

        def cone_at(s: int) -> Cone:
            if s not in cones:
                cones[s] = cone(f.component(s))
            return cones[s]

        C = self._third_tower(
            f, lambda s: cone_at(s).spectrum, cone_map, f"C({f.name})"
        )
        inclusion = ProMap(
            f.target, C, lambda s: cone_at(s).inclusion, name="i", check=False
        )
        projection = ProMap(
            C,
            shift_pro(f.source, 1),
            lambda s: cone_at(s).projection,
            name="p",
            check=False,
        )
        top = min(f.window, C.window, self.window)
        low, high = self._degrees(f, top)

        def connecting(k: int) -> ProMap:
            return ProMap(
                pro_homotopy_group(C, k),
                pro_homotopy_group(f.source, k - 1),
                lambda s: regrade(f.source.level(s), 1, k - 1).inverse()
                @ induced_map(projection.component(s), k),
                name=f"∂_{k}",
                check=False,
            )

        maps: List[ProMap] = []
        terms: List[str] = []
        for k in range(high, low - 1, -1):
            maps += [homotopy_map(f, k), homotopy_map(inclusion, k), connecting(k)]
            terms += [f"π_{k} Y", f"π_{k} C", f"π_{k - 1} X"]
        sequence = LongExactSequence(
            SequenceKind.COFIBER,
            C,
            (low, high),
            tuple(maps),
            self._checks(maps, top, terms),
        )
        self._report(sequence)
        return sequence

    def fiber_les(self, f: ProMap) -> LongExactSequence:
        """
        ⋯ → π_k F(f) → π_k X → π_k Y → π_{k-1} F(f) → ⋯ поуровнево.
        """
        f = as_level_map(f)
        fibers: Dict[int, Fiber] = {}

        def fiber_at(s: int) -> Fiber:
            if s not in fibers:
                fibers[s] = fiber(f.component(s))
            return fibers[s]

        F = self._third_tower(
            f, lambda s: fiber_at(s).spectrum, fiber_map, f"F({f.name})"
        )
        projection = ProMap(
            F, f.source, lambda s: fiber_at(s).projection, name="q", check=False
        )
        loops = ProMap(
            shift_pro(f.target, -1),
            F,
            lambda s: fiber_at(s).inclusion,
            name="j",
            check=False,
        )
        top = min(f.window, F.window, self.window)
        low, high = self._degrees(f, top)

        def connecting(k: int) -> ProMap:
            return ProMap(
                pro_homotopy_group(f.target, k),
                pro_homotopy_group(F, k - 1),
                lambda s: induced_map(loops.component(s), k - 1)
                @ regrade(f.target.level(s), -1, k),
                name=f"∂_{k}",
                check=False,
            )

        maps: List[ProMap] = []
        terms: List[str] = []
        for k in range(high, low - 1, -1):
            maps += [homotopy_map(projection, k), homotopy_map(f, k), connecting(k)]
            terms += [f"π_{k} X", f"π_{k} Y", f"π_{k - 1} F"]
        sequence = LongExactSequence(
            SequenceKind.FIBER,
            F,
            (low, high),
            tuple(maps),
            self._checks(maps, top, terms),
        )
        self._report(sequence)
        return sequence

    def _report(self, sequence: LongExactSequence) -> None:
        if sequence.exact:
            self.logger.info(
                "✅ %s: точность в %s членах", sequence.kind.value, len(sequence.checks)
            )
        else:
            self.logger.warning(
                "❌ %s: точность нарушена в %s", sequence.kind.value, sequence.failures
            )


def cofiber_les(f: ProMap, window: Optional[int] = None) -> LongExactSequence:
    return ExactSequences(window).cofiber_les(f)


def fiber_les(f: ProMap, window: Optional[int] = None) -> LongExactSequence:
    return ExactSequences(window).fiber_les(f)

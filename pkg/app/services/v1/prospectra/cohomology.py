"""
Модуль гомотопических классов про-отображений и обычных когомологий.

Включает в себя:
- maps_to_constant: [X, Y]^r = colim_s [X_s, Y]^r для ограниченной сверху Y
- ProMapsResult / pro_maps: [X, Y]^r через постниковскую замену и
  последовательность Милнора
- ordinary_cohomology / cohomology_map: H^r(X; A) и индуцированные отображения
- WhiteheadReport / whitehead_check: сверка слабой эквивалентности с
  изоморфизмом когомологий
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from app.core.config import config
from app.core.exceptions import NotBoundedAboveError
from app.schemas.v1.verdicts import Lim1Status, Scope, Verdict
from app.services.v1.abelian import (Colimit, ColimClass, FGAbelianGroup,
                                     GroupHom, IntMatrix, Lim1Result,
                                     unit_vector)
from app.services.v1.base import WindowedService
from app.services.v1.complexes import (FormalSpectrum, em_spectrum,
                                       homotopy_module, shift, shift_map)
from app.services.v1.procat import ProMap, Tower, hom_colimit, pro_hom

from .builtins import PeriodicFamily
from .equivalences import (NEquivalenceCertificate, WeakEqCertificate,
                           WeakEquivalenceSearch)
from .homotopy import as_level_map, shift_pro
from .postnikov import postnikov_replacement

logger = logging.getLogger(__name__)


def _bounded_target(Y: Union[FormalSpectrum, PeriodicFamily]) -> FormalSpectrum:
    if isinstance(Y, PeriodicFamily):
        if not Y.is_bounded_above():
            raise NotBoundedAboveError(Y.name)
        return FormalSpectrum.zero()
    return Y


def maps_to_constant(
    X: Tower, Y: Union[FormalSpectrum, PeriodicFamily], r: int = 0
) -> Colimit:
    """
    [X, Y]^r_pro для постоянной цели: colim_s [X_s, Y]^r.

    Формула верна только для ограниченной сверху цели; неусеченное
    периодическое семейство отвергается.

    Args:
        X: Про-спектр
        Y: Ограниченный сверху спектр
        r: Степень

    Returns:
        Colimit: ленивый копредел (group может быть None)

    Raises:
        NotBoundedAboveError: Y не ограничен сверху

    Example:
        >>> from app.services.v1.complexes import cpn
        >>> from app.services.v1.procat import constant
        >>> HZ = em_spectrum(FGAbelianGroup.free(1), 0)
        >>> maps_to_constant(constant(cpn(2)), HZ, 0).group.describe()
        'Z'
    """
    target = _bounded_target(Y)
    colimit = hom_colimit(shift_pro(X, -r), target)
    logger.debug(
        "colim [%s, %s]^%s: %s",
        X.name,
        target.name,
        r,
        "?" if colimit.group is None else colimit.group.describe(),
    )
    return colimit


@dataclass(frozen=True)
class ProMapsResult:
    """
    Группа [X, Y]^r_pro с препятствием lim¹.

    Attributes:
        group (Optional[FGAbelianGroup]): lim_m [X, PY_m]^r
        scope (Scope): Чем закрыто вычисление предела
        lim1 (Lim1Status): lim¹ башни [X, PY_m]^{r-1}
        certificate (str): Описание
    """

    group: Optional[FGAbelianGroup]
    scope: Scope
    lim1: Lim1Status
    certificate: str
    obstruction: Optional[Lim1Result] = field(default=None, repr=False)

    @property
    def determined(self) -> bool:
        """
        Предел равен [X, Y]^r_pro, когда lim¹ нулевой.
        """
        return self.group is not None and self.lim1 == Lim1Status.ZERO

    def to_dict(self) -> dict:
        return {
            "group": None if self.group is None else self.group.describe(),
            "scope": self.scope.value,
            "lim1": self.lim1.value,
            "determined": self.determined,
            "certificate": self.certificate,
        }


def pro_maps(X: Tower, Y: Tower, r: int = 0) -> ProMapsResult:
    """
    [X, Y]^r_pro по последовательности Милнора для постниковской замены Y.

    0 → lim¹ [X, PY_m]^{r-1} → [X, Y]^r → lim [X, PY_m]^r → 0;
    ненулевой lim¹ сообщается как неразрешенное расширение.

    Example:
        >>> from app.services.v1.prospectra.builtins import counterexample, ku
        >>> pro_maps(counterexample(), ku(), 0).group.describe()
        '0'
    """
    PY = postnikov_replacement(Y).tower
    main = pro_hom(shift_pro(X, -r), PY)
    below = pro_hom(shift_pro(X, -(r - 1)), PY)
    lim1 = below.lim1.status if below.lim1 is not None else Lim1Status.UNKNOWN
    result = ProMapsResult(
        main.group, main.scope, lim1, main.certificate, below.lim1
    )
    if main.group is not None:
        logger.info(
            "✅ [%s, %s]^%s = %s, lim¹: %s",
            X.name,
            Y.name,
            r,
            main.group.describe(),
            lim1.value,
        )
    else:
        logger.info("❓ [%s, %s]^%s: %s", X.name, Y.name, r, main.certificate)
    return result


def ordinary_cohomology(X: Tower, A: FGAbelianGroup, r: int) -> Colimit:
    """
    H^r(X; A) = colim_s H^r(X_s; A) = colim_s [X_s, HA]^r.

    Example:
        >>> from app.services.v1.prospectra.builtins import counterexample
        >>> Z = FGAbelianGroup.free(1)
        >>> ordinary_cohomology(counterexample(), Z, 4).group.describe()
        '0'
    """
    return maps_to_constant(X, em_spectrum(A, 0), r)


class CohomologyMap(NamedTuple):
    """
    f^*: H^r(Y; A) → H^r(X; A).

    Attributes:
        source (Colimit): H^r(Y; A)
        target (Colimit): H^r(X; A)
        hom (Optional[GroupHom]): Отображение, если обе группы вычислены
    """

    source: Colimit
    target: Colimit
    hom: Optional[GroupHom]


def cohomology_map(f: ProMap, A: FGAbelianGroup, r: int) -> CohomologyMap:
    """
    Отображение когомологий, индуцированное морфизмом f: X → Y.

    Класс уровня t в H^r(Y; A) переходит в класс φ ∘ Σ^{-r} f_t уровня t.
    """
    f = as_level_map(f)
    HA = em_spectrum(A, 0)
    on_target = ordinary_cohomology(f.target, A, r)
    on_source = ordinary_cohomology(f.source, A, r)
    if on_target.group is None or on_source.group is None:
        return CohomologyMap(on_target, on_source, None)
    n = on_target.group.generators
    columns = []
    for i in range(n):
        cls = on_target.representative(unit_vector(n, i))
        module = homotopy_module(shift(f.target.level(cls.level), -r), HA, 0)
        _, pullback = module.precompose(shift_map(f.component(cls.level), -r))
        image = ColimClass(cls.level, pullback.apply(cls.element))
        columns.append(on_source.coordinates(image))
    hom = GroupHom(
        on_target.group,
        on_source.group,
        IntMatrix.from_columns(columns, on_source.group.generators),
    )
    return CohomologyMap(on_target, on_source, hom)


@dataclass(frozen=True)
class WhiteheadReport:
    """
    Сверка π*-слабой эквивалентности с изоморфизмом когомологий.

    Attributes:
        hypothesis (NEquivalenceCertificate): f существенно поуровнево
            n-эквивалентность для некоторого n
        weak_equivalence (Optional[WeakEqCertificate]): Итог по гомотопии
        cohomology (Dict[Tuple[str, int], Optional[bool]]): (A, r) ↦
            изоморфизм ли f^* (None, если не вычислено)
        cohomology_verdict (Verdict): Итог по когомологиям
        agreement (Optional[bool]): Совпадают ли решенные итоги
    """

    hypothesis: NEquivalenceCertificate
    weak_equivalence: Optional[WeakEqCertificate]
    cohomology: Dict[Tuple[str, int], Optional[bool]]
    cohomology_verdict: Verdict
    agreement: Optional[bool]

    def to_dict(self) -> dict:
        return {
            "hypothesis": self.hypothesis.to_dict(),
            "weak_equivalence": (
                None
                if self.weak_equivalence is None
                else self.weak_equivalence.verdict.value
            ),
            "cohomology": {
                f"H^{r}(-; {A})": value for (A, r), value in self.cohomology.items()
            },
            "cohomology_verdict": self.cohomology_verdict.value,
            "agreement": self.agreement,
        }


class WhiteheadCheck(WindowedService):
    """
    Теорема Уайтхеда для про-спектров как проверка реализации: при
    выполненной гипотезе слабая эквивалентность равносильна изоморфизму
    когомологий со всеми коэффициентами.
    """

    def __init__(self, window: Optional[int] = None):
        super().__init__(window)
        self.search = WeakEquivalenceSearch(window)

    def hypothesis(
        self, f: ProMap, n: Optional[int] = None
    ) -> NEquivalenceCertificate:
        """
        Первое n (заданное или из отрезка конфигурации), для которого f
        существенно поуровнево n-эквивалентность.
        """
        low, high = config.n_bounds
        candidates = [n] if n is not None else range(low, high + 1)
        certificate = None
        for candidate in candidates:
            certificate = self.search.ess_levelwise_n_equivalence(f, candidate)
            if certificate.verdict == Verdict.CERTIFIED:
                break
        return certificate

    def check(
        self,
        f: ProMap,
        coefficients: Sequence[FGAbelianGroup],
        n: Optional[int] = None,
        degrees: Optional[Tuple[int, int]] = None,
    ) -> WhiteheadReport:
        """
        Args:
            f: Морфизм про-спектров
            coefficients: Выборка групп коэффициентов
            n: Степень гипотезы (по умолчанию первое подходящее)
            degrees: Отрезок r для H^r (по умолчанию отрезок n из конфигурации)

        Returns:
            WhiteheadReport
        """
        hypothesis = self.hypothesis(f, n)
        if hypothesis.verdict != Verdict.CERTIFIED:
            self.logger.warning("❓ гипотеза не проверена в окне %s", self.window)
            return WhiteheadReport(hypothesis, None, {}, Verdict.UNKNOWN, None)

        weak = self.search.is_pi_weak_equivalence(f)
        low, high = degrees or config.n_bounds
        isomorphisms: Dict[Tuple[str, int], Optional[bool]] = {}
        for A in coefficients:
            for r in range(low, high + 1):
                induced = cohomology_map(f, A, r).hom
                isomorphisms[(A.describe(), r)] = (
                    None if induced is None else induced.is_isomorphism()
                )
        verdict = self._cohomology_verdict(list(isomorphisms.values()), coefficients)

        agreement = None
        if weak.verdict != Verdict.UNKNOWN and verdict != Verdict.UNKNOWN:
            agreement = weak.verdict == verdict
            if not agreement:
                self.logger.error(
                    "❌ расхождение: слабая эквивалентность %s, когомологии %s",
                    weak.verdict.value,
                    verdict.value,
                )
        return WhiteheadReport(hypothesis, weak, isomorphisms, verdict, agreement)

    @staticmethod
    def _cohomology_verdict(
        values: List[Optional[bool]], coefficients: Sequence[FGAbelianGroup]
    ) -> Verdict:
        if any(value is False for value in values):
            return Verdict.REFUTED
        Z = FGAbelianGroup.free(1)
        integral = any(A.same_presentation(Z) for A in coefficients)
        if values and all(values) and integral:
            return Verdict.CERTIFIED
        return Verdict.UNKNOWN


def whitehead_check(
    f: ProMap,
    coefficients: Sequence[FGAbelianGroup],
    n: Optional[int] = None,
    window: Optional[int] = None,
) -> WhiteheadReport:
    return WhiteheadCheck(window).check(f, coefficients, n)

"""
Модуль π*-слабых эквивалентностей про-спектров.

Включает в себя:
- NEquivalenceCertificate: итог проверки существенно поуровневой n-эквивалентности
- WeakEqCertificate: итог проверки π*-слабой эквивалентности двумя маршрутами
- WeakEquivalenceSearch: поиск (тождественная переиндексация, кофинальный
  сдвиг, разложение через factor_n) и сверка маршрутов
- ess_levelwise_n_equivalence / is_pi_weak_equivalence: точки входа
"""

from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, NamedTuple, Optional, Tuple

from app.core.config import config
from app.core.exceptions import InvariantViolationError, TailMismatchError
from app.schemas.v1.verdicts import Scope, Verdict, WeqRoute, WeqStrategy
from app.services.v1.base import WindowedService
from app.services.v1.complexes import (Factorization, factor_n, factor_n_map,
                                       is_n_equivalence)
from app.services.v1.procat import (SPECTRA, FactorizationSearch,
                                    ProIsoCertificate, ProMap, TailPlan, Tower)

from .homotopy import as_level_map, homotopy_map


@dataclass(frozen=True)
class NEquivalenceCertificate:
    """
    Существенно поуровневая n-эквивалентность.

    Attributes:
        n (int): Степень
        verdict (Verdict): Итог
        scope (Scope): Чем закрыт итог
        strategy (Optional[WeqStrategy]): Сработавшая стратегия
        shift (int): Первый уровень c, с которого f_s n-эквивалентности
        levels (Tuple[int, ...]): Уровни, на которых проверена n-эквивалентность
        locus (Optional[int]): Уровень неудачи
        reason (str): Описание
        factorization (Optional[ProIsoCertificate]): Сертификат p для разложения
    """

    n: int
    verdict: Verdict
    scope: Scope
    strategy: Optional[WeqStrategy] = None
    shift: int = 0
    levels: Tuple[int, ...] = ()
    locus: Optional[int] = None
    reason: str = ""
    factorization: Optional[ProIsoCertificate] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "verdict": self.verdict.value,
            "scope": self.scope.value,
            "strategy": None if self.strategy is None else self.strategy.value,
            "shift": self.shift,
            "levels": list(self.levels),
            "locus": self.locus,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class WeakEqCertificate:
    """
    π*-слабая эквивалентность.

    Attributes:
        verdict (Verdict): Итог
        scope (Scope): Чем закрыт итог
        route (WeqRoute): Маршрут, давший итог
        levelwise (Tuple[NEquivalenceCertificate, ...]): Маршрут по определению
        homotopy (Dict[int, ProIsoCertificate]): π_k f по степеням
        homotopy_verdict (Verdict): Итог маршрута через про-группы
    """

    verdict: Verdict
    scope: Scope
    route: WeqRoute
    levelwise: Tuple[NEquivalenceCertificate, ...]
    homotopy: Dict[int, ProIsoCertificate]
    homotopy_verdict: Verdict

    @property
    def certified(self) -> bool:
        return self.verdict == Verdict.CERTIFIED

    def for_n(self, n: int) -> Optional[NEquivalenceCertificate]:
        for item in self.levelwise:
            if item.n == n:
                return item
        return None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "scope": self.scope.value,
            "route": self.route.value,
            "levelwise": [c.to_dict() for c in self.levelwise],
            "homotopy": {
                str(k): c.to_dict() for k, c in sorted(self.homotopy.items())
            },
            "homotopy_verdict": self.homotopy_verdict.value,
        }


class _Levelwise(NamedTuple):
    start: Optional[int]
    scope: Scope
    levels: Tuple[int, ...]
    locus: Optional[int]


def _meet(verdicts: List[Verdict]) -> Verdict:
    return reduce(Verdict.meet, verdicts, Verdict.CERTIFIED)


class WeakEquivalenceSearch(WindowedService):
    """
    Проверка π*-слабых эквивалентностей.

    Для каждого n по очереди пробуются тождественная переиндексация,
    кофинальные сдвиги s ↦ s + c (c ≤ shift_search) и разложение
    f_s = p_s ∘ i_s через factor_n с проверкой, что p про-изоморфизм.
    Опровержение берется только из инвариантов: π_k f не про-изоморфизм
    при k < n или π_n f не про-эпиморфизм на постоянном хвосте.
    """

    def __init__(
        self,
        window: Optional[int] = None,
        search_depth: Optional[int] = None,
        shift_search: Optional[int] = None,
    ):
        super().__init__(window, search_depth)
        self.shift_search = (
            config.shift_search if shift_search is None else shift_search
        )
        self.isomorphisms = FactorizationSearch(window, search_depth)

    def _passes(self, f: ProMap, s: int, n: int) -> bool:
        return is_n_equivalence(f.component(s), n)

    def _report(self, n: int, certificate: NEquivalenceCertificate) -> None:
        self.log_verdict(
            f"{n}-эквивалентность", certificate.verdict, certificate.scope
        )

    def _degree_floor(self, f: ProMap, s: int) -> Optional[int]:
        spans = [
            SPECTRA.degree_range(X)
            for X in (f.source.level(f.reindex(s)), f.target.level(s))
        ]
        spans = [span for span in spans if span is not None]
        return min(lo for lo, _ in spans) if spans else None

    def _degree_ceiling(self, f: ProMap, s: int) -> Optional[int]:
        spans = [
            SPECTRA.degree_range(X)
            for X in (f.source.level(f.reindex(s)), f.target.level(s))
        ]
        spans = [span for span in spans if span is not None]
        return max(hi for _, hi in spans) if spans else None

    def _tail_failures(
        self, f: ProMap, base: int, n: int, plan: TailPlan, passed: List[int]
    ) -> Tuple[bool, Optional[int]]:
        """
        Уровни base + j·p: (n-эквивалентности ли они с некоторого j,
        последний неудачный уровень).
        """
        if plan.shift == 0:
            if self._passes(f, base, n):
                passed.append(base)
                return True, None
            return False, base
        if plan.shift < 0:
            ceiling = self._degree_ceiling(f, base)
            if ceiling is None or self._passes(f, base, ceiling + 1):
                passed.append(base)
                return True, None
            return False, base
        floor = self._degree_floor(f, base)
        if floor is None:
            passed.append(base)
            return True, None
        # при n - j·m < floor гомологии f_{base+jp} выше n и тест выполнен
        bound = max((n - floor) // plan.shift + 1, 0)
        last = None
        for j in range(bound + 1):
            s = base + j * plan.period
            if self._passes(f, s, n):
                passed.append(s)
                return True, last
            last = s
        return True, last

    def levelwise_start(self, f: ProMap, n: int) -> _Levelwise:
        """
        Наименьшее c, для которого f_s n-эквивалентности при всех s ≥ c.
        """
        plan = self.isomorphisms.tail_plan(f)
        passed: List[int] = []
        if plan is None:
            top = min(f.window, self.window)
            failing = []
            for s in range(top + 1):
                if self._passes(f, s, n):
                    passed.append(s)
                else:
                    failing.append(s)
            start = failing[-1] + 1 if failing else 0
            if start > top:
                return _Levelwise(None, Scope.WINDOW, (), top)
            levels = tuple(s for s in passed if s >= start)
            return _Levelwise(start, Scope.WINDOW, levels, None)

        last = -1
        for s in range(plan.start):
            if self._passes(f, s, n):
                passed.append(s)
            else:
                last = s
        for base in range(plan.start, plan.start + plan.period):
            eventually, failure = self._tail_failures(f, base, n, plan, passed)
            if not eventually:
                return _Levelwise(None, Scope.TAIL, (), base)
            if failure is not None:
                last = max(last, failure)
        start = last + 1
        levels = tuple(sorted(s for s in passed if s >= start))
        return _Levelwise(start, Scope.TAIL, levels, None)

    def factorization_towers(
        self, f: ProMap, n: int
    ) -> Tuple[Tower, ProMap, ProMap]:
        """
        Башня Z_s = factor_n(f_s) с отображениями i: X → Z и p: Z → Y.
        """
        f = as_level_map(f)
        cache: Dict[int, Factorization] = {}

        def factor(s: int) -> Factorization:
            if s not in cache:
                cache[s] = factor_n(f.component(s), n)
            return cache[s]

        def bond(s: int):
            return factor_n_map(
                f.component(s + 1),
                f.component(s),
                f.source.bond(s),
                f.target.bond(s),
                n,
            )

        plan = self.isomorphisms.tail_plan(f)
        tail = None if plan is None or plan.shift else plan.rule()
        window = f.window if tail is None else max(f.window, tail.base_end)
        name = f"Z_{n}({f.name})"
        levels = lambda s: factor(s).spectrum  # noqa: E731
        try:
            Z = Tower(SPECTRA, levels, bond, window, tail, name)
        except TailMismatchError:
            self.logger.debug("хвост %s не подтвердился, окно без хвоста", name)
            tail = None
            Z = Tower(SPECTRA, levels, bond, f.window, None, name)
        inclusion = ProMap(
            f.source,
            Z,
            lambda s: factor(s).inclusion,
            tail=tail,
            name="i",
            check=False,
        )
        projection = ProMap(
            Z, f.target, lambda s: factor(s).projection, tail=tail, name="p"
        )
        return Z, inclusion, projection

    def _invariant_refutation(self, f: ProMap, n: int) -> Optional[str]:
        top = min(f.window, self.window)
        floors = [self._degree_floor(f, s) for s in range(top + 1)]
        floors = [lo for lo in floors if lo is not None]
        if not floors:
            return None
        for k in range(min(floors), n):
            certificate = self.isomorphisms.is_pro_isomorphism(homotopy_map(f, k))
            if certificate.verdict == Verdict.REFUTED:
                return f"π_{k} не про-изоморфизм: {certificate.reason}"
        on_n = homotopy_map(f, n)
        plan = self.isomorphisms.tail_plan(on_n)
        if plan is not None and plan.exhaustive:
            if not on_n.component(plan.start).is_surjective():
                return f"π_{n} не сюръективно на постоянном хвосте с {plan.start}"
        return None

    def ess_levelwise_n_equivalence(
        self, f: ProMap, n: int
    ) -> NEquivalenceCertificate:
        """
        Существенно поуровневая n-эквивалентность.

        Args:
            f: Морфизм про-спектров
            n: Степень

        Returns:
            NEquivalenceCertificate
        """
        levelwise = self.levelwise_start(f, n)
        if levelwise.start is not None and levelwise.start <= self.shift_search:
            start = levelwise.start
            certificate = NEquivalenceCertificate(
                n,
                Verdict.CERTIFIED,
                levelwise.scope,
                WeqStrategy.IDENTITY if start == 0 else WeqStrategy.SHIFT,
                start,
                levelwise.levels,
                reason=f"f_s являются {n}-эквивалентностями при s ≥ {start}",
            )
            self._report(n, certificate)
            return certificate

        _, inclusion, projection = self.factorization_towers(f, n)
        pro_iso = self.isomorphisms.is_pro_isomorphism(projection)
        if pro_iso.certified:
            levels = tuple(
                s
                for s in range(min(inclusion.window, self.window) + 1)
                if is_n_equivalence(inclusion.component(s), n)
            )
            certificate = NEquivalenceCertificate(
                n,
                Verdict.CERTIFIED,
                pro_iso.scope,
                WeqStrategy.FACTORIZATION,
                0,
                levels,
                reason="p: Z → Y про-изоморфизм, i поуровнево n-эквивалентность",
                factorization=pro_iso,
            )
        else:
            refutation = self._invariant_refutation(f, n)
            if refutation is not None:
                certificate = NEquivalenceCertificate(
                    n,
                    Verdict.REFUTED,
                    Scope.TAIL,
                    locus=levelwise.locus,
                    reason=refutation,
                    factorization=pro_iso,
                )
            else:
                certificate = NEquivalenceCertificate(
                    n,
                    Verdict.UNKNOWN,
                    Scope.WINDOW,
                    locus=levelwise.locus if pro_iso.locus is None else pro_iso.locus,
                    reason="ни одна стратегия не закрылась в окне",
                    factorization=pro_iso,
                )
        self._report(n, certificate)
        return certificate

    def _homotopy_route(
        self, f: ProMap, top_degree: int
    ) -> Dict[int, ProIsoCertificate]:
        window = min(f.window, self.window)
        floors = [self._degree_floor(f, s) for s in range(window + 1)]
        floors = [lo for lo in floors if lo is not None]
        low = min(floors + [top_degree])
        return {
            k: self.isomorphisms.is_pro_isomorphism(homotopy_map(f, k))
            for k in range(low, top_degree + 1)
        }

    def is_pi_weak_equivalence(
        self, f: ProMap, n_range: Optional[Tuple[int, int]] = None
    ) -> WeakEqCertificate:
        """
        π*-слабая эквивалентность по двум маршрутам.

        По определению: существенно поуровневые n-эквивалентности для всех
        n из n_range. Через про-группы: π_k f про-изоморфизмы для k до
        верхней границы n_range плюс одно n из первого маршрута.

        Raises:
            InvariantViolationError: Маршруты противоречат друг другу
        """
        low, high = n_range or config.n_bounds
        levelwise = tuple(
            self.ess_levelwise_n_equivalence(f, n) for n in range(low, high + 1)
        )
        verdict_a = _meet([c.verdict for c in levelwise])
        scope_a = reduce(Scope.meet, (c.scope for c in levelwise), Scope.TAIL)

        homotopy = self._homotopy_route(f, high)
        some_n = any(c.verdict == Verdict.CERTIFIED for c in levelwise)
        refuted = [k for k, c in homotopy.items() if c.verdict == Verdict.REFUTED]
        if refuted:
            verdict_b = Verdict.REFUTED
        elif some_n and all(c.certified for c in homotopy.values()):
            verdict_b = Verdict.CERTIFIED
        else:
            verdict_b = Verdict.UNKNOWN
        scope_b = reduce(Scope.meet, (c.scope for c in homotopy.values()), Scope.TAIL)

        if verdict_a == Verdict.CERTIFIED and any(k < high for k in refuted):
            raise InvariantViolationError(
                "маршруты слабой эквивалентности расходятся",
                {"levelwise": verdict_a.value, "refuted_degrees": refuted},
            )
        if verdict_a == Verdict.REFUTED and verdict_b == Verdict.CERTIFIED:
            raise InvariantViolationError(
                "маршруты слабой эквивалентности расходятся",
                {"levelwise": verdict_a.value, "homotopy": verdict_b.value},
            )

        if verdict_a != Verdict.UNKNOWN:
            verdict, scope, route = verdict_a, scope_a, WeqRoute.LEVELWISE
        else:
            verdict, scope, route = verdict_b, scope_b, WeqRoute.HOMOTOPY_GROUPS
        certificate = WeakEqCertificate(
            verdict, scope, route, levelwise, homotopy, verdict_b
        )
        self.log_verdict("is_pi_weak_equivalence", verdict, scope)
        return certificate


def ess_levelwise_n_equivalence(
    f: ProMap, n: int, window: Optional[int] = None
) -> NEquivalenceCertificate:
    return WeakEquivalenceSearch(window).ess_levelwise_n_equivalence(f, n)


def is_pi_weak_equivalence(
    f: ProMap,
    n_range: Optional[Tuple[int, int]] = None,
    window: Optional[int] = None,
) -> WeakEqCertificate:
    """
    Проверка π*-слабой эквивалентности.

    Example:
        >>> from app.services.v1.prospectra.builtins import counterexample
        >>> from app.services.v1.prospectra.homotopy import zero_map
        >>> is_pi_weak_equivalence(zero_map(counterexample())).verdict.value
        'certified'
    """
    return WeakEquivalenceSearch(window).is_pi_weak_equivalence(f, n_range)

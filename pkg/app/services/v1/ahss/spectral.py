"""
Модуль спектральной последовательности Атьи-Хирцебруха для про-спектров.

Включает в себя:
- SpectralSequence: построение точной пары по связным накрытиям цели,
  страницы E_r, сверка E_2 с обычными когомологиями
- ConvergenceReport / convergence_report: условия условной сходимости
- AbutmentReport / compare_abutment: сверка E_∞ и colim D с [X, Y]_pro
- Функции-обертки для каждой операции
"""

from dataclasses import dataclass, field
from functools import reduce
from math import prod
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from app.core.config import config
from app.core.exceptions import InvariantViolationError, NonConstantTargetError
from app.schemas.v1.verdicts import (ConvergenceVerdict, Lim1Status, Scope,
                                     TailKind, Verdict)
from app.services.v1.abelian import (FGAbelianGroup, GroupTower, TailRule,
                                     tower_lim, tower_lim1)
from app.services.v1.base import WindowedService
from app.services.v1.complexes import (FormalSpectrum, connected_cover,
                                       cover_inclusion, homology)
from app.services.v1.procat import SPECTRA, Tower
from app.services.v1.prospectra import (PeriodicFamily, WeakEquivalenceSearch,
                                        essentially_constant,
                                        ordinary_cohomology, pro_maps,
                                        zero_map)

from .couples import (ExactCouple, FilteredMaps, Page, Position, Window,
                      couple_of, derive)

Target = Union[Tower, PeriodicFamily]


def _as_tower(Y: Target) -> Tower:
    if isinstance(Y, PeriodicFamily):
        return Y.postnikov_tower()
    return Y


def stencil(r: int) -> Tuple[int, int]:
    """
    На сколько сжимается окно (по p, по q), пока пара доходит до страницы r.

    Example:
        >>> stencil(2), stencil(4)
        ((0, 0), (5, 3))
    """
    return sum(range(2, r)), sum(t - 1 for t in range(2, r))


def valid_window(window: Window, r: int) -> Optional[Window]:
    """
    Подокно, где E_r определена независимо от групп за окном.
    """
    dp, dq = stencil(r)
    p_lo, p_hi, q_lo, q_hi = window
    valid = (p_lo + dp, p_hi - dp, q_lo + dq, q_hi - dq)
    if valid[0] > valid[1] or valid[2] > valid[3]:
        return None
    return valid


class E2Check(NamedTuple):
    """
    Сверка E_2^{p,q} с H^p(X; π_{-q} Y).

    Attributes:
        position (Position): (p, q)
        group (Optional[FGAbelianGroup]): Элемент пары
        expected (Optional[FGAbelianGroup]): Обычные когомологии
    """

    position: Position
    group: Optional[FGAbelianGroup]
    expected: Optional[FGAbelianGroup]

    @property
    def matches(self) -> Optional[bool]:
        if self.group is None or self.expected is None:
            return None
        return self.group == self.expected


@dataclass(frozen=True)
class ConvergenceReport:
    """
    Условия условной сходимости.

    Attributes:
        lim_vanishes (Verdict): lim_q D^{n-q,q} = 0 при q → -∞ для всех n
        lim1_vanishes (Verdict): lim¹ того же
        cases (Dict[int, Verdict]): 1 для существенно поуровнево ограниченного
            снизу X, 2 для постоянной Y и n-эквивалентности * → X
        case (Optional[int]): Первый сертифицированный случай
        verdict (ConvergenceVerdict): Итог
        degrees (Tuple[int, int]): Проверенные n
        notes (Tuple[str, ...]): Пояснения
    """

    lim_vanishes: Verdict
    lim1_vanishes: Verdict
    cases: Dict[int, Verdict]
    case: Optional[int]
    verdict: ConvergenceVerdict
    degrees: Tuple[int, int]
    notes: Tuple[str, ...] = ()

    @property
    def convergent(self) -> bool:
        return self.verdict == ConvergenceVerdict.CONDITIONALLY_CONVERGENT

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "case": self.case,
            "cases": {str(c): v.value for c, v in sorted(self.cases.items())},
            "lim": self.lim_vanishes.value,
            "lim1": self.lim1_vanishes.value,
            "degrees": list(self.degrees),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class AbutmentReport:
    """
    Сверка предельного члена с [X, Y]^n_pro.

    Attributes:
        n (int): Полная степень
        oracle (Optional[FGAbelianGroup]): pro_maps(X, Y, n)
        colimit (Optional[FGAbelianGroup]): colim_q D^{n-q,q}
        diagonal (Dict[Position, Optional[FGAbelianGroup]]): E_∞ на p + q = n
        stabilized (bool): Последняя страница равна E_∞
        verdict (Verdict): CERTIFIED, если все сверки прошли
        notes (Tuple[str, ...]): Пояснения
    """

    n: int
    oracle: Optional[FGAbelianGroup]
    colimit: Optional[FGAbelianGroup]
    diagonal: Dict[Position, Optional[FGAbelianGroup]]
    stabilized: bool
    verdict: Verdict
    notes: Tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        def describe(group: Optional[FGAbelianGroup]) -> Optional[str]:
            return None if group is None else group.describe()

        return {
            "n": self.n,
            "oracle": describe(self.oracle),
            "colimit": describe(self.colimit),
            "diagonal": {
                f"{p},{q}": describe(group)
                for (p, q), group in sorted(self.diagonal.items())
                if group is None or not group.is_trivial()
            },
            "stabilized": self.stabilized,
            "verdict": self.verdict.value,
            "notes": list(self.notes),
        }


class SpectralSequence(WindowedService):
    """
    Спектральная последовательность [X, Y]_pro для существенно постоянной Y.

    Цель заменяется значением V постоянного хвоста; фильтрация
    B^q = V⟨-q⟩ дает D^{p,q} = [X, B^q]^{p+q} и
    E_2^{p,q} = [X, Σ^{-q} Hπ_{-q} V]^{p+q} = H^p(X; π_{-q} Y).

    Attributes:
        p_range (Tuple[int, int]): Окно по p
        q_range (Optional[Tuple[int, int]]): Окно по q; по умолчанию по
            носителю гомотопии V
    """

    def __init__(
        self,
        window: Optional[int] = None,
        p_range: Optional[Tuple[int, int]] = None,
        q_range: Optional[Tuple[int, int]] = None,
    ):
        super().__init__(window)
        self.p_range = p_range or config.p_bounds
        self.q_range = q_range
        self._filtrations: Dict[Tuple[Tower, FormalSpectrum], FilteredMaps] = {}
        self._values: Dict[Target, FormalSpectrum] = {}

    def target_value(self, Y: Target) -> FormalSpectrum:
        """
        Значение V существенно постоянной цели.

        Raises:
            NonConstantTargetError: Постоянство не сертифицировано
        """
        if Y not in self._values:
            tower = _as_tower(Y)
            value = essentially_constant(tower)
            if not value.certified:
                raise NonConstantTargetError(tower.name)
            self._values[Y] = value.value
        return self._values[Y]

    def q_window(self, V: FormalSpectrum) -> Tuple[int, int]:
        if self.q_range is not None:
            return self.q_range
        span = SPECTRA.degree_range(V)
        if span is None:
            return 0, 0
        lo, hi = span
        q_lo, q_hi = config.q_bounds
        return max(q_lo, -hi - 1), min(q_hi, -lo + 1)

    def filtration(self, X: Tower, V: FormalSpectrum) -> FilteredMaps:
        """
        Группы фильтрации B^q = V⟨-q⟩ над X, общие для страниц,
        отчета о сходимости и сверки предельного члена.
        """
        key = (X, V)
        if key not in self._filtrations:
            self._filtrations[key] = FilteredMaps(
                X,
                lambda q: connected_cover(V, -q).spectrum,
                lambda q: cover_inclusion(V, -q, -q - 1),
            )
        return self._filtrations[key]

    def build_exact_couple(
        self,
        X: Tower,
        Y: Target,
        p_range: Optional[Tuple[int, int]] = None,
        q_range: Optional[Tuple[int, int]] = None,
    ) -> ExactCouple:
        """
        Точная пара второй страницы.

        Args:
            X: Про-спектр источника
            Y: Существенно постоянная цель
            p_range: Окно по p (по умолчанию из сервиса)
            q_range: Окно по q (по умолчанию из сервиса)

        Returns:
            ExactCouple
        """
        V = self.target_value(Y)
        return couple_of(
            self.filtration(X, V),
            p_range or self.p_range,
            q_range or self.q_window(V),
            f"[{X.name}, {V.name}]",
        )

    def pages(
        self,
        X: Tower,
        Y: Target,
        r_max: Optional[int] = None,
        p_range: Optional[Tuple[int, int]] = None,
        q_range: Optional[Tuple[int, int]] = None,
    ) -> List[Page]:
        """
        Страницы E_2, ..., E_{r_max}.

        Example:
            >>> from app.services.v1.prospectra import counterexample, ku
            >>> ss = SpectralSequence(p_range=(0, 2))
            >>> pages = ss.pages(counterexample(2, 3), ku(2), r_max=2)
            >>> pages[0].groups.nonzero()
            {}
        """
        r_max = config.pages if r_max is None else r_max
        couple = self.build_exact_couple(X, Y, p_range, q_range)
        result = [couple.page_view()]
        while couple.page < r_max:
            couple = derive(couple)
            result.append(couple.page_view())
        self.logger.info(
            "📐 страницы 2..%s для [%s, %s]",
            couple.page,
            X.name,
            _as_tower(Y).name,
        )
        return result

    def e2_identification(
        self,
        X: Tower,
        Y: Target,
        p_range: Optional[Tuple[int, int]] = None,
        q_range: Optional[Tuple[int, int]] = None,
    ) -> List[E2Check]:
        """
        Сверка каждого определенного E_2^{p,q} с H^p(X; π_{-q} Y).

        Raises:
            InvariantViolationError: Группы расходятся
        """
        V = self.target_value(Y)
        couple = self.build_exact_couple(X, Y, p_range, q_range)
        checks = []
        for p, q in couple.E.positions:
            expected = ordinary_cohomology(X, homology(V, -q), p).group
            check = E2Check((p, q), couple.E[(p, q)], expected)
            if check.matches is False:
                raise InvariantViolationError(
                    f"E_2^{{{p},{q}}} = {check.group.describe()}, "
                    f"H^{p} = {expected.describe()}",
                    extra={"position": f"{p},{q}"},
                )
            checks.append(check)
        self.logger.info("✅ E_2 совпадает с когомологиями в %s позициях", len(checks))
        return checks

    def _d_tower(self, X: Tower, V: FormalSpectrum, n: int) -> Optional[GroupTower]:
        # D^{n-q,q} при q = q_top, q_top - 1, ...; B^q = 0 при q ≤ -hi(V)
        span = SPECTRA.degree_range(V)
        if span is None:
            return GroupTower((FGAbelianGroup.zero(),), (), TailRule.zero(0))
        lo, hi = span
        top = -lo + 1
        depth = hi - lo + 1
        maps = self.filtration(X, V)
        positions = [(n - (top - s), top - s) for s in range(depth + 1)]
        levels = tuple(maps.D(position).group for position in positions)
        if any(level is None for level in levels):
            return None
        bonds = tuple(maps.i(positions[s + 1]) for s in range(depth))
        return GroupTower(levels, bonds, TailRule.zero(depth))

    def _bounded_below(self, X: Tower) -> Tuple[Verdict, str]:
        tail = X.tail
        if tail is None:
            return Verdict.UNKNOWN, "нет хвоста X"
        if tail.kind != TailKind.PERIODIC_SHIFT or tail.shift >= 0:
            return Verdict.CERTIFIED, f"хвост X: {tail.kind.value}"
        return Verdict.UNKNOWN, "уровни X уходят вниз"

    def _connected_source(
        self, X: Tower, degrees: Tuple[int, int]
    ) -> Tuple[Verdict, str]:
        search = WeakEquivalenceSearch(self.window)
        low, high = degrees
        for n in range(high, low - 1, -1):
            certificate = search.ess_levelwise_n_equivalence(zero_map(X), n)
            if certificate.verdict == Verdict.CERTIFIED:
                return Verdict.CERTIFIED, f"* → X есть {n}-эквивалентность"
        return Verdict.UNKNOWN, "n-эквивалентность * → X не найдена"

    def convergence_report(
        self, X: Tower, Y: Target, n_range: Optional[Tuple[int, int]] = None
    ) -> ConvergenceReport:
        """
        Проверка условной сходимости.

        lim и lim¹ башни D^{n-q,q} по q → -∞ вычисляются для каждого n;
        затем проверяется один из двух случаев: X существенно поуровнево
        ограничен снизу или * → X существенно поуровневая n-эквивалентность
        (цель постоянна по построению).
        """
        V = self.target_value(Y)
        degrees = n_range or config.n_bounds
        lim_verdicts, lim1_verdicts = [], []
        for n in range(degrees[0], degrees[1] + 1):
            tower = self._d_tower(X, V, n)
            if tower is None:
                lim_verdicts.append(Verdict.UNKNOWN)
                lim1_verdicts.append(Verdict.UNKNOWN)
                continue
            lim = tower_lim(tower).group
            lim_verdicts.append(
                Verdict.UNKNOWN if lim is None else Verdict.of(lim.is_trivial())
            )
            status = tower_lim1(tower).status
            lim1_verdicts.append(
                Verdict.UNKNOWN
                if status == Lim1Status.UNKNOWN
                else Verdict.of(status == Lim1Status.ZERO)
            )
        lim_vanishes = reduce(Verdict.meet, lim_verdicts, Verdict.CERTIFIED)
        lim1_vanishes = reduce(Verdict.meet, lim1_verdicts, Verdict.CERTIFIED)

        first, first_note = self._bounded_below(X)
        second, second_note = self._connected_source(X, degrees)
        cases = {1: first, 2: second}
        case = next((c for c, v in cases.items() if v == Verdict.CERTIFIED), None)
        convergent = (
            case is not None
            and lim_vanishes == Verdict.CERTIFIED
            and lim1_vanishes == Verdict.CERTIFIED
        )
        verdict = (
            ConvergenceVerdict.CONDITIONALLY_CONVERGENT
            if convergent
            else ConvergenceVerdict.NOT_ESTABLISHED
        )
        report = ConvergenceReport(
            lim_vanishes,
            lim1_vanishes,
            cases,
            case,
            verdict,
            degrees,
            (first_note, second_note),
        )
        if convergent:
            self.logger.info("✅ сходимость: случай %s", case)
        else:
            self.logger.info("❓ сходимость не установлена: %s", report.to_dict())
        return report

    def compare_abutment(
        self, X: Tower, Y: Target, n: int = 0, r_max: Optional[int] = None
    ) -> AbutmentReport:
        """
        Сверка E_∞ на диагонали p + q = n и colim_q D с pro_maps(X, Y, n).

        Сравниваются ранги и, для конечных групп, порядки: расширения
        по фильтрации не восстанавливаются.

        Raises:
            InvariantViolationError: Сходящаяся последовательность расходится
                с независимым вычислением
        """
        r_max = config.pages if r_max is None else r_max
        V = self.target_value(Y)
        q_lo, q_hi = self.q_window(V)
        dp, dq = stencil(r_max)
        p_range = (n - q_hi - dp, n - q_lo + dp)
        q_range = (q_lo - dq, q_hi + dq)
        pages = self.pages(X, Y, r_max, p_range, q_range)
        last = pages[-1]
        diagonal = {
            position: group
            for position, group in last.groups.diagonal(n).items()
            if q_lo <= position[1] <= q_hi
        }
        oracle = pro_maps(X, _as_tower(Y), n)
        span = SPECTRA.degree_range(V)
        if span is None:
            colimit: Optional[FGAbelianGroup] = FGAbelianGroup.zero()
            width = 0
        else:
            # B^q = V при q > -lo(V)
            top = 1 - span[0]
            colimit = self.filtration(X, V).D((n - top, top)).group
            width = span[1] - span[0]
        support = pages[0].groups.nonzero()
        sparse = all(sum(position) % 2 == 0 for position in support)
        stabilized = last.degenerate and (sparse or last.r - 1 > width)

        notes = []
        convergence = self.convergence_report(X, Y, (n, n))
        if not convergence.convergent:
            notes.append("сходимость не установлена")
        if not stabilized:
            notes.append(f"E_{last.r} не сертифицирована как E_∞")
        if any(group is None for group in diagonal.values()):
            notes.append("диагональ E_∞ не определена целиком")
        if oracle.group is None or colimit is None:
            notes.append("[X, Y]^n не вычислена")
        if notes:
            report = AbutmentReport(
                n,
                oracle.group,
                colimit,
                diagonal,
                stabilized,
                Verdict.UNKNOWN,
                tuple(notes),
            )
            self.logger.info("❓ предельный член: %s", "; ".join(notes))
            return report

        if colimit != oracle.group:
            raise InvariantViolationError(
                f"colim D = {colimit.describe()}, "
                f"[X, Y]^{n} = {oracle.group.describe()}",
                extra={"n": n},
            )
        rank = sum(group.rank for group in diagonal.values())
        if rank != oracle.group.rank:
            raise InvariantViolationError(
                f"ранг E_∞ = {rank}, ранг [X, Y]^{n} = {oracle.group.rank}",
                extra={"n": n},
            )
        if rank == 0:
            orders = [group.order() for group in diagonal.values()]
            order = prod(orders)
            if order != oracle.group.order():
                raise InvariantViolationError(
                    f"порядок E_∞ = {order}, порядок [X, Y]^{n} = "
                    f"{oracle.group.order()}",
                    extra={"n": n},
                )
        self.log_verdict(
            f"предельный член в степени {n}", Verdict.CERTIFIED, Scope.TAIL
        )
        return AbutmentReport(
            n, oracle.group, colimit, diagonal, stabilized, Verdict.CERTIFIED
        )


def build_exact_couple(
    X: Tower,
    Y: Target,
    p_range: Optional[Tuple[int, int]] = None,
    q_range: Optional[Tuple[int, int]] = None,
) -> ExactCouple:
    return SpectralSequence(p_range=p_range, q_range=q_range).build_exact_couple(X, Y)


def pages(
    X: Tower,
    Y: Target,
    r_max: Optional[int] = None,
    p_range: Optional[Tuple[int, int]] = None,
    q_range: Optional[Tuple[int, int]] = None,
) -> List[Page]:
    return SpectralSequence(p_range=p_range, q_range=q_range).pages(X, Y, r_max)


def e2_identification(
    X: Tower,
    Y: Target,
    p_range: Optional[Tuple[int, int]] = None,
    q_range: Optional[Tuple[int, int]] = None,
) -> List[E2Check]:
    return SpectralSequence(p_range=p_range, q_range=q_range).e2_identification(X, Y)


def convergence_report(
    X: Tower, Y: Target, n_range: Optional[Tuple[int, int]] = None
) -> ConvergenceReport:
    """
    Условия условной сходимости.

    Example:
        >>> from app.services.v1.prospectra import counterexample, ku
        >>> report = convergence_report(counterexample(2, 3), ku(2), (0, 1))
        >>> report.verdict.value
        'conditionally-convergent'
    """
    return SpectralSequence().convergence_report(X, Y, n_range)


def compare_abutment(
    X: Tower,
    Y: Target,
    n: int = 0,
    r_max: Optional[int] = None,
    q_range: Optional[Tuple[int, int]] = None,
) -> AbutmentReport:
    return SpectralSequence(q_range=q_range).compare_abutment(X, Y, n, r_max)

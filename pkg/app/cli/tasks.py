"""
Модуль выполнения задач документа.

Включает в себя:
- TaskOutcome: вердикт, область и данные одной операции
- TaskRunner: выполнение задач, в том числе параллельное
- run: выполнение одной задачи экземпляра
"""

from concurrent.futures import ThreadPoolExecutor
from typing import List, NamedTuple, Optional, Tuple

from app.core.config import config
from app.core.exceptions import (BaseEngineException, InvariantViolationError,
                                 TaskError, WindowExhaustedError)
from app.schemas.v1.chart import ChartSchema
from app.schemas.v1.instance import TaskSchema
from app.schemas.v1.reports import (ResultDocSchema, TaskResultSchema,
                                    TaskStatus)
from app.schemas.v1.verdicts import Lim1Status, Scope, Verdict
from app.services.v1.abelian import tower_lim, tower_lim1
from app.services.v1.ahss import SpectralSequence
from app.services.v1.base import WindowedService
from app.services.v1.complexes import homology
from app.services.v1.procat import (GROUPS, Tower, as_group_tower,
                                    is_pro_isomorphism)
from app.services.v1.prospectra import (FORMAL_KU, cofiber_les,
                                        is_essentially_bounded_above,
                                        is_pi_weak_equivalence,
                                        naive_cohomology_colimit,
                                        ordinary_cohomology,
                                        pro_homotopy_group, pro_maps,
                                        whitehead_check)

from .charts import chart_of, check_chart
from .instance import FAMILIES, Instance

WHITEHEAD_COEFFICIENTS = ("Z", "Z/2", "Z/3")


class TaskOutcome(NamedTuple):
    """
    Итог операции.

    Attributes:
        verdict (Verdict): Вердикт
        scope (Scope): Чем закрыт вердикт
        result (dict): Данные для документа
        charts (Tuple[ChartSchema, ...]): Диаграммы страниц
    """

    verdict: Verdict
    scope: Scope
    result: dict
    charts: Tuple[ChartSchema, ...] = ()


def _scope_of(*towers: Tower) -> Scope:
    if all(tower.tail is not None for tower in towers):
        return Scope.TAIL
    return Scope.WINDOW


def _known(value: object) -> Verdict:
    return Verdict.UNKNOWN if value is None else Verdict.CERTIFIED


class TaskRunner(WindowedService):
    """
    Выполнение задач над экземпляром.

    Задачи независимы и могут выполняться параллельно; результаты
    упорядочены по номеру задачи, так что документ детерминирован.

    Attributes:
        p_range (Optional[Tuple[int, int]]): Окно по p для задач без своего
        q_range (Optional[Tuple[int, int]]): Окно по q для задач без своего
        pages (int): Последняя страница
        max_workers (int): Число потоков
    """

    def __init__(
        self,
        window: Optional[int] = None,
        p_range: Optional[Tuple[int, int]] = None,
        q_range: Optional[Tuple[int, int]] = None,
        pages: Optional[int] = None,
        max_workers: int = 1,
    ):
        super().__init__(window)
        self.p_range = p_range
        self.q_range = q_range
        self.pages = config.pages if pages is None else pages
        self.max_workers = max_workers

    def run(
        self, instance: Instance, index: int, task: TaskSchema
    ) -> TaskResultSchema:
        """
        Выполняет одну задачу.

        Args:
            instance: Экземпляр
            index: Номер задачи
            task: Запрос

        Returns:
            TaskResultSchema: Исчерпанное окно дает статус unknown, ошибка
            движка дает статус failed с контекстом операции

        Raises:
            InvariantViolationError: Расхождение независимых вычислений
        """
        op = task.op.value
        handler = getattr(self, f"_{op}")
        try:
            outcome = handler(instance, task)
        except InvariantViolationError:
            raise
        except WindowExhaustedError as e:
            self.logger.info("❓ задача %s %s: %s", index, op, e.detail)
            return TaskResultSchema(
                index=index,
                op=op,
                status=TaskStatus.UNKNOWN,
                verdict=Verdict.UNKNOWN.value,
                scope=Scope.WINDOW,
                error=e.to_dict(),
            )
        except BaseEngineException as e:
            self.logger.warning("❌ задача %s %s: %s", index, op, e.detail)
            return TaskResultSchema(
                index=index,
                op=op,
                status=TaskStatus.FAILED,
                error={"operation": op, **e.to_dict()},
            )
        status = (
            TaskStatus.UNKNOWN if outcome.verdict == Verdict.UNKNOWN else TaskStatus.OK
        )
        self.log_verdict(f"задача {index} {op}", outcome.verdict, outcome.scope)
        return TaskResultSchema(
            index=index,
            op=op,
            status=status,
            verdict=outcome.verdict.value,
            scope=outcome.scope,
            result=outcome.result,
            charts=list(outcome.charts),
        )

    def run_all(self, instance: Instance) -> ResultDocSchema:
        """
        Выполняет все задачи документа в порядке номеров.
        """
        with ThreadPoolExecutor(max_workers=max(self.max_workers, 1)) as pool:
            results: List[TaskResultSchema] = list(
                pool.map(
                    lambda item: self.run(instance, *item), enumerate(instance.tasks)
                )
            )
        return ResultDocSchema(
            engine=config.TITLE, version=config.VERSION, tasks=results
        )

    def _window(self, task: TaskSchema) -> int:
        return self.window if task.window is None else task.window

    def _sequence(self, task: TaskSchema) -> SpectralSequence:
        return SpectralSequence(
            self._window(task),
            task.p_range or self.p_range,
            task.q_range or self.q_range,
        )

    def _homology(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        X = instance.spectrum(task.spectrum)
        groups = {str(k): homology(X, k).describe() for k in X.degrees}
        return TaskOutcome(Verdict.CERTIFIED, Scope.WINDOW, {"homology": groups})

    def _lim(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        T = instance.tower(task.source)
        if T.theory is not GROUPS:
            T = pro_homotopy_group(T, task.degree)
        tower = as_group_tower(T)
        lim, lim1 = tower_lim(tower), tower_lim1(tower)
        verdict = _known(lim.group).meet(
            Verdict.UNKNOWN if lim1.status == Lim1Status.UNKNOWN else Verdict.CERTIFIED
        )
        return TaskOutcome(
            verdict,
            lim.scope.meet(lim1.scope),
            {"lim": lim.to_dict(), "lim1": lim1.to_dict()},
        )

    def _proiso(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        certificate = is_pro_isomorphism(instance.map(task.map), self._window(task))
        return TaskOutcome(
            certificate.verdict, certificate.scope, certificate.to_dict()
        )

    def _weq(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        certificate = is_pi_weak_equivalence(
            instance.map(task.map), task.n_range, self._window(task)
        )
        return TaskOutcome(
            certificate.verdict, certificate.scope, certificate.to_dict()
        )

    def _les(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        sequence = cofiber_les(instance.map(task.map), self._window(task))
        return TaskOutcome(
            Verdict.of(sequence.exact), Scope.WINDOW, sequence.to_dict()
        )

    def _promaps(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        X, Y = instance.tower(task.source), instance.tower(task.target)
        result = pro_maps(X, Y, task.degree)
        verdict = Verdict.CERTIFIED if result.determined else Verdict.UNKNOWN
        return TaskOutcome(verdict, result.scope, result.to_dict())

    def _cohomology(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        name = task.coefficients[0] if task.coefficients else "Z"
        colimit = ordinary_cohomology(
            instance.tower(task.source), instance.group(name), task.degree
        )
        group = colimit.group
        return TaskOutcome(
            _known(group),
            colimit.scope,
            {
                "coefficients": name,
                "degree": task.degree,
                "group": None if group is None else group.describe(),
            },
        )

    def _naive(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        name = task.target or FORMAL_KU.name
        if name not in FAMILIES:
            raise TaskError("naive", f"нет периодического семейства {name!r}")
        colimit = naive_cohomology_colimit(FAMILIES[name], task.degree)
        return TaskOutcome(Verdict.of(colimit.nonzero), Scope.TAIL, colimit.to_dict())

    def _bounded(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        report = is_essentially_bounded_above(
            instance.target(task.source), self._window(task)
        )
        return TaskOutcome(report.verdict, report.scope, report.to_dict())

    def _convergence(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        X = instance.tower(task.source)
        report = self._sequence(task).convergence_report(
            X, instance.target(task.target), task.n_range
        )
        verdict = Verdict.CERTIFIED if report.convergent else Verdict.UNKNOWN
        return TaskOutcome(verdict, _scope_of(X), report.to_dict())

    def _abutment(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        X = instance.tower(task.source)
        report = self._sequence(task).compare_abutment(
            X, instance.target(task.target), task.degree, task.pages or self.pages
        )
        return TaskOutcome(report.verdict, _scope_of(X), report.to_dict())

    def _whitehead(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        names = task.coefficients or list(WHITEHEAD_COEFFICIENTS)
        report = whitehead_check(
            instance.map(task.map),
            [instance.group(name) for name in names],
            None,
            self._window(task),
        )
        verdict = (
            Verdict.UNKNOWN
            if report.agreement is None
            else Verdict.of(report.agreement)
        )
        return TaskOutcome(verdict, report.hypothesis.scope, report.to_dict())

    def _ahss(self, instance: Instance, task: TaskSchema) -> TaskOutcome:
        X, Y = instance.tower(task.source), instance.target(task.target)
        sequence = self._sequence(task)
        pages = sequence.pages(X, Y, task.pages or self.pages)
        report = sequence.convergence_report(X, Y, task.n_range)
        banner = report.verdict.value
        if report.case is not None:
            banner += f" (case {report.case})"
        charts = []
        for page in pages:
            chart = chart_of(page, banner)
            check_chart(chart, page)
            charts.append(chart)
        verdict = Verdict.CERTIFIED if report.convergent else Verdict.UNKNOWN
        return TaskOutcome(
            verdict,
            _scope_of(X),
            {
                "pages": [page.to_dict() for page in pages],
                "convergence": report.to_dict(),
            },
            tuple(charts),
        )


def run(instance: Instance, task: TaskSchema, index: int = 0) -> TaskResultSchema:
    """
    Выполнение одной задачи с настройками по умолчанию.

    Example:
        >>> from app.schemas.v1.instance import TaskName
        >>> result = run(Instance(), TaskSchema(op=TaskName.NAIVE, target="KU"))
        >>> result.verdict
        'certified'
    """
    return TaskRunner().run(instance, index, task)

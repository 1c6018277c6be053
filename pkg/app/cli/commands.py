"""
Модуль командной строки prospec.

Включает в себя:
- build_parser: разбор аргументов с кодом 1 при ошибке вызова
- task_from_args: задача из операндов и флагов
- execute: выполнение команды и выбор кода завершения

Форма вызова:
    prospec <task> [операнды] --input FILE --window N --qrange=A:B
        --pages R --format text|svg --out FILE [--strict]

Отрицательные отрезки передаются через "=": --qrange=-3:3.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from pydantic import ValidationError

from app.core.config import config
from app.core.exceptions import (BaseEngineException, InstanceParseError,
                                 InvariantViolationError, UsageError)
from app.core.logging import setup_logging
from app.schemas.v1.chart import ChartFormat
from app.schemas.v1.instance import TaskName, TaskSchema
from app.schemas.v1.reports import ResultDocSchema

from .charts import render_svg, render_text
from .instance import Instance, builtin_document, parse, serialize
from .tasks import TaskRunner

logger = logging.getLogger(__name__)

OPERANDS = {
    TaskName.HOMOLOGY: ("spectrum",),
    TaskName.LIM: ("source",),
    TaskName.COHOMOLOGY: ("source",),
    TaskName.BOUNDED: ("source",),
    TaskName.PROISO: ("map",),
    TaskName.WEQ: ("map",),
    TaskName.LES: ("map",),
    TaskName.WHITEHEAD: ("map",),
    TaskName.PROMAPS: ("source", "target"),
    TaskName.CONVERGENCE: ("source", "target"),
    TaskName.ABUTMENT: ("source", "target"),
    TaskName.AHSS: ("source", "target"),
    TaskName.NAIVE: ("target",),
}

COMMANDS = ("parse", "run", *(name.value for name in TaskName))


class EngineArgumentParser(argparse.ArgumentParser):
    """
    ArgumentParser, который не завершает процесс сам.
    """

    def error(self, message: str):
        raise UsageError(message)


def _range(text: str) -> Tuple[int, int]:
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидается A:B, получено {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"пустой отрезок {text!r}")
    return lo, hi


def build_parser() -> EngineArgumentParser:
    parser = EngineArgumentParser(
        prog=config.TITLE,
        description=config.DESCRIPTION,
    )
    parser.add_argument("task", choices=COMMANDS, help="Операция")
    parser.add_argument("operands", nargs="*", help="Имена объектов операции")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--input", help="Документ экземпляра (- для stdin)")
    source.add_argument(
        "--builtin", help="Встроенный документ: counterexample, cp<N>"
    )
    parser.add_argument("--window", type=int, help="Окно башен")
    parser.add_argument("--prange", type=_range, help="Окно по p, A:B")
    parser.add_argument("--qrange", type=_range, help="Окно по q, A:B")
    parser.add_argument("--nrange", type=_range, help="Степени n, A:B")
    parser.add_argument("--degree", type=int, default=0, help="Степень r или n")
    parser.add_argument("--pages", type=int, help="Последняя страница")
    parser.add_argument(
        "--coefficients", default="", help="Группы коэффициентов через запятую"
    )
    parser.add_argument(
        "--format",
        choices=[fmt.value for fmt in ChartFormat],
        default=ChartFormat.TEXT.value,
        help="Формат диаграмм",
    )
    parser.add_argument("--out", help="Файл документа результатов")
    parser.add_argument("--charts", help="Каталог для файлов диаграмм")
    parser.add_argument(
        "--strict", action="store_true", help="Код 2 при вердикте unknown"
    )
    parser.add_argument("--workers", type=int, default=1, help="Потоки для run")
    parser.add_argument("--log-level", default=None, help="Уровень логирования")
    return parser


def load_instance(args: argparse.Namespace) -> Instance:
    if args.builtin:
        try:
            return parse(serialize(builtin_document(args.builtin)))
        except BaseEngineException as e:
            raise UsageError(e.detail)
    if args.input is None:
        return Instance()
    if args.input == "-":
        return parse(sys.stdin.read())
    path = Path(args.input)
    if not path.is_file():
        raise UsageError(f"нет файла {args.input}")
    return parse(path.read_text(encoding="utf-8"))


def task_from_args(args: argparse.Namespace) -> TaskSchema:
    """
    Задача из операндов и флагов командной строки.

    Raises:
        UsageError: Неверное число операндов или значение флага
    """
    op = TaskName(args.task)
    fields = OPERANDS[op]
    operands = list(args.operands)
    required = 0 if op == TaskName.NAIVE else len(fields)
    if not required <= len(operands) <= len(fields):
        raise UsageError(
            f"операции {op.value} нужны операнды: {' '.join(fields)}"
        )
    values = dict(zip(fields, operands))
    coefficients = [name for name in args.coefficients.split(",") if name]
    try:
        return TaskSchema(
            op=op,
            degree=args.degree,
            n_range=args.nrange,
            p_range=args.prange,
            q_range=args.qrange,
            pages=args.pages,
            window=args.window,
            coefficients=coefficients,
            **values,
        )
    except ValidationError as e:
        raise UsageError("; ".join(error["msg"] for error in e.errors()))


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")


def write_charts(
    document: ResultDocSchema, directory: Path, fmt: ChartFormat
) -> List[Path]:
    """
    Файлы диаграмм task<index>-<op>-E<r>.<txt|svg>.
    """
    render = render_svg if fmt == ChartFormat.SVG else render_text
    suffix = "svg" if fmt == ChartFormat.SVG else "txt"
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for task in document.tasks:
        for chart in task.charts:
            path = directory / f"task{task.index}-{task.op}-E{chart.r}.{suffix}"
            path.write_text(render(chart), encoding="utf-8")
            written.append(path)
    return written


def exit_code(document: ResultDocSchema, strict: bool) -> int:
    if document.failed:
        return config.EXIT_USAGE
    if strict and document.unknown:
        return config.EXIT_UNKNOWN
    return config.EXIT_OK


def execute(args: argparse.Namespace) -> int:
    """
    Выполняет разобранную команду.

    Returns:
        Код завершения: 0 успех, 1 ошибка вызова, разбора или задачи,
        2 вердикт unknown при --strict, 3 нарушение инварианта
    """
    logger.debug("команда %s, операнды %s", args.task, args.operands)
    instance = load_instance(args)
    if args.task == "parse":
        _write(serialize(instance.doc), args.out)
        return config.EXIT_OK
    runner = TaskRunner(
        args.window, args.prange, args.qrange, args.pages, args.workers
    )
    if args.task == "run":
        document = runner.run_all(instance)
    else:
        result = runner.run(instance, 0, task_from_args(args))
        document = ResultDocSchema(
            engine=config.TITLE, version=config.VERSION, tasks=[result]
        )
    _write(document.to_text(), args.out)
    directory = args.charts or (str(Path(args.out).parent) if args.out else None)
    if directory is not None:
        write_charts(document, Path(directory), ChartFormat(args.format))
    return exit_code(document, args.strict)


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """
    Точка входа командной строки.

    Ошибки печатаются в stderr; stdout занят документом результатов.
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"{e.detail}\n")
        return config.EXIT_USAGE
    setup_logging(args.log_level)
    try:
        return execute(args)
    except InstanceParseError as e:
        for error in e.errors:
            line, column = error["line"], error["column"]
            sys.stderr.write(f"{line}:{column}: {error['message']}\n")
        return config.EXIT_USAGE
    except InvariantViolationError as e:
        sys.stderr.write(f"{e.detail}\n")
        return config.EXIT_INVARIANT
    except BaseEngineException as e:
        sys.stderr.write(f"{e.detail}\n")
        return e.exit_code

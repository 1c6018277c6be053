"""
Пакет командной строки: разбор документов экземпляров, выполнение
задач и вывод диаграмм.
"""

from .charts import chart_of, check_chart, emit_chart, render_svg, render_text
from .commands import build_parser, execute, run_cli, task_from_args
from .instance import (Instance, InstanceParser, builtin_document,
                       builtin_group, builtin_tower, parse, serialize)
from .tasks import TaskOutcome, TaskRunner, run

__all__ = [
    "chart_of",
    "check_chart",
    "emit_chart",
    "render_svg",
    "render_text",
    "build_parser",
    "execute",
    "run_cli",
    "task_from_args",
    "Instance",
    "InstanceParser",
    "builtin_document",
    "builtin_group",
    "builtin_tower",
    "parse",
    "serialize",
    "TaskOutcome",
    "TaskRunner",
    "run",
]

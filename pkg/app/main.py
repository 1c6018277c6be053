"""
Главный модуль приложения.

Точка входа консольной команды prospec: разбирает аргументы,
настраивает логирование и выполняет задачу. Код завершения:
- 0: успех
- 1: ошибка вызова, разбора документа или задачи
- 2: вердикт unknown при --strict
- 3: нарушение внутреннего инварианта
"""

import sys
from typing import Optional, Sequence

from app.cli import run_cli


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_cli(argv)


# Запуск при прямом вызове файла
if __name__ == "__main__":
    sys.exit(main())

"""
Модуль основной конфигурации движка.

Содержит статические параметры: название и версию, настройки логирования,
пути проекта и коды завершения командной строки.
"""

from pathlib import Path


class PathConfig:
    """
    Конфигурация путей проекта.

    Attributes:
        ENV_FILE (Path): Путь к файлу переменных окружения
        APP_DIR (Path): Путь к директории пакета
        BASE_PATH (Path): Корневой путь проекта
        ENV_PATH (Path): Полный путь к .env файлу
        APP_PATH (Path): Полный путь к директории пакета
    """

    ENV_FILE = Path(".env")
    APP_DIR = Path("app")

    BASE_PATH = Path(__file__).resolve().parents[3]
    ENV_PATH = BASE_PATH / ENV_FILE
    APP_PATH = BASE_PATH / APP_DIR


class LogConfig:
    """
    Конфигурация логирования.

    Attributes:
        LEVEL (str): Уровень логирования
        FORMAT (str): Формат сообщений
        FILE (str): Имя файла логов
        MAX_BYTES (int): Максимальный размер файла
        BACKUP_COUNT (int): Количество файлов ротации
        ENCODING (str): Кодировка файла
        DATE_FORMAT (str): Формат даты
    """

    LEVEL = "WARNING"
    FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    FILE = "prospec.log"
    MAX_BYTES = 10485760  # 10MB
    BACKUP_COUNT = 5
    ENCODING = "utf-8"
    DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

    def to_dict(self) -> dict:
        return {
            "level": self.LEVEL,
            "format": self.FORMAT,
            "datefmt": self.DATE_FORMAT,
            "maxBytes": self.MAX_BYTES,
            "backupCount": self.BACKUP_COUNT,
            "force": True,
        }


class AppConfig:
    """
    Основная конфигурация движка.

    Attributes:
        TITLE (str): Название
        DESCRIPTION (str): Описание
        VERSION (str): Версия
        PATHS (PathConfig): Конфигурация путей
        LOGGING (LogConfig): Конфигурация логирования
        EXIT_OK (int): Успешное завершение
        EXIT_USAGE (int): Ошибка вызова или разбора документа
        EXIT_UNKNOWN (int): Вердикт "unknown" при флаге --strict
        EXIT_INVARIANT (int): Нарушение внутреннего инварианта

    Example:
        >>> from app.core.config import config
        >>> config.TITLE
        'prospec'
    """

    TITLE: str = "prospec"
    DESCRIPTION: str = (
        "prospec - движок гомотопической теории про-спектров: башни, "
        "слабые эквивалентности и спектральная последовательность "
        "Атьи-Хирцебруха."
    )
    VERSION: str = "0.1.0"

    PATHS = PathConfig()

    LOGGING = LogConfig()

    EXIT_OK: int = 0
    EXIT_USAGE: int = 1
    EXIT_UNKNOWN: int = 2
    EXIT_INVARIANT: int = 3

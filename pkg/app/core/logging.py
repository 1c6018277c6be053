import logging
from logging.handlers import RotatingFileHandler
from typing import Optional

from app.core.config import config


def setup_logging(level: Optional[str] = None):
    """
    Настройка логгера для всего движка.

    Args:
        level: Уровень логирования; по умолчанию берется из настроек
    """
    # Очищаем существующие хендлеры
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)

    log_config = config.LOGGING.to_dict()
    log_config["level"] = (level or config.log_level).upper()

    # Убираем параметры хендлера из базового конфига
    handler_params = {
        "maxBytes": log_config.pop("maxBytes", None),
        "backupCount": log_config.pop("backupCount", None),
    }

    # Консольный хендлер пишет в stderr: stdout занят документами результатов
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(logging.Formatter(config.LOGGING.FORMAT))
    log_config["handlers"] = [console_handler]

    logging.basicConfig(**log_config)

    if config.log_to_file:
        file_handler = RotatingFileHandler(
            filename=config.LOGGING.FILE,
            maxBytes=handler_params["maxBytes"],
            backupCount=handler_params["backupCount"],
            encoding=config.LOGGING.ENCODING,
        )
        file_handler.setFormatter(logging.Formatter(config.LOGGING.FORMAT))
        root.addHandler(file_handler)

    # Подробные шаги поиска нужны только при отладке
    logging.getLogger("FactorizationSearch").setLevel(
        max(root.level, logging.INFO)
    )

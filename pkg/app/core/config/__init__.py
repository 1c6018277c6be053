"""
Пакет конфигурации движка.

Предоставляет централизованный доступ к настройкам через единый объект config.

Example:
    >>> from app.core.config import config
    >>> config.window
    12
    >>> config.TITLE
    'prospec'
"""

from functools import lru_cache

from .app import AppConfig
from .settings import Settings


class Config(Settings, AppConfig):
    """
    Объединенная конфигурация.
    Наследует все настройки из Settings и AppConfig.
    """

    pass


@lru_cache
def get_config() -> Config:
    """
    Получение конфигурации из кэша.
    """
    config_instance = Config()

    return config_instance


config = get_config()

__all__ = ["config", "get_config", "Config"]

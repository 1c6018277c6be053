"""
Тесты конфигурации.
"""

import logging

from app.core.config import Config, config
from app.core.logging import setup_logging


def test_defaults():
    assert config.TITLE == "prospec"
    assert config.window == 12
    assert config.pages >= 2
    assert config.p_bounds == (-12, 12)
    assert (config.EXIT_OK, config.EXIT_USAGE) == (0, 1)
    assert (config.EXIT_UNKNOWN, config.EXIT_INVARIANT) == (2, 3)


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("PROSPEC_WINDOW", "5")
    monkeypatch.setenv("PROSPEC_Q_RANGE", "[-2, 3]")
    settings = Config()
    assert settings.window == 5
    assert settings.q_bounds == (-2, 3)


def test_setup_logging_level():
    setup_logging("debug")
    assert logging.getLogger().level == logging.DEBUG
    setup_logging()
    assert logging.getLogger().level == getattr(logging, config.log_level.upper())

"""
Тесты исключений движка.
"""

import logging

import pytest

from app.core.exceptions import (BaseEngineException, DifferentialError,
                                 InstanceParseError, InvariantViolationError,
                                 TaskError, UsageError, WindowExhaustedError)


def test_to_dict_is_reproducible():
    first = WindowExhaustedError("lim", 4, {"tower": "X"}).to_dict()
    second = WindowExhaustedError("lim", 4, {"tower": "X"}).to_dict()
    assert first == second
    assert "timestamp" not in first
    assert first["extra"] == {"operation": "lim", "tower": "X", "window": "4"}


def test_context_is_logged():
    error = TaskError("naive", "нет семейства")
    assert error.context["error_id"]
    assert error.context["error_type"] == error.error_type


@pytest.mark.parametrize(
    "error, code",
    [
        (UsageError("нет операнда"), 1),
        (WindowExhaustedError("lim", 4), 2),
        (InvariantViolationError("расхождение", {}), 3),
        (InstanceParseError([{"line": 2, "column": 5, "message": "x"}]), 1),
    ],
)
def test_exit_codes(error, code):
    assert isinstance(error, BaseEngineException)
    assert error.exit_code == code


def test_parse_error_detail_has_position():
    error = InstanceParseError([{"line": 2, "column": 5, "message": "x"}])
    assert "2" in error.detail and "5" in error.detail
    assert error.extra == {"count": 1}


def test_differential_error_degree():
    assert DifferentialError(degree=2).extra["degree"] == 2


def test_domain_errors_log_at_debug(caplog):
    with caplog.at_level(logging.DEBUG, logger="app.core.exceptions.v1.base"):
        TaskError("naive", "нет семейства")
        InvariantViolationError("расхождение", {})
    levels = [record.levelno for record in caplog.records]
    assert levels == [logging.DEBUG, logging.ERROR]

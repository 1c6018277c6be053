from .cli import (InstanceParseError, InvariantViolationError, TaskError,
                  UsageError)

__all__ = ["InstanceParseError", "InvariantViolationError", "TaskError", "UsageError"]

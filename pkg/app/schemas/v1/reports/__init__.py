from .reports import ResultDocSchema, TaskResultSchema, TaskStatus

__all__ = ["ResultDocSchema", "TaskResultSchema", "TaskStatus"]

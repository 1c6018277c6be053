from app.core.exceptions.v1.base import BaseEngineException


class DifferentialError(BaseEngineException):
    """
    Нарушено d∘d = 0 или размеры дифференциала.

    Attributes:
        degree (int): Степень k, в которой d_{k-1}·d_k ≠ 0.
    """

    def __init__(self, degree: int, message: str = "d∘d ≠ 0"):
        super().__init__(
            detail=f"Некорректный дифференциал в степени {degree}: {message}",
            error_type="bad_differential",
            extra={"degree": degree},
        )
        self.degree = degree


class ChainMapError(BaseEngineException):
    """
    Компоненты не коммутируют с дифференциалами.

    Attributes:
        degree (int): Степень, где нарушено d·f = f·d.
    """

    def __init__(self, degree: int, message: str = "d·f ≠ f·d"):
        super().__init__(
            detail=f"Цепное отображение некорректно в степени {degree}: {message}",
            error_type="bad_chain_map",
            extra={"degree": degree},
        )
        self.degree = degree


class HomotopyError(BaseEngineException):
    """
    Компоненты не образуют цепную гомотопию между заданными отображениями.
    """

    def __init__(self, degree: int):
        super().__init__(
            detail=f"dH + Hd ≠ f - g в степени {degree}",
            error_type="bad_homotopy",
            extra={"degree": degree},
        )


class NotBoundedAboveError(BaseEngineException):
    """
    Цель не ограничена сверху: формула копредела к постоянной цели неприменима.
    """

    def __init__(self, name: str):
        super().__init__(
            detail=f"Объект {name} не ограничен сверху: формула "
            "[X, Y] = colim [X_s, Y] требует ограниченной сверху цели",
            error_type="not_bounded_above",
            extra={"object": name},
        )

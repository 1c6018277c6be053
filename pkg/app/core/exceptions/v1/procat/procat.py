from app.core.exceptions.v1.base import BaseEngineException


class NotCofinalError(BaseEngineException):
    """
    Переиндексация не монотонна или ограничена.
    """

    def __init__(self, description: str):
        super().__init__(
            detail=f"Переиндексация {description} не монотонна или не кофинальна",
            error_type="not_cofinal",
            extra={"reindex": description},
        )


class IncompatibleGermError(BaseEngineException):
    """
    Данные ростков несовместимы: квадрат не коммутирует ни на каком уровне окна.

    Attributes:
        level (int): Уровень s, на котором не удалось согласовать ростки.
    """

    def __init__(self, level: int):
        super().__init__(
            detail=f"Несовместимые ростки на уровне {level}",
            error_type="incompatible_germ",
            extra={"level": level},
        )


class NonCommutingSquareError(BaseEngineException):
    """
    Квадрат связующих отображений не коммутирует.
    """

    def __init__(self, where: str):
        super().__init__(
            detail=f"Квадрат не коммутирует: {where}",
            error_type="non_commuting_square",
            extra={"where": where},
        )


class MissingFactorizationError(BaseEngineException):
    """
    Для уровня s нет факторизации связующего отображения в окне.
    """

    def __init__(self, level: int):
        super().__init__(
            detail=f"Нет факторизации для уровня {level}",
            error_type="missing_factorization",
            extra={"level": level},
        )

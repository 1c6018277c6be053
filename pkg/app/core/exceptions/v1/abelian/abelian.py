from app.core.exceptions.v1.base import BaseEngineException


class ShapeMismatchError(BaseEngineException):
    """
    Размеры матриц или векторов не согласованы.

    Attributes:
        operation (str): Операция.
        expected: Ожидаемый размер.
        actual: Фактический размер.
    """

    def __init__(self, operation: str, expected, actual):
        super().__init__(
            detail=f"Несогласованные размеры в {operation}: "
            f"ожидалось {expected}, получено {actual}",
            error_type="shape_mismatch",
            extra={"operation": operation},
        )


class IllDefinedHomError(BaseEngineException):
    """
    Матрица не переводит решетку соотношений источника в решетку цели.

    Attributes:
        column (int): Номер соотношения источника, образ которого
            не лежит в соотношениях цели.
    """

    def __init__(self, column: int):
        super().__init__(
            detail=f"Гомоморфизм не определен корректно: соотношение {column} "
            "источника не переходит в соотношения цели",
            error_type="ill_defined_hom",
            extra={"relation": column},
        )


class NotComposableError(BaseEngineException):
    """
    Гомоморфизмы нельзя скомпоновать: цель первого не совпадает с источником второго.
    """

    def __init__(self, operation: str):
        super().__init__(
            detail=f"Несовместимые отображения в {operation}",
            error_type="not_composable",
            extra={"operation": operation},
        )


class TailMismatchError(BaseEngineException):
    """
    Хвостовое правило не воспроизводит реализованные уровни окна.

    Attributes:
        level (int): Первый уровень, на котором правило расходится с данными.
    """

    def __init__(self, level: int, rule: str):
        super().__init__(
            detail=f"Хвостовое правило {rule} расходится с уровнем {level}",
            error_type="tail_mismatch",
            extra={"level": level, "rule": rule},
        )
        self.level = level

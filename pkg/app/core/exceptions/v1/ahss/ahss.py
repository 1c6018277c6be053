from app.core.exceptions.v1.base import BaseEngineException


class NonConstantTargetError(BaseEngineException):
    """
    Точная пара строится только для существенно постоянной цели.

    Attributes:
        name (str): Имя цели
    """

    def __init__(self, name: str):
        super().__init__(
            detail=f"Цель {name} не сертифицирована как существенно постоянная: "
            "спектральная последовательность строится для ограниченных сверху "
            "постоянных целей",
            error_type="non_constant_target",
            extra={"object": name},
        )
        self.name = name


class DegenerateCoupleError(BaseEngineException):
    """
    Производная пара не собирается: нарушена точность исходной пары.

    Attributes:
        position (tuple): Бистепень (p, q), где сломалась конструкция
    """

    def __init__(self, position: tuple, message: str):
        super().__init__(
            detail=f"Точная пара нарушена в {position}: {message}",
            error_type="degenerate_couple",
            extra={"position": list(position)},
        )
        self.position = position

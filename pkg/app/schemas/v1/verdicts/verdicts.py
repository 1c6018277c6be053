"""
Модуль трехзначных вердиктов и областей доказательства
"""

from enum import Enum


class Verdict(str, Enum):
    """
    Вердикт поиска или проверки

    Attributes:
        CERTIFIED (str): Утверждение доказано, есть сертификат
        REFUTED (str): Утверждение опровергнуто доказательством
        UNKNOWN (str): Окно исчерпано, ответа нет
    """

    CERTIFIED = "certified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> "Verdict":
        return cls.CERTIFIED if value else cls.REFUTED

    def meet(self, other: "Verdict") -> "Verdict":
        """
        Конъюнкция вердиктов: опровержение сильнее незнания.
        """
        if Verdict.REFUTED in (self, other):
            return Verdict.REFUTED
        if Verdict.UNKNOWN in (self, other):
            return Verdict.UNKNOWN
        return Verdict.CERTIFIED


class Scope(str, Enum):
    """
    Чем закрыто доказательство

    Attributes:
        WINDOW (str): Использованы только реализованные уровни окна
        TAIL (str): Вывод распространен на все уровни хвостовым правилом
    """

    WINDOW = "window-proven"
    TAIL = "tail-proven"

    def meet(self, other: "Scope") -> "Scope":
        if Scope.WINDOW in (self, other):
            return Scope.WINDOW
        return Scope.TAIL


class Lim1Status(str, Enum):
    """
    Трихотомия для lim¹

    Attributes:
        ZERO (str): lim¹ = 0, условие Миттаг-Леффлера выполнено
        NONZERO (str): lim¹ ≠ 0, образы строго убывают
        UNKNOWN (str): Не решено в пределах окна
    """

    ZERO = "zero"
    NONZERO = "nonzero"
    UNKNOWN = "unknown-within-window"


class TailKind(str, Enum):
    """
    Вид хвостового правила башни

    Attributes:
        EVENTUALLY_CONSTANT (str): Уровни постоянны, связки тождественны
        EVENTUALLY_ZERO (str): Уровни нулевые
        PERIODIC_SHIFT (str): Уровень s + p равен сдвигу Σ^m уровня s
    """

    EVENTUALLY_CONSTANT = "eventually-constant"
    EVENTUALLY_ZERO = "eventually-zero"
    PERIODIC_SHIFT = "periodic-shift"


class WeqRoute(str, Enum):
    """
    Маршрут проверки π*-слабой эквивалентности

    Attributes:
        LEVELWISE (str): Существенно поуровневые n-эквивалентности для всех n
        HOMOTOPY_GROUPS (str): Про-изоморфизм про-групп гомотопий плюс одно n
    """

    LEVELWISE = "levelwise"
    HOMOTOPY_GROUPS = "homotopy-pro-groups"


class ConvergenceVerdict(str, Enum):
    """
    Итог проверки условной сходимости

    Attributes:
        CONDITIONALLY_CONVERGENT (str): Гипотеза одного из случаев доказана
        NOT_ESTABLISHED (str): Сходимость не установлена
    """

    CONDITIONALLY_CONVERGENT = "conditionally-convergent"
    NOT_ESTABLISHED = "not-established"


class WeqStrategy(str, Enum):
    """
    Способ, которым найдена поуровневая n-эквивалентность

    Attributes:
        IDENTITY (str): Все уровни уже n-эквивалентности
        SHIFT (str): n-эквивалентности с некоторого уровня c
        FACTORIZATION (str): Разложение f = p∘i с про-изоморфизмом p
    """

    IDENTITY = "identity"
    SHIFT = "cofinal-shift"
    FACTORIZATION = "factor-and-assemble"


class SequenceKind(str, Enum):
    """
    Вид длинной точной последовательности

    Attributes:
        COFIBER (str): X → Y → C(f) → ΣX
        FIBER (str): F(f) → X → Y → ΣF(f)
    """

    COFIBER = "cofiber"
    FIBER = "fiber"

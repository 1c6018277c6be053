"""
Модуль для определения базовой схемы данных.

Этот модуль содержит класс `CommonBaseSchema`, который наследуется от
`BaseModel` библиотеки Pydantic. Класс предназначен для использования
в других схемах и предоставляет общую конфигурацию для валидации
и сериализации данных.

Класс `BaseInputSchema` - для документов, которые читаются из файлов:
лишние поля в них считаются ошибкой.

Класс `BaseResultSchema` - для документов результатов, которые
записываются на диск и должны быть побайтно воспроизводимыми.
"""

import json

from pydantic import BaseModel, ConfigDict


class CommonBaseSchema(BaseModel):
    """
    Общая базовая схема для всех моделей.
    Содержит только общую конфигурацию и метод to_dict().

    Attributes:
        model_config (ConfigDict): Конфигурация модели, позволяющая
        использовать атрибуты в качестве полей.

    Methods:
        to_dict(): Преобразует объект в словарь.
    """

    model_config = ConfigDict(from_attributes=True)

    def to_dict(self) -> dict:
        return self.model_dump(mode="json")


class BaseInputSchema(CommonBaseSchema):
    """
    Базовая схема для входных документов.

    Неизвестные поля запрещены: опечатка в имени поля должна давать
    ошибку с позицией, а не молча игнорироваться.
    """

    model_config = ConfigDict(from_attributes=True, extra="forbid")


class BaseResultSchema(CommonBaseSchema):
    """
    Базовая схема для документов результатов.

    Methods:
        to_text(): Каноническая запись документа (ключи отсортированы).
    """

    def to_text(self) -> str:
        return (
            json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)
            + "\n"
        )

import subprocess
from pathlib import Path

# Получаем путь к корню проекта
ROOT_DIR = Path(__file__).parents[1]


def run(command: list) -> None:
    """Запускает команду в корне проекта"""
    subprocess.run(command, cwd=ROOT_DIR, check=True)


def lint():
    """
    Запуск линтера.
    """
    run(["black", "app/", "tests/"])
    run(["isort", "app/", "tests/"])
    run(["flake8", "app/", "tests/"])
    run(["mypy", "app/"])


def format():
    """
    Форматирование кода.
    """
    run(["black", "app/", "tests/"])
    run(["isort", "app/", "tests/"])


def check():
    """
    Проверка кода.
    """
    run(["flake8", "app/"])
    run(["mypy", "app/"])


def test():
    """
    Запуск тестов.
    """
    run(["pytest", "tests/", "-v"])

import sys
from pathlib import Path

import pytest

# Добавляем корневую директорию проекта в PYTHONPATH
root_dir = Path(__file__).parent.parent
sys.path.append(str(root_dir))

from app.services.v1.abelian import FGAbelianGroup, GroupHom, IntMatrix  # noqa: E402


@pytest.fixture
def Z():
    return FGAbelianGroup.free(1)


@pytest.fixture
def times_two(Z):
    return GroupHom(Z, Z, IntMatrix.from_rows([[2]]))

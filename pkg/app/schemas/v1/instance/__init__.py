from .instance import (BuiltinMap, BuiltinTower, GroupSchema, InstanceDocSchema,
                       LevelMatrix, MapSchema, Matrix, SpectrumSchema,
                       TailSchema, TaskName, TaskSchema, TowerSchema)

__all__ = [
    "BuiltinMap",
    "BuiltinTower",
    "GroupSchema",
    "InstanceDocSchema",
    "LevelMatrix",
    "MapSchema",
    "Matrix",
    "SpectrumSchema",
    "TailSchema",
    "TaskName",
    "TaskSchema",
    "TowerSchema",
]

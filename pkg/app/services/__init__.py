"""
Пакет сервисов движка.
"""

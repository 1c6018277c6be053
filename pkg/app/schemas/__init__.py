"""
Пакет схем данных.
"""

"""
Утилиты: форматирование чисел, сообщения CLI.
"""

"""
Форматирование точных чисел для отчетов: целые как десятичные строки,
рациональные как "num/den".
"""
from fractions import Fraction
from typing import Any


def format_number(value: Any) -> Any:
    """Число в строку; прочие значения (строки, None, bool) без изменений."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [format_number(v) for v in value]
    return value if isinstance(value, str) else str(value)


def parse_rational(text: Any) -> Fraction:
    """Разобрать "num/den", "num" или целое число."""
    if isinstance(text, bool):
        raise ValueError("a boolean is not a rational value")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"cannot parse rational from {text!r}")
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))

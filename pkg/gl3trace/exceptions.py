"""
Исключения верификатора.

Каждое исключение несет ключ сообщения (для utils.i18n.translate) и параметры
подстановки, чтобы CLI мог показать локализованный текст.
"""
from typing import Any, Dict


class Gl3TraceError(Exception):
    """Базовое исключение верификатора."""

    message_key = "errors.generic"

    def __init__(self, message: str = "", **params: Any):
        super().__init__(message or self.__class__.__name__)
        self.params: Dict[str, Any] = params


# --- Ошибки конфигурации (код выхода 3) ---

class ConfigurationError(Gl3TraceError):
    """Некорректные параметры запуска."""
    message_key = "errors.configuration"


class NotPrime(ConfigurationError):
    """p не является простым числом."""
    message_key = "errors.not_prime"


class ReduciblePolynomial(ConfigurationError):
    """Заданный многочлен приводим над F_p."""
    message_key = "errors.reducible_polynomial"


class NotCongruent1Mod3(ConfigurationError):
    """q ≢ 1 (mod 3): кубических невычетов нет, полупространство не определено."""
    message_key = "errors.not_congruent_1_mod_3"


class UnsupportedRegime(ConfigurationError):
    """Формулы кратностей доступны только при gcd(n, 6) = 1."""
    message_key = "errors.unsupported_regime"


class UnknownCondition(ConfigurationError):
    """Неизвестный идентификатор условия на характер."""
    message_key = "errors.unknown_condition"


class LevelMismatch(ConfigurationError):
    """Операция над элементами разных уровней башни."""
    message_key = "errors.level_mismatch"


class NotASubgroup(ConfigurationError):
    """Порядок подгруппы не делит порядок циклической группы."""
    message_key = "errors.not_a_subgroup"


# --- Бюджет (код выхода 2) ---

class BudgetExceeded(Gl3TraceError):
    """Оценка стоимости перебора превышает бюджет."""
    message_key = "errors.budget_exceeded"

    def __init__(self, operation: str, estimate: int, limit: int):
        super().__init__(
            f"{operation}: estimated {estimate} evaluations exceeds budget {limit}",
            operation=operation,
            estimate=estimate,
            limit=limit,
        )
        self.operation = operation
        self.estimate = estimate
        self.limit = limit


# --- Математические ошибки ---

class Singular(Gl3TraceError):
    """Матрица вырождена."""
    message_key = "errors.singular"


class SingularKappa(Singular):
    """Вырожденная 2×2 матрица в преобразовании орицикла."""
    message_key = "errors.singular_kappa"


class HalfspaceError(Gl3TraceError):
    """Пара (α, β) не лежит в H_q."""
    message_key = "errors.halfspace"


class DenominatorZero(HalfspaceError):
    """Нулевой знаменатель в дробно-линейном действии (внутренняя ошибка)."""
    message_key = "errors.denominator_zero"


class UnsupportedKind(Gl3TraceError):
    """Для данного типа класса нет фундаментальной области или формулы."""
    message_key = "errors.unsupported_kind"


class WrongBranch(Gl3TraceError):
    """Запрошена эллиптическая ветка, не соответствующая n mod 2 / n mod 3."""
    message_key = "errors.wrong_branch"


class NonIntegralMultiplicity(Gl3TraceError):
    """Кратность получилась нецелой или отрицательной (строгий режим)."""
    message_key = "errors.non_integral_multiplicity"

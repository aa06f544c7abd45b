"""
Конфигурация приложения.
Использует pydantic-settings для управления настройками из переменных окружения и файла .env.
"""
from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    """Настройки приложения из переменных окружения."""

    # Основные настройки
    APP_NAME: str = "GL3 Discrete Trace Formula Verifier"
    APP_VERSION: str = "1.0.0"

    # Логирование
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "console"  # console | json

    # Язык сообщений CLI
    LANGUAGE: str = "en"

    # Параметры запуска по умолчанию
    DEFAULT_P: int = 2
    DEFAULT_N: int = 2
    DEFAULT_SEED: int = 1
    DEFAULT_NUM_F: int = 20

    # Бюджеты перебора (число элементарных вычислений)
    ENUMERATION_BUDGET: int = 100_000_000
    ORBIT_BUDGET: int = 30_000_000
    # Порог, до которого count_chars считает перебором показателей
    CHAR_ENUMERATION_LIMIT: int = 10_000

    # Куда писать отчеты, если --out не указан (None = stdout)
    REPORTS_DIR: Optional[str] = None

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True
        extra = "ignore"  # Игнорируем дополнительные поля из .env


# Глобальный экземпляр настроек
settings = Settings()

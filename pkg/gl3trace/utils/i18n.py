"""
Сообщения командной строки на английском и русском.

Каталоги лежат в locales/<язык>/messages.json; ключи вида "errors.not_prime".
Ключ, которого нет в выбранном каталоге, берется из английского.
"""
import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

SUPPORTED_LANGUAGES = ("en", "ru")
DEFAULT_LANGUAGE = "en"

LOCALES_DIR = Path(__file__).resolve().parents[2] / "locales"


@lru_cache(maxsize=None)
def catalogue(language: str) -> Dict[str, Any]:
    path = LOCALES_DIR / language / "messages.json"
    if language not in SUPPORTED_LANGUAGES or not path.exists():
        return {}
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _lookup(messages: Dict[str, Any], key: str):
    value: Any = messages
    for part in key.split("."):
        if not isinstance(value, dict) or part not in value:
            return None
        value = value[part]
    return value if isinstance(value, str) else None


def translate(key: str, language: str = DEFAULT_LANGUAGE, **params) -> str:
    """Сообщение по ключу с подстановкой params; неизвестный ключ возвращается как есть."""
    template = _lookup(catalogue(language), key) or _lookup(catalogue(DEFAULT_LANGUAGE), key)
    if template is None:
        return key
    try:
        return template.format(**params)
    except (KeyError, IndexError, ValueError):
        return template

"""Каталоги сообщений CLI."""
from gl3trace import exceptions
from gl3trace.utils.i18n import SUPPORTED_LANGUAGES, catalogue, translate


def _keys(messages, prefix=""):
    for name, value in messages.items():
        if isinstance(value, dict):
            yield from _keys(value, f"{prefix}{name}.")
        else:
            yield f"{prefix}{name}"


def _subclasses(cls):
    for sub in cls.__subclasses__():
        yield sub
        yield from _subclasses(sub)


def test_translate_with_params():
    assert translate("errors.not_prime", "en", p=4) == "p = 4 is not a prime number."
    assert translate("errors.not_prime", "ru", p=4) == "p = 4 не является простым числом."


def test_unknown_language_falls_back_to_english():
    assert translate("errors.not_prime", "de", p=9) == translate("errors.not_prime", "en", p=9)


def test_unknown_key_is_returned():
    assert translate("errors.no_such_key") == "errors.no_such_key"
    assert translate("errors") == "errors"


def test_catalogues_have_same_keys():
    keys = [set(_keys(catalogue(lang))) for lang in SUPPORTED_LANGUAGES]
    assert keys[0] and all(k == keys[0] for k in keys)


def test_every_error_has_a_message():
    english = set(_keys(catalogue("en")))
    for cls in [exceptions.Gl3TraceError, *_subclasses(exceptions.Gl3TraceError)]:
        assert cls.message_key in english, cls.__name__

"""Подсчет характеров: перебор против формул делимости."""
import pytest
from sympy import factorint

from gl3trace.exceptions import UnknownCondition
from gl3trace.services.char_count_service import (
    CONDITIONS,
    all_condition_ids,
    count_chars,
    count_chars_enumerate,
    count_chars_formula,
    count_congruent,
)


def _prime_powers(lo, hi):
    for q in range(lo, hi + 1):
        factors = factorint(q)
        if len(factors) == 1:
            yield next(iter(factors)), q


# верхняя граница q для сверки перебором в медленном прогоне, по стоимости перебора
SLOW_LIMITS = {"alpha": 10 ** 4, "pair": 300, "nu": 300, "triple": 60, "rho": 60, "sigma": 60, "mu": 60}


@pytest.mark.parametrize("p, q", list(_prime_powers(2, 32)))
def test_enumeration_matches_formula(p, q):
    for condition in all_condition_ids():
        assert count_chars_enumerate(condition, p, q) == count_chars_formula(condition, p, q), condition


@pytest.mark.slow
@pytest.mark.parametrize("domain", sorted(SLOW_LIMITS))
def test_enumeration_matches_formula_large_q(domain):
    conditions = [c for c in all_condition_ids() if c.startswith(f"{domain}.")]
    for p, q in _prime_powers(33, SLOW_LIMITS[domain]):
        for condition in conditions:
            assert count_chars_enumerate(condition, p, q) == count_chars_formula(condition, p, q), (condition, q)


@pytest.mark.parametrize("p, n", [(2, 2), (7, 1), (3, 2)])
def test_cases_partition_domain(p, n):
    q = p ** n
    for domain, cases in CONDITIONS.items():
        if "any" not in cases:
            continue
        total = count_chars(f"{domain}.any", p, q)
        assert sum(count_chars(f"{domain}.{case}", p, q) for case in cases if case != "any") == total


def test_domain_sizes_q4():
    assert count_chars("alpha.any", 2, 4) == 3
    assert count_chars("pair.any", 2, 4) == 6
    assert count_chars("triple.any", 2, 4) == 1
    assert count_chars("rho.any", 2, 4) == 18
    assert count_chars("sigma.any", 2, 4) == 20
    assert count_chars("nu.nondecomposable", 2, 4) == 6
    assert count_chars("mu.nondecomposable", 2, 4) == 20


def test_n1_only_trivial_restrictions():
    # при q = p ограничение на F_p^× совпадает с самим характером
    assert count_chars("alpha.trivial", 7, 7) == 1
    assert count_chars("pair.a_b_trivial", 7, 7) == 0
    assert count_chars("triple.all_trivial", 7, 7) == 0


def test_large_q_uses_formula():
    q = 7 ** 5
    assert count_chars("alpha.any", 7, q) == q - 1
    assert count_chars("nu.nondecomposable", 7, q) == (q * q - q) // 2


def test_count_congruent():
    assert count_congruent(12, []) == 12
    assert count_congruent(12, [(0, 3)]) == 4
    assert count_congruent(12, [(0, 3), (0, 4)]) == 1
    assert count_congruent(12, [(1, 2), (0, 4)]) == 0


@pytest.mark.parametrize("condition", ["alpha", "pair.bogus", "nu.any", "omega.any"])
def test_unknown_condition(condition):
    with pytest.raises(UnknownCondition):
        count_chars(condition, 2, 4)

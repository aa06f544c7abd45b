"""
Сервис подсчета характеров по условиям разложения ρ = Ind_Γ^G 1.

Условия задаются строковыми идентификаторами вида "<семейство>.<случай>".
Для малых q считается перебором показателей, для больших по формулам
делимости; обе реализации сверяются в тестах.
"""
import logging
from itertools import combinations
from typing import Callable, Dict, List, Tuple

from sympy.ntheory.modular import solve_congruence

from config.settings import settings
from gl3trace.exceptions import UnknownCondition
from gl3trace.models.field import MultChar
from gl3trace.services.gf_tower_service import char_restriction_trivial, restricted_exponent

logger = logging.getLogger(__name__)

# Домен характеров -> случаи
CONDITIONS: Dict[str, Tuple[str, ...]] = {
    "alpha": ("any", "cube_nontrivial", "cube_trivial", "trivial"),
    "pair": ("any", "a2b_nontrivial", "a2b_trivial", "a2_b_trivial", "a_b_trivial"),
    "triple": ("any", "abc_nontrivial", "none_trivial", "one_trivial", "all_trivial"),
    "rho": ("any", "anu_nontrivial", "anu_trivial", "nu_p2_nontrivial", "nu_p2_trivial"),
    "sigma": ("any", "mu_nontrivial", "mu_p3_nontrivial", "mu_p3_trivial"),
    "nu": ("nondecomposable",),
    "mu": ("nondecomposable",),
}


def all_condition_ids() -> List[str]:
    return [f"{domain}.{case}" for domain, cases in CONDITIONS.items() for case in cases]


def _parse(condition: str) -> Tuple[str, str]:
    domain, _, case = condition.partition(".")
    if domain not in CONDITIONS or case not in CONDITIONS[domain]:
        raise UnknownCondition(f"unknown character condition {condition!r}", condition=condition)
    return domain, case


# --- перебор ---

def _alpha_case(p: int, q: int, a: int) -> str:
    d = p - 1
    if not char_restriction_trivial(MultChar(q - 1, 3 * a), d):
        return "cube_nontrivial"
    if not char_restriction_trivial(MultChar(q - 1, a), d):
        return "cube_trivial"
    return "trivial"


def _pair_case(p: int, q: int, a: int, b: int) -> str:
    d = p - 1
    if not char_restriction_trivial(MultChar(q - 1, 2 * a + b), d):
        return "a2b_nontrivial"
    if not char_restriction_trivial(MultChar(q - 1, b), d):
        return "a2b_trivial"
    if not char_restriction_trivial(MultChar(q - 1, a), d):
        return "a2_b_trivial"
    return "a_b_trivial"


def _triple_case(p: int, q: int, a: int, b: int, c: int) -> str:
    d = p - 1
    if not char_restriction_trivial(MultChar(q - 1, a + b + c), d):
        return "abc_nontrivial"
    trivial = sum(char_restriction_trivial(MultChar(q - 1, x), d) for x in (a, b, c))
    return {0: "none_trivial", 1: "one_trivial", 3: "all_trivial"}[trivial]


def _rho_case(p: int, q: int, j: int, e: int) -> str:
    d = p - 1
    alpha = MultChar(q - 1, j)
    nu = MultChar(q * q - 1, e)
    if (restricted_exponent(alpha, d) + restricted_exponent(nu, d)) % d:
        return "anu_nontrivial"
    if not char_restriction_trivial(alpha, d):
        return "anu_trivial"
    if not char_restriction_trivial(nu, p * p - 1):
        return "nu_p2_nontrivial"
    return "nu_p2_trivial"


def _sigma_case(p: int, q: int, e: int) -> str:
    mu = MultChar(q ** 3 - 1, e)
    if not char_restriction_trivial(mu, p - 1):
        return "mu_nontrivial"
    if not char_restriction_trivial(mu, p ** 3 - 1):
        return "mu_p3_nontrivial"
    return "mu_p3_trivial"


def _orbit_reps(modulus: int, q: int, size: int) -> List[int]:
    """Представители орбит e ↦ qe длины ровно size (недекомпозируемые характеры)."""
    reps = []
    for e in range(modulus):
        orbit = [e]
        for _ in range(size - 1):
            orbit.append((orbit[-1] * q) % modulus)
        if (orbit[-1] * q) % modulus == e and len(set(orbit)) == size and e == min(orbit):
            reps.append(e)
    return reps


def enumeration_cost(domain: str, q: int) -> int:
    return {
        "alpha": q,
        "pair": q * q,
        "triple": q ** 3 // 6,
        "rho": q ** 3,
        "sigma": q ** 3,
        "nu": q * q,
        "mu": q ** 3,
    }[domain]


def count_chars_enumerate(condition: str, p: int, q: int) -> int:
    """Подсчет перебором показателей характеров."""
    domain, case = _parse(condition)
    if domain == "nu":
        return len(_orbit_reps(q * q - 1, q, 2))
    if domain == "mu":
        return len(_orbit_reps(q ** 3 - 1, q, 3))

    def matches(label: str) -> bool:
        return case == "any" or label == case

    count = 0
    if domain == "alpha":
        count = sum(1 for a in range(q - 1) if matches(_alpha_case(p, q, a)))
    elif domain == "pair":
        count = sum(
            1 for a in range(q - 1) for b in range(q - 1)
            if a != b and matches(_pair_case(p, q, a, b))
        )
    elif domain == "triple":
        count = sum(1 for a, b, c in combinations(range(q - 1), 3) if matches(_triple_case(p, q, a, b, c)))
    elif domain == "rho":
        nus = _orbit_reps(q * q - 1, q, 2)
        count = sum(1 for j in range(q - 1) for e in nus if matches(_rho_case(p, q, j, e)))
    elif domain == "sigma":
        count = sum(1 for e in _orbit_reps(q ** 3 - 1, q, 3) if matches(_sigma_case(p, q, e)))
    return count


# --- формулы делимости ---

def count_congruent(total: int, congruences: List[Tuple[int, int]]) -> int:
    """Число e ∈ Z/total с e ≡ s_i (mod m_i) для всех i (каждый m_i | total)."""
    if not congruences:
        return total
    solution = solve_congruence(*congruences)
    if solution is None:
        return 0
    return total // solution[1]


def _nondecomposable(total: int, period: int, congruences: List[Tuple[int, int]]) -> int:
    """Как count_congruent, но без e, делящихся на period (характеры с μ^q = μ)."""
    return count_congruent(total, congruences) - count_congruent(total, congruences + [(0, period)])


def count_chars_formula(condition: str, p: int, q: int) -> int:
    """Подсчет по вычетам показателей по модулю p-1 и формулам делимости."""
    domain, case = _parse(condition)
    d = p - 1
    m = (q - 1) // d
    residues = range(d)

    if domain == "nu":
        return (q * q - q) // 2
    if domain == "mu":
        return (q ** 3 - q) // 3

    if domain == "alpha":
        def alpha_label(r: int) -> str:
            if (3 * r) % d:
                return "cube_nontrivial"
            return "cube_trivial" if r % d else "trivial"
        return m * sum(1 for r in residues if case == "any" or alpha_label(r) == case)

    if domain == "pair":
        def pair_label(ra: int, rb: int) -> str:
            if (2 * ra + rb) % d:
                return "a2b_nontrivial"
            if rb % d:
                return "a2b_trivial"
            return "a2_b_trivial" if ra % d else "a_b_trivial"
        total = 0
        for ra in residues:
            for rb in residues:
                if case == "any" or pair_label(ra, rb) == case:
                    total += m * m - (m if ra == rb else 0)
        return total

    if domain == "triple":
        def triple_label(rs: Tuple[int, int, int]) -> str:
            if sum(rs) % d:
                return "abc_nontrivial"
            trivial = sum(1 for r in rs if r % d == 0)
            return {0: "none_trivial", 1: "one_trivial", 3: "all_trivial"}[trivial]
        ordered = 0
        for r1 in residues:
            for r2 in residues:
                for r3 in residues:
                    if case != "any" and triple_label((r1, r2, r3)) != case:
                        continue
                    equal_pairs = (r1 == r2) + (r1 == r3) + (r2 == r3)
                    ordered += m ** 3 - equal_pairs * m * m + (2 * m if r1 == r2 == r3 else 0)
        return ordered // 6

    if domain == "rho":
        total = q * q - 1
        period = q + 1
        ordered = 0
        for r in residues:
            if case in ("any", "anu_nontrivial"):
                all_nu = _nondecomposable(total, period, [])
                matching = _nondecomposable(total, period, [((-r) % d, d)])
                ordered += m * (all_nu if case == "any" else all_nu - matching)
            elif case == "anu_trivial" and r != 0:
                ordered += m * _nondecomposable(total, period, [((-r) % d, d)])
            elif case == "nu_p2_nontrivial" and r == 0:
                ordered += m * (
                    _nondecomposable(total, period, [(0, d)])
                    - _nondecomposable(total, period, [(0, p * p - 1)])
                )
            elif case == "nu_p2_trivial" and r == 0:
                ordered += m * _nondecomposable(total, period, [(0, p * p - 1)])
        return ordered // 2

    # sigma
    total = q ** 3 - 1
    period = q * q + q + 1
    if case == "any":
        ordered = _nondecomposable(total, period, [])
    elif case == "mu_nontrivial":
        ordered = _nondecomposable(total, period, []) - _nondecomposable(total, period, [(0, d)])
    elif case == "mu_p3_nontrivial":
        ordered = _nondecomposable(total, period, [(0, d)]) - _nondecomposable(total, period, [(0, p ** 3 - 1)])
    else:
        ordered = _nondecomposable(total, period, [(0, p ** 3 - 1)])
    return ordered // 3


CountMethod = Callable[[str, int, int], int]


def count_chars(condition: str, p: int, q: int, method: str = "auto") -> int:
    """
    Число характеров (или их орбит Галуа), удовлетворяющих условию.

    method: auto | enumerate | formula.
    """
    domain, _ = _parse(condition)
    if method == "auto":
        cost = enumeration_cost(domain, q)
        method = "enumerate" if cost <= settings.CHAR_ENUMERATION_LIMIT else "formula"
    if method == "enumerate":
        return count_chars_enumerate(condition, p, q)
    if method == "formula":
        return count_chars_formula(condition, p, q)
    raise ValueError(f"unknown counting method {method!r}")

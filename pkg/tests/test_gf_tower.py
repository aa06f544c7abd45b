"""Башня полей, нормы и ограничения характеров."""
import pytest

from gl3trace.exceptions import LevelMismatch, NotASubgroup, NotCongruent1Mod3, NotPrime, ReduciblePolynomial
from gl3trace.models.field import FieldElem, FieldLevel, MultChar
from gl3trace.services.gf_tower_service import (
    build_field,
    build_prime_field,
    char_restriction_trivial,
    char_restriction_trivial_bruteforce,
    find_cube_nonresidue,
    is_irreducible,
    norm,
    norm_to_subfield,
    restricted_exponent,
    smallest_irreducible,
)


def test_smallest_irreducible():
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    assert smallest_irreducible(2, 3) == (1, 1, 0, 1)
    assert is_irreducible((1, 0, 1, 1), 2)
    assert not is_irreducible((0, 1, 1), 2)


def test_f4_arithmetic(f4):
    # x = 2, x² = x + 1 = 3
    assert f4.poly == (1, 1, 1)
    assert f4.generator == 2
    assert f4.mul(2, 2) == 3
    assert f4.mul(2, 3) == 1
    assert f4.add(2, 3) == 1
    assert f4.inv(3) == 2


def test_field_axioms_f9():
    ctx = build_field(3, 2, with_tower=False)
    for a in ctx.units():
        assert ctx.mul(a, ctx.inv(a)) == 1
        assert ctx.add(a, ctx.neg(a)) == 0
        assert ctx.pow(a, ctx.q - 1) == 1
    for a in range(ctx.q):
        for b in range(ctx.q):
            assert ctx.mul(a, b) == ctx.mul(b, a)
            assert ctx.sub(ctx.add(a, b), b) == a


def test_prime_subfield_embeds_by_code(f4):
    assert f4.subfield_elements(1) == [0, 1]
    assert all(f4.frobenius(a) == a for a in (0, 1))


def test_cube_nonresidue():
    assert find_cube_nonresidue(build_field(2, 2, with_tower=False)) == 2
    assert find_cube_nonresidue(build_field(7, 1, with_tower=False)) == 2
    ctx = build_field(7, 1, with_tower=False)
    assert find_cube_nonresidue(ctx, "generator") == ctx.generator


@pytest.mark.parametrize("p, n", [(2, 2), (7, 1), (13, 1), (2, 4), (19, 1), (5, 2)])
def test_default_delta_is_smallest_code_nonresidue(p, n):
    ctx = build_field(p, n, with_tower=False)
    smallest = min(a for a in ctx.units() if ctx.pow(a, ctx.order // 3) != 1)
    assert find_cube_nonresidue(ctx) == smallest
    assert ctx.pow(find_cube_nonresidue(ctx, "generator"), ctx.order // 3) != 1


def test_generator_rule_differs_at_q7():
    ctx = build_field(7, 1, with_tower=False)
    assert ctx.generator == 3
    assert find_cube_nonresidue(ctx, "generator") == 3
    assert find_cube_nonresidue(ctx) == 2


@pytest.mark.parametrize("p, n", [(5, 1), (2, 1), (3, 2), (2, 3)])
def test_tower_needs_q_congruent_1_mod_3(p, n):
    with pytest.raises(NotCongruent1Mod3):
        build_field(p, n)


def test_not_prime():
    with pytest.raises(NotPrime):
        build_prime_field(4)


def test_reducible_polynomial_rejected():
    with pytest.raises(ReduciblePolynomial):
        build_field(2, 2, poly=[0, 1, 1], with_tower=False)


def test_cubic_tower(ws4):
    ctx = ws4.ctx
    assert ctx.delta == 2
    assert ctx.top_size == 64
    t = ctx.t_join(0, 1, 0)
    assert ctx.t_mul(ctx.t_mul(t, t), t) == ctx.delta
    for x in range(1, ctx.top_size):
        assert ctx.t_frobenius(ctx.t_frobenius(ctx.t_frobenius(x))) == x
        assert ctx.t_mul(x, ctx.t_inv(x)) == 1


def test_tower_matches_schoolbook(ws7):
    ctx = ws7.ctx
    for x in range(1, ctx.top_size, 37):
        for y in range(1, ctx.top_size, 41):
            assert ctx.t_mul(x, y) == ctx.t_mul_schoolbook(x, y)


def test_norm_lands_in_lower_level(ws4):
    ctx = ws4.ctx
    for x in range(1, ctx.top_size):
        down = norm(ctx, ctx.to_elem(x, FieldLevel.FQ3), FieldLevel.FQ)
        assert down.level == FieldLevel.FQ
        assert ctx.from_elem(down) != 0
    for a in ctx.units():
        assert norm(ctx, ctx.to_elem(a, FieldLevel.FQ), FieldLevel.FP) == FieldElem(FieldLevel.FP, (1,))


def test_norm_is_multiplicative(ws7):
    ctx = ws7.ctx
    x, y = 5, 123
    nx = ctx.from_elem(norm(ctx, ctx.to_elem(x, FieldLevel.FQ3), FieldLevel.FQ))
    ny = ctx.from_elem(norm(ctx, ctx.to_elem(y, FieldLevel.FQ3), FieldLevel.FQ))
    nxy = ctx.from_elem(norm(ctx, ctx.to_elem(ctx.t_mul(x, y), FieldLevel.FQ3), FieldLevel.FQ))
    assert nxy == ctx.mul(nx, ny)


def test_norm_upwards_is_level_mismatch(f4):
    with pytest.raises(LevelMismatch):
        norm(f4, FieldElem(FieldLevel.FP, (1,)), FieldLevel.FQ)
    with pytest.raises(LevelMismatch):
        norm_to_subfield(f4, 2, 3)


@pytest.mark.parametrize("d", [1, 3, 5, 15])
def test_restriction_agrees_with_bruteforce(d):
    for e in range(15):
        c = MultChar(15, e)
        assert char_restriction_trivial(c, d) == char_restriction_trivial_bruteforce(c, d)
        assert (restricted_exponent(c, d) == 0) == char_restriction_trivial(c, d)


def test_restriction_to_non_subgroup():
    with pytest.raises(NotASubgroup):
        char_restriction_trivial(MultChar(15, 1), 4)

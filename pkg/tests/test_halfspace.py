"""Конечное полупространство H_q, действие GL3 и K-орбиты."""
import random

import pytest

from gl3trace.exceptions import HalfspaceError
from gl3trace.models.field import FieldLevel
from gl3trace.services.geometric_service import random_invertible
from gl3trace.services.gl3_service import IDENTITY, enumerate_gl3, group_order, mat_mul
from gl3trace.services.halfspace_service import (
    act,
    act_via_affine,
    affine_to_point,
    apply_to_base,
    base_point,
    build_orbit_table,
    canonical_K_orbit_rep,
    check_orbit_stabilizer,
    enumerate_halfspace,
    gamma_orbit_count,
    halfspace_size,
    k_orbit_count_formula,
    make_point,
    point_to_affine,
    stabilizer_K,
    stabilizer_bruteforce,
)


def test_halfspace_sizes():
    assert halfspace_size(4) == 2880
    assert halfspace_size(7) == 98784
    assert halfspace_size(16) == 15667200


def test_enumeration_q4(ws4):
    points = list(enumerate_halfspace(ws4.ctx))
    assert len(points) == 2880
    assert len(set(points)) == 2880
    assert ws4.p0 in set(points)


def test_base_point(ws4):
    ctx = ws4.ctx
    p0 = base_point(ctx)
    assert apply_to_base(ctx, IDENTITY) == p0
    assert ctx.t_mul(p0.beta, p0.beta) == p0.alpha


def test_invalid_point(ws4):
    with pytest.raises(HalfspaceError):
        make_point(ws4.ctx, 0, 0)
    with pytest.raises(HalfspaceError):
        make_point(ws4.ctx, 1, 2)


def test_action_is_a_group_action(ws4):
    ctx = ws4.ctx
    rng = random.Random(5)
    points = list(enumerate_halfspace(ctx))
    for _ in range(200):
        g, h = random_invertible(ws4, rng), random_invertible(ws4, rng)
        z = rng.choice(points)
        assert act(ctx, g, act(ctx, h, z)) == act(ctx, mat_mul(ctx, g, h), z)
        assert act(ctx, g, z) == act_via_affine(ctx, g, z)


def test_affine_representative(ws4):
    ctx = ws4.ctx
    for z in list(enumerate_halfspace(ctx))[::7]:
        assert affine_to_point(ctx, point_to_affine(ctx, z)) == z


def test_orbit_stabilizer(ws4, ws7):
    assert check_orbit_stabilizer(ws4.ctx)
    assert check_orbit_stabilizer(ws7.ctx)
    assert len(stabilizer_K(ws4.ctx)) == 63
    assert group_order(4) == 63 * halfspace_size(4)


def test_stabilizer_is_k(ws4):
    ctx = ws4.ctx
    found = stabilizer_bruteforce(ctx, enumerate_gl3(ctx, FieldLevel.FQ))
    assert set(found) == set(stabilizer_K(ctx))


def test_k_orbits_q4(ws4):
    table = ws4.orbits
    assert len(table.reps) == 140 == k_orbit_count_formula(4)
    assert sum(table.sizes.values()) == 2880
    assert all(21 % size == 0 for size in table.sizes.values())
    assert table.rep_of[ws4.p0] == ws4.p0


def test_canonical_rep_is_orbit_minimum(ws4):
    ctx = ws4.ctx
    for z in list(enumerate_halfspace(ctx))[::31]:
        assert canonical_K_orbit_rep(ctx, z) == ws4.orbits.rep_of[z]


def test_orbit_table_is_deterministic(ws4):
    assert build_orbit_table(ws4.ctx).reps == ws4.orbits.reps


def test_gamma_orbits(ws4):
    assert gamma_orbit_count(ws4.ctx) == 18


@pytest.mark.slow
def test_k_orbits_q7(ws7):
    assert len(ws7.orbits.reps) == 1736 == k_orbit_count_formula(7)
    assert sum(ws7.orbits.sizes.values()) == 98784
    assert gamma_orbit_count(ws7.ctx) == 1

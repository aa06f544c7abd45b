"""Геометрическая сторона: оракулы орбитальных сумм и прямой след."""
from fractions import Fraction

import pytest

from gl3trace.exceptions import SingularKappa
from gl3trace.models.conjugacy import ClassDescriptor, ClassKind
from gl3trace.models.spherical import SphericalFn
from gl3trace.services.geometric_service import (
    check_bi_invariance,
    constant_fn,
    delta_fn,
    f_at_matrix,
    geometric_side,
    gl2_class,
    horocycle_transform,
    orbital_sum_by_cosets,
    orbital_sum_oracle,
    random_spherical_fn,
)
from gl3trace.services.gl3_service import canonical_rep, elementary, group_order
from gl3trace.services.halfspace_service import k_matrix


def _functions(ws):
    return [constant_fn(1), delta_fn(ws), random_spherical_fn(ws, 1)]


def test_constant_side_is_group_order(ws4, ledger):
    side = geometric_side(ws4, constant_fn(1), ledger)
    assert side.oracle_total == group_order(4)
    assert side.direct_total == group_order(4)
    assert len(side.rows) == 6


@pytest.mark.parametrize("index", [0, 1, 2])
def test_class_sum_matches_direct_trace(ws4, index):
    f = _functions(ws4)[index]
    side = geometric_side(ws4, f)
    assert side.chain_holds


def test_weights_use_oracle_centralizers(ws4):
    side = geometric_side(ws4, constant_fn(1))
    for row in side.rows:
        assert row.weight == Fraction(row.centralizer_g, row.centralizer_gamma)
        if row.descriptor.kind == ClassKind.PAR2:
            assert row.claimed_centralizer_g != row.centralizer_g


def test_orbital_sum_of_constant_is_class_size(ws4):
    for cls in ws4.g_classes[:12]:
        assert orbital_sum_oracle(ws4, constant_fn(1), cls.representative) == cls.class_size


def test_orbit_and_halfspace_methods_agree(ws4):
    f = random_spherical_fn(ws4, 7)
    gamma = canonical_rep(ws4.ctx, ClassDescriptor(ClassKind.PAR1, (1,)))
    by_orbit = orbital_sum_oracle(ws4, f, gamma, method="orbit")
    assert by_orbit == orbital_sum_oracle(ws4, f, gamma, method="halfspace")


def test_coset_oracle(ws4):
    f = random_spherical_fn(ws4, 2)
    gamma = canonical_rep(ws4.ctx, ClassDescriptor(ClassKind.PAR1, (2,)))
    assert orbital_sum_by_cosets(ws4, f, gamma) == orbital_sum_oracle(ws4, f, gamma)


def test_bi_invariance(ws4):
    assert check_bi_invariance(ws4, random_spherical_fn(ws4, 3), samples=50)
    assert check_bi_invariance(ws4, delta_fn(ws4), samples=50)


def test_delta_is_indicator_of_k(ws4):
    f = delta_fn(ws4)
    assert f_at_matrix(ws4, f, k_matrix(ws4.ctx, 5)) == 1
    assert f_at_matrix(ws4, f, elementary(0, 1)) == 0


def test_horocycle_of_constant(ws4):
    # класс скаляра состоит из одной матрицы, класс diag(a, b) при a ≠ b из q(q+1)
    assert horocycle_transform(ws4, constant_fn(1), (1, 0, 0, 1)) == 16
    assert horocycle_transform(ws4, constant_fn(1), (2, 0, 0, 3)) == 16 * 20
    assert len(gl2_class(ws4, (2, 1, 0, 2))) == 15


def test_horocycle_constant_shortcut_matches_table(ws4):
    ones = SphericalFn("ones", values={rep: Fraction(1) for rep in ws4.orbits.reps}, orbits=ws4.orbits)
    for kappa in [(1, 0, 0, 1), (2, 0, 0, 3), (3, 1, 0, 3)]:
        assert horocycle_transform(ws4, ones, kappa) == horocycle_transform(ws4, constant_fn(1), kappa)


def test_singular_kappa(ws4):
    with pytest.raises(SingularKappa):
        horocycle_transform(ws4, constant_fn(1), (1, 1, 1, 1))


@pytest.mark.slow
def test_n1_side_is_orbital_sum_over_classes(ws7):
    side = geometric_side(ws7, random_spherical_fn(ws7, 5))
    assert side.chain_holds
    assert all(row.weight == 1 for row in side.rows)
    assert len(side.rows) == len(ws7.g_classes)

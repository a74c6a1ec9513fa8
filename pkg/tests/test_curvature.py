import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fixture
from lieq import constructions as C
from lieq.curvature import curvature_field, curvature_spheres
from lieq.exceptions import GeometryError
from lieq.legendre import (
    SampledHypersurface,
    legendre_lift_hypersurface,
    legendre_lift_submanifold,
    shape_operator,
)
from lieq.linalg import IndefiniteForm, projective_distance, scalar_product
from lieq.spheres import lie_to_spherical
from lieq.transforms import random_lie_transform


def test_product_torus_curvature_spheres():
    lift = fixture("clifford").lift
    cs = curvature_spheres(lift, 7)
    assert cs.g == 2 and cs.multiplicities == [1, 1]
    assert np.allclose(cs.kappas, [-1, 1], atol=1e-12)
    radii = sorted(np.mod(lie_to_spherical(K).radius, np.pi) for K in cs.spheres)
    assert np.allclose(radii, [np.pi / 4, 3 * np.pi / 4], atol=1e-12)


def test_curvature_spheres_are_lightlike_and_on_the_line():
    lift = fixture("tube").lift
    form = IndefiniteForm.lie(lift.N)
    Z1 = lift.Z1.reshape(-1, lift.N)
    Z2 = lift.Z2.reshape(-1, lift.N)
    for i in (0, 101, 4000):
        for K in curvature_spheres(lift, i).spheres:
            assert abs(scalar_product(K, K, form)) < 1e-12
            span = np.linalg.svd(np.vstack([Z1[i], Z2[i], K]), compute_uv=False)
            assert span[2] < 1e-10 * span[0]


def test_index_forms_agree():
    lift = fixture("clifford").lift
    a = curvature_spheres(lift, 30)
    b = curvature_spheres(lift, np.unravel_index(30, lift.grid.shape))
    assert np.allclose(a.kappas, b.kappas)


def test_principal_values_match_shape_operator():
    fx = fixture("cylinder")
    for i in (3, 77, 500):
        kappa, _ = shape_operator(fx.h, i)
        cs = curvature_spheres(fx.lift, i)
        expanded = sorted(k for k, m in zip(cs.kappas, cs.multiplicities) for _ in range(m))
        assert np.allclose(expanded, kappa, atol=1e-9)


def test_submanifold_lift_curvatures():
    """Torus in R^3 inside R^4: at normal angle theta the values are cos(theta) mu_i and infinity."""
    base = C.torus(resolution=(16, 9))
    h = C.normal_bundle(base, 1, resolution=(16, 9))
    lift = legendre_lift_submanifold(h, 2)
    grid = lift.grid
    for flat in (5, 333, 1200):
        i, j, k = np.unravel_index(flat, grid.shape)
        theta = grid.axes[2][k]
        mu, _ = shape_operator(base, (i, j))
        cs = curvature_spheres(lift, flat)
        assert np.inf in cs.kappas
        finite = sorted(x for x in cs.kappas if np.isfinite(x))
        expected = sorted(np.cos(theta) * mu)
        if abs(np.cos(theta)) > 1e-9:
            assert np.allclose(finite, expected, atol=1e-9)


def test_field_matches_pointwise_calls():
    fx = fixture("cone")
    for i in (0, 150, 1000):
        a = fx.field.at(i)
        b = curvature_spheres(fx.lift, i)
        assert a.g == b.g
        for K, L in zip(a.spheres, b.spheres):
            assert projective_distance(K, L) < 1e-12


@given(st.integers(0, 10_000))
def test_curvature_spheres_transform_covariantly(seed):
    lift = fixture("clifford").lift
    B = random_lie_transform(seed, 3).matrix
    moved = lift.transformed(B)
    i = seed % lift.grid.size
    before = curvature_spheres(lift, i).spheres
    after = curvature_spheres(moved, i).spheres
    for K in before:
        assert min(projective_distance(B @ K, L) for L in after) < 1e-9


def test_finite_difference_lift_close_to_analytic():
    h = C.clifford_torus(resolution=(96, 49))
    fd = SampledHypersurface(h.grid, h.f, h.xi, ambient="spherical")
    cs = curvature_spheres(legendre_lift_hypersurface(fd), 1234)
    assert np.allclose(cs.kappas, [-1, 1], atol=5e-3)


def test_axis_families_on_curvature_line_coordinates():
    assert fixture("clifford").field.axis_families() == [(0,), (1,)]
    tube = fixture("tube").field
    groups = tube.axis_families()
    assert groups is not None and sorted(len(g) for g in groups) == [1, 1, 1]


def test_family_accessors():
    field_ = fixture("clifford").field
    K = field_.family_spheres(("axis", 0))
    assert K.shape[1] == 6
    kap = field_.family_kappas(0)
    assert np.allclose(kap, -1, atol=1e-12)
    with pytest.raises(GeometryError):
        field_.family_spheres(5)


def test_g_counts_on_tube():
    field_ = fixture("tube").field
    values = set(np.unique(field_.g))
    assert values == {2, 3}
    g_mode, _ = field_.interior_mode()
    assert g_mode == 3


def test_curvature_field_on_umbilic_sphere():
    h = C.round_sphere(3, 1.5, resolution=(16, 9))
    field_ = curvature_field(legendre_lift_hypersurface(h))
    assert np.all(field_.g == 1)
    assert field_.multiplicities(3) == (2,)

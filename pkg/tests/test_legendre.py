import numpy as np
import pytest

from conftest import fixture
from lieq import constructions as C
from lieq.exceptions import GeometryError, InputError
from lieq.legendre import (
    LegendreMap,
    SampledHypersurface,
    check_pinkall_conditions,
    focal_singularity_count,
    legendre_lift_hypersurface,
    legendre_lift_submanifold,
    parallel_submanifold,
    projections,
    shape_operator,
    spherical_point_of,
)
from lieq.spheres import inverse_stereographic, lie_to_spherical
from lieq.transforms import random_lie_transform


@pytest.mark.parametrize("name", ["clifford", "torus", "tube", "cylinder", "cone", "great-circle", "cyclide"])
def test_lifts_satisfy_legendre_conditions(name):
    rep = check_pinkall_conditions(fixture(name).lift)
    assert rep.valid, rep.summary()


def test_transformed_lift_still_legendre():
    lift = fixture("clifford").lift.transformed(random_lie_transform(11, 3).matrix)
    assert check_pinkall_conditions(lift).valid


def test_broken_lift_fails_contact_condition():
    lift = fixture("clifford").lift
    Z1, Z2, dZ1, dZ2 = lift.Z1, lift.Z2, lift.dZ1, lift.dZ2
    # rotate the second vector field so it no longer contacts the first
    bad = LegendreMap(lift.grid, Z1, Z2 + 0.3 * np.roll(Z1, 1, axis=-1), dZ1, dZ2)
    rep = check_pinkall_conditions(bad)
    assert not rep.valid


def test_hypersurface_lift_rejects_wrong_dimension():
    h = C.normal_bundle(C.great_sphere(2, resolution=(16, 9)), 1, resolution=(16, 9))
    with pytest.raises(GeometryError):
        legendre_lift_hypersurface(h)
    with pytest.raises(GeometryError):
        legendre_lift_submanifold(h, 0)


def test_sampled_hypersurface_shape_checks():
    h = fixture("clifford").h
    with pytest.raises(InputError):
        SampledHypersurface(h.grid, h.f, h.xi[..., :2])
    with pytest.raises(InputError):
        SampledHypersurface(h.grid, h.f, h.xi, df=h.df)


def test_euclidean_projection_is_stereographic_preimage():
    fx = fixture("torus")
    sph = projections(fx.lift, "spherical")
    euc = projections(fx.lift, "euclidean")
    assert np.allclose(inverse_stereographic(sph.f), euc.f, atol=1e-9)
    assert np.allclose(euc.f, fx.h.f, atol=1e-9)
    assert np.allclose(euc.xi, fx.h.xi, atol=1e-9)


def test_spherical_projection_recovers_product_torus():
    fx = fixture("clifford")
    assert np.allclose(spherical_point_of(fx.lift), fx.h.f, atol=1e-12)


def test_shape_operator_product_torus():
    h = fixture("clifford").h
    for idx in (0, 17, 200):
        kappa, _ = shape_operator(h, idx)
        assert np.allclose(kappa, [-1, 1], atol=1e-10)


def test_shape_operator_finite_differences_agree():
    h = C.clifford_torus(resolution=(96, 49))
    fd = SampledHypersurface(h.grid, h.f, h.xi, ambient="spherical")
    for idx in (5, 333, 4000):
        exact, _ = shape_operator(h, idx)
        approx, _ = shape_operator(fd, idx)
        assert np.allclose(exact, approx, atol=5e-3)


def test_small_sphere_curvature_is_cot_radius():
    eps = 0.4
    h = C.parallel_hypersurface(C.great_sphere(3, resolution=(16, 9)), eps)
    rho = np.pi / 2 - eps
    for idx in (3, 40, 100):
        kappa, _ = shape_operator(h, idx)
        assert np.allclose(np.abs(kappa), 1 / np.tan(rho), atol=1e-10)
        assert np.ptp(kappa) < 1e-10


def test_parallel_submanifold_point_map():
    fx = fixture("clifford")
    t = 0.3
    moved = parallel_submanifold(fx.lift, t)
    expected = np.cos(t) * fx.h.f - np.sin(t) * fx.h.xi
    assert np.allclose(spherical_point_of(moved), expected, atol=1e-10)


def test_parallel_shifts_curvature_sphere_radii():
    fx = fixture("clifford")
    t = 0.3
    moved = parallel_submanifold(fx.lift, t)
    from lieq.curvature import curvature_spheres

    for idx in (0, 50):
        before = sorted((lie_to_spherical(K) for K in curvature_spheres(fx.lift, idx).spheres),
                        key=lambda s: tuple(s.center))
        after = [lie_to_spherical(K) for K in curvature_spheres(moved, idx).spheres]
        for s in before:
            match = [a for a in after if np.allclose(a.center, s.center, atol=1e-9)]
            assert match
            shift = np.mod(match[0].radius - s.radius + np.pi / 2, np.pi) - np.pi / 2
            assert abs(abs(shift) - t) < 1e-9


def test_focal_points_of_product_torus():
    fx = fixture("clifford")
    scan = focal_singularity_count(fx.lift, 0)
    assert scan.count == 2
    assert np.allclose(sorted(scan.singular_t), [np.pi / 4, 3 * np.pi / 4], atol=1e-7)


def test_focal_points_of_great_circle():
    fx = fixture("great-circle")
    scan = focal_singularity_count(fx.lift, 10)
    assert scan.count == 2
    assert np.allclose(scan.singular_t, [0, np.pi / 2], atol=1e-7)


def test_focal_points_of_umbilic_sphere():
    eps = 0.4
    lift = legendre_lift_hypersurface(C.parallel_hypersurface(C.great_sphere(3, resolution=(16, 9)), eps))
    scan = focal_singularity_count(lift, 30)
    assert scan.count == 1
    assert scan.count <= lift.n - 1


def test_lift_evaluator_matches_grid():
    lift = fixture("clifford").lift
    pts = lift.grid.flat_points()[:5]
    Z1, Z2, _, _ = lift.evaluate(pts)
    assert np.allclose(Z1, lift.Z1.reshape(-1, lift.N)[:5])
    assert np.allclose(Z2, lift.Z2.reshape(-1, lift.N)[:5])

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fixture
from lieq import constructions as C
from lieq.curvature import curvature_field, curvature_spheres
from lieq.dupin import certify_dupin, cross_ratio, mobius_curvature
from lieq.exceptions import GeometryError, InputError
from lieq.legendre import legendre_lift_hypersurface, shape_operator


def _sorted_kappas(h, idx):
    kappa, _ = shape_operator(h, idx)
    return np.sort(kappa)


@pytest.mark.parametrize("p,q,r", [(1, 1, 0.6), (2, 1, 0.8), (1, 2, 0.3)])
def test_product_of_spheres_curvatures(p, q, r):
    s = np.sqrt(1 - r * r)
    h = C.product_of_spheres(p, q, r, resolution=(8, 5) if p + q == 2 else (8, 5))
    expected = np.sort([s / r] * q + [-r / s] * p)
    for idx in (0, h.grid.size // 2, h.grid.size - 1):
        assert np.allclose(_sorted_kappas(h, idx), expected, atol=1e-9)
    assert np.allclose(np.linalg.norm(h.f, axis=-1), 1)
    assert np.allclose(np.sum(h.f * h.xi, axis=-1), 0, atol=1e-14)


def test_product_of_spheres_validation():
    with pytest.raises(GeometryError):
        C.product_of_spheres(1, 1, 0.5, 0.5)
    with pytest.raises(InputError):
        C.product_of_spheres(0, 1)


def test_torus_curvatures():
    R, a = 2.0, 1.0
    h = C.torus(R, a, resolution=(16, 9))
    for idx in (1, 40, 100):
        i, j = np.unravel_index(idx, h.grid.shape)
        v = h.grid.axes[1][j]
        expected = np.sort([-1 / a, -np.cos(v) / (R + a * np.cos(v))])
        assert np.allclose(_sorted_kappas(h, idx), expected, atol=1e-9)
    with pytest.raises(GeometryError):
        C.torus(1.0, 2.0)


def test_cylinder_adds_flat_directions():
    h = C.cylinder(C.torus_patch(resolution=(12, 7)), 2, resolution=(12, 7))
    assert h.n == 5 and h.d == 4
    lift = legendre_lift_hypersurface(h)
    cs = curvature_spheres(lift, 100)
    assert cs.g == 3
    zero = [m for k, m in zip(cs.kappas, cs.multiplicities) if abs(k) < 1e-9]
    assert zero == [2]
    with pytest.raises(InputError):
        C.cylinder(C.clifford_torus((8, 5)))


def test_pinkall_three_families_has_flat_family():
    h = fixture("pinkall:111").h
    kap = np.array([_sorted_kappas(h, i) for i in range(0, h.grid.size, 37)])
    # the last cylinder contributes the curvature zero everywhere
    assert np.all(np.min(np.abs(kap), axis=1) < 1e-9)


@pytest.mark.parametrize("mults", [(1, 2), (2, 1, 1), (1, 1, 2)])
def test_pinkall_multiplicities(mults):
    h = C.pinkall_generator(mults, resolution=(10, 5))
    field_ = curvature_field(legendre_lift_hypersurface(h))
    rep = certify_dupin(field_.lift, field_)
    assert rep.proper
    assert rep.g_mode == len(mults)
    _, mask = field_.interior_mode()
    assert sorted(field_.multiplicities(int(np.flatnonzero(mask)[0]))) == sorted(mults)
    assert h.meta["multiplicities"] == mults


def test_pinkall_input_validation():
    with pytest.raises(InputError):
        C.pinkall_generator(())
    with pytest.raises(InputError):
        C.pinkall_generator((1, 0))


def test_cone_rulings_and_validation():
    h = fixture("cone").h
    for idx in (5, 300):
        assert np.min(np.abs(_sorted_kappas(h, idx))) < 1e-9
    with pytest.raises(GeometryError):
        C.cone(C.clifford_torus((8, 5)), (0.0, 1.0))
    with pytest.raises(InputError):
        C.cone(C.torus(resolution=(8, 5)))


def test_revolve_requires_base_off_axis():
    with pytest.raises(GeometryError):
        C.revolve(C.round_sphere(2, 1.0, resolution=(8, 5)))
    with pytest.raises(GeometryError):
        C.revolved_sphere(1, 2.0, 1.0)


def test_revolved_sphere_records_modulus():
    h = C.revolved_sphere(1, -0.5, 2.0, resolution=(12, 7))
    assert h.meta["modulus"] == pytest.approx(0.25)
    assert h.construction["modulus"] == pytest.approx(0.25)
    rep = certify_dupin(legendre_lift_hypersurface(h))
    assert rep.proper and rep.g_mode == 2


def test_tube_curvature_and_focal_guard():
    eps = 0.25
    h = fixture("tube").h
    for idx in (7, 500, 2000):
        assert np.any(np.abs(_sorted_kappas(h, idx) + 1 / eps) < 1e-8)
    with pytest.raises(GeometryError):
        C.tube(C.torus(resolution=(8, 5)), 1.5)
    with pytest.raises(GeometryError):
        C.tube(C.torus(resolution=(8, 5)), -0.1)


def test_parallel_hypersurface_spherical_shift():
    h = C.clifford_torus((8, 5))
    eps = 0.3
    moved = C.parallel_hypersurface(h, eps)
    assert np.allclose(np.linalg.norm(moved.f, axis=-1), 1)
    # cot(pi/4 - eps) and cot(3pi/4 - eps)
    expected = np.sort([1 / np.tan(np.pi / 4 - eps), 1 / np.tan(3 * np.pi / 4 - eps)])
    assert np.allclose(_sorted_kappas(moved, 3), expected, atol=1e-9)


def test_inversion_preserves_curvature_sphere_count():
    base = C.torus_patch(resolution=(12, 7))
    image = C.sphere_inversion(base, [0.5, 0.0, 3.0], 1.5)
    assert image.construction["variant"] == "invert"
    assert np.allclose(np.linalg.norm(image.xi, axis=-1), 1)
    assert certify_dupin(legendre_lift_hypersurface(image)).g_mode == 2
    with pytest.raises(GeometryError):
        C.sphere_inversion(base, base.f[0, 0], 1.0)


def test_find_inversion_center_clears_zero_curvature():
    base = C.torus_patch(resolution=(12, 7))
    c = C.find_inversion_center(base)
    image = C.sphere_inversion(base, c, 1.0)
    kap = np.array([_sorted_kappas(image, i) for i in range(image.grid.size)])
    assert np.min(np.abs(kap)) > 0


def test_psi_profile_values():
    prof = C.constant_psi_profile(np.pi / 6)
    assert np.allclose(prof.mu, [-np.sqrt(3), 0, np.sqrt(3)], atol=1e-12)
    assert prof.psi == pytest.approx(0.5)
    assert mobius_curvature(*prof.mu) == pytest.approx(0.5)
    assert C.constant_psi_profile(np.pi / 4).psi == pytest.approx(0.7320508, abs=1e-7)
    with pytest.raises(GeometryError):
        C.constant_psi_profile(np.pi / 3)
    with pytest.raises(GeometryError):
        C.constant_psi_profile(0.3, np.pi / 2)


@settings(max_examples=40)
@given(st.floats(0.05, np.pi / 3 - 0.05), st.floats(-1.4, 1.4))
def test_psi_profile_is_independent_of_normal_angle(theta, alpha):
    """The tube point's cross-ratio equals the closed form for every normal angle."""
    prof = C.constant_psi_profile(theta, alpha)
    assert cross_ratio(*prof.kappa_pairs) == pytest.approx(prof.psi, abs=1e-10)
    assert cross_ratio(*prof.kappa_pairs) == pytest.approx(
        cross_ratio(*C.constant_psi_profile(theta).kappa_pairs), abs=1e-10)


@pytest.mark.parametrize("name", ["clifford", "tube", "cone", "cyclide", "pinkall:111"])
def test_build_reproduces_recipe(name):
    h = fixture(name).h
    again = C.build(h.construction)
    assert np.array_equal(again.f, h.f)
    assert np.array_equal(again.xi, h.xi)


def test_build_rejects_unknown_recipes():
    with pytest.raises(InputError):
        C.build({"variant": "klein-bottle"})
    with pytest.raises(InputError):
        C.build({"p": 1})


def test_great_sphere_and_round_sphere():
    g = C.great_sphere(3, (8, 5))
    assert np.allclose(g.f[..., -1], 0) and np.allclose(g.xi[..., -1], 1)
    s = C.round_sphere(3, 2.0, [1.0, 0, 0], (8, 5))
    assert np.allclose(_sorted_kappas(s, 4), [0.5, 0.5])
    field_ = curvature_field(legendre_lift_hypersurface(s))
    assert np.all(field_.g == 1)

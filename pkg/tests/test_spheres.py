import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lieq.exceptions import ImproperPointError, InputError, NotOnQuadricError
from lieq.linalg import IndefiniteForm, projective_distance, scalar_product
from lieq.spheres import (
    ImproperPoint,
    LieCoord,
    Plane,
    ProperPoint,
    Sphere,
    SphericalSphere,
    canonical_scale,
    euclidean_to_lie,
    inverse_stereographic,
    lie_to_euclidean,
    lie_to_spherical,
    mobius_form,
    mobius_orthogonal,
    mobius_representative,
    point_on_lie_sphere,
    spherical_to_lie,
    stereographic,
)

coord = st.floats(-5, 5, allow_nan=False)
point3 = arrays(np.float64, 3, elements=coord)
radius = st.floats(0.05, 5).flatmap(lambda r: st.sampled_from([r, -r]))


def test_sphere_hand_value():
    L = euclidean_to_lie(Sphere(np.array([1.0, 0, 0]), 2.0))
    assert np.allclose(L.coords, [-1, 2, 1, 0, 0, 2])
    assert L.quadric_residual() == 0.0


def test_inverse_hand_value():
    s = lie_to_euclidean(LieCoord(np.array([-1, 2, 1, 0, 0, 2.0])))
    assert isinstance(s, Sphere)
    assert np.allclose(s.center, [1, 0, 0]) and s.radius == 2.0


def test_special_objects():
    assert isinstance(lie_to_euclidean(np.array([1, -1, 0, 0, 0, 0.0])), ImproperPoint)
    assert np.allclose(euclidean_to_lie(ImproperPoint(3)).coords, [1, -1, 0, 0, 0, 0])
    plane = lie_to_euclidean(euclidean_to_lie(Plane(np.array([0, 0, 1.0]), 2.0)))
    assert isinstance(plane, Plane) and plane.offset == 2.0
    pt = lie_to_euclidean(euclidean_to_lie(ProperPoint(np.array([1.0, 2, 3]))))
    assert isinstance(pt, ProperPoint)


def test_table_normalization():
    for obj in [ProperPoint(np.array([1.0, 2, 3])), Sphere(np.array([0.5, -1, 2]), -1.5)]:
        c = euclidean_to_lie(obj).coords
        assert c[0] + c[1] == pytest.approx(1.0)


def test_off_quadric_rejected():
    with pytest.raises(NotOnQuadricError):
        lie_to_euclidean(np.array([1.0, 0, 0, 0, 0, 0]))
    with pytest.raises(InputError):
        LieCoord(np.zeros(6))


@given(point3, radius)
def test_euclidean_round_trip(p, r):
    s = Sphere(p, r)
    back = lie_to_euclidean(euclidean_to_lie(s))
    assert np.allclose(back.center, p, atol=1e-10) and abs(back.radius - r) < 1e-10


@given(arrays(np.float64, 4, elements=st.floats(-1, 1)), st.floats(-1.55, 1.55))
def test_spherical_round_trip(c, rho):
    if np.linalg.norm(c) < 1e-3:
        c = np.array([1.0, 0, 0, 0])
    s = SphericalSphere(c / np.linalg.norm(c), rho)
    back = lie_to_spherical(spherical_to_lie(s))
    assert np.allclose(back.center, s.center, atol=1e-10) and abs(back.radius - rho) < 1e-10


def test_spherical_special_cases():
    p = np.array([0.0, 1, 0, 0])
    assert np.allclose(spherical_to_lie(SphericalSphere(p, 0.0)).coords, [1, 0, 1, 0, 0, 0])
    great = lie_to_spherical(np.array([0.0, 0, 1, 0, 0, 1]))
    assert np.allclose(great.center, p) and great.radius == pytest.approx(np.pi / 2)


@given(point3, radius)
def test_euclidean_and_spherical_views_agree(p, r):
    """Every sphere is both a Euclidean and a spherical object on the same quadric point."""
    L = euclidean_to_lie(Sphere(p, r))
    sph = lie_to_spherical(L)
    assert projective_distance(spherical_to_lie(sph).coords, L.coords) < 1e-9


@given(point3)
def test_stereographic_unit_and_inverse(u):
    y = stereographic(u)
    assert abs(np.linalg.norm(y) - 1) < 1e-12
    assert np.allclose(inverse_stereographic(y), u, atol=1e-9 * (1 + u @ u))


def test_stereographic_pole():
    assert np.allclose(stereographic(np.zeros(3)), [1, 0, 0, 0])
    with pytest.raises(ImproperPointError):
        inverse_stereographic(np.array([-1.0, 0, 0, 0]))


def test_point_sphere_lie_vector_projects_stereographically(rng):
    """The point sphere of u and the spherical point sphere of sigma(u) coincide."""
    for _ in range(20):
        u = rng.normal(size=3)
        L = euclidean_to_lie(ProperPoint(u))
        sph = lie_to_spherical(L)
        assert abs(sph.radius) < 1e-12
        assert np.allclose(sph.center, stereographic(u))


def test_canonical_scale_rules():
    assert np.allclose(canonical_scale(np.array([3.0, 1, 2, 0, 0, 4])), np.array([3, 1, 2, 0, 0, 4]) / 4)
    plane = np.array([2.0, -2.0, 1, 0, 0, 0.5])
    assert canonical_scale(plane)[-1] == 1.0
    assert canonical_scale(np.array([-2.0, 2.0, 0, 0, 0, 0]))[0] == 1.0


def test_incidence_and_mobius():
    sphere = euclidean_to_lie(Sphere(np.zeros(3), 1.0)).coords
    on = euclidean_to_lie(ProperPoint(np.array([0.0, 1, 0]))).coords
    off = euclidean_to_lie(ProperPoint(np.array([0.0, 2, 0]))).coords
    assert point_on_lie_sphere(sphere, on) and not point_on_lie_sphere(sphere, off)
    unit = Sphere(np.zeros(3), 1.0)
    assert mobius_orthogonal(unit, Plane(np.array([1.0, 0, 0]), 0.0))
    assert mobius_orthogonal(unit, Sphere(np.array([np.sqrt(2), 0, 0]), 1.0))
    assert not mobius_orthogonal(unit, Sphere(np.array([3.0, 0, 0]), 1.0))
    with pytest.raises(InputError):
        mobius_representative(ProperPoint(np.zeros(3)))


@given(point3, st.floats(0.05, 5))
def test_mobius_norm_is_radius_squared(p, r):
    xi = mobius_representative(Sphere(p, r))
    val = scalar_product(xi, xi, mobius_form(3))
    assert abs(val - r * r) < 1e-10 * max(1.0, xi @ xi)


def test_lie_form_signature():
    assert IndefiniteForm.lie(6).signature == (4, 2)

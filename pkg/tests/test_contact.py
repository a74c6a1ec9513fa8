import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lieq.contact import (
    ContactElement,
    PencilLine,
    contact_element_to_pencil,
    euclidean_contact,
    line_on_quadric,
    oriented_contact,
    pencil_canonical_basis,
    pencil_sphere_at,
    pencil_to_contact_element,
)
from lieq.exceptions import GeometryError, InputError
from lieq.spheres import Plane, ProperPoint, Sphere, euclidean_to_lie, lie_to_euclidean, lie_to_spherical


def _lie(center, r):
    return euclidean_to_lie(Sphere(np.asarray(center, float), r))


def test_hand_contact_cases():
    assert oriented_contact(_lie([0, 0, 0], 1.0), _lie([1, 0, 0], 2.0))
    assert not oriented_contact(_lie([0, 0, 0], 1.0), _lie([1, 0, 0], -2.0))
    a, b = Sphere(np.zeros(3), 1.0), Sphere(np.array([1.0, 0, 0]), 2.0)
    assert euclidean_contact(a, b)


def test_contact_with_planes_and_points():
    plane = Plane(np.array([0, 0, 1.0]), 1.0)
    sphere = Sphere(np.array([0, 0, 3.0]), 2.0)
    assert oriented_contact(euclidean_to_lie(plane), euclidean_to_lie(sphere))
    assert euclidean_contact(plane, sphere)
    pt = ProperPoint(np.array([5.0, -2.0, 1.0]))
    assert oriented_contact(euclidean_to_lie(plane), euclidean_to_lie(pt))
    with pytest.raises(InputError):
        oriented_contact(np.ones(6), np.ones(7))


def _contact_element(rng, n=3):
    p = rng.normal(size=n + 1)
    p /= np.linalg.norm(p)
    xi = rng.normal(size=n + 1)
    xi -= (xi @ p) * p
    return p, xi / np.linalg.norm(xi)


def test_line_on_quadric_cases(rng):
    p, xi = _contact_element(rng)
    k1 = np.concatenate([[1.0], p, [0.0]])
    k2 = np.concatenate([[0.0], xi, [1.0]])
    assert line_on_quadric(k1, k2)
    assert not line_on_quadric(_lie([0, 0, 0], 1.0), _lie([0, 0, 0], 2.0))
    with pytest.raises(GeometryError):
        PencilLine(_lie([0, 0, 0], 1.0), _lie([0, 0, 0], 2.0))
    with pytest.raises(GeometryError):
        PencilLine(k1, 3 * k1)


def test_canonical_basis_from_curvature_spheres(rng):
    p, xi = _contact_element(rng)
    k1 = np.concatenate([[1.0], p, [0.0]])
    k2 = np.concatenate([[0.0], xi, [1.0]])
    spheres = [np.cos(t) * k1 + np.sin(t) * k2 for t in (np.pi / 4, np.pi / 3)]
    point, great = pencil_canonical_basis(*spheres)
    assert np.allclose(point, k1) and np.allclose(great, k2)


def test_euclidean_pencil_point_sphere():
    """Spheres tangent to a plane at u: the point sphere is u and the plane is in the pencil."""
    u = np.array([1.0, -2.0, 0.5])
    N = np.array([0.0, 0.6, 0.8])
    plane = Plane(N, u @ N)
    spheres = [euclidean_to_lie(Sphere(u + r * N, r)) for r in (0.7, -1.3)]
    line = PencilLine(*spheres)
    pt = lie_to_euclidean(line.point_sphere)
    assert isinstance(pt, ProperPoint) and np.allclose(pt.point, u)
    assert line.contains(euclidean_to_lie(plane).coords)


@given(st.integers(0, 10_000))
def test_contact_element_round_trip(seed):
    rng = np.random.default_rng(seed)
    p, xi = _contact_element(rng, int(rng.integers(1, 5)))
    el = ContactElement(p, xi)
    back = pencil_to_contact_element(contact_element_to_pencil(el))
    assert np.allclose(back.point, p, atol=1e-12) and np.allclose(back.normal, xi, atol=1e-12)


def test_pencil_sphere_radius_and_center(rng):
    p, xi = _contact_element(rng)
    line = contact_element_to_pencil(ContactElement(p, xi))
    s = lie_to_spherical(pencil_sphere_at(line, 0.3))
    assert abs(s.radius - 0.3) < 1e-10
    assert np.allclose(s.center, np.cos(0.3) * p + np.sin(0.3) * xi, atol=1e-10)


def test_contact_element_validation():
    with pytest.raises(GeometryError):
        ContactElement(np.array([1.0, 0, 0]), np.array([1.0, 0, 0]))
    with pytest.raises(GeometryError):
        ContactElement(np.array([2.0, 0, 0]), np.array([0.0, 1, 0]))
    with pytest.raises(InputError):
        ContactElement(np.array([1.0, 0]), np.array([0.0, 1, 0]))


def test_pencil_equality_is_basis_independent(rng):
    p, xi = _contact_element(rng)
    k1 = np.concatenate([[1.0], p, [0.0]])
    k2 = np.concatenate([[0.0], xi, [1.0]])
    a = PencilLine(k1, k2)
    b = PencilLine(2 * (k1 + k2), -(k1 - 0.5 * k2))
    assert a == b

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lieq.contact import ContactElement, PencilLine, contact_element_to_pencil, oriented_contact
from lieq.exceptions import InputError, NotInGroupError
from lieq.linalg import IndefiniteForm, projective_distance
from lieq.spheres import (
    Plane,
    ProperPoint,
    Sphere,
    SphericalSphere,
    euclidean_to_lie,
    lie_to_euclidean,
    lie_to_spherical,
    spherical_to_lie,
)
from lieq.transforms import (
    LieTransform,
    MobiusTransform,
    apply,
    conformal_factor,
    euclidean_motion,
    from_mobius,
    inversion,
    orientation_flip,
    parallel,
    random_lie_transform,
    validate,
)

seeds = st.integers(0, 2**31 - 1)


def test_orientation_flip_is_valid_and_flips():
    G = orientation_flip(3)
    validate(np.diag([1, 1, 1, 1, 1, -1.0]))
    s = lie_to_euclidean(apply(G, euclidean_to_lie(Sphere(np.array([1.0, 2, 3]), 0.5))))
    assert np.allclose(s.center, [1, 2, 3]) and s.radius == pytest.approx(-0.5)


def test_validate_rejects():
    with pytest.raises(NotInGroupError):
        validate(2 * np.eye(6))
    with pytest.raises(InputError):
        validate(np.ones((3, 4)))


@given(seeds, st.integers(1, 5))
def test_random_transforms_are_in_group(seed, n):
    B = random_lie_transform(seed, n)
    validate(B.matrix)
    assert np.linalg.det(B.matrix) == pytest.approx(1.0, rel=1e-8)


def test_random_transform_is_reproducible():
    assert random_lie_transform(7, 3).same_map(random_lie_transform(7, 3))
    assert not random_lie_transform(7, 3).same_map(random_lie_transform(8, 3))


def test_inverse_and_composition():
    B = random_lie_transform(1, 3)
    assert (B @ B.inverse()).same_map(LieTransform(np.eye(6)))


def test_boost_fixes_point_sphere_hyperplane():
    a = 0.7
    A = np.eye(5)
    A[:2, :2] = [[np.cosh(a), np.sinh(a)], [np.sinh(a), np.cosh(a)]]
    B = from_mobius(MobiusTransform(A)).matrix
    e = np.eye(6)[-1]
    assert np.allclose(B @ e, e)
    pt = euclidean_to_lie(ProperPoint(np.array([0.3, -1.0, 2.0]))).coords
    assert abs((B @ pt)[-1]) < 1e-14


def test_mobius_and_flip_agree_on_unoriented_spheres(rng):
    # Lorentz matrix built from a boost and a rotation
    M = np.eye(5)
    t = 0.4
    M[:2, :2] = [[np.cosh(t), np.sinh(t)], [np.sinh(t), np.cosh(t)]]
    Q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    R = np.eye(5)
    R[2:, 2:] = Q
    P = from_mobius(M @ R)
    GP = orientation_flip(3) @ P
    for _ in range(100):
        s = euclidean_to_lie(Sphere(rng.uniform(-2, 2, 3), rng.uniform(0.2, 2)))
        a = lie_to_euclidean(apply(P, s))
        b = lie_to_euclidean(apply(GP, s))
        if isinstance(a, Sphere):
            assert np.allclose(a.center, b.center) and abs(abs(a.radius) - abs(b.radius)) < 1e-10
        else:
            assert isinstance(b, Plane)


def test_parallel_map():
    p = np.array([0.0, 1.0, 0, 0])
    k = np.concatenate([[1.0], p, [0.0]])
    t = 0.3
    assert np.allclose(parallel(t, 3).matrix @ k, np.concatenate([[np.cos(t)], p, [np.sin(t)]]))
    s = lie_to_spherical(apply(parallel(0.2, 3), spherical_to_lie(SphericalSphere(p, 0.5))))
    assert np.allclose(s.center, p) and abs(s.radius - 0.7) < 1e-10


def test_inversion_fixes_its_sphere_and_swaps_center_with_infinity(rng):
    c, r = np.array([1.0, 0, -1]), 2.0
    T = inversion(c, r)
    on = euclidean_to_lie(ProperPoint(c + r * np.array([0.6, 0.8, 0])))
    assert projective_distance(apply(T, on).coords, on.coords) < 1e-12
    img = lie_to_euclidean(apply(T, euclidean_to_lie(ProperPoint(c))))
    assert img.__class__.__name__ == "ImproperPoint"
    u = rng.normal(size=3)
    img = lie_to_euclidean(apply(T, euclidean_to_lie(ProperPoint(u))))
    expected = c + r * r * (u - c) / np.sum((u - c) ** 2)
    assert np.allclose(img.point, expected)


def test_euclidean_motion(rng):
    Q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    b = rng.normal(size=3)
    T = euclidean_motion(Q, b)
    s = Sphere(rng.normal(size=3), 0.7)
    img = lie_to_euclidean(apply(T, euclidean_to_lie(s)))
    assert np.allclose(img.center, Q @ s.center + b) and img.radius == pytest.approx(0.7)


def test_conformal_factor_examples():
    B = random_lie_transform(2, 3).matrix
    assert conformal_factor(3 * B, IndefiniteForm.lie(6)) == pytest.approx(9.0, rel=1e-12)
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert conformal_factor(swap, IndefiniteForm.lorentz(2)) == pytest.approx(-1.0)
    with pytest.raises(NotInGroupError):
        conformal_factor(np.diag([1.0, 2, 1, 1, 1, 1]), IndefiniteForm.lie(6))


def test_apply_to_pencil_gives_valid_pencil(rng):
    for seed in range(20):
        p = rng.normal(size=4)
        p /= np.linalg.norm(p)
        xi = rng.normal(size=4)
        xi -= (xi @ p) * p
        line = contact_element_to_pencil(ContactElement(p, xi / np.linalg.norm(xi)))
        moved = apply(random_lie_transform(seed, 3), line)
        assert isinstance(moved, PencilLine)


@given(seeds)
def test_contact_preserved(seed):
    rng = np.random.default_rng(seed)
    B = random_lie_transform(seed, 3).matrix
    a = Sphere(rng.uniform(-2, 2, 3), rng.uniform(0.3, 2))
    r2 = -rng.uniform(0.3, 2)
    b = Sphere(a.center + (a.radius - r2) * np.array([0.0, 0.6, 0.8]), r2)
    c = Sphere(rng.uniform(-2, 2, 3), rng.uniform(0.3, 2))
    x, y, z = (euclidean_to_lie(o).coords for o in (a, b, c))
    assert oriented_contact(x, y) == oriented_contact(B @ x, B @ y)
    assert oriented_contact(x, z) == oriented_contact(B @ x, B @ z)


def test_apply_rejects_mismatched_arrays():
    with pytest.raises(InputError):
        apply(random_lie_transform(0, 3), np.ones(5))

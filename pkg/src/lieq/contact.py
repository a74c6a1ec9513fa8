"""Oriented contact, lines on the Lie quadric and parabolic pencils.

A line on the quadric is a one-parameter family of oriented spheres in
mutual contact.  It contains exactly one point sphere and exactly one great
sphere of S^n; those two give a canonical basis and identify the line with a
contact element (point, unit normal) of the unit sphere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._config import get_config
from .exceptions import GeometryError, InputError
from .linalg import normalize, projective_equal, scalar_product
from .spheres import (
    LieCoord,
    Plane,
    ProperPoint,
    Sphere,
    euclidean_to_lie,
    lie_form,
    require_on_quadric,
)


def _coords(x) -> np.ndarray:
    if isinstance(x, LieCoord):
        return x.coords
    if isinstance(x, (ProperPoint, Sphere, Plane)):
        return euclidean_to_lie(x).coords
    return np.asarray(x, dtype=float)


def oriented_contact(a, b, tol: float | None = None) -> bool:
    """True when two Lie spheres are in oriented contact.

    The test is ``|<a, b>| < tol`` on unit-normalized representatives.
    Euclidean objects are accepted and converted first.
    """
    tol = get_config()["contact_tol"] if tol is None else tol
    x, y = _coords(a), _coords(b)
    if x.shape != y.shape:
        raise InputError("contact test needs vectors of equal dimension")
    form = lie_form(x.size - 3)
    return bool(abs(scalar_product(normalize(x), normalize(y), form)) < tol)


def euclidean_contact(a, b, tol: float = 1e-9) -> bool:
    """Oriented contact decided from Euclidean data alone.

    Independent of Lie coordinates; used to cross-check :func:`oriented_contact`.
    Handles sphere/sphere, sphere/plane, plane/plane and incidences with points.
    """
    if isinstance(a, Sphere) and a.radius == 0:
        a = ProperPoint(a.center)
    if isinstance(b, Sphere) and b.radius == 0:
        b = ProperPoint(b.center)
    if isinstance(b, ProperPoint) and not isinstance(a, ProperPoint):
        a, b = b, a
    if isinstance(a, ProperPoint):
        if isinstance(b, ProperPoint):
            return bool(np.linalg.norm(a.point - b.point) < tol)
        if isinstance(b, Sphere):
            return bool(abs(np.linalg.norm(a.point - b.center) - abs(b.radius)) < tol)
        return bool(abs(a.point @ b.normal - b.offset) < tol)
    if isinstance(a, Plane) and isinstance(b, Sphere):
        a, b = b, a
    if isinstance(a, Sphere) and isinstance(b, Sphere):
        return bool(abs(np.linalg.norm(a.center - b.center) - abs(a.radius - b.radius)) < tol)
    if isinstance(a, Sphere) and isinstance(b, Plane):
        return bool(abs(a.center @ b.normal - (a.radius + b.offset)) < tol)
    if isinstance(a, Plane) and isinstance(b, Plane):
        return bool(np.linalg.norm(a.normal - b.normal) < tol)
    raise InputError("unsupported pair for the Euclidean contact test")


@dataclass(frozen=True, eq=False)
class ContactElement:
    """Point ``p`` of S^n with a unit tangent normal ``xi`` (``p . xi = 0``)."""

    point: np.ndarray
    normal: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.point, dtype=float)
        xi = np.asarray(self.normal, dtype=float)
        if p.shape != xi.shape or p.ndim != 1:
            raise InputError("contact element needs two vectors of equal length")
        if abs(np.linalg.norm(p) - 1) > 1e-8 or abs(np.linalg.norm(xi) - 1) > 1e-8:
            raise GeometryError("contact element vectors must be unit length")
        if abs(p @ xi) > 1e-8:
            raise GeometryError("contact element normal must be orthogonal to the point")
        object.__setattr__(self, "point", p)
        object.__setattr__(self, "normal", xi)

    @property
    def n(self) -> int:
        return self.point.size - 1


def _orthonormal_pair(k1, k2):
    q, _ = np.linalg.qr(np.column_stack([k1, k2]))
    return q[:, 0], q[:, 1]


_CONDITIONING = 1e-8


def pencil_canonical_basis(k1, k2):
    """Point sphere ``(1, p, 0)`` and great sphere ``(0, xi, 1)`` of a line.

    Raises:
        GeometryError: if the line nearly lies in one of the hyperplanes
            used to pick out the two spheres (conditioning below 1e-8).
    """
    b1, b2 = _orthonormal_pair(np.asarray(k1, float), np.asarray(k2, float))
    last = np.array([b1[-1], b2[-1]])
    first = np.array([b1[0], b2[0]])
    thr = _CONDITIONING
    # point sphere: combination with vanishing last coordinate
    alpha, beta = last[1], -last[0]
    point = alpha * b1 + beta * b2
    if np.hypot(alpha, beta) < thr or abs(point[0]) < thr:
        raise GeometryError("pencil is ill-conditioned for point-sphere extraction")
    point = point / point[0]
    # great sphere: combination with vanishing first coordinate
    alpha, beta = first[1], -first[0]
    great = alpha * b1 + beta * b2
    if np.hypot(alpha, beta) < thr or abs(great[-1]) < thr:
        raise GeometryError("pencil is ill-conditioned for great-sphere extraction")
    great = great / great[-1]
    point[-1] = 0.0
    great[0] = 0.0
    return point, great


class PencilLine:
    """A line on the Lie quadric, stored through its canonical basis.

    Two lines compare equal when their canonical bases agree.
    """

    def __init__(self, k1, k2, tol: float | None = None):
        tol = get_config()["contact_tol"] if tol is None else tol
        a = require_on_quadric(_coords(k1))
        b = require_on_quadric(_coords(k2))
        if a.shape != b.shape:
            raise InputError("line endpoints must have equal dimension")
        if projective_equal(a, b, 1e-10):
            raise GeometryError("line needs two distinct points")
        if not oriented_contact(a, b, tol):
            raise GeometryError("points are not in oriented contact; the line leaves the quadric")
        self._point, self._great = pencil_canonical_basis(a, b)

    @classmethod
    def from_contact_element(cls, element: ContactElement) -> "PencilLine":
        k1 = np.concatenate([[1.0], element.point, [0.0]])
        k2 = np.concatenate([[0.0], element.normal, [1.0]])
        line = cls.__new__(cls)
        line._point, line._great = k1, k2
        return line

    @property
    def n(self) -> int:
        return self._point.size - 3

    @property
    def basis(self):
        """Canonical pair (point sphere, great sphere) as arrays."""
        return self._point.copy(), self._great.copy()

    @property
    def point_sphere(self) -> np.ndarray:
        return self._point.copy()

    @property
    def great_sphere(self) -> np.ndarray:
        return self._great.copy()

    def sphere_at(self, t: float) -> np.ndarray:
        """Sphere ``cos t k1 + sin t k2``: centre ``cos t p + sin t xi``, radius t."""
        return np.cos(t) * self._point + np.sin(t) * self._great

    def contains(self, x, tol: float = 1e-9) -> bool:
        v = normalize(_coords(x))
        q, _ = np.linalg.qr(np.column_stack([self._point, self._great]))
        return bool(np.linalg.norm(v - q @ (q.T @ v)) < tol)

    def contact_element(self) -> ContactElement:
        return ContactElement(self._point[1:-1], self._great[1:-1])

    def __eq__(self, other):
        if not isinstance(other, PencilLine):
            return NotImplemented
        return (
            self._point.shape == other._point.shape
            and np.allclose(self._point, other._point, atol=1e-10)
            and np.allclose(self._great, other._great, atol=1e-10)
        )

    __hash__ = None

    def __repr__(self):
        return f"PencilLine(point={self._point!r}, great={self._great!r})"


def line_on_quadric(a, b, tol: float | None = None) -> bool:
    """True when the projective line through ``a`` and ``b`` lies on the quadric.

    Besides ``<a, b> = 0`` for lightlike endpoints, five interior points of the
    segment are checked explicitly.
    """
    tol = get_config()["contact_tol"] if tol is None else tol
    x = normalize(_coords(a))
    y = normalize(_coords(b))
    form = lie_form(x.size - 3)
    for v in (x, y):
        if abs(scalar_product(v, v, form)) >= tol:
            return False
    if projective_equal(x, y, 1e-10):
        return False
    for t in np.linspace(0.1, np.pi - 0.1, 5):
        v = normalize(np.cos(t) * x + np.sin(t) * y)
        if abs(scalar_product(v, v, form)) >= tol:
            return False
    return True


def pencil_to_contact_element(line: PencilLine) -> ContactElement:
    """Contact element ``(p, xi)`` read off the canonical basis."""
    return line.contact_element()


def contact_element_to_pencil(element: ContactElement) -> PencilLine:
    """Line spanned by ``(1, p, 0)`` and ``(0, xi, 1)``."""
    return PencilLine.from_contact_element(element)


def pencil_sphere_at(line: PencilLine, t: float) -> np.ndarray:
    return line.sphere_at(t)

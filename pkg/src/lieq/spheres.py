"""Coordinates for points, oriented spheres and oriented planes.

Three models are supported and converted through homogeneous Lie
coordinates on R^(n+3):

* Euclidean objects in R^n: proper points, oriented spheres with signed
  radius (positive means the unit normal points inward), oriented planes
  ``u . N = h`` and the improper point at infinity.
* Oriented spheres in the unit sphere S^n given by a centre and a signed
  spherical radius.
* Lie coordinates, i.e. points of the Lie quadric up to scale.

A Möbius layer on R^(n+2) with the Lorentz form is provided as well, for
unoriented spheres and the orthogonality test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._config import get_config
from .exceptions import ImproperPointError, InputError, NotOnQuadricError
from .linalg import IndefiniteForm, normalize, projective_equal, scalar_product


def _vec(x, name="vector") -> np.ndarray:
    a = np.asarray(x, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise InputError(f"{name} must be a non-empty 1-D array")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} has non-finite entries")
    return a


@dataclass(frozen=True, eq=False)
class ProperPoint:
    """A point of R^n, read in Lie geometry as a sphere of radius zero."""

    point: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "point", _vec(self.point, "point"))

    @property
    def n(self) -> int:
        return self.point.size


@dataclass(frozen=True, eq=False)
class Sphere:
    """Oriented Euclidean sphere; positive radius means inward normal."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _vec(self.center, "center"))
        object.__setattr__(self, "radius", float(self.radius))
        if not np.isfinite(self.radius):
            raise InputError("radius must be finite")

    @property
    def n(self) -> int:
        return self.center.size


@dataclass(frozen=True, eq=False)
class Plane:
    """Oriented hyperplane ``u . normal = offset`` with unit ``normal``."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        normal = _vec(self.normal, "normal")
        length = np.linalg.norm(normal)
        if length == 0:
            raise InputError("plane normal must be nonzero")
        object.__setattr__(self, "normal", normal / length)
        object.__setattr__(self, "offset", float(self.offset) / length)

    @property
    def n(self) -> int:
        return self.normal.size


@dataclass(frozen=True)
class ImproperPoint:
    """The point at infinity of R^n."""

    n: int


@dataclass(frozen=True, eq=False)
class SphericalSphere:
    """Oriented sphere in S^n: unit ``center`` in R^(n+1), signed ``radius``.

    Radius zero is a point, ``pi/2`` a great sphere.  The pairs ``(p, r)`` and
    ``(-p, r - pi)`` describe the same oriented sphere.
    """

    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = _vec(self.center, "center")
        length = np.linalg.norm(c)
        if abs(length - 1.0) > 1e-8:
            raise InputError("spherical center must be a unit vector")
        object.__setattr__(self, "center", c / length)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def n(self) -> int:
        return self.center.size - 1

    def normalized(self) -> "SphericalSphere":
        """Equivalent description with radius in ``(-pi/2, pi/2]``."""
        p, r = self.center, self.radius
        r = (r + np.pi) % (2 * np.pi) - np.pi
        if r <= -np.pi / 2:
            p, r = -p, r + np.pi
        elif r > np.pi / 2:
            p, r = -p, r - np.pi
        return SphericalSphere(p, r)


def sphere(center, radius) -> ProperPoint | Sphere:
    """Build a Euclidean sphere, canonicalizing radius zero to a point."""
    if float(radius) == 0.0:
        return ProperPoint(center)
    return Sphere(center, radius)


def lie_form(n: int) -> IndefiniteForm:
    """Lie form on R^(n+3) for spheres in an n-dimensional space."""
    return IndefiniteForm.for_lie_dim(n)


@dataclass(frozen=True, eq=False)
class LieCoord:
    """Homogeneous coordinates of a point on the Lie quadric.

    Equality is projective (same point up to nonzero scale).
    """

    coords: np.ndarray

    def __post_init__(self):
        c = _vec(self.coords, "Lie coordinates")
        if c.size < 4:
            raise InputError("Lie coordinates need at least 4 entries")
        if not np.any(c):
            raise InputError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", c)

    @property
    def n(self) -> int:
        return self.coords.size - 3

    @property
    def form(self) -> IndefiniteForm:
        return lie_form(self.n)

    def quadric_residual(self) -> float:
        """``<x, x> / |x|^2``; zero for points of the Lie quadric."""
        c = self.coords
        return float(abs(scalar_product(c, c, self.form)) / (c @ c))

    def on_quadric(self, tol: float | None = None) -> bool:
        tol = get_config()["quadric_tol"] if tol is None else tol
        return self.quadric_residual() < tol

    def canonical(self) -> "LieCoord":
        """Scale so the first nonzero of ``(x1 + x2, x_last, x1)`` is one."""
        return LieCoord(canonical_scale(self.coords))

    def __eq__(self, other):
        if not isinstance(other, LieCoord):
            return NotImplemented
        return self.coords.size == other.coords.size and projective_equal(
            self.coords, other.coords
        )

    __hash__ = None


def canonical_scale(x: np.ndarray, tol: float = 1e-13) -> np.ndarray:
    """Deterministic representative of a projective Lie point."""
    x = np.asarray(x, dtype=float)
    scale = np.linalg.norm(x)
    for value in (x[0] + x[1], x[-1], x[0]):
        if abs(value) > tol * scale:
            return x / value
    idx = int(np.flatnonzero(np.abs(x) > tol * scale)[0])
    return x / x[idx]


def require_on_quadric(x, tol: float | None = None) -> np.ndarray:
    """Return ``x`` as an array, raising if it is not lightlike."""
    lc = x if isinstance(x, LieCoord) else LieCoord(x)
    if not lc.on_quadric(tol):
        raise NotOnQuadricError(
            f"vector is not on the Lie quadric (residual {lc.quadric_residual():.3e})"
        )
    return lc.coords


def euclidean_to_lie(obj) -> LieCoord:
    """Lie coordinates of a Euclidean point, sphere, plane or the improper point."""
    if isinstance(obj, ProperPoint):
        u = obj.point
        uu = u @ u
        return LieCoord(np.concatenate([[(1 + uu) / 2, (1 - uu) / 2], u, [0.0]]))
    if isinstance(obj, Sphere):
        if obj.radius == 0.0:
            return euclidean_to_lie(ProperPoint(obj.center))
        p, r = obj.center, obj.radius
        pp = p @ p
        return LieCoord(
            np.concatenate([[(1 + pp - r * r) / 2, (1 - pp + r * r) / 2], p, [r]])
        )
    if isinstance(obj, Plane):
        h = obj.offset
        return LieCoord(np.concatenate([[h, -h], obj.normal, [1.0]]))
    if isinstance(obj, ImproperPoint):
        return LieCoord(np.concatenate([[1.0, -1.0], np.zeros(obj.n), [0.0]]))
    raise InputError(f"not a Euclidean object: {type(obj).__name__}")


def lie_to_euclidean(x, tol: float = 1e-12, check: bool = True):
    """Euclidean object represented by the Lie point ``x``.

    Args:
        x: :class:`LieCoord` or array of length n+3.
        tol: Relative threshold for treating ``x1 + x2`` and ``x_last`` as zero.
        check: Reject vectors that are not on the Lie quadric.
    """
    c = x.coords if isinstance(x, LieCoord) else _vec(x)
    if check:
        require_on_quadric(c)
    n = c.size - 3
    scale = np.linalg.norm(c)
    s = c[0] + c[1]
    if abs(s) > tol * scale:
        y = c / s
        if abs(y[-1]) <= tol * np.linalg.norm(y):
            return ProperPoint(y[2:-1])
        return Sphere(y[2:-1], y[-1])
    if abs(c[-1]) <= tol * scale:
        return ImproperPoint(n)
    y = c / c[-1]
    return Plane(y[2:-1], y[0])


def spherical_to_lie(s: SphericalSphere) -> LieCoord:
    """Lie coordinates ``(cos r, p, sin r)`` of an oriented sphere in S^n."""
    return LieCoord(np.concatenate([[np.cos(s.radius)], s.center, [np.sin(s.radius)]]))


def lie_to_spherical(x, tol: float = 1e-12, check: bool = True) -> SphericalSphere:
    """Oriented sphere in S^n with radius in ``(-pi/2, pi/2]``."""
    c = x.coords if isinstance(x, LieCoord) else _vec(x)
    if check:
        require_on_quadric(c)
    scale = np.linalg.norm(c)
    if c[0] < 0:
        c = -c
    if c[0] > tol * scale:
        rho = np.arctan(c[-1] / c[0])
        p = c[1:-1] / np.hypot(c[0], c[-1])
        return SphericalSphere(normalize(p), rho)
    # great sphere: first coordinate vanishes, scale the last one to 1
    p = c[1:-1] / c[-1]
    return SphericalSphere(normalize(p), np.pi / 2)


def stereographic(u) -> np.ndarray:
    """Map R^n into S^n, sending the origin to ``e1`` and infinity to ``-e1``."""
    u = np.asarray(u, dtype=float)
    uu = np.sum(u * u, axis=-1, keepdims=True)
    return np.concatenate([(1 - uu) / (1 + uu), 2 * u / (1 + uu)], axis=-1)


def inverse_stereographic(y, tol: float = 1e-14) -> np.ndarray:
    """Inverse of :func:`stereographic`; the pole ``-e1`` raises."""
    y = np.asarray(y, dtype=float)
    denom = 1 + y[..., :1]
    if np.any(np.abs(denom) <= tol):
        raise ImproperPointError("the pole -e1 corresponds to the improper point")
    return y[..., 1:] / denom


def point_on_lie_sphere(sphere_coords, point_coords, tol: float | None = None) -> bool:
    """Incidence of a point sphere with another Lie sphere (a contact test)."""
    tol = get_config()["contact_tol"] if tol is None else tol
    a = normalize(np.asarray(sphere_coords, dtype=float))
    b = normalize(np.asarray(point_coords, dtype=float))
    return bool(abs(scalar_product(a, b, lie_form(a.size - 3))) < tol)


# --- Möbius layer -----------------------------------------------------------


def mobius_form(n: int) -> IndefiniteForm:
    """Lorentz form on R^(n+2)."""
    return IndefiniteForm.lorentz(n + 2)


def mobius_point(u) -> np.ndarray:
    """Lightlike representative ``((1+u.u)/2, (1-u.u)/2, u)`` of a point of R^n."""
    u = _vec(u, "point")
    uu = u @ u
    return np.concatenate([[(1 + uu) / 2, (1 - uu) / 2], u])


def mobius_representative(obj) -> np.ndarray:
    """Spacelike vector of an unoriented sphere or plane in R^n.

    A sphere of radius r gets a representative with ``(xi, xi) = r^2``;
    planes ``u . N = h`` get ``(h, -h, N)``.  Point spheres have no spacelike
    representative and raise.
    """
    if isinstance(obj, Sphere) and obj.radius != 0:
        p, r = obj.center, obj.radius
        pp = p @ p
        return np.concatenate([[(1 + pp - r * r) / 2, (1 - pp + r * r) / 2], p])
    if isinstance(obj, Plane):
        return np.concatenate([[obj.offset, -obj.offset], obj.normal])
    raise InputError("Möbius representatives exist only for spheres and planes")


def mobius_orthogonal(a, b, tol: float | None = None) -> bool:
    """Orthogonal intersection test for two unoriented spheres or planes."""
    tol = get_config()["contact_tol"] if tol is None else tol
    xa = mobius_representative(a) if not isinstance(a, np.ndarray) else a
    xb = mobius_representative(b) if not isinstance(b, np.ndarray) else b
    form = mobius_form(xa.size - 2)
    value = scalar_product(normalize(xa), normalize(xb), form)
    return bool(abs(value) < tol)

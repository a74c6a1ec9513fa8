"""Lie sphere transformations: the orthogonal group of the Lie form.

Matrices ``B`` with ``B^T G B = G`` act on Lie coordinates; ``B`` and ``-B``
induce the same map on the quadric.  Möbius maps embed block-diagonally,
the parallel maps rotate the two timelike coordinates and the orientation
flip negates the last coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._config import get_config
from .exceptions import InputError, NotInGroupError
from .linalg import IndefiniteForm, expm


def _residual(B: np.ndarray, form: IndefiniteForm) -> float:
    G = form.matrix
    return float(np.linalg.norm(B.T @ G @ B - G) / np.linalg.norm(G))


def validate(B, form: IndefiniteForm | None = None, tol: float | None = None) -> np.ndarray:
    """Check ``B^T G B = G`` and return ``B`` as an array.

    Raises:
        NotInGroupError: when the relative residual exceeds ``tol``.
    """
    tol = get_config()["group_tol"] if tol is None else tol
    B = np.asarray(B, dtype=float)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise InputError("transform must be a square matrix")
    if form is None:
        form = IndefiniteForm.lie(B.shape[0])
    if form.dim != B.shape[0]:
        raise InputError("matrix size does not match the form")
    res = _residual(B, form)
    if not res <= tol:
        raise NotInGroupError(f"matrix does not preserve the form (residual {res:.3e})", res)
    return B


@dataclass(frozen=True, eq=False)
class LieTransform:
    """Element of O(n+1, 2) acting on Lie coordinates of dimension n+3."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", validate(self.matrix))

    @property
    def n(self) -> int:
        return self.matrix.shape[0] - 3

    def __matmul__(self, other):
        if isinstance(other, LieTransform):
            return LieTransform(self.matrix @ other.matrix)
        return apply(self, other)

    def inverse(self) -> "LieTransform":
        G = IndefiniteForm.lie(self.matrix.shape[0]).matrix
        return LieTransform(G @ self.matrix.T @ G)

    def same_map(self, other: "LieTransform", tol: float = 1e-10) -> bool:
        """Equality in the quotient by ``{I, -I}``."""
        a, b = self.matrix, other.matrix
        return bool(min(np.abs(a - b).max(), np.abs(a + b).max()) < tol)


@dataclass(frozen=True, eq=False)
class MobiusTransform:
    """Element of O(n+1, 1) acting on Möbius coordinates of dimension n+2."""

    matrix: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.matrix, dtype=float)
        validate(A, IndefiniteForm.lorentz(A.shape[0]))
        object.__setattr__(self, "matrix", A)

    @property
    def n(self) -> int:
        return self.matrix.shape[0] - 2


def from_mobius(A) -> LieTransform:
    """Embed a Möbius matrix as ``[[A, 0], [0, 1]]``."""
    A = A.matrix if isinstance(A, MobiusTransform) else np.asarray(A, dtype=float)
    validate(A, IndefiniteForm.lorentz(A.shape[0]))
    B = np.eye(A.shape[0] + 1)
    B[:-1, :-1] = A
    return LieTransform(B)


def parallel(t: float, n: int) -> LieTransform:
    """Parallel map adding ``t`` to the signed radius of every sphere of S^n."""
    B = np.eye(n + 3)
    c, s = np.cos(t), np.sin(t)
    B[0, 0], B[0, -1] = c, -s
    B[-1, 0], B[-1, -1] = s, c
    return LieTransform(B)


def orientation_flip(n: int) -> LieTransform:
    """Reverse the orientation of every sphere."""
    B = np.eye(n + 3)
    B[-1, -1] = -1.0
    return LieTransform(B)


def inversion(center, radius: float) -> LieTransform:
    """Inversion of R^n in the sphere with given centre and radius.

    Realized as the Lorentz reflection in the spacelike Möbius vector of that
    sphere, which fixes every point of it.
    """
    p = np.asarray(center, dtype=float)
    r = float(radius)
    if r <= 0:
        raise InputError("inversion radius must be positive")
    pp = p @ p
    xi = np.concatenate([[(1 + pp - r * r) / 2, (1 - pp + r * r) / 2], p])
    form = IndefiniteForm.lorentz(p.size + 2)
    g = form.diag
    A = np.eye(p.size + 2) - 2.0 * np.outer(xi, xi * g) / (xi @ (g * xi))
    return from_mobius(A)


def euclidean_motion(rotation, translation) -> LieTransform:
    """Rigid motion ``u -> R u + b`` lifted to Lie coordinates."""
    R = np.asarray(rotation, dtype=float)
    b = np.asarray(translation, dtype=float)
    n = b.size
    if R.shape != (n, n) or not np.allclose(R.T @ R, np.eye(n), atol=1e-10):
        raise InputError("rotation must be an orthogonal n x n matrix")
    bb = b @ b
    # with a = x1 + x2 and c = x1 - x2 a point has a = 1, c = u.u, so the
    # motion maps (a, c, v) to (a, c + 2 b.Rv + (b.b) a, Rv + a b)
    A = np.zeros((n + 2, n + 2))
    A[2:, 2:] = R
    A[2:, 0] = b
    A[2:, 1] = b
    A[0, 2:] = (R.T @ b)
    A[1, 2:] = -(R.T @ b)
    A[0, 0] = 1 + bb / 2
    A[0, 1] = bb / 2
    A[1, 0] = -bb / 2
    A[1, 1] = 1 - bb / 2
    return from_mobius(A)


def random_lie_transform(seed, n: int, magnitude: float = 0.5) -> LieTransform:
    """Random element ``exp(G W)`` with ``W`` skew-symmetric.

    Args:
        seed: Seed for ``numpy.random.default_rng``.
        n: Sphere dimension; the matrix has size n+3.
        magnitude: Scale of the entries of ``W``.
    """
    rng = np.random.default_rng(seed)
    N = n + 3
    W = rng.normal(scale=magnitude, size=(N, N))
    W = W - W.T
    G = IndefiniteForm.lie(N).matrix
    return LieTransform(expm(G @ W))


def conformal_factor(A, form: IndefiniteForm, tol: float | None = None) -> float:
    """Least-squares ``lambda`` with ``A^T G A = lambda G``.

    Raises:
        NotInGroupError: when the relative residual exceeds ``tol``.
    """
    tol = 1e-10 if tol is None else tol
    A = np.asarray(A, dtype=float)
    G = form.matrix
    M = A.T @ G @ A
    lam = float(np.sum(M * G) / np.sum(G * G))
    scale = max(abs(lam), 1e-300) * np.linalg.norm(G)
    res = float(np.linalg.norm(M - lam * G) / scale)
    if lam == 0 or not res <= tol:
        raise NotInGroupError(f"matrix is not conformal for the form (residual {res:.3e})", res)
    return lam


def apply(transform, obj):
    """Apply a Lie transform to coordinates, a pencil or a Legendre map."""
    from .contact import PencilLine
    from .legendre import LegendreMap
    from .spheres import LieCoord

    B = transform.matrix if isinstance(transform, LieTransform) else validate(transform)
    if isinstance(obj, LieCoord):
        return LieCoord(B @ obj.coords)
    if isinstance(obj, PencilLine):
        k1, k2 = obj.basis
        return PencilLine(B @ k1, B @ k2)
    if isinstance(obj, LegendreMap):
        return obj.transformed(B)
    arr = np.asarray(obj, dtype=float)
    if arr.shape[-1] != B.shape[0]:
        raise InputError("coordinate dimension does not match the transform")
    return arr @ B.T

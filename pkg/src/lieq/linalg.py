"""Indefinite scalar products, causal types and projective subspaces.

Everything here works on plain numpy arrays.  Vectors may be stacked along
leading axes; the last axis is always the coordinate axis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._config import get_config
from .exceptions import InputError


@dataclass(frozen=True)
class IndefiniteForm:
    """Diagonal scalar product with entries in {-1, +1}.

    Attributes:
        diagonal: Tuple of +1/-1 entries; ``diagonal[i]`` is ``<e_i, e_i>``.
    """

    diagonal: tuple

    def __post_init__(self):
        diag = tuple(int(v) for v in self.diagonal)
        if not diag or any(v not in (-1, 1) for v in diag):
            raise InputError("form diagonal must be a non-empty sequence of +1/-1")
        object.__setattr__(self, "diagonal", diag)

    @classmethod
    def lorentz(cls, dim: int) -> "IndefiniteForm":
        """Lorentz form on R^dim with the first coordinate timelike."""
        if dim < 2:
            raise InputError("Lorentz space needs dimension >= 2")
        return cls((-1,) + (1,) * (dim - 1))

    @classmethod
    def lie(cls, dim: int) -> "IndefiniteForm":
        """Lie form on R^dim: first and last coordinates timelike."""
        if dim < 3:
            raise InputError("Lie space needs dimension >= 3")
        return cls((-1,) + (1,) * (dim - 2) + (-1,))

    @classmethod
    def for_lie_dim(cls, n: int) -> "IndefiniteForm":
        """Lie form for spheres in R^n or S^n, acting on R^(n+3)."""
        return cls.lie(n + 3)

    @property
    def dim(self) -> int:
        return len(self.diagonal)

    @property
    def diag(self) -> np.ndarray:
        return np.asarray(self.diagonal, dtype=float)

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.diag)

    @property
    def signature(self) -> tuple:
        """Pair ``(positive, negative)`` of the form."""
        pos = sum(1 for v in self.diagonal if v > 0)
        return pos, self.dim - pos

    def __call__(self, v, w):
        return scalar_product(v, w, self)


def _check_dim(v: np.ndarray, form: IndefiniteForm, name: str = "vector"):
    if v.shape[-1] != form.dim:
        raise InputError(
            f"{name} has {v.shape[-1]} coordinates but the form has dimension {form.dim}"
        )


def scalar_product(v, w, form: IndefiniteForm):
    """Evaluate ``<v, w>`` for the diagonal ``form``; broadcasts over leading axes."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    _check_dim(v, form)
    _check_dim(w, form)
    return np.sum(v * form.diag * w, axis=-1)


def causal_type(v, form: IndefiniteForm, tol: float = 1e-12) -> str:
    """Classify ``v`` as ``'spacelike'``, ``'timelike'`` or ``'lightlike'``.

    The decision uses ``<v, v> / |v|^2`` so it does not depend on scale.

    Raises:
        InputError: for the zero vector.
    """
    v = np.asarray(v, dtype=float)
    norm2 = float(v @ v)
    if norm2 == 0.0:
        raise InputError("the zero vector has no causal type")
    q = float(scalar_product(v, v, form)) / norm2
    if q > tol:
        return "spacelike"
    if q < -tol:
        return "timelike"
    return "lightlike"


def normalize(v, axis: int = -1) -> np.ndarray:
    """Scale vectors to unit Euclidean length (zero vectors are left alone)."""
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v, axis=axis, keepdims=True)
    return np.divide(v, n, out=np.zeros_like(v), where=n > 0)


def numerical_rank(M, rtol: float | None = None) -> int:
    """Count singular values above ``rtol * sigma_max``."""
    rtol = get_config()["rank_rtol"] if rtol is None else rtol
    s = np.linalg.svd(np.atleast_2d(np.asarray(M, dtype=float)), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def projective_distance(x, y) -> np.ndarray:
    """Sine of the angle between the lines spanned by ``x`` and ``y``."""
    a = normalize(x)
    b = normalize(y)
    # residual of b after removing its a-component; accurate for tiny angles
    c = np.sum(a * b, axis=-1, keepdims=True)
    return np.clip(np.linalg.norm(b - c * a, axis=-1), 0.0, 1.0)


def projective_equal(x, y, tol: float = 1e-10) -> bool:
    """True when ``x`` and ``y`` represent the same projective point."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if not np.any(x) or not np.any(y):
        raise InputError("the zero vector is not a projective point")
    s = np.linalg.svd(np.vstack([normalize(x), normalize(y)]), compute_uv=False)
    return bool(s[1] < tol)


def orthonormal_basis(vectors, rtol: float | None = None) -> np.ndarray:
    """Rows spanning the same space as the rows of ``vectors``, orthonormal."""
    rtol = get_config()["rank_rtol"] if rtol is None else rtol
    V = np.atleast_2d(np.asarray(vectors, dtype=float))
    _, s, vt = np.linalg.svd(V, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return np.zeros((0, V.shape[1]))
    return vt[s > rtol * s[0]]


def null_space(M, rtol: float | None = None) -> np.ndarray:
    """Rows forming an orthonormal basis of ``{v : M v = 0}``."""
    rtol = get_config()["rank_rtol"] if rtol is None else rtol
    M = np.atleast_2d(np.asarray(M, dtype=float))
    _, s, vt = np.linalg.svd(M, full_matrices=True)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rtol * smax)) if smax > 0 else 0
    return vt[rank:]


@dataclass(frozen=True, eq=False)
class ProjectiveSubspace:
    """Linear subspace of R^dim viewed projectively.

    Attributes:
        basis: Array of shape ``(k, dim)`` with orthonormal rows.
    """

    basis: np.ndarray

    @classmethod
    def span(cls, vectors, rtol: float | None = None) -> "ProjectiveSubspace":
        """Subspace spanned by the given vectors, rank decided numerically."""
        return cls(orthonormal_basis(vectors, rtol))

    @property
    def dim(self) -> int:
        """Vector-space dimension (projective dimension plus one)."""
        return int(self.basis.shape[0])

    @property
    def ambient_dim(self) -> int:
        return int(self.basis.shape[1])

    def contains(self, v, tol: float = 1e-10) -> bool:
        v = normalize(np.asarray(v, dtype=float))
        residual = v - (v @ self.basis.T) @ self.basis
        return bool(np.linalg.norm(residual) < tol)

    def same_as(self, other: "ProjectiveSubspace", tol: float = 1e-10) -> bool:
        if self.dim != other.dim:
            return False
        s = np.linalg.svd(self.basis @ other.basis.T, compute_uv=False)
        return bool(np.all(np.abs(s - 1.0) < tol))


def subspace_signature(S, form: IndefiniteForm, tol: float = 1e-9) -> tuple:
    """Signature ``(positive, negative, zero)`` of ``form`` restricted to ``S``.

    ``S`` may be a :class:`ProjectiveSubspace` or an array of spanning rows.
    The Gram matrix is taken in an orthonormal basis so the zero threshold is
    scale free.
    """
    basis = S.basis if isinstance(S, ProjectiveSubspace) else orthonormal_basis(S)
    if basis.shape[0] == 0:
        return 0, 0, 0
    _check_dim(basis, form, "basis")
    gram = (basis * form.diag) @ basis.T
    w = np.linalg.eigvalsh(0.5 * (gram + gram.T))
    return int(np.sum(w > tol)), int(np.sum(w < -tol)), int(np.sum(np.abs(w) <= tol))


def polar_subspace(S, form: IndefiniteForm) -> ProjectiveSubspace:
    """Orthogonal complement of ``S`` with respect to ``form``."""
    basis = S.basis if isinstance(S, ProjectiveSubspace) else orthonormal_basis(S)
    if basis.shape[0] == 0:
        return ProjectiveSubspace(np.eye(form.dim))
    return ProjectiveSubspace(null_space(basis * form.diag))


def expm(A, tail: float | None = None) -> np.ndarray:
    """Matrix exponential by scaling and squaring a truncated Taylor series.

    The series is summed until the next term is below ``tail`` relative to the
    partial sum, after scaling ``A`` so its norm is at most 1/2.
    """
    tail = get_config()["expm_tail"] if tail is None else tail
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError("expm needs a square matrix")
    norm = np.linalg.norm(A, 1)
    squarings = max(0, int(np.ceil(np.log2(norm / 0.5)))) if norm > 0.5 else 0
    X = A / (2.0**squarings)
    result = np.eye(A.shape[0])
    term = np.eye(A.shape[0])
    for k in range(1, 60):
        term = term @ X / k
        result = result + term
        if np.linalg.norm(term, 1) <= tail * np.linalg.norm(result, 1):
            break
    for _ in range(squarings):
        result = result @ result
    return result


def batched_generalized_eigh(A: np.ndarray, B: np.ndarray):
    """Solve ``A v = w B v`` for stacks of symmetric ``A`` and definite ``B``.

    Returns ascending eigenvalues ``(..., d)`` and ``B``-orthonormal
    eigenvectors as columns ``(..., d, d)``.
    """
    A = 0.5 * (A + np.swapaxes(A, -1, -2))
    B = 0.5 * (B + np.swapaxes(B, -1, -2))
    L = np.linalg.cholesky(B)
    Linv = np.linalg.inv(L)
    M = Linv @ A @ np.swapaxes(Linv, -1, -2)
    w, y = np.linalg.eigh(0.5 * (M + np.swapaxes(M, -1, -2)))
    v = np.swapaxes(Linv, -1, -2) @ y
    return w, v

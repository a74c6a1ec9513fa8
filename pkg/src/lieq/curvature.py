"""Curvature spheres of Legendre maps.

A curvature sphere at a sample is a point ``K = r Z1 + s Z2`` of the line for
which some nonzero tangent vector ``X`` has ``r dZ1(X) + s dZ2(X)`` inside the
line.  The two derivative maps take values in the Lie-orthogonal complement of
the line, and modulo the line that complement carries a positive definite
form.  Gram matrices of ``dZ1`` and ``dZ2`` under the Lie form therefore give a
symmetric-definite eigenproblem whose eigenvalues are the curvature spheres.

Because only Lie scalar products enter, a Lie transform leaves every Gram
matrix unchanged: curvature spheres map to curvature spheres with the same
principal vectors.

When ``dZ1`` alone is degenerate (the point map is not an immersion) the
basis of the line is rotated to the best conditioned of a fixed set of angles
first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._config import get_config
from .exceptions import GeometryError, ImproperPointError
from .legendre import LegendreMap, canonical_pair_coefficients

_ROTATION_COND = 1e4


def _grams(dZ1, dZ2, g):
    S11 = np.einsum("mai,i,mbi->mab", dZ1, g, dZ1)
    S22 = np.einsum("mai,i,mbi->mab", dZ2, g, dZ2)
    S12 = np.einsum("mai,i,mbi->mab", dZ1, g, dZ2)
    S12 = 0.5 * (S12 + np.swapaxes(S12, -1, -2))
    S11 = 0.5 * (S11 + np.swapaxes(S11, -1, -2))
    S22 = 0.5 * (S22 + np.swapaxes(S22, -1, -2))
    return S11, S12, S22


def _cond(S):
    w = np.linalg.eigvalsh(S)
    top = np.maximum(w[..., -1], 1e-300)
    return np.where(w[..., 0] > 0, top / np.maximum(w[..., 0], 1e-300), np.inf)


@dataclass
class RawDecomposition:
    """Unclustered eigen-decomposition at a batch of samples.

    Shapes use ``m`` samples, ``d`` parameters and ``N = n + 3``.

    Attributes:
        zpairs: Pairs ``(r, s)`` with ``K = r Z1 + s Z2``, shape ``(m, d, 2)``.
        cpairs: Unit canonical pairs ``(r, s)`` with ``s >= 0``; the principal
            value is ``r / s``.  Shape ``(m, d, 2)``.
        angle: ``atan2(s, r)`` of ``cpairs`` in ``[0, pi)``; zero means
            infinity.  Sorted descending, i.e. principal values ascending with
            infinity last.
        vectors: Principal vectors as columns, shape ``(m, d, d)``.
        spheres: Curvature sphere vectors, unit length, shape ``(m, d, N)``.
        rotation: Basis rotation angle used per sample.
    """

    zpairs: np.ndarray
    cpairs: np.ndarray
    angle: np.ndarray
    vectors: np.ndarray
    spheres: np.ndarray
    rotation: np.ndarray

    @property
    def kappa(self) -> np.ndarray:
        r, s = self.cpairs[..., 0], self.cpairs[..., 1]
        with np.errstate(divide="ignore", invalid="ignore"):
            k = r / s
        return np.where(np.abs(s) <= 1e-12 * np.abs(r), np.inf, k)


def decompose(Z1, Z2, dZ1, dZ2, model: str, n_scan: int | None = None) -> RawDecomposition:
    """Curvature spheres at a batch of samples, without clustering.

    Args:
        Z1, Z2: Shape ``(m, N)``.
        dZ1, dZ2: Shape ``(m, d, N)`` with ``d = N - 4``.
        model: Frame for principal values, ``"spherical"`` or ``"euclidean"``.
        n_scan: Number of fallback rotation angles in ``(0, pi)``.
    """
    n_scan = get_config()["singular_scan"] if n_scan is None else n_scan
    m, d, N = dZ1.shape
    if d != N - 4:
        raise GeometryError(f"Legendre map needs d = n - 1 parameters, got d={d}, n={N - 3}")
    g = np.ones(N)
    g[0] = g[-1] = -1.0
    S11, S12, S22 = _grams(dZ1, dZ2, g)
    # rotation fallback for degenerate point maps
    t = np.zeros(m)
    cond0 = _cond(S11)
    need = ~(cond0 < _ROTATION_COND)
    if np.any(need):
        cands = (np.arange(n_scan) + 0.5) * np.pi / n_scan
        best = np.full(int(need.sum()), np.inf)
        best_t = np.zeros(int(need.sum()))
        A, Bm, C = S11[need], S12[need], S22[need]
        for tc in cands:
            c, s = np.cos(tc), np.sin(tc)
            cond = _cond(c * c * A + 2 * c * s * Bm + s * s * C)
            better = cond < best
            best = np.where(better, cond, best)
            best_t = np.where(better, tc, best_t)
        if np.any(~np.isfinite(best)):
            raise GeometryError("no basis rotation makes the derivative Gram matrix definite")
        t[need] = best_t
    c = np.cos(t)[:, None, None]
    s = np.sin(t)[:, None, None]
    T11 = c * c * S11 + 2 * c * s * S12 + s * s * S22
    T12 = -c * s * S11 + (c * c - s * s) * S12 + c * s * S22
    # (mu T11 + T12) X = 0  <=>  -T12 X = mu T11 X
    L = np.linalg.cholesky(0.5 * (T11 + np.swapaxes(T11, -1, -2)))
    Linv = np.linalg.inv(L)
    M = Linv @ (-T12) @ np.swapaxes(Linv, -1, -2)
    mu, y = np.linalg.eigh(0.5 * (M + np.swapaxes(M, -1, -2)))
    vec = np.swapaxes(Linv, -1, -2) @ y
    c1, s1 = np.cos(t)[:, None], np.sin(t)[:, None]
    zr = mu * c1 - s1
    zs = mu * s1 + c1
    zpairs = np.stack([zr, zs], axis=-1)
    zpairs /= np.linalg.norm(zpairs, axis=-1, keepdims=True)
    K = zpairs[..., 0, None] * Z1[:, None, :] + zpairs[..., 1, None] * Z2[:, None, :]
    cp = canonical_pair_coefficients(K, model)
    cn = np.linalg.norm(cp, axis=-1, keepdims=True)
    if np.any(cn <= 1e-12 * np.linalg.norm(K, axis=-1, keepdims=True)):
        raise ImproperPointError("curvature sphere has no canonical coordinates in this model")
    cp = cp / cn
    flip = (cp[..., 1] < 0) | ((cp[..., 1] == 0) & (cp[..., 0] < 0))
    cp[flip] *= -1.0
    angle = np.mod(np.arctan2(cp[..., 1], cp[..., 0]), np.pi)
    # sort by principal value ascending, infinity last
    order = np.argsort(-angle, axis=-1, kind="stable")
    take = np.take_along_axis
    zpairs = take(zpairs, order[..., None], axis=1)
    cp = take(cp, order[..., None], axis=1)
    angle = take(angle, order, axis=1)
    vec = take(vec, order[:, None, :], axis=2)
    K = take(K, order[..., None], axis=1)
    K = K / np.linalg.norm(K, axis=-1, keepdims=True)
    return RawDecomposition(zpairs, cp, angle, vec, K, t)


def _merge(angle_a, angle_b, tol):
    ka = np.cos(angle_a) / np.maximum(np.sin(angle_a), 1e-300)
    kb = np.cos(angle_b) / np.maximum(np.sin(angle_b), 1e-300)
    big = (np.abs(ka) > 1e8) | (np.abs(kb) > 1e8)
    by_value = np.abs(ka - kb) <= tol * (1 + np.abs(ka))
    by_angle = np.abs(angle_a - angle_b) <= tol
    return np.where(big, by_angle, by_value)


def cluster_labels(angle: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Cluster index per sorted principal value; shape ``(m, d)``."""
    tol = get_config()["cluster_tol"] if tol is None else tol
    m, d = angle.shape
    labels = np.zeros((m, d), dtype=int)
    for j in range(1, d):
        same = _merge(angle[:, j - 1], angle[:, j], tol)
        labels[:, j] = labels[:, j - 1] + np.where(same, 0, 1)
    return labels


@dataclass
class CurvatureSphereSet:
    """Distinct curvature spheres at one sample, principal values ascending.

    Attributes:
        spheres: List of unit Lie vectors, one per distinct curvature sphere.
        pairs: Canonical homogeneous pairs ``(r, s)``; ``K = r Y1 + s Y2``.
        kappas: Principal values ``r / s`` (``inf`` when ``s = 0``).
        multiplicities: Dimension of each principal space.
        principal_spaces: Parameter-space bases (columns) per sphere.
    """

    spheres: list
    pairs: list
    kappas: list
    multiplicities: list
    principal_spaces: list

    @property
    def g(self) -> int:
        return len(self.spheres)


def _set_from(raw: RawDecomposition, labels: np.ndarray, i: int) -> CurvatureSphereSet:
    spheres, pairs, kappas, mults, spaces = [], [], [], [], []
    for c in range(labels[i, -1] + 1):
        idx = np.flatnonzero(labels[i] == c)
        ref = raw.cpairs[i, idx[0]]
        aligned = raw.cpairs[i, idx] * np.sign(raw.cpairs[i, idx] @ ref)[:, None]
        pair = aligned.mean(axis=0)
        pair /= np.linalg.norm(pair)
        kref = raw.spheres[i, idx[0]]
        K = raw.spheres[i, idx] * np.sign(raw.spheres[i, idx] @ kref)[:, None]
        K = K.mean(axis=0)
        spheres.append(K / np.linalg.norm(K))
        pairs.append(pair)
        kappas.append(float(pair[0] / pair[1]) if abs(pair[1]) > 1e-12 * abs(pair[0]) else np.inf)
        mults.append(int(idx.size))
        spaces.append(raw.vectors[i][:, idx])
    return CurvatureSphereSet(spheres, pairs, kappas, mults, spaces)


@dataclass
class CurvatureField:
    """Curvature spheres at every grid sample of a Legendre map."""

    lift: LegendreMap
    raw: RawDecomposition
    labels: np.ndarray

    @property
    def grid(self):
        return self.lift.grid

    @property
    def g(self) -> np.ndarray:
        """Number of distinct curvature spheres per sample, grid-shaped."""
        return (self.labels[:, -1] + 1).reshape(self.grid.shape)

    def at(self, index) -> CurvatureSphereSet:
        i = int(np.ravel_multi_index(index, self.grid.shape)) if not np.isscalar(index) else int(index)
        return _set_from(self.raw, self.labels, i)

    def multiplicities(self, index) -> tuple:
        return tuple(self.at(index).multiplicities)

    def interior_mode(self):
        """Most common ``g`` over interior samples and its mask."""
        interior = self.grid.interior_mask().ravel()
        gs = (self.labels[:, -1] + 1)[interior]
        values, counts = np.unique(gs, return_counts=True)
        g_mode = int(values[np.argmax(counts)])
        mask = interior & (self.labels[:, -1] + 1 == g_mode)
        return g_mode, mask

    def _rows(self, mask):
        if mask is None:
            _, mask = self.interior_mode()
        return np.flatnonzero(mask)

    def _cluster_of(self, family, rows) -> np.ndarray:
        """Cluster label per selected sample for an index or axis selector."""
        if isinstance(family, tuple) and family[0] == "axis":
            scores = np.stack(
                [self._axis_scores(rows, c)[:, family[1]] for c in range(self.grid.d)], axis=1
            )
            return np.argmax(scores, axis=1)
        return np.full(rows.size, int(family))

    def _axis_scores(self, rows, cluster) -> np.ndarray:
        """Projection lengths of every parameter axis onto one principal space, ``(m, d)``."""
        sel = self.labels[rows] == cluster
        V = self.raw.vectors[rows] * sel[:, None, :]
        P = V @ np.linalg.pinv(V)
        return np.sqrt(np.clip(np.diagonal(P, axis1=1, axis2=2), 0.0, None))

    def family_spheres(self, family, mask=None) -> np.ndarray:
        """Curvature spheres of one family at the selected samples.

        Args:
            family: Integer index in ascending principal-value order, or
                ``("axis", k)`` to pick at every sample the family whose
                principal space best contains parameter axis ``k``.
            mask: Flat boolean sample mask; defaults to interior samples with
                the modal ``g``.

        Members of a multiple cluster are sign-aligned and averaged.
        """
        rows = self._rows(mask)
        cl = self._cluster_of(family, rows)
        sel = self.labels[rows] == cl[:, None]
        if not np.all(sel.any(axis=1)):
            raise GeometryError(f"family {family!r} is missing at some selected samples")
        S = self.raw.spheres[rows]
        ref = S[np.arange(rows.size), np.argmax(sel, axis=1)]
        sign = np.sign(np.einsum("mjN,mN->mj", S, ref))
        K = np.sum((sel * sign)[..., None] * S, axis=1)
        return K / np.linalg.norm(K, axis=1, keepdims=True)

    def family_kappas(self, family, mask=None) -> np.ndarray:
        """Principal values of one family at the selected samples."""
        rows = self._rows(mask)
        cl = self._cluster_of(family, rows)
        sel = self.labels[rows] == cl[:, None]
        first = np.argmax(sel, axis=1)
        return self.raw.kappa[rows, first]

    def axis_families(self, mask=None, tol: float = 1e-8):
        """Groups of parameter axes that span the principal spaces, if any.

        Returns a list of axis tuples, one per family, when at every selected
        sample each principal space is spanned by coordinate axes and the
        grouping is the same everywhere (the parameters are curvature-line
        coordinates).  Returns ``None`` otherwise.
        """
        rows = self._rows(mask)
        d = self.grid.d
        g_here = self.labels[rows, -1] + 1
        if np.ptp(g_here) != 0:
            return None
        member = np.stack([self._axis_scores(rows, c) for c in range(int(g_here[0]))], axis=1)
        hit = member > 1 - tol
        if not np.all(hit.sum(axis=1) == 1):
            return None
        owner = np.argmax(hit, axis=1)  # (m, d): cluster owning each axis
        same = owner[:, :, None] == owner[:, None, :]  # (m, d, d) axes in one family
        if not np.all(same == same[0]):
            return None
        groups, seen = [], set()
        for k in range(d):
            if k not in seen:
                grp = tuple(int(j) for j in np.flatnonzero(same[0, k]))
                seen.update(grp)
                groups.append(grp)
        return groups


def _best_axis_family(cs: CurvatureSphereSet, axis: int, d: int) -> int:
    e = np.zeros(d)
    e[axis] = 1.0
    scores = []
    for space in cs.principal_spaces:
        q, _ = np.linalg.qr(space)
        scores.append(np.linalg.norm(q.T @ e))
    return int(np.argmax(scores))


def curvature_field(lift: LegendreMap, cluster_tol: float | None = None) -> CurvatureField:
    """Curvature spheres and principal spaces at every sample of ``lift``."""
    Z1, Z2, dZ1, dZ2 = lift.flat()
    raw = decompose(Z1, Z2, dZ1, dZ2, lift.model)
    return CurvatureField(lift, raw, cluster_labels(raw.angle, cluster_tol))


def curvature_spheres(lift: LegendreMap, x, cluster_tol: float | None = None) -> CurvatureSphereSet:
    """Curvature spheres at one sample.

    Args:
        x: Grid index (flat integer or tuple) or a parameter point given as a
            float array of length ``d``.
    """
    if isinstance(x, np.ndarray) and x.dtype.kind == "f":
        Z1, Z2, dZ1, dZ2 = lift.evaluate(x[None, :])
    else:
        i = int(np.ravel_multi_index(x, lift.grid.shape)) if not np.isscalar(x) else int(x)
        Z1, Z2, dZ1, dZ2 = (a[i : i + 1] for a in lift.flat())
    raw = decompose(Z1, Z2, dZ1, dZ2, lift.model)
    return _set_from(raw, cluster_labels(raw.angle, cluster_tol), 0)

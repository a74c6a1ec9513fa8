"""Sampled hypersurfaces, Legendre lifts and their projections.

A Legendre map is stored as two gridded fields ``Z1, Z2`` of Lie vectors
spanning a line on the quadric at every sample, with optional analytic
parameter derivatives and an optional evaluator for off-grid points.  The
evaluator is what lets leaf integration and finite differences work at
analytic precision; without one the grid data are interpolated.

Two coordinate models are supported for the underlying hypersurface:

* ``"spherical"``: point map ``f`` into S^n with unit normal ``xi``; the lift
  is ``Z1 = (1, f, 0)``, ``Z2 = (0, xi, 1)``.
* ``"euclidean"``: point map ``F`` into R^n with unit normal ``eta``; the lift
  pairs the point sphere of ``F`` with the tangent plane of ``eta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from .exceptions import GeometryError, ImproperPointError, InputError
from .grid import ParameterGrid, PeriodicInterpolator, grid_derivatives
from .linalg import IndefiniteForm

MODELS = ("spherical", "euclidean")


def _check_model(model):
    if model not in MODELS:
        raise InputError(f"model must be one of {MODELS}, got {model!r}")
    return model


def _evaluate_on_grid(fn, grid: ParameterGrid):
    pts = grid.flat_points()
    out = fn(pts)
    return tuple(np.asarray(o).reshape(grid.shape + np.asarray(o).shape[1:]) for o in out)


@dataclass(eq=False)
class SampledHypersurface:
    """Point map and unit normal field sampled on a parameter grid.

    For a hypersurface the grid dimension ``d`` equals ``n - 1``.  A
    submanifold of lower dimension is handled by appending normal-bundle
    coordinates to the grid, so ``f`` is constant along those directions while
    ``xi`` sweeps the unit normals.

    Attributes:
        grid: Parameter grid.
        f: Points, shape ``(*grid.shape, k)``; ``k = n + 1`` in the spherical
            model and ``k = n`` in the Euclidean one.
        xi: Unit normals with the same shape as ``f``.
        df, dxi: Optional derivatives, shape ``(*grid.shape, d, k)``.
        ambient: ``"spherical"`` or ``"euclidean"``.
        evaluator: Optional callable ``u -> (f, xi, df, dxi)`` for parameter
            points ``u`` of shape ``(m, d)``.
        construction: Optional recipe that rebuilds the evaluator on load.
    """

    grid: ParameterGrid
    f: np.ndarray
    xi: np.ndarray
    df: np.ndarray | None = None
    dxi: np.ndarray | None = None
    ambient: str = "spherical"
    evaluator: Callable | None = None
    construction: dict | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        _check_model(self.ambient)
        self.f = np.asarray(self.f, dtype=float)
        self.xi = np.asarray(self.xi, dtype=float)
        shape = self.grid.shape
        if self.f.shape[:-1] != shape or self.xi.shape != self.f.shape:
            raise InputError("f and xi must have shape (*grid_dims, k)")
        for name in ("df", "dxi"):
            val = getattr(self, name)
            if val is not None:
                val = np.asarray(val, dtype=float)
                if val.shape != shape + (self.grid.d, self.f.shape[-1]):
                    raise InputError(f"{name} must have shape (*grid_dims, d, k)")
                setattr(self, name, val)
        if (self.df is None) != (self.dxi is None):
            raise InputError("derivatives must be given for both f and xi or for neither")

    @classmethod
    def from_function(cls, fn, grid: ParameterGrid, ambient: str, construction=None, meta=None):
        """Sample an analytic map ``u -> (f, xi, df, dxi)`` on ``grid``."""
        f, xi, df, dxi = _evaluate_on_grid(fn, grid)
        return cls(grid, f, xi, df, dxi, ambient, fn, construction, dict(meta or {}))

    @property
    def n(self) -> int:
        k = self.f.shape[-1]
        return k - 1 if self.ambient == "spherical" else k

    @property
    def d(self) -> int:
        return self.grid.d

    @property
    def has_analytic_derivatives(self) -> bool:
        return self.df is not None

    def derivatives(self):
        """Analytic derivatives when present, else central differences."""
        if self.df is not None:
            return self.df, self.dxi
        return grid_derivatives(self.f, self.grid), grid_derivatives(self.xi, self.grid)


def _lift_arrays(f, xi, df, dxi, ambient):
    lead = f.shape[:-1]
    one = np.ones(lead + (1,))
    zero = np.zeros(lead + (1,))
    dzero = np.zeros(df.shape[:-1] + (1,))
    if ambient == "spherical":
        Z1 = np.concatenate([one, f, zero], axis=-1)
        Z2 = np.concatenate([zero, xi, one], axis=-1)
        dZ1 = np.concatenate([dzero, df, dzero], axis=-1)
        dZ2 = np.concatenate([dzero, dxi, dzero], axis=-1)
        return Z1, Z2, dZ1, dZ2
    ff = np.sum(f * f, axis=-1, keepdims=True)
    fe = np.sum(f * xi, axis=-1, keepdims=True)
    Z1 = np.concatenate([(1 + ff) / 2, (1 - ff) / 2, f, zero], axis=-1)
    Z2 = np.concatenate([fe, -fe, xi, one], axis=-1)
    fdf = np.einsum("...k,...dk->...d", f, df)[..., None]
    dfe = (np.einsum("...dk,...k->...d", df, xi) + np.einsum("...k,...dk->...d", f, dxi))[..., None]
    dZ1 = np.concatenate([fdf, -fdf, df, dzero], axis=-1)
    dZ2 = np.concatenate([dfe, -dfe, dxi, dzero], axis=-1)
    return Z1, Z2, dZ1, dZ2


def _model_functionals(model):
    """Linear functionals ``(a, b)`` fixing the canonical basis of a line.

    The first canonical vector has ``a = 1, b = 0`` and the second
    ``a = 0, b = 1``.
    """
    if model == "spherical":
        return (lambda x: x[..., 0]), (lambda x: x[..., -1])
    return (lambda x: x[..., 0] + x[..., 1]), (lambda x: x[..., -1])


def canonical_pair_coefficients(K, model):
    """Coordinates ``(r, s)`` of ``K = r Y1 + s Y2`` in the canonical basis."""
    a, b = _model_functionals(model)
    return np.stack([a(K), b(K)], axis=-1)


def canonical_basis(Z1, Z2, dZ1=None, dZ2=None, model="spherical", tol=1e-12):
    """Canonical basis ``(Y1, Y2)`` of each line, with derivatives if given.

    In the spherical model ``Y1 = (1, f, 0)`` is the point sphere and
    ``Y2 = (0, xi, 1)`` the great sphere.  In the Euclidean model ``Y1`` is the
    point sphere scaled to ``x1 + x2 = 1`` and ``Y2`` the tangent plane scaled
    to last coordinate one.

    Raises:
        ImproperPointError: in the Euclidean model when a line passes through
            the improper point.
    """
    a, b = _model_functionals(model)
    M = np.stack(
        [np.stack([a(Z1), a(Z2)], axis=-1), np.stack([b(Z1), b(Z2)], axis=-1)], axis=-2
    )
    det = np.linalg.det(M)
    scale = np.linalg.norm(Z1, axis=-1) * np.linalg.norm(Z2, axis=-1)
    bad = np.abs(det) <= tol * scale
    if np.any(bad):
        idx = np.argwhere(bad)
        raise ImproperPointError(
            f"{len(idx)} samples have no canonical {model} basis (improper point)", idx
        )
    C = np.linalg.inv(M)
    Y1 = C[..., 0, 0, None] * Z1 + C[..., 1, 0, None] * Z2
    Y2 = C[..., 0, 1, None] * Z1 + C[..., 1, 1, None] * Z2
    if dZ1 is None:
        return Y1, Y2
    dM = np.stack(
        [np.stack([a(dZ1), a(dZ2)], axis=-1), np.stack([b(dZ1), b(dZ2)], axis=-1)], axis=-2
    )  # (..., d, 2, 2)
    dC = -C[..., None, :, :] @ dM @ C[..., None, :, :]
    dY1 = (
        dC[..., 0, 0, None] * Z1[..., None, :]
        + dC[..., 1, 0, None] * Z2[..., None, :]
        + C[..., None, 0, 0, None] * dZ1
        + C[..., None, 1, 0, None] * dZ2
    )
    dY2 = (
        dC[..., 0, 1, None] * Z1[..., None, :]
        + dC[..., 1, 1, None] * Z2[..., None, :]
        + C[..., None, 0, 1, None] * dZ1
        + C[..., None, 1, 1, None] * dZ2
    )
    return Y1, Y2, dY1, dY2


@dataclass(eq=False)
class LegendreMap:
    """Legendre map sampled on a grid.

    Attributes:
        grid: Parameter grid.
        Z1, Z2: Lie vectors, shape ``(*grid.shape, n+3)``.
        dZ1, dZ2: Optional derivatives, shape ``(*grid.shape, d, n+3)``.
        model: Reference frame for principal values (``"spherical"`` or
            ``"euclidean"``).
        evaluator: Optional ``u -> (Z1, Z2, dZ1, dZ2)`` for off-grid points.
        provenance: Human-readable history of how the map was produced.
        construction: Optional recipe of the source hypersurface.
        history: Operations applied after lifting, replayable on load.
        kind: ``"hypersurface"`` or ``"submanifold"``.
        base_model: Model chosen when the map was lifted, before ``history``.
    """

    grid: ParameterGrid
    Z1: np.ndarray
    Z2: np.ndarray
    dZ1: np.ndarray | None = None
    dZ2: np.ndarray | None = None
    model: str = "spherical"
    evaluator: Callable | None = None
    provenance: list = field(default_factory=list)
    construction: dict | None = None
    history: list = field(default_factory=list)
    kind: str = "hypersurface"
    base_model: str | None = None

    def __post_init__(self):
        _check_model(self.model)
        self.Z1 = np.asarray(self.Z1, dtype=float)
        self.Z2 = np.asarray(self.Z2, dtype=float)
        if self.Z1.shape[:-1] != self.grid.shape or self.Z2.shape != self.Z1.shape:
            raise InputError("Z1 and Z2 must have shape (*grid_dims, n+3)")
        if (self.dZ1 is None) != (self.dZ2 is None):
            raise InputError("derivatives must be given for both Z1 and Z2 or neither")
        self._interp = None

    @property
    def N(self) -> int:
        return self.Z1.shape[-1]

    @property
    def n(self) -> int:
        return self.N - 3

    @property
    def d(self) -> int:
        return self.grid.d

    @property
    def form(self) -> IndefiniteForm:
        return IndefiniteForm.lie(self.N)

    @property
    def has_evaluator(self) -> bool:
        return self.evaluator is not None

    @property
    def analytic(self) -> bool:
        """True when derivatives and off-grid values come from formulas."""
        return self.evaluator is not None and self.dZ1 is not None

    def derivatives(self):
        if self.dZ1 is not None:
            return self.dZ1, self.dZ2
        return grid_derivatives(self.Z1, self.grid), grid_derivatives(self.Z2, self.grid)

    def flat(self):
        """Flattened ``(Z1, Z2, dZ1, dZ2)`` over all samples."""
        dZ1, dZ2 = self.derivatives()
        m = self.grid.size
        return (
            self.Z1.reshape(m, -1),
            self.Z2.reshape(m, -1),
            dZ1.reshape(m, self.d, -1),
            dZ2.reshape(m, self.d, -1),
        )

    def evaluate(self, u):
        """Values and derivatives at parameter points ``u`` of shape ``(m, d)``."""
        u = np.atleast_2d(np.asarray(u, dtype=float))
        if self.evaluator is not None:
            return self.evaluator(u)
        if self._interp is None:
            dZ1, dZ2 = self.derivatives()
            packed = np.concatenate(
                [
                    self.Z1,
                    self.Z2,
                    dZ1.reshape(self.grid.shape + (-1,)),
                    dZ2.reshape(self.grid.shape + (-1,)),
                ],
                axis=-1,
            )
            self._interp = PeriodicInterpolator(self.grid, packed)
        vals = self._interp(u)
        N, d = self.N, self.d
        Z1 = vals[:, :N]
        Z2 = vals[:, N : 2 * N]
        dZ1 = vals[:, 2 * N : 2 * N + d * N].reshape(-1, d, N)
        dZ2 = vals[:, 2 * N + d * N :].reshape(-1, d, N)
        return Z1, Z2, dZ1, dZ2

    def transformed(self, B, label: str = "Lie transform") -> "LegendreMap":
        """Image under the Lie transform with matrix ``B``."""
        B = np.asarray(B, dtype=float)
        BT = B.T
        dZ1 = None if self.dZ1 is None else self.dZ1 @ BT
        dZ2 = None if self.dZ2 is None else self.dZ2 @ BT
        ev = None
        if self.evaluator is not None:
            inner = self.evaluator

            def ev(u, inner=inner, BT=BT):
                a, b, da, db = inner(u)
                return a @ BT, b @ BT, da @ BT, db @ BT

        return replace(
            self,
            Z1=self.Z1 @ BT,
            Z2=self.Z2 @ BT,
            dZ1=dZ1,
            dZ2=dZ2,
            evaluator=ev,
            provenance=self.provenance + [f"transformed image ({label})"],
            history=self.history + [("transform", B.tolist())],
        )

    def canonicalized(self, model: str | None = None) -> "LegendreMap":
        """Same Legendre map re-expressed in the canonical basis of ``model``."""
        model = _check_model(model or self.model)
        dZ1, dZ2 = self.derivatives()
        Y1, Y2, dY1, dY2 = canonical_basis(self.Z1, self.Z2, dZ1, dZ2, model)
        ev = None
        if self.evaluator is not None:
            inner = self.evaluator

            def ev(u, inner=inner, model=model):
                return canonical_basis(*inner(u), model=model)

        return replace(
            self,
            Z1=Y1,
            Z2=Y2,
            dZ1=dY1 if self.dZ1 is not None else None,
            dZ2=dY2 if self.dZ1 is not None else None,
            model=model,
            evaluator=ev,
            provenance=self.provenance + [f"canonical {model} basis"],
            history=self.history + [("canonical", model)],
        )

    def with_model(self, model: str) -> "LegendreMap":
        """Change the frame used for principal values without touching Z."""
        return replace(self, model=_check_model(model), history=self.history + [("model", model)])


def replay_history(lift: LegendreMap, history) -> LegendreMap:
    """Re-apply recorded post-lift operations (used when loading files)."""
    for op, arg in history:
        if op == "transform":
            lift = lift.transformed(np.asarray(arg, dtype=float))
        elif op == "canonical":
            lift = lift.canonicalized(arg)
        elif op == "model":
            lift = lift.with_model(arg)
        else:
            raise InputError(f"unknown history operation {op!r}")
    return lift


def _check_hypersurface(h: SampledHypersurface, df, dxi, tol=1e-6):
    f, xi = h.f, h.xi
    if not np.all(np.isfinite(f)) or not np.all(np.isfinite(xi)):
        raise InputError("hypersurface data contain non-finite values")
    if np.max(np.abs(np.linalg.norm(xi, axis=-1) - 1)) > tol:
        raise GeometryError("normal field is not unit length")
    scale = 1.0 + np.linalg.norm(f, axis=-1).max()
    if h.ambient == "spherical":
        if np.max(np.abs(np.linalg.norm(f, axis=-1) - 1)) > tol:
            raise GeometryError("spherical points must lie on the unit sphere")
        if np.max(np.abs(np.sum(f * xi, axis=-1))) > tol:
            raise GeometryError("normal must be tangent to the sphere (f . xi = 0)")
    tang = np.abs(np.einsum("...dk,...k->...d", df, xi))
    dscale = 1.0 + np.linalg.norm(df, axis=-1).max()
    if np.max(tang) > tol * dscale * scale:
        raise GeometryError("normal field is not orthogonal to the tangent space")


def _lift_from(h: SampledHypersurface, kind: str, model: str | None):
    df, dxi = h.derivatives()
    Z1, Z2, dZ1, dZ2 = _lift_arrays(h.f, h.xi, df, dxi, h.ambient)
    ev = None
    if h.evaluator is not None:
        inner = h.evaluator
        amb = h.ambient

        def ev(u, inner=inner, amb=amb):
            return _lift_arrays(*inner(u), amb)

    return LegendreMap(
        grid=h.grid,
        Z1=Z1,
        Z2=Z2,
        dZ1=dZ1 if h.df is not None else None,
        dZ2=dZ2 if h.df is not None else None,
        model=model or h.ambient,
        evaluator=ev,
        provenance=[f"{kind} lift ({h.ambient})"] + list(h.meta.get("provenance", [])),
        construction=h.construction,
        kind=kind,
        base_model=model or h.ambient,
    )


def _min_singular(J):
    s = np.linalg.svd(J, compute_uv=False)
    return s[..., -1], s[..., 0]


def legendre_lift_hypersurface(h: SampledHypersurface, model: str | None = None) -> LegendreMap:
    """Legendre lift of an immersed hypersurface with a unit normal field.

    Raises:
        GeometryError: if the grid dimension is not ``n - 1``, the normal is
            not a unit normal, or the point map is singular at some sample.
    """
    if h.d != h.n - 1:
        raise GeometryError(f"hypersurface lift needs d = n - 1, got d={h.d}, n={h.n}")
    df, dxi = h.derivatives()
    _check_hypersurface(h, df, dxi)
    smin, smax = _min_singular(df)
    if np.any(smin <= 1e-8 * np.maximum(smax, 1e-300)):
        idx = np.argwhere(smin <= 1e-8 * np.maximum(smax, 1e-300))
        raise GeometryError(f"point map is not an immersion at {len(idx)} samples")
    return _lift_from(h, "hypersurface", model)


def legendre_lift_submanifold(h: SampledHypersurface, dim_v: int, model: str | None = None) -> LegendreMap:
    """Legendre lift of a submanifold of dimension ``dim_v`` over its unit normal bundle.

    The grid holds ``dim_v`` submanifold coordinates followed by the
    normal-bundle coordinates, so ``d = n - 1`` overall while the point map has
    rank ``dim_v`` everywhere.
    """
    if h.d != h.n - 1:
        raise GeometryError("normal-bundle grid must have dimension n - 1")
    if not 0 <= dim_v < h.n - 1:
        raise GeometryError("submanifold dimension must be below n - 1")
    df, dxi = h.derivatives()
    _check_hypersurface(h, df, dxi)
    s = np.linalg.svd(df, compute_uv=False)
    smax = np.maximum(s[..., 0], 1e-300)
    ranks = np.sum(s > 1e-8 * smax[..., None], axis=-1)
    if np.any(ranks != dim_v):
        raise GeometryError("point map rank differs from the submanifold dimension")
    return _lift_from(h, "submanifold", model)


@dataclass
class PinkallReport:
    """Per-sample residuals of the three Legendre conditions.

    Attributes:
        quadric: Max of the normalized scalar products among ``Z1, Z2``.
        independence: Smallest second singular value of ``[Z1, Z2]``.
        immersion: Smallest singular value of ``X -> (dZ1 X, dZ2 X)`` modulo
            the line, relative to its largest one.
        contact: Max of ``|<dZ1(X), Z2>|`` normalized.
    """

    quadric: np.ndarray
    independence: np.ndarray
    immersion: np.ndarray
    contact: np.ndarray
    tol: float

    @property
    def condition1(self) -> bool:
        return bool(np.all(self.quadric < self.tol) and np.all(self.independence > self.tol))

    @property
    def condition2(self) -> bool:
        return bool(np.all(self.immersion > self.tol))

    @property
    def condition3(self) -> bool:
        return bool(np.all(self.contact < self.tol))

    @property
    def valid(self) -> bool:
        return self.condition1 and self.condition2 and self.condition3

    def summary(self) -> dict:
        return {
            "valid": self.valid,
            "condition1": self.condition1,
            "condition2": self.condition2,
            "condition3": self.condition3,
            "max_quadric_residual": float(np.max(self.quadric)),
            "min_independence": float(np.min(self.independence)),
            "min_immersion": float(np.min(self.immersion)),
            "max_contact_residual": float(np.max(self.contact)),
            "tol": self.tol,
        }


def check_pinkall_conditions(lift: LegendreMap, tol: float = 1e-8) -> PinkallReport:
    """Evaluate the scalar-product, immersion and contact conditions per sample.

    The contact condition is checked in its Lie-coordinate form
    ``<dZ1(X), Z2> = 0``; no separate contact-form evaluation is done.
    """
    Z1, Z2, dZ1, dZ2 = lift.flat()
    g = lift.form.diag
    n1 = np.linalg.norm(Z1, axis=-1)
    n2 = np.linalg.norm(Z2, axis=-1)
    q11 = np.abs(np.sum(Z1 * g * Z1, -1)) / n1**2
    q22 = np.abs(np.sum(Z2 * g * Z2, -1)) / n2**2
    q12 = np.abs(np.sum(Z1 * g * Z2, -1)) / (n1 * n2)
    quadric = np.maximum(np.maximum(q11, q22), q12)
    U = np.stack([Z1 / n1[:, None], Z2 / n2[:, None]], axis=-1)
    independence = np.linalg.svd(U, compute_uv=False)[:, -1]
    Q, _ = np.linalg.qr(U)
    def _mod_line(J):
        return J - (J @ Q) @ np.swapaxes(Q, -1, -2)
    P1 = _mod_line(dZ1)
    P2 = _mod_line(dZ2)
    stacked = np.concatenate([P1, P2], axis=-1)  # (m, d, 2N)
    s = np.linalg.svd(stacked, compute_uv=False)
    immersion = s[:, -1] / np.maximum(s[:, 0], 1e-300)
    dn = np.linalg.norm(dZ1, axis=-1) + 1e-300
    contact = np.max(np.abs(np.einsum("mdk,mk->md", dZ1 * g, Z2)) / (dn * n2[:, None]), axis=-1)
    return PinkallReport(quadric, independence, immersion, contact, tol)


def projections(lift: LegendreMap, model: str | None = None) -> SampledHypersurface:
    """Point map and normal field read off the canonical basis.

    Raises:
        ImproperPointError: for a Euclidean projection that meets infinity.
    """
    model = _check_model(model or lift.model)
    dZ1, dZ2 = lift.derivatives()
    Y1, Y2, dY1, dY2 = canonical_basis(lift.Z1, lift.Z2, dZ1, dZ2, model)
    cut = slice(1, -1) if model == "spherical" else slice(2, -1)
    ev = None
    if lift.evaluator is not None:
        inner = lift.evaluator

        def ev(u, inner=inner):
            y1, y2, dy1, dy2 = canonical_basis(*inner(u), model=model)
            return y1[..., cut], y2[..., cut], dy1[..., cut], dy2[..., cut]

    analytic = lift.dZ1 is not None
    return SampledHypersurface(
        grid=lift.grid,
        f=Y1[..., cut],
        xi=Y2[..., cut],
        df=dY1[..., cut] if analytic else None,
        dxi=dY2[..., cut] if analytic else None,
        ambient=model,
        evaluator=ev,
    )


def parallel_submanifold(lift: LegendreMap, t: float) -> LegendreMap:
    """Apply the parallel map ``P_t`` and return the canonical spherical lift.

    The spherical projection of the result is ``cos t f - sin t xi``.
    """
    from .transforms import parallel

    out = lift.transformed(parallel(t, lift.n).matrix, label=f"parallel t={t:.17g}")
    return out.canonicalized("spherical")


def shape_operator(h: SampledHypersurface, index):
    """Principal curvatures and directions from ``df(A X) = -dxi(X)``.

    Solves ``II v = kappa I v`` with ``I = df df^T`` and ``II = -df dxi^T``.

    Returns:
        Ascending principal curvatures and parameter-space directions
        (columns).
    """
    from scipy.linalg import eigh

    df, dxi = h.derivatives()
    idx = np.unravel_index(index, h.grid.shape) if np.isscalar(index) else tuple(index)
    J, K = df[idx], dxi[idx]
    first = J @ J.T
    second = -0.5 * (J @ K.T + K @ J.T)
    return eigh(second, first)


@dataclass
class FocalScan:
    """Singular parameters ``t`` of ``f_t = cos t f + sin t xi`` at one sample."""

    count: int
    singular_t: list
    unresolved: list


def focal_singularity_count(lift: LegendreMap, index, t_grid=None, tol: float = 1e-7) -> FocalScan:
    """Count ``t`` in ``[0, pi)`` where the parallel map ``f_t`` drops rank.

    The smallest singular value of ``cos t df + sin t dxi`` is scanned on
    ``t_grid`` (720 points by default) and local minima are refined.  Minima
    that stay above ``tol`` but below ``1e-2`` are reported as unresolved.
    """
    sph = projections(lift, "spherical")
    df, dxi = sph.derivatives()
    idx = np.unravel_index(index, lift.grid.shape) if np.isscalar(index) else tuple(index)
    J, K = df[idx], dxi[idx]
    scale = np.linalg.svd(np.concatenate([J, K], axis=0), compute_uv=False)[0]

    def sigma(t):
        return np.linalg.svd(np.cos(t) * J + np.sin(t) * K, compute_uv=False)[-1] / scale

    ts = np.linspace(0.0, np.pi, 720, endpoint=False) if t_grid is None else np.asarray(t_grid)
    vals = np.array([sigma(t) for t in ts])
    step = ts[1] - ts[0]
    m = len(ts)
    found, unresolved = [], []
    for i in range(m):
        if vals[i] <= vals[(i - 1) % m] and vals[i] < vals[(i + 1) % m]:
            res = minimize_scalar(
                sigma, bounds=(ts[i] - step, ts[i] + step), method="bounded", options={"xatol": 1e-13}
            )
            t_star = float(np.mod(res.x, np.pi))
            value = float(min(res.fun, vals[i]))
            if value < tol:
                if not any(abs(np.mod(t_star - s + np.pi / 2, np.pi) - np.pi / 2) < 2 * step for s in found):
                    found.append(t_star)
            elif value < 1e-2:
                unresolved.append(t_star)
    return FocalScan(len(found), sorted(found), unresolved)


def spherical_point_of(lift: LegendreMap):
    """Spherical point map ``f`` of a lift, shape ``(*grid.shape, n+1)``."""
    Y1, _ = canonical_basis(lift.Z1, lift.Z2, model="spherical")
    return Y1[..., 1:-1]

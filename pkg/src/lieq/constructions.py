"""Generators for the hypersurface families used throughout the package.

Every generator returns a :class:`~lieq.legendre.SampledHypersurface` carrying
an analytic evaluator with exact first derivatives, plus a JSON-friendly
``construction`` recipe so that files written by the CLI can be rebuilt at
full precision.  Composite generators (cylinder, revolution, tube, cone,
inversion) take another sampled hypersurface as their base and compose its
evaluator.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._config import get_config
from .exceptions import GeometryError, InputError
from .grid import ParameterGrid
from .legendre import (
    SampledHypersurface,
    legendre_lift_hypersurface,
    projections,
)
from .transforms import inversion


def _resolution(resolution):
    cfg = get_config()
    if resolution is None:
        return cfg["periodic_resolution"], cfg["bounded_resolution"]
    if np.isscalar(resolution):
        r = int(resolution)
        return r, max(3, r // 2 + 1)
    per, bnd = resolution
    return int(per), int(bnd)


def _grid(bounds, periodic, resolution):
    per, bnd = _resolution(resolution)
    sizes = [per if p else bnd for p in periodic]
    return ParameterGrid.box(bounds, sizes, periodic)


def _extend_grid(grid: ParameterGrid, bounds, periodic, resolution) -> ParameterGrid:
    extra = _grid(bounds, periodic, resolution)
    return ParameterGrid(grid.axes + extra.axes, grid.periodic + extra.periodic)


def _sphere_map(theta):
    """Unit sphere S^k from k angles, with Jacobian.

    The first ``k - 1`` angles are polar angles in ``(0, pi)``, the last one
    is periodic.  Returns points ``(m, k+1)`` and derivatives ``(m, k, k+1)``.
    """
    m, k = theta.shape
    t = theta[:, 0]
    c, s = np.cos(t), np.sin(t)
    if k == 1:
        w = np.stack([c, s], axis=-1)
        dw = np.stack([-s, c], axis=-1)[:, None, :]
        return w, dw
    w_rest, dw_rest = _sphere_map(theta[:, 1:])
    w = np.concatenate([c[:, None], s[:, None] * w_rest], axis=-1)
    dw0 = np.concatenate([-s[:, None], c[:, None] * w_rest], axis=-1)
    dwr = np.concatenate([np.zeros((m, k - 1, 1)), s[:, None, None] * dw_rest], axis=-1)
    return w, np.concatenate([dw0[:, None, :], dwr], axis=1)


def _sphere_bounds(k, margin):
    bounds = [(margin, np.pi - margin)] * (k - 1) + [(0.0, 2 * np.pi)]
    periodic = [False] * (k - 1) + [True]
    return bounds, periodic


def _block(parts, sizes_in, sizes_out):
    """Assemble a block-diagonal Jacobian from per-factor Jacobians."""
    m = parts[0].shape[0]
    out = np.zeros((m, sum(sizes_in), sum(sizes_out)))
    i = o = 0
    for p, si, so in zip(parts, sizes_in, sizes_out):
        out[:, i : i + si, o : o + so] = p
        i += si
        o += so
    return out


# --- base families -----------------------------------------------------------


def product_of_spheres(p: int = 1, q: int = 1, r: float | None = None, s: float | None = None,
                       resolution=None, margin: float | None = None) -> SampledHypersurface:
    """Standard product ``S^q(r) x S^p(s)`` in ``S^(p+q+1)`` with ``r^2 + s^2 = 1``.

    The point map is ``(r w_q(u), s w_p(v))`` and the unit normal
    ``(-s w_q(u), r w_p(v))``; principal curvatures are ``s/r`` with
    multiplicity ``q`` and ``-r/s`` with multiplicity ``p``.
    """
    if p < 1 or q < 1:
        raise InputError("product of spheres needs p, q >= 1")
    if r is None and s is None:
        r = s = np.sqrt(0.5)
    elif s is None:
        s = np.sqrt(max(0.0, 1 - r * r))
    elif r is None:
        r = np.sqrt(max(0.0, 1 - s * s))
    r, s = float(r), float(s)
    if r <= 0 or s <= 0 or abs(r * r + s * s - 1) > 1e-6:
        raise GeometryError("product of spheres needs r, s > 0 with r^2 + s^2 = 1")
    norm = np.hypot(r, s)
    r, s = r / norm, s / norm
    margin = get_config()["patch_margin"] if margin is None else margin

    def fn(u):
        wq, dwq = _sphere_map(u[:, :q])
        wp, dwp = _sphere_map(u[:, q:])
        f = np.concatenate([r * wq, s * wp], axis=-1)
        xi = np.concatenate([-s * wq, r * wp], axis=-1)
        df = _block([r * dwq, s * dwp], [q, p], [q + 1, p + 1])
        dxi = _block([-s * dwq, r * dwp], [q, p], [q + 1, p + 1])
        return f, xi, df, dxi

    bq, pq = _sphere_bounds(q, margin)
    bp, pp = _sphere_bounds(p, margin)
    grid = _grid(bq + bp, pq + pp, resolution)
    spec = {"variant": "product-spheres", "p": p, "q": q, "r": r, "s": s,
            "resolution": _resolution(resolution), "margin": margin}
    return SampledHypersurface.from_function(
        fn, grid, "spherical", spec, {"kappa": (s / r, -r / s), "multiplicities": (q, p)}
    )


def clifford_torus(resolution=None) -> SampledHypersurface:
    """Product ``S^1(1/sqrt 2) x S^1(1/sqrt 2)`` in S^3 with curvatures +1 and -1."""
    return product_of_spheres(1, 1, resolution=resolution)


def torus(R: float = 2.0, a: float = 1.0, b: float | None = None, v_range=None,
          offset=None, resolution=None) -> SampledHypersurface:
    """Torus of revolution in R^3 about the third axis, outward normal.

    Args:
        R: Distance from the axis to the centre of the profile.
        a: Horizontal semi-axis of the profile ellipse.
        b: Vertical semi-axis; defaults to ``a`` (a round profile, which makes
            the torus a Dupin cyclide).  ``b != a`` gives a surface that is not
            Dupin.
        v_range: Optional ``(lo, hi)`` restricting the profile angle to a
            bounded patch; the full circle is periodic.
        offset: Translation added to every point.
    """
    b = a if b is None else float(b)
    if not (R > a > 0 and b > 0):
        raise GeometryError("torus needs R > a > 0 and b > 0")
    off = np.zeros(3) if offset is None else np.asarray(offset, dtype=float)

    def fn(uv):
        u, v = uv[:, 0], uv[:, 1]
        cu, su, cv, sv = np.cos(u), np.sin(u), np.cos(v), np.sin(v)
        rho = R + a * cv
        F = np.stack([rho * cu, rho * su, b * sv], axis=-1) + off
        Fu = np.stack([-rho * su, rho * cu, np.zeros_like(u)], axis=-1)
        Fv = np.stack([-a * sv * cu, -a * sv * su, b * cv], axis=-1)
        w = np.sqrt(b * b * cv * cv + a * a * sv * sv)
        nr, nz = b * cv / w, a * sv / w
        dw = (a * a - b * b) * sv * cv / w
        dnr = -b * sv / w - b * cv * dw / w**2
        dnz = a * cv / w - a * sv * dw / w**2
        eta = np.stack([nr * cu, nr * su, nz], axis=-1)
        eu = np.stack([-nr * su, nr * cu, np.zeros_like(u)], axis=-1)
        ev = np.stack([dnr * cu, dnr * su, dnz], axis=-1)
        return F, eta, np.stack([Fu, Fv], axis=1), np.stack([eu, ev], axis=1)

    if v_range is None:
        bounds, periodic = [(0, 2 * np.pi), (0, 2 * np.pi)], [True, True]
    else:
        bounds, periodic = [(0, 2 * np.pi), tuple(v_range)], [True, False]
    spec = {"variant": "torus", "R": R, "a": a, "b": b,
            "v_range": None if v_range is None else list(map(float, v_range)),
            "offset": off.tolist(), "resolution": _resolution(resolution)}
    return SampledHypersurface.from_function(fn, _grid(bounds, periodic, resolution), "euclidean", spec)


def torus_patch(R: float = 2.0, a: float = 1.0, margin: float | None = None, offset=None,
                resolution=None) -> SampledHypersurface:
    """Outer part of a round torus where neither principal curvature vanishes.

    The parallel curvature ``-cos v / (R + a cos v)`` vanishes on ``v = +-pi/2``;
    the patch keeps ``|v| <= pi/2 - margin``.
    """
    margin = get_config()["patch_margin"] if margin is None else margin
    half = np.pi / 2 - margin
    return torus(R, a, None, (-half, half), offset, resolution)


def round_sphere(n: int, radius: float = 1.0, center=None, resolution=None,
                 margin: float | None = None) -> SampledHypersurface:
    """Sphere of signed radius in R^n; positive radius means inward normal."""
    margin = get_config()["patch_margin"] if margin is None else margin
    c = np.zeros(n) if center is None else np.asarray(center, dtype=float)
    k = n - 1
    sign = -1.0 if radius > 0 else 1.0
    rad = abs(radius)

    def fn(u):
        w, dw = _sphere_map(u)
        return c + rad * w, sign * w, rad * dw, sign * dw

    bounds, periodic = _sphere_bounds(k, margin)
    spec = {"variant": "sphere", "n": n, "radius": radius, "center": c.tolist(),
            "resolution": _resolution(resolution), "margin": margin}
    return SampledHypersurface.from_function(fn, _grid(bounds, periodic, resolution), "euclidean", spec)


def great_sphere(n: int, resolution=None, margin: float | None = None) -> SampledHypersurface:
    """Equatorial great sphere ``x_{n+1} = 0`` of S^n with normal ``e_{n+1}``."""
    margin = get_config()["patch_margin"] if margin is None else margin
    k = n - 1

    def fn(u):
        w, dw = _sphere_map(u)
        m = u.shape[0]
        f = np.concatenate([w, np.zeros((m, 1))], axis=-1)
        xi = np.zeros_like(f)
        xi[:, -1] = 1.0
        df = np.concatenate([dw, np.zeros((m, k, 1))], axis=-1)
        return f, xi, df, np.zeros_like(df)

    bounds, periodic = _sphere_bounds(k, margin)
    spec = {"variant": "great-sphere", "n": n, "resolution": _resolution(resolution), "margin": margin}
    return SampledHypersurface.from_function(fn, _grid(bounds, periodic, resolution), "spherical", spec)


# --- composite constructions -------------------------------------------------


def _require_evaluator(base: SampledHypersurface):
    if base.evaluator is None:
        raise InputError("composite constructions need a base with an analytic evaluator")
    return base.evaluator


def _spec_of(base):
    return base.construction if base.construction is not None else {"variant": "opaque"}


def _shape_operator_values(base: SampledHypersurface):
    """Principal curvatures of a hypersurface at every grid sample."""
    df, dxi = base.derivatives()
    m = base.grid.size
    J = df.reshape(m, base.d, -1)
    K = dxi.reshape(m, base.d, -1)
    first = J @ np.swapaxes(J, -1, -2)
    second = -0.5 * (J @ np.swapaxes(K, -1, -2) + K @ np.swapaxes(J, -1, -2))
    from .linalg import batched_generalized_eigh

    w, _ = batched_generalized_eigh(second, first)
    return w


def cylinder(base: SampledHypersurface, m: int = 1, extent: float = 1.0,
             resolution=None) -> SampledHypersurface:
    """Product ``M x R^m`` of a Euclidean hypersurface with flat directions.

    Adds the principal curvature 0 with multiplicity ``m``.  A warning is
    issued when 0 is already a principal curvature of the base on part of the
    grid but not everywhere, since the result then is not proper Dupin.
    """
    if base.ambient != "euclidean":
        raise InputError("cylinder needs a Euclidean base")
    if m < 1:
        raise InputError("cylinder multiplicity must be >= 1")
    inner = _require_evaluator(base)
    kap = _shape_operator_values(base)
    near_zero = np.any(np.abs(kap) < 1e-6, axis=-1)
    if near_zero.any() and not near_zero.all():
        warnings.warn("zero is a principal curvature of the base on part of the grid; "
                      "the cylinder will not be proper Dupin", stacklevel=2)
    nb, d0 = base.n, base.d

    def fn(u):
        F, eta, dF, deta = inner(u[:, :d0])
        k = u.shape[0]
        F2 = np.concatenate([F, u[:, d0:]], axis=-1)
        eta2 = np.concatenate([eta, np.zeros((k, m))], axis=-1)
        dF2 = np.zeros((k, d0 + m, nb + m))
        dF2[:, :d0, :nb] = dF
        dF2[:, d0:, nb:] = np.eye(m)
        deta2 = np.zeros((k, d0 + m, nb + m))
        deta2[:, :d0, :nb] = deta
        return F2, eta2, dF2, deta2

    grid = _extend_grid(base.grid, [(-extent, extent)] * m, [False] * m, resolution)
    spec = {"variant": "cylinder", "base": _spec_of(base), "m": m, "extent": extent,
            "resolution": _resolution(resolution)}
    return SampledHypersurface.from_function(fn, grid, "euclidean", spec)


def revolve(base: SampledHypersurface, resolution=None, modulus=None) -> SampledHypersurface:
    """Rotate a hypersurface of R^n about the axis ``R^(n-1)`` into R^(n+1).

    The axis is spanned by the first ``n - 1`` coordinates and the base must
    keep its last coordinate positive.
    """
    if base.ambient != "euclidean":
        raise InputError("revolution needs a Euclidean base")
    if np.min(base.f[..., -1]) <= 0:
        raise GeometryError("base touches or crosses the axis of revolution")
    inner = _require_evaluator(base)
    nb, d0 = base.n, base.d

    def fn(u):
        F, eta, dF, deta = inner(u[:, :d0])
        phi = u[:, d0]
        c, s = np.cos(phi), np.sin(phi)
        k = u.shape[0]

        def sweep(X, dX):
            out = np.concatenate([X[:, :-1], (X[:, -1] * c)[:, None], (X[:, -1] * s)[:, None]], -1)
            dout = np.zeros((k, d0 + 1, nb + 1))
            dout[:, :d0, :-2] = dX[:, :, :-1]
            dout[:, :d0, -2] = dX[:, :, -1] * c[:, None]
            dout[:, :d0, -1] = dX[:, :, -1] * s[:, None]
            dout[:, d0, -2] = -X[:, -1] * s
            dout[:, d0, -1] = X[:, -1] * c
            return out, dout

        W, dW = sweep(F, dF)
        N, dN = sweep(eta, deta)
        return W, N, dW, dN

    grid = _extend_grid(base.grid, [(0, 2 * np.pi)], [True], resolution)
    spec = {"variant": "revolve", "base": _spec_of(base), "resolution": _resolution(resolution)}
    meta = {} if modulus is None else {"modulus": modulus}
    if modulus is not None:
        spec["modulus"] = modulus
    return SampledHypersurface.from_function(fn, grid, "euclidean", spec, meta)


def revolved_sphere(q: int, r: float, a: float, resolution=None) -> SampledHypersurface:
    """Revolve a q-sphere of signed radius ``r`` whose centre is at distance ``a`` from the axis.

    The result is a cyclide in R^(q+2); its recorded modulus is ``|r| / a``.
    """
    if not a > abs(r) > 0:
        raise GeometryError("the revolved sphere must stay off the axis (a > |r| > 0)")
    center = np.zeros(q + 1)
    center[-1] = a
    base = round_sphere(q + 1, r, center, resolution)
    return revolve(base, resolution, modulus=abs(r) / a)


def normal_bundle(base: SampledHypersurface, m: int = 1, resolution=None,
                  margin: float | None = None) -> SampledHypersurface:
    """Unit normal bundle of ``base`` viewed in a space of ``m`` more dimensions.

    A hypersurface of R^n (or S^n) becomes a submanifold of codimension
    ``m + 1`` in R^(n+m) (or S^(n+m)).  The normal frame is the base normal
    followed by the new coordinate directions, and the grid gains the ``m``
    angles of the unit normal sphere.  The point map is constant along those
    angles, which is the input expected by
    :func:`~lieq.legendre.legendre_lift_submanifold`.
    """
    if m < 1:
        raise InputError("normal bundle needs m >= 1")
    margin = get_config()["patch_margin"] if margin is None else margin
    inner = _require_evaluator(base)
    k0, d0 = base.f.shape[-1], base.d

    def fn(u):
        F, eta, dF, deta = inner(u[:, :d0])
        w, dw = _sphere_map(u[:, d0:])
        cnt = u.shape[0]
        f = np.concatenate([F, np.zeros((cnt, m))], axis=-1)
        xi = np.concatenate([w[:, :1] * eta, w[:, 1:]], axis=-1)
        df = np.zeros((cnt, d0 + m, k0 + m))
        df[:, :d0, :k0] = dF
        dxi = np.zeros((cnt, d0 + m, k0 + m))
        dxi[:, :d0, :k0] = w[:, :1, None] * deta
        dxi[:, d0:, :k0] = dw[:, :, :1] * eta[:, None, :]
        dxi[:, d0:, k0:] = dw[:, :, 1:]
        return f, xi, df, dxi

    bounds, periodic = _sphere_bounds(m, margin)
    grid = _extend_grid(base.grid, bounds, periodic, resolution)
    spec = {"variant": "normal-bundle", "base": _spec_of(base), "m": m,
            "resolution": _resolution(resolution), "margin": margin}
    return SampledHypersurface.from_function(fn, grid, base.ambient, spec, {"dim_v": d0})


def parallel_hypersurface(h: SampledHypersurface, eps: float) -> SampledHypersurface:
    """Push every point a distance ``eps`` along its normal.

    Euclidean: ``f + eps xi``.  Spherical: ``cos eps f + sin eps xi`` with
    normal ``-sin eps f + cos eps xi``.
    """
    inner = _require_evaluator(h)
    if h.ambient == "euclidean":
        def fn(u):
            f, xi, df, dxi = inner(u)
            return f + eps * xi, xi, df + eps * dxi, dxi
    else:
        c, s = np.cos(eps), np.sin(eps)

        def fn(u):
            f, xi, df, dxi = inner(u)
            return c * f + s * xi, -s * f + c * xi, c * df + s * dxi, -s * df + c * dxi

    spec = {"variant": "parallel", "base": _spec_of(h), "eps": eps}
    return SampledHypersurface.from_function(fn, h.grid, h.ambient, spec, dict(h.meta))


def tube(base: SampledHypersurface, eps: float, m: int = 1, resolution=None) -> SampledHypersurface:
    """Tube of radius ``eps`` around ``base`` placed in a space of ``m`` more dimensions.

    The new principal curvature is ``-1/eps`` (Euclidean) with multiplicity
    ``m``.  ``eps`` must stay below the focal distance of the base, i.e.
    ``eps * max|kappa| < 1``.
    """
    if eps <= 0:
        raise GeometryError("tube radius must be positive")
    kap = _shape_operator_values(base)
    if base.ambient == "euclidean":
        if eps * np.max(np.abs(kap)) >= 1:
            raise GeometryError("tube radius reaches a focal point of the base")
    else:
        focal = np.arctan2(1.0, np.max(np.abs(kap)))
        if eps >= focal:
            raise GeometryError("tube radius reaches a focal point of the base")
    nb = normal_bundle(base, m, resolution)
    out = parallel_hypersurface(nb, eps)
    out.construction = {"variant": "tube", "base": _spec_of(base), "eps": eps, "m": m,
                        "resolution": _resolution(resolution)}
    return out


def cone(base: SampledHypersurface, t_range=(0.5, 1.5), resolution=None) -> SampledHypersurface:
    """Cone ``t V(x)`` over a hypersurface ``V`` of the unit sphere S^(n-1).

    The unit normal of the cone is the spherical normal of ``V``; the rulings
    carry the principal curvature 0.
    """
    if base.ambient != "spherical":
        raise InputError("cone needs a base on the unit sphere")
    t0, t1 = map(float, t_range)
    if not 0 < t0 < t1:
        raise GeometryError("cone parameter range must avoid the vertex (0 < t0 < t1)")
    inner = _require_evaluator(base)
    d0, k0 = base.d, base.f.shape[-1]

    def fn(u):
        V, nu, dV, dnu = inner(u[:, :d0])
        t = u[:, d0]
        cnt = u.shape[0]
        dC = np.zeros((cnt, d0 + 1, k0))
        dC[:, :d0] = t[:, None, None] * dV
        dC[:, d0] = V
        dN = np.zeros((cnt, d0 + 1, k0))
        dN[:, :d0] = dnu
        return t[:, None] * V, nu, dC, dN

    grid = _extend_grid(base.grid, [(t0, t1)], [False], resolution)
    spec = {"variant": "cone", "base": _spec_of(base), "t_range": [t0, t1],
            "resolution": _resolution(resolution)}
    return SampledHypersurface.from_function(fn, grid, "euclidean", spec)


def sphere_inversion(h: SampledHypersurface, center, radius: float = 1.0) -> SampledHypersurface:
    """Invert a Euclidean hypersurface in a sphere.

    The inversion acts as a Möbius transform on the Legendre lift and the
    result is projected back, so normals stay exactly unit and orthogonal.
    """
    if h.ambient != "euclidean":
        raise InputError("inversion needs a Euclidean hypersurface")
    c = np.asarray(center, dtype=float)
    if np.min(np.linalg.norm(h.f - c, axis=-1)) < 1e-6 * (1 + radius):
        raise GeometryError("inversion centre lies on the hypersurface")
    lift = legendre_lift_hypersurface(h)
    image = projections(lift.transformed(inversion(c, radius).matrix, "inversion"), "euclidean")
    image.construction = {"variant": "invert", "base": _spec_of(h),
                          "center": c.tolist(), "radius": float(radius)}
    return image


# --- proper Dupin patches with prescribed multiplicities ---------------------


def _coarse(h: SampledHypersurface, per_axis: int = 7):
    """Parameter points on a coarse sub-lattice of the grid."""
    axes = []
    for a, per in zip(h.grid.axes, h.grid.periodic):
        idx = np.unique(np.linspace(0, a.size - 1, min(per_axis, a.size)).round().astype(int))
        axes.append(a[idx])
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack(mesh, axis=-1).reshape(-1, h.grid.d)


def _curvatures_at(h: SampledHypersurface, pts):
    f, xi, df, dxi = h.evaluator(pts)
    first = df @ np.swapaxes(df, -1, -2)
    second = -0.5 * (df @ np.swapaxes(dxi, -1, -2) + dxi @ np.swapaxes(df, -1, -2))
    from .linalg import batched_generalized_eigh

    w, _ = batched_generalized_eigh(second, first)
    return w, f


def find_inversion_center(h: SampledHypersurface, threshold: float | None = None,
                          radius: float = 1.0, lattice: int = 5, max_rounds: int = 3):
    """Search a lattice of centres for an inversion with no vanishing curvature.

    Candidates come from a ``lattice^n`` grid over the bounding box of the
    hypersurface (enlarged each round), ordered by distance to the box centre.
    The first centre whose image has ``min |kappa| > threshold`` and distinct
    principal curvatures on a coarse sub-lattice is accepted.

    Raises:
        GeometryError: when no candidate qualifies after ``max_rounds``.
    """
    threshold = get_config()["inversion_min_curvature"] if threshold is None else threshold
    pts = _coarse(h)
    f = h.evaluator(pts)[0]
    lo, hi = f.min(axis=0), f.max(axis=0)
    mid, half = (lo + hi) / 2, np.maximum((hi - lo) / 2, 0.5)
    for rnd in range(max_rounds):
        span = half * (1.5 + rnd)
        axes = [np.linspace(mid[i] - span[i], mid[i] + span[i], lattice) for i in range(f.shape[1])]
        cands = np.stack(np.meshgrid(*axes, indexing="ij"), -1).reshape(-1, f.shape[1])
        cands = cands[np.argsort(np.linalg.norm(cands - mid, axis=1), kind="stable")]
        for c in cands:
            dist = np.linalg.norm(f - c, axis=1)
            if dist.min() < 0.2 * radius:
                continue
            try:
                img = sphere_inversion(h, c, radius)
            except GeometryError:
                continue
            kap, _ = _curvatures_at(img, pts)
            gaps = np.diff(kap, axis=-1)
            if np.min(np.abs(kap)) > threshold and (gaps.size == 0 or np.min(gaps) > threshold):
                return c
    raise GeometryError("no inversion centre makes every principal curvature nonvanishing")


def pinkall_generator(mults, resolution=None, R: float = 2.0, a: float = 1.0) -> SampledHypersurface:
    """Proper Dupin patch with prescribed multiplicities ``(m1, ..., mg)``.

    Follows the inductive recipe: start from a proper Dupin hypersurface with
    two principal curvatures (a torus patch for ``(1, 1)``, otherwise the
    stereographic image of a product of spheres), then for every further
    multiplicity invert so that no principal curvature vanishes and take the
    cylinder with that many flat directions.
    """
    mults = tuple(int(m) for m in mults)
    if not mults or any(m < 1 for m in mults):
        raise InputError("multiplicities must be positive integers")
    if resolution is None:
        resolution = (24, 9)
    if len(mults) == 1:
        h = round_sphere(mults[0] + 1, 1.0, resolution=resolution)
    elif mults[:2] == (1, 1):
        h = torus_patch(R, a, resolution=resolution)
    else:
        h = stereographic_product(mults[1], mults[0], resolution=resolution)
    first_cylinder = True
    for m in mults[2:]:
        if not first_cylinder or _has_small_curvature(h):
            c = find_inversion_center(h)
            h = sphere_inversion(h, c, 1.0)
        h = cylinder(h, m, resolution=resolution)
        first_cylinder = False
    h.construction = {"variant": "pinkall", "mults": list(mults),
                      "resolution": _resolution(resolution), "R": R, "a": a}
    h.meta["multiplicities"] = mults
    return h


def _has_small_curvature(h: SampledHypersurface) -> bool:
    kap = _shape_operator_values(h)
    return bool(np.min(np.abs(kap)) <= get_config()["inversion_min_curvature"])


def stereographic_product(p: int, q: int, r: float = 0.6, resolution=None) -> SampledHypersurface:
    """Stereographic image in R^(p+q+1) of ``S^q(r) x S^p(s)``.

    With ``r < 1`` the product misses the projection pole, so the Euclidean
    projection of its Legendre lift is defined everywhere.
    """
    sph = product_of_spheres(p, q, r, None, resolution)
    lift = legendre_lift_hypersurface(sph).with_model("euclidean")
    out = projections(lift, "euclidean")
    out.construction = {"variant": "stereographic-product", "p": p, "q": q, "r": r,
                        "resolution": _resolution(resolution)}
    return out


# --- tube over a torus and the constant Lie curvature profile ------------------


def tube_over_torus(eps: float = 0.25, R: float = 2.0, a: float = 1.0,
                    resolution=None) -> SampledHypersurface:
    """Tube of radius ``eps`` in R^4 around a torus of revolution in R^3.

    Off the hyperplanes ``x4 = +-eps`` it has three principal curvatures,
    ``-1/eps`` among them; on those hyperplanes the two torus curvatures both
    vanish, so the hypersurface is Dupin but not proper Dupin.
    """
    out = tube(torus(R, a, resolution=resolution), eps, 1, resolution)
    out.construction = {"variant": "tube-over-torus", "eps": eps, "R": R, "a": a,
                        "resolution": _resolution(resolution)}
    return out


@dataclass(frozen=True)
class PsiProfile:
    """Principal-curvature data of the constant Lie curvature example.

    Attributes:
        theta: Profile parameter in ``(0, pi/3)``.
        alpha: Normal angle of the tube point.
        mu: Principal curvatures of the isoparametric base.
        kappa_pairs: Homogeneous pairs of the four principal curvatures of
            the tube point; the last one is infinity ``(1, 0)``.
        psi: Closed form ``1/2 + (sqrt 3 / 2) tan(theta - pi/6)``.
    """

    theta: float
    alpha: float
    mu: tuple
    kappa_pairs: tuple
    psi: float

    @property
    def kappas(self) -> tuple:
        return tuple(r / s if s != 0 else np.inf for r, s in self.kappa_pairs)


def constant_psi_profile(theta: float, alpha: float = 0.0) -> PsiProfile:
    """Curvatures ``mu_i = cot(theta + k pi/3)`` and the resulting Lie curvature.

    ``mu = (cot(theta + 2pi/3), cot(theta + pi/3), cot theta)``; the tube point
    at normal angle ``alpha`` has curvatures ``cos(alpha) mu_i`` plus infinity.
    """
    if not 0 < theta < np.pi / 3:
        raise GeometryError("theta must lie strictly inside (0, pi/3)")
    if abs(np.cos(alpha)) < 1e-12:
        raise GeometryError("normal angle with cos(alpha) = 0 collapses the three curvatures")
    angles = (theta + 2 * np.pi / 3, theta + np.pi / 3, theta)
    mu = tuple(float(np.cos(t) / np.sin(t)) for t in angles)
    ca = np.cos(alpha)
    pairs = tuple((ca * np.cos(t), np.sin(t)) for t in angles) + ((1.0, 0.0),)
    psi = 0.5 + np.sqrt(3) / 2 * np.tan(theta - np.pi / 6)
    return PsiProfile(float(theta), float(alpha), mu, pairs, float(psi))


# --- recipe dispatch -----------------------------------------------------------


def build(spec: dict) -> SampledHypersurface:
    """Rebuild a hypersurface from its ``construction`` recipe."""
    if not isinstance(spec, dict) or "variant" not in spec:
        raise InputError("construction recipe needs a 'variant'")
    v = spec["variant"]
    res = spec.get("resolution")
    res = tuple(res) if res is not None else None
    if v == "product-spheres":
        return product_of_spheres(spec["p"], spec["q"], spec["r"], spec["s"], res, spec.get("margin"))
    if v == "torus":
        return torus(spec["R"], spec["a"], spec["b"], spec.get("v_range"), spec.get("offset"), res)
    if v == "sphere":
        return round_sphere(spec["n"], spec["radius"], spec["center"], res, spec.get("margin"))
    if v == "great-sphere":
        return great_sphere(spec["n"], res, spec.get("margin"))
    if v == "cylinder":
        return cylinder(build(spec["base"]), spec["m"], spec.get("extent", 1.0), res)
    if v == "revolve":
        return revolve(build(spec["base"]), res, spec.get("modulus"))
    if v == "normal-bundle":
        return normal_bundle(build(spec["base"]), spec["m"], res, spec.get("margin"))
    if v == "parallel":
        return parallel_hypersurface(build(spec["base"]), spec["eps"])
    if v == "tube":
        return tube(build(spec["base"]), spec["eps"], spec.get("m", 1), res)
    if v == "cone":
        return cone(build(spec["base"]), spec["t_range"], res)
    if v == "invert":
        return sphere_inversion(build(spec["base"]), spec["center"], spec["radius"])
    if v == "pinkall":
        return pinkall_generator(spec["mults"], res, spec.get("R", 2.0), spec.get("a", 1.0))
    if v == "stereographic-product":
        return stereographic_product(spec["p"], spec["q"], spec["r"], res)
    if v == "tube-over-torus":
        return tube_over_torus(spec["eps"], spec["R"], spec["a"], res)
    raise InputError(f"unknown construction variant {v!r}")

"""Curvature invariants and certificates for Dupin hypersurfaces.

The functions here consume a :class:`~lieq.curvature.CurvatureField` (or the
Legendre map it came from) and answer three questions:

* Is every curvature sphere constant along its curvature surfaces, and is the
  number of distinct curvature spheres constant?  (:func:`certify_dupin`)
* Do the curvature-sphere families admit poles on a common timelike line?
  (:func:`isoparametric_criterion`)
* Does some family lie in a projective subspace of codimension two, and if so
  which construction does the polar line point to?  (:func:`reducibility_check`)

Principal values are always handled as homogeneous pairs ``(r, s)`` with value
``r / s`` so that infinity is ``(1, 0)`` and needs no special case.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np

from ._config import get_config
from .curvature import CurvatureField, CurvatureSphereSet, cluster_labels, curvature_field, decompose
from .exceptions import GeometryError, InputError
from .legendre import LegendreMap
from .linalg import IndefiniteForm, null_space, projective_distance, orthonormal_basis, polar_subspace, subspace_signature

_MUNZNER_G = (1, 2, 3, 4, 6)


# --- cross-ratio, Lie and Möbius curvatures ------------------------------------


def as_pair(value) -> np.ndarray:
    """Homogeneous pair for a principal value; ``inf`` becomes ``(1, 0)``."""
    arr = np.asarray(value, dtype=float)
    if arr.shape == (2,):
        if not np.any(arr):
            raise InputError("(0, 0) is not a point of the projective line")
        return arr
    if arr.shape != ():
        raise InputError("principal value must be a real number or a pair (r, s)")
    v = float(arr)
    if np.isinf(v):
        return np.array([1.0, 0.0])
    if np.isnan(v):
        raise InputError("principal value is NaN")
    return np.array([v, 1.0])


def _det(p, q):
    return p[0] * q[1] - q[0] * p[1]


def cross_ratio(a, b, c, d, tol: float = 0.0) -> float:
    """Cross-ratio ``[a, b; c, d] = (a - b)(d - c) / ((a - c)(d - b))``.

    Each argument is a real number, ``inf``, or a homogeneous pair ``(r, s)``
    with value ``r / s``.  The differences are 2x2 determinants of the pairs,
    whose scale factors cancel, so infinity needs no special case.

    Raises:
        GeometryError: when two of the four points coincide (a determinant is
            at most ``tol`` relative to the pair norms).
    """
    P = [as_pair(x) for x in (a, b, c, d)]
    for i, j in itertools.combinations(range(4), 2):
        scale = np.linalg.norm(P[i]) * np.linalg.norm(P[j])
        if abs(_det(P[i], P[j])) <= tol * scale:
            raise GeometryError("cross-ratio needs four distinct points")
    return float(_det(P[0], P[1]) * _det(P[3], P[2]) / (_det(P[0], P[2]) * _det(P[3], P[1])))


def sphere_cross_ratio(k1, k2, k3, k4, tol: float = 1e-8) -> float:
    """Cross-ratio of four Lie vectors lying on one projective line.

    The vectors are written in an orthonormal basis of their common span and
    the resulting pairs go through :func:`cross_ratio`, so the value depends
    only on the four points and their order, never on a model or a frame.

    Raises:
        GeometryError: if the vectors do not span a 2-dimensional space.
    """
    V = np.vstack([np.asarray(k, dtype=float) for k in (k1, k2, k3, k4)])
    V = V / np.linalg.norm(V, axis=1, keepdims=True)
    _, s, vt = np.linalg.svd(V, full_matrices=False)
    if s[1] <= tol * s[0] or s[2] > tol * s[0]:
        raise GeometryError("the four spheres do not lie on one line")
    coords = V @ vt[:2].T
    return cross_ratio(*coords, tol=tol)


def mobius_curvature(kh, ki, kj) -> float:
    """Ratio ``(kh - ki) / (kh - kj)`` of three distinct finite principal values."""
    vals = [float(v) for v in (kh, ki, kj)]
    if not all(np.isfinite(vals)):
        raise GeometryError("Möbius curvature needs finite principal values")
    if len(set(vals)) < 3:
        raise GeometryError("Möbius curvature needs three distinct principal values")
    return (vals[0] - vals[1]) / (vals[0] - vals[2])


def _ascending_pairs(pairs):
    """Sort pairs by value ascending with infinity last."""
    P = [as_pair(p) for p in pairs]
    P = [p * np.sign(p[1]) if p[1] != 0 else np.array([1.0, 0.0]) for p in P]
    angle = [np.mod(np.arctan2(p[1], p[0]), np.pi) for p in P]
    order = np.argsort(-np.asarray(angle), kind="stable")
    return [P[i] for i in order]


def lie_curvatures(values) -> dict:
    """Cross-ratios of every 4-subset of one sample's principal values.

    Args:
        values: Principal values or pairs; a :class:`CurvatureSphereSet`; or a
            :class:`~lieq.constructions.PsiProfile`.

    Returns:
        Mapping from index 4-tuples (ascending order) to the Lie curvature.
        Empty when fewer than four values are given.
    """
    if isinstance(values, CurvatureSphereSet):
        values = values.pairs
    elif hasattr(values, "kappa_pairs"):
        values = values.kappa_pairs
    P = _ascending_pairs(list(values))
    if len(P) < 4:
        return {}
    return {idx: cross_ratio(*(P[i] for i in idx)) for idx in itertools.combinations(range(len(P)), 4)}


def lie_curvature_profile(source) -> dict:
    """Lie curvatures over a whole curvature field.

    Returns:
        Mapping from 4-subsets to arrays of length ``grid.size``; entries are
        NaN at samples with fewer than four distinct curvature spheres.  For a
        single :class:`CurvatureSphereSet` the plain per-sample dict of
        :func:`lie_curvatures` is returned.
    """
    if not isinstance(source, CurvatureField):
        return lie_curvatures(source)
    m = source.grid.size
    gs = source.labels[:, -1] + 1
    out: dict = {}
    for i in np.flatnonzero(gs >= 4):
        for key, val in lie_curvatures(source.at(i)).items():
            out.setdefault(key, np.full(m, np.nan))[i] = val
    return out


def munzner_radii(g: int, rho1: float):
    """Equally spaced curvature-sphere radii and their principal values.

    Returns ``(radii, kappas)`` with ``radii[i] = rho1 + i pi / g`` and
    ``kappas[i] = cot(radii[i])``.  Values of ``g`` outside ``{1, 2, 3, 4, 6}``
    only trigger a warning.
    """
    g = int(g)
    if g < 1:
        raise InputError("g must be a positive integer")
    if g not in _MUNZNER_G:
        warnings.warn(f"g = {g} does not occur for isoparametric hypersurfaces", stacklevel=2)
    if not 0 < rho1 < np.pi / g:
        raise GeometryError("first radius must lie strictly inside (0, pi/g)")
    radii = rho1 + np.arange(g) * np.pi / g
    return radii, np.cos(radii) / np.sin(radii)


def munzner_pairs(g: int, rho1: float) -> list:
    """Homogeneous pairs ``(cos rho_i, sin rho_i)`` of :func:`munzner_radii`, ascending."""
    radii, _ = munzner_radii(g, rho1)
    return _ascending_pairs([(np.cos(r), np.sin(r)) for r in radii])


# --- Dupin certificate ----------------------------------------------------------


@dataclass
class DupinReport:
    """Outcome of :func:`certify_dupin`.

    Attributes:
        g: Distinct curvature spheres per sample, grid-shaped.
        g_mode: Most common ``g`` over interior samples.
        g_fraction: Share of interior samples with ``g == g_mode``.
        drop_locus: Flat indices of interior samples where ``g`` differs.
        family_residuals: Largest drift rate per family index, where the drift
            rate is the projective distance travelled by a curvature sphere
            along its leaf divided by the leaf length.
        leaf_drifts: Per-family arrays of the individual drift rates.
        continuation_failures: Leaves whose direction could not be continued.
        tol: Drift tolerance used.
        analytic: Whether analytic derivatives were available.
        dupin, proper: Verdicts.
    """

    g: np.ndarray
    g_mode: int
    g_fraction: float
    drop_locus: np.ndarray
    family_residuals: dict
    leaf_drifts: dict
    continuation_failures: int
    tol: float
    analytic: bool
    dupin: bool
    proper: bool
    seeds: int = 0
    notes: list = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "dupin": self.dupin,
            "proper": self.proper,
            "g": self.g_mode,
            "g_fraction": self.g_fraction,
            "g_values": sorted(int(v) for v in np.unique(self.g)),
            "drop_locus_size": int(self.drop_locus.size),
            "family_residuals": {str(k): v for k, v in self.family_residuals.items()},
            "continuation_failures": self.continuation_failures,
            "tol": self.tol,
            "analytic": self.analytic,
            "seeds": self.seeds,
        }


def _select_seeds(field_: CurvatureField, max_seeds: int) -> np.ndarray:
    interior = np.flatnonzero(field_.grid.interior_mask().ravel())
    gs = field_.labels[:, -1] + 1
    g_mode, _ = field_.interior_mode()
    regular = interior[gs[interior] == g_mode]
    special = interior[gs[interior] != g_mode]

    def spread(idx, k):
        if idx.size <= k:
            return idx
        return idx[np.unique(np.linspace(0, idx.size - 1, k).round().astype(int))]

    return np.concatenate([spread(regular, max_seeds), spread(special, max(8, max_seeds // 8))])


def _directions_and_spheres(lift: LegendreMap, u: np.ndarray):
    Z1, Z2, dZ1, dZ2 = lift.evaluate(u)
    raw = decompose(Z1, Z2, dZ1, dZ2, lift.model)
    vec = raw.vectors / np.linalg.norm(raw.vectors, axis=1, keepdims=True)
    return vec, raw.spheres


def _follow(vec, spheres, ref):
    """Pick per sample the principal direction closest to ``ref``, sign-aligned."""
    cos = np.einsum("mdj,md->mj", vec, ref)
    j = np.argmax(np.abs(cos), axis=1)
    rows = np.arange(vec.shape[0])
    best = cos[rows, j]
    direction = vec[rows, :, j] * np.sign(best)[:, None]
    return direction, spheres[rows, j], np.abs(best)


def _projective_drift(K0, K):
    return projective_distance(K0, K)


def _integrate_leaves(lift: LegendreMap, u0, dir0, K0, step, n_steps, min_cos=0.5):
    """Trace leaves from ``u0`` in both directions with classical RK4 steps.

    Returns the largest projective drift of the followed curvature sphere,
    the travelled length and a flag for leaves whose direction field could
    not be continued.
    """
    grid = lift.grid
    m = u0.shape[0]
    drift = np.zeros(m)
    length = np.zeros(m)
    failed = np.zeros(m, dtype=bool)
    for sign in (1.0, -1.0):
        u = u0.copy()
        ref = sign * dir0
        alive = np.ones(m, dtype=bool)
        for _ in range(n_steps):
            idx = np.flatnonzero(alive)
            if idx.size == 0:
                break
            uu, rr = u[idx], ref[idx]
            vec, sph = _directions_and_spheres(lift, uu)
            k1, _, c1 = _follow(vec, sph, rr)
            vec, sph = _directions_and_spheres(lift, uu + 0.5 * step * k1)
            k2, _, c2 = _follow(vec, sph, k1)
            vec, sph = _directions_and_spheres(lift, uu + 0.5 * step * k2)
            k3, _, c3 = _follow(vec, sph, k2)
            vec, sph = _directions_and_spheres(lift, uu + step * k3)
            k4, _, c4 = _follow(vec, sph, k3)
            new = uu + step / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
            bad = np.minimum(np.minimum(c1, c2), np.minimum(c3, c4)) < min_cos
            inside = grid.inside(new)
            vec, sph = _directions_and_spheres(lift, new)
            dnew, Knew, c5 = _follow(vec, sph, k4)
            bad |= c5 < min_cos
            ok = inside & ~bad
            failed[idx[bad & inside]] = True
            drift[idx[ok]] = np.maximum(drift[idx[ok]], _projective_drift(K0[idx[ok]], Knew[ok]))
            length[idx[ok]] += step
            u[idx[ok]] = new[ok]
            ref[idx[ok]] = dnew[ok]
            alive[idx[~ok]] = False
    return drift, length, failed


def _principal_space_drift(lift: LegendreMap, u0, spaces, K0, h):
    """Derivative of a multiple curvature sphere into its own principal space."""
    out = np.zeros(u0.shape[0])
    for k in range(spaces.shape[-1]):
        X = spaces[..., k]
        X = X / np.linalg.norm(X, axis=1, keepdims=True)
        _, sp = _directions_and_spheres(lift, u0 + h * X)
        _, sm = _directions_and_spheres(lift, u0 - h * X)

        def closest(S):
            c = np.abs(np.einsum("mjN,mN->mj", S, K0))
            return S[np.arange(S.shape[0]), np.argmax(c, axis=1)]

        Kp, Km = closest(sp), closest(sm)
        out = np.maximum(out, np.maximum(_projective_drift(K0, Kp), _projective_drift(K0, Km)) / h)
    return out


def certify_dupin(lift: LegendreMap, field_: CurvatureField | None = None, tol: float | None = None,
                  max_seeds: int = 192, leaf_cells: float = 8.0) -> DupinReport:
    """Check that curvature spheres are constant along curvature surfaces.

    Leaves of every simple family are traced from a deterministic set of seed
    samples through the principal direction field (RK4, step of a quarter
    grid cell, ``leaf_cells`` cells in total split over both directions).  A
    family of higher multiplicity is checked by differentiating its curvature
    sphere along its principal space.  ``proper`` additionally requires the
    same ``g`` on at least the configured share of interior samples.
    """
    cfg = get_config()
    if field_ is None:
        field_ = curvature_field(lift)
    analytic = lift.analytic
    if tol is None:
        tol = cfg["dupin_tol_analytic"] if analytic else cfg["dupin_tol_fd"]
    grid = lift.grid
    g_mode, _ = field_.interior_mode()
    interior = grid.interior_mask().ravel()
    gs = field_.labels[:, -1] + 1
    g_fraction = float(np.mean(gs[interior] == g_mode))
    drop = np.flatnonzero(interior & (gs != g_mode))

    seeds = _select_seeds(field_, max_seeds)
    u_all = grid.flat_points()
    step = grid.cell / 4.0
    n_steps = int(np.ceil(leaf_cells * 4 / 2))
    h = 1e-5 * max(1.0, grid.cell)
    drifts: dict = {}
    failures = 0
    labels = field_.labels
    raw = field_.raw
    vec_all = raw.vectors / np.linalg.norm(raw.vectors, axis=1, keepdims=True)
    for j in range(grid.d):
        lab = labels[seeds, j]
        size = np.sum(labels[seeds] == lab[:, None], axis=1)
        simple = seeds[size == 1]
        if simple.size:
            d, length, failed = _integrate_leaves(
                lift, u_all[simple], vec_all[simple, :, j], raw.spheres[simple, j], step, n_steps
            )
            rate = d / np.maximum(length, grid.cell)
            failures += int(failed.sum())
            for fam in np.unique(labels[simple, j]):
                drifts.setdefault(int(fam), []).append(rate[labels[simple, j] == fam])
        multiple = seeds[size > 1]
        # each multiple cluster is checked once, from its first member
        first = multiple[labels[multiple, j] != labels[multiple, max(j - 1, 0)]] if j > 0 else multiple
        for size_k in np.unique(size[size > 1]) if first.size else ():
            group = first[np.sum(labels[first] == labels[first, j][:, None], axis=1) == size_k]
            if not group.size:
                continue
            spaces = np.stack([vec_all[i][:, labels[i] == labels[i, j]] for i in group], axis=0)
            rate = _principal_space_drift(lift, u_all[group], spaces, raw.spheres[group, j], h)
            for fam in np.unique(labels[group, j]):
                drifts.setdefault(int(fam), []).append(rate[labels[group, j] == fam])
    leaf = {k: np.concatenate(v) for k, v in sorted(drifts.items())}
    residuals = {k: float(np.max(v)) if v.size else 0.0 for k, v in leaf.items()}
    dupin = bool(all(r < tol for r in residuals.values()))
    proper = bool(dupin and g_fraction >= cfg["proper_fraction"])
    notes = []
    if failures:
        notes.append(f"{failures} leaves stopped where the direction field could not be continued")
    return DupinReport(
        g=field_.g, g_mode=g_mode, g_fraction=g_fraction, drop_locus=drop,
        family_residuals=residuals, leaf_drifts=leaf, continuation_failures=failures,
        tol=float(tol), analytic=analytic, dupin=dupin, proper=proper,
        seeds=int(seeds.size), notes=notes,
    )


# --- timelike line criterion ----------------------------------------------------


def family_selectors(field_: CurvatureField) -> list:
    """One family selector per curvature-sphere family.

    When the grid parameters are curvature-line coordinates the families are
    named by their parameter axes, which keeps them apart where principal
    values cross; otherwise they are numbered by ascending principal value.
    """
    groups = field_.axis_families()
    if groups is not None:
        return [("axis", grp[0]) for grp in groups]
    g_mode, _ = field_.interior_mode()
    return list(range(g_mode))


def _family_samples(field_: CurvatureField, family, mask=None):
    K = field_.family_spheres(family, mask)
    return K / np.linalg.norm(K, axis=1, keepdims=True)


def _span_rank(K, rtol, gap):
    s = np.linalg.svd(K, compute_uv=False)
    smax = s[0] if s.size else 0.0
    r = int(np.sum(s > rtol * smax))
    nxt = s[r] if r < s.size else 0.0
    ratio = np.inf if nxt <= 1e-13 * smax else s[r - 1] / nxt
    return r, s, bool(ratio < gap)


def _most_negative(basis, form: IndefiniteForm):
    """Direction in ``span(basis)`` with the most negative form value."""
    gram = (basis * form.diag) @ basis.T
    w, v = np.linalg.eigh(0.5 * (gram + gram.T))
    p = v[:, 0] @ basis
    return p / np.linalg.norm(p), float(w[0])


def _closest_in(basis, plane):
    """Unit vector of ``span(basis)`` closest to ``span(plane)`` and its sine distance."""
    M = basis @ plane.T
    u, s, _ = np.linalg.svd(M)
    p = u[:, 0] @ basis
    return p / np.linalg.norm(p), float(np.sqrt(max(0.0, 1.0 - min(1.0, s[0]) ** 2)))


@dataclass
class IsoparametricReport:
    """Outcome of :func:`isoparametric_criterion`.

    Attributes:
        accepted: True when every family has a pole on a common timelike line.
        poles: Unit pole vectors, one per family.
        line: Orthonormal basis (rows) of the fitted line, or ``None``.
        line_residual: Largest sine distance from a pole to the line.
        line_signature: Signature of the form on the line.
        complement_dims: Dimension of each family's Lie-orthogonal complement.
        orthogonality: Largest ``|<K_i, P_i>|`` over the samples, per family.
        radii: Curvature-sphere radii when the line is the standard one
            spanned by the first and last coordinate axes, else ``None``.
        ambiguous: Families whose complement rank was ambiguous.
        reason: Why the criterion was rejected, empty when accepted.
    """

    accepted: bool
    poles: list
    line: np.ndarray | None
    line_residual: float
    line_signature: tuple
    complement_dims: list
    orthogonality: list
    radii: list | None
    ambiguous: list
    reason: str = ""

    def summary(self) -> dict:
        return {
            "accepted": self.accepted,
            "timelike": self.line_signature[:2] == (0, 2) if self.line is not None else False,
            "line_residual": self.line_residual,
            "line_signature": list(self.line_signature),
            "complement_dims": self.complement_dims,
            "orthogonality": self.orthogonality,
            "radii": self.radii,
            "ambiguous": self.ambiguous,
            "reason": self.reason,
        }


def isoparametric_criterion(field_: CurvatureField, tol: float = 1e-6, rtol: float | None = None,
                            max_iter: int = 50) -> IsoparametricReport:
    """Look for poles ``P_i`` with ``<K_i, P_i> = 0`` on a common timelike line.

    For each family the Lie-orthogonal complement of the span of its sampled
    curvature spheres is computed independently.  If the standard line
    spanned by the first and last coordinate axes meets every complement it is
    used directly, which also yields the radii.  Otherwise a line is fitted:
    the first pole is the most negative direction of its complement, the
    second the most negative direction of its complement orthogonal to the
    first, and the remaining poles are pulled onto the line by alternating
    closest-point projection and a two-dimensional SVD fit.
    """
    cfg = get_config()
    rtol = cfg["rank_rtol"] if rtol is None else rtol
    g_mode, mask = field_.interior_mode()
    form = field_.lift.form
    N = field_.lift.N
    comps, dims, ambiguous = [], [], []
    samples = []
    selectors = family_selectors(field_)
    g_mode = len(selectors)
    for i in selectors:
        K = _family_samples(field_, i, mask)
        samples.append(K)
        r, _, amb = _span_rank(K, rtol, cfg["rank_gap"])
        if amb:
            ambiguous.append(i)
        E = orthonormal_basis(K, rtol)
        C = polar_subspace(E, form).basis
        comps.append(C)
        dims.append(int(C.shape[0]))

    def reject(reason, poles=(), line=None, res=np.inf, sig=(0, 0, 0)):
        orth = [float(np.max(np.abs((K * form.diag) @ P))) for K, P in zip(samples, poles)]
        return IsoparametricReport(False, list(poles), line, float(res), tuple(sig), dims, orth,
                                   None, ambiguous, reason)

    if ambiguous:
        return reject("complement rank is ambiguous for families " + str(ambiguous))
    if any(d == 0 for d in dims):
        return reject("some family spans the whole space, so it has no pole")

    standard = np.zeros((2, N))
    standard[0, 0] = standard[1, -1] = 1.0
    fits = [_closest_in(C, standard) for C in comps]
    if all(dist < tol for _, dist in fits):
        poles = [p for p, _ in fits]
        line = standard
    else:
        p1, w1 = _most_negative(comps[0], form)
        if w1 >= -tol:
            return reject("the first family has no timelike pole")
        if g_mode == 1:
            rest = polar_subspace(p1[None, :], form).basis
            q, _ = _most_negative(rest, form)
            poles, line = [p1], orthonormal_basis(np.stack([p1, q]))
        else:
            C2 = comps[1]
            row = C2 @ (p1 * form.diag)
            if np.linalg.norm(row) < tol:
                restricted = C2
            else:
                restricted = null_space(row[None, :]) @ C2
            if restricted.shape[0]:
                p2, _ = _most_negative(restricted, form)
            else:
                p2, _ = _most_negative(comps[1], form)
            line = orthonormal_basis(np.stack([p1, p2]))
            poles = [p1, p2] + [None] * (g_mode - 2)
            for _ in range(max_iter):
                for i in range(2, g_mode):
                    poles[i], _ = _closest_in(comps[i], line)
                if g_mode <= 2:
                    break
                new_poles = [_closest_in(C, line)[0] for C in comps]
                _, _, vt = np.linalg.svd(np.stack(new_poles))
                new_line = vt[:2]
                moved = np.linalg.svd(new_line @ line.T, compute_uv=False).min()
                poles, line = new_poles, new_line
                if moved > 1 - 1e-15:
                    break
    if line.shape[0] != 2:
        return reject("poles do not span a line", poles)
    res = max(_closest_in(line, P[None, :])[1] for P in poles)
    sig = subspace_signature(line, form)
    if res >= tol:
        return reject("poles do not lie on a common line", poles, line, res, sig)
    if sig[:2] != (0, 2):
        return reject("the fitted line is not timelike", poles, line, res, sig)
    orth = [float(np.max(np.abs((K * form.diag) @ P))) for K, P in zip(samples, poles)]
    radii = None
    if line is standard:
        radii = [float(np.mod(np.arctan2(P[0], -P[-1]), np.pi)) for P in poles]
    return IsoparametricReport(True, poles, line, float(res), tuple(sig), dims, orth, radii,
                               ambiguous)


# --- reducibility ------------------------------------------------------------------

_LABELS = {(2, 0, 0): "revolution", (1, 0, 1): "cylinder", (1, 1, 0): "tube"}


def _admissible(sig) -> list:
    p, m, z = sig
    out = []
    if p >= 2:
        out.append("revolution")
    if p >= 1 and (z >= 1 or (m >= 1 and p >= 2)):
        out.append("cylinder")
    if p >= 1 and m >= 1:
        out.append("tube")
    return out


@dataclass
class ReducibilityReport:
    """Outcome of :func:`reducibility_check` for one family.

    Attributes:
        family: Family index (or axis selector) that was tested.
        rank: Numerical rank of the stacked curvature spheres.
        singular_values: Singular values of the stack.
        subspace: Orthonormal basis (rows) of the fitted span ``E``.
        polar: Orthonormal basis of its Lie-orthogonal complement.
        codimension: Projective codimension of ``E``.
        signature: Signature ``(+, -, 0)`` of the form on the complement.
        label: ``"revolution"``, ``"cylinder"``, ``"tube"`` or ``"none"``.
        admissible: Labels whose signature occurs on some 2-plane of the
            complement; only informative when the complement is bigger than a
            line.
        inconclusive: True when the rank decision had too small a gap.
    """

    family: object
    rank: int
    singular_values: np.ndarray
    subspace: np.ndarray
    polar: np.ndarray
    codimension: int
    signature: tuple
    label: str
    admissible: list
    inconclusive: bool

    def summary(self) -> dict:
        fam = list(self.family) if isinstance(self.family, tuple) else self.family
        return {
            "family": fam,
            "rank": self.rank,
            "codimension": self.codimension,
            "signature": list(self.signature),
            "label": self.label,
            "admissible": self.admissible,
            "inconclusive": self.inconclusive,
            "singular_values": [float(s) for s in self.singular_values],
        }


def reducibility_check(field_: CurvatureField, family, rtol: float | None = None,
                       mask=None) -> ReducibilityReport:
    """Fit the projective span of one curvature-sphere family.

    A label is assigned only when the span has projective codimension exactly
    two, so that its Lie-orthogonal complement is a line whose signature
    names the construction: ``(+,+)`` revolution, ``(0,+)`` cylinder and
    ``(-,+)`` tube.  A larger complement is reported with label ``"none"``
    together with the labels it would admit.
    """
    cfg = get_config()
    rtol = cfg["rank_rtol"] if rtol is None else rtol
    K = _family_samples(field_, family, mask)
    form = field_.lift.form
    r, s, amb = _span_rank(K, rtol, cfg["rank_gap"])
    E = orthonormal_basis(K, rtol)
    P = polar_subspace(E, form).basis
    N = field_.lift.N
    codim = N - r
    sig = subspace_signature(P, form) if P.shape[0] else (0, 0, 0)
    label = "none"
    if not amb and codim == 2:
        label = _LABELS.get(tuple(sig), "none")
    admissible = _admissible(sig) if codim >= 2 else []
    return ReducibilityReport(family, r, s, E, P, codim, tuple(sig), label, admissible, amb)


def reducibility_all(field_: CurvatureField, rtol: float | None = None) -> list:
    """:func:`reducibility_check` for every family of the modal ``g``."""
    return [reducibility_check(field_, f, rtol) for f in family_selectors(field_)]


def recluster(field_: CurvatureField, tol: float) -> CurvatureField:
    """Same curvature field with a different clustering tolerance."""
    return CurvatureField(field_.lift, field_.raw, cluster_labels(field_.raw.angle, tol))

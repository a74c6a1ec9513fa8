"""Regular parameter grids, finite differences and off-grid interpolation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .exceptions import InputError


@dataclass(frozen=True, eq=False)
class ParameterGrid:
    """Tensor grid over a box of parameters.

    Attributes:
        axes: One uniformly spaced coordinate array per parameter.  Periodic
            axes exclude the right endpoint, so their period is
            ``len(axis) * spacing``.
        periodic: Flag per axis.
    """

    axes: tuple
    periodic: tuple

    def __post_init__(self):
        axes = tuple(np.asarray(a, dtype=float) for a in self.axes)
        periodic = tuple(bool(p) for p in self.periodic)
        if len(axes) != len(periodic) or not axes:
            raise InputError("grid needs one periodic flag per axis")
        for a in axes:
            if a.ndim != 1 or a.size < 2:
                raise InputError("grid axes must be 1-D with at least two samples")
            steps = np.diff(a)
            if np.any(steps <= 0) or np.ptp(steps) > 1e-9 * max(1.0, abs(steps[0])):
                raise InputError("grid axes must be increasing and uniformly spaced")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "periodic", periodic)

    @classmethod
    def box(cls, bounds, sizes, periodic) -> "ParameterGrid":
        """Grid over ``bounds[i] = (lo, hi)``; periodic axes drop ``hi``."""
        axes = []
        for (lo, hi), size, per in zip(bounds, sizes, periodic):
            if per:
                axes.append(lo + (hi - lo) * np.arange(size) / size)
            else:
                axes.append(np.linspace(lo, hi, size))
        return cls(tuple(axes), tuple(periodic))

    @property
    def d(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple:
        return tuple(a.size for a in self.axes)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def spacing(self) -> np.ndarray:
        return np.array([a[1] - a[0] for a in self.axes])

    @property
    def cell(self) -> float:
        """Smallest grid spacing, the unit for leaf steps and lengths."""
        return float(self.spacing.min())

    @property
    def lower(self) -> np.ndarray:
        return np.array([a[0] for a in self.axes])

    @property
    def upper(self) -> np.ndarray:
        return np.array(
            [a[0] + a.size * (a[1] - a[0]) if p else a[-1] for a, p in zip(self.axes, self.periodic)]
        )

    def points(self) -> np.ndarray:
        """All grid points, shape ``(*shape, d)``."""
        mesh = np.meshgrid(*self.axes, indexing="ij")
        return np.stack(mesh, axis=-1)

    def flat_points(self) -> np.ndarray:
        return self.points().reshape(-1, self.d)

    def interior_mask(self) -> np.ndarray:
        """Samples off the boundary ring of the non-periodic axes."""
        mask = np.ones(self.shape, dtype=bool)
        for k, per in enumerate(self.periodic):
            if not per:
                idx = [slice(None)] * self.d
                idx[k] = 0
                mask[tuple(idx)] = False
                idx[k] = -1
                mask[tuple(idx)] = False
        return mask

    def wrap(self, u: np.ndarray) -> np.ndarray:
        """Reduce periodic coordinates into their fundamental interval."""
        u = np.array(u, dtype=float, copy=True)
        lo, hi = self.lower, self.upper
        for k, per in enumerate(self.periodic):
            if per:
                u[..., k] = lo[k] + np.mod(u[..., k] - lo[k], hi[k] - lo[k])
        return u

    def inside(self, u: np.ndarray, slack: float = 0.0) -> np.ndarray:
        """True where the bounded coordinates stay within the box."""
        u = np.asarray(u, dtype=float)
        ok = np.ones(u.shape[:-1], dtype=bool)
        for k, (a, per) in enumerate(zip(self.axes, self.periodic)):
            if not per:
                ok &= (u[..., k] >= a[0] - slack) & (u[..., k] <= a[-1] + slack)
        return ok


def grid_derivatives(values: np.ndarray, grid: ParameterGrid) -> np.ndarray:
    """Second-order central differences of gridded values.

    Args:
        values: Array of shape ``(*grid.shape, k)``.

    Returns:
        Array of shape ``(*grid.shape, d, k)``.
    """
    out = []
    for k, (h, per) in enumerate(zip(grid.spacing, grid.periodic)):
        if per:
            diff = (np.roll(values, -1, axis=k) - np.roll(values, 1, axis=k)) / (2 * h)
        else:
            diff = np.gradient(values, h, axis=k, edge_order=2)
        out.append(diff)
    return np.stack(out, axis=-2)


class PeriodicInterpolator:
    """Cubic interpolation of gridded fields that respects periodic axes."""

    _PAD = 3

    def __init__(self, grid: ParameterGrid, values: np.ndarray):
        self.grid = grid
        axes = []
        data = np.asarray(values, dtype=float)
        for k, (a, per) in enumerate(zip(grid.axes, grid.periodic)):
            if per:
                h = a[1] - a[0]
                p = self._PAD
                ext = np.concatenate([a[0] - h * np.arange(p, 0, -1), a, a[-1] + h * np.arange(1, p + 1)])
                data = np.concatenate(
                    [np.take(data, range(-p, 0), axis=k), data, np.take(data, range(p), axis=k)], axis=k
                )
                axes.append(ext)
            else:
                axes.append(a)
        method = "cubic" if min(len(a) for a in axes) >= 4 else "linear"
        self._interp = RegularGridInterpolator(tuple(axes), data, method=method)

    def __call__(self, u: np.ndarray) -> np.ndarray:
        u = self.grid.wrap(np.atleast_2d(u))
        lo = np.array([a[0] for a in self.grid.axes])
        hi = np.array([a[-1] for a in self.grid.axes])
        for k, per in enumerate(self.grid.periodic):
            if not per:
                u[:, k] = np.clip(u[:, k], lo[k], hi[k])
        return self._interp(u)

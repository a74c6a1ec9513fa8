"""Global numerical tolerances with a scoped override helper."""

from __future__ import annotations

import os
import threading
from contextlib import contextmanager

_DEFAULTS = {
    "quadric_tol": 1e-10,
    "contact_tol": 1e-9,
    "rank_rtol": 1e-8,
    "group_tol": 1e-10,
    "cluster_tol": 1e-6,
    "expm_tail": 1e-14,
    "dupin_tol_analytic": 1e-6,
    "dupin_tol_fd": 1e-4,
    "proper_fraction": 0.99,
    "timelike_residual": 1e-6,
    "rank_gap": 10.0,
    "singular_scan": 16,
    "periodic_resolution": 64,
    "bounded_resolution": 33,
    "inversion_min_curvature": 0.05,
    "patch_margin": 0.1,
}

_local = threading.local()


def _env_default_tol():
    raw = os.environ.get("LIEQ_DEFAULT_TOL")
    if raw is None:
        return None
    try:
        value = float(raw)
    except ValueError:
        return None
    return value if value > 0 else None


def _state():
    if not hasattr(_local, "config"):
        _local.config = dict(_DEFAULTS)
    return _local.config


def get_config() -> dict:
    """Return a copy of the active tolerance settings."""
    return dict(_state())


def set_config(**overrides) -> None:
    """Permanently update tolerance settings for the current thread."""
    state = _state()
    for key, value in overrides.items():
        if key not in _DEFAULTS:
            raise KeyError(f"unknown configuration key {key!r}")
        state[key] = value


@contextmanager
def config_context(**overrides):
    """Temporarily override tolerance settings.

    Examples:
        >>> with config_context(contact_tol=1e-6):
        ...     pass
    """
    old = get_config()
    set_config(**overrides)
    try:
        yield
    finally:
        _state().clear()
        _state().update(old)


def default_tol() -> float:
    """Default CLI tolerance, honouring ``LIEQ_DEFAULT_TOL`` when set."""
    env = _env_default_tol()
    return env if env is not None else get_config()["contact_tol"]

"""Numerical Lie sphere geometry.

Oriented spheres, planes and points become points of the Lie quadric;
hypersurfaces become Legendre maps into it.  On top of that the package
computes curvature spheres and certifies the Dupin, proper Dupin,
isoparametric and reducibility properties of sampled hypersurfaces.
"""

from ._config import config_context, get_config, set_config
from .contact import ContactElement, PencilLine, euclidean_contact, oriented_contact
from .curvature import CurvatureField, CurvatureSphereSet, curvature_field, curvature_spheres
from .dupin import (
    DupinReport,
    IsoparametricReport,
    ReducibilityReport,
    certify_dupin,
    cross_ratio,
    isoparametric_criterion,
    lie_curvatures,
    mobius_curvature,
    sphere_cross_ratio,
    munzner_radii,
    reducibility_all,
    reducibility_check,
)
from .estimators import (
    DupinCertifier,
    IsoparametricDetector,
    LieCoordinateEncoder,
    LieTransformer,
    ReducibilityDetector,
)
from .exceptions import (
    GeometryError,
    InconclusiveError,
    InputError,
    LieqError,
    NotInGroupError,
)
from .legendre import (
    LegendreMap,
    SampledHypersurface,
    check_pinkall_conditions,
    focal_singularity_count,
    legendre_lift_hypersurface,
    legendre_lift_submanifold,
    parallel_submanifold,
    projections,
)
from .linalg import IndefiniteForm, scalar_product
from .spheres import (
    ImproperPoint,
    LieCoord,
    Plane,
    ProperPoint,
    Sphere,
    SphericalSphere,
    euclidean_to_lie,
    lie_to_euclidean,
    lie_to_spherical,
    spherical_to_lie,
)
from .transforms import LieTransform, apply, conformal_factor, random_lie_transform

__version__ = "0.1.0"

__all__ = [
    "ContactElement",
    "CurvatureField",
    "CurvatureSphereSet",
    "DupinCertifier",
    "DupinReport",
    "GeometryError",
    "ImproperPoint",
    "InconclusiveError",
    "IndefiniteForm",
    "InputError",
    "IsoparametricDetector",
    "IsoparametricReport",
    "LegendreMap",
    "LieCoord",
    "LieCoordinateEncoder",
    "LieTransform",
    "LieTransformer",
    "LieqError",
    "NotInGroupError",
    "PencilLine",
    "Plane",
    "ProperPoint",
    "ReducibilityDetector",
    "ReducibilityReport",
    "SampledHypersurface",
    "Sphere",
    "SphericalSphere",
    "apply",
    "certify_dupin",
    "check_pinkall_conditions",
    "config_context",
    "conformal_factor",
    "cross_ratio",
    "curvature_field",
    "curvature_spheres",
    "euclidean_contact",
    "euclidean_to_lie",
    "focal_singularity_count",
    "get_config",
    "isoparametric_criterion",
    "legendre_lift_hypersurface",
    "legendre_lift_submanifold",
    "lie_curvatures",
    "lie_to_euclidean",
    "lie_to_spherical",
    "mobius_curvature",
    "sphere_cross_ratio",
    "munzner_radii",
    "oriented_contact",
    "parallel_submanifold",
    "projections",
    "random_lie_transform",
    "reducibility_all",
    "reducibility_check",
    "scalar_product",
    "set_config",
    "spherical_to_lie",
]

"""Command-line front end.

Every subcommand reads JSON, writes JSON (to ``--output`` or standard
output) and exits with 0 on success, 2 for bad input, 3 when a geometric
precondition fails and 4 when the numerics are inconclusive.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import constructions, io
from ._config import _DEFAULTS, config_context, default_tol
from .contact import ContactElement, PencilLine, euclidean_contact, oriented_contact
from .curvature import curvature_field, curvature_spheres
from .dupin import (
    certify_dupin,
    cross_ratio,
    isoparametric_criterion,
    lie_curvatures,
    reducibility_all,
)
from .exceptions import GeometryError, InconclusiveError, InputError, LieqError
from .legendre import check_pinkall_conditions
from .spheres import LieCoord, euclidean_to_lie, lie_to_euclidean, lie_to_spherical, spherical_to_lie
from .spheres import ImproperPoint, Plane, ProperPoint, Sphere, SphericalSphere
from .transforms import LieTransform, apply, random_lie_transform

EXIT_OK, EXIT_INPUT, EXIT_GEOMETRY, EXIT_INCONCLUSIVE = 0, 2, 3, 4


@dataclass
class RunConfig:
    """Validated settings of one CLI invocation.

    Attributes:
        command: Subcommand name (with its variant, e.g. ``"certify dupin"``).
        input, output: Paths, or ``None`` for none / standard output.
        tol: Main tolerance of the command.
        seed: Seed for random transforms.
        resolution: ``(periodic, bounded)`` samples per axis, or ``None``.
        tolerances: Overrides of the package tolerance settings.
        json: Print the full JSON document on standard output as well.
    """

    command: str
    input: str | None = None
    output: str | None = None
    tol: float | None = None
    seed: int | None = None
    resolution: tuple | None = None
    tolerances: dict = field(default_factory=dict)
    json: bool = False

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise InputError("tolerance must be positive")
        unknown = set(self.tolerances) - set(_DEFAULTS)
        if unknown:
            raise InputError(f"unknown tolerance keys: {', '.join(sorted(unknown))}")
        for key, value in self.tolerances.items():
            if not float(value) > 0:
                raise InputError(f"tolerance {key} must be positive")

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        """Build from a plain mapping; unknown keys are rejected."""
        names = {f.name for f in fields(cls)}
        unknown = set(doc) - names
        if unknown:
            raise InputError(f"unknown RunConfig keys: {', '.join(sorted(unknown))}")
        return cls(**doc)


def _parse_resolution(text):
    if text is None:
        return None
    try:
        parts = [int(p) for p in str(text).split(",")]
    except ValueError:
        raise InputError("--resolution takes 'P' or 'P,B' with integers") from None
    if len(parts) == 1:
        parts.append(parts[0] // 2 + 1)
    if len(parts) != 2 or min(parts) < 3:
        raise InputError("--resolution takes 'P' or 'P,B' with integers >= 3")
    return tuple(parts)


def _parse_floats(text, name):
    try:
        return [float(p) for p in str(text).split(",")]
    except ValueError:
        raise InputError(f"--{name} takes comma-separated numbers") from None


def _parse_set(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InputError("--set takes key=value")
        key, value = item.split("=", 1)
        try:
            out[key] = float(value) if key not in ("singular_scan", "periodic_resolution",
                                                    "bounded_resolution") else int(value)
        except ValueError:
            raise InputError(f"--set {key} needs a number") from None
    return out


# --- output helpers -------------------------------------------------------------


def _emit(cfg: RunConfig, doc: dict, line: str | None = None):
    if cfg.output:
        io.write(cfg.output, doc)
        if line:
            print(line)
        if cfg.json:
            sys.stdout.write(io.dumps(doc))
    else:
        if line and not cfg.json:
            print(line)
        sys.stdout.write(io.dumps(doc))


def _read_input(cfg: RunConfig):
    if not cfg.input:
        raise InputError("--input is required")
    return io.read(cfg.input)


# --- subcommands ---------------------------------------------------------------------


def cmd_convert(cfg: RunConfig, args):
    out = []
    for obj in io.spheres_from_doc(_read_input(cfg)):
        if isinstance(obj, (ProperPoint, Sphere, Plane, ImproperPoint)):
            L = euclidean_to_lie(obj)
        elif isinstance(obj, SphericalSphere):
            L = spherical_to_lie(obj)
        else:
            L = obj
        if args.to == "lie":
            res = L.canonical() if args.canonical else L
        elif args.to == "euclidean":
            res = lie_to_euclidean(L)
        else:
            res = lie_to_spherical(L)
        out.append(io.sphere_to_dict(res))
    doc = out[0] if len(out) == 1 else {"schema": "sphere", "items": out}
    _emit(cfg, doc)


def _lie_of(obj):
    if isinstance(obj, LieCoord):
        return obj
    if isinstance(obj, SphericalSphere):
        return spherical_to_lie(obj)
    return euclidean_to_lie(obj)


def cmd_contact(cfg: RunConfig, args):
    objs = io.spheres_from_doc(_read_input(cfg))
    if len(objs) != 2:
        raise InputError("contact needs exactly two spheres (an 'items' list of two)")
    a, b = (_lie_of(o) for o in objs)
    tol = cfg.tol if cfg.tol is not None else default_tol()
    ua = a.coords / np.linalg.norm(a.coords)
    ub = b.coords / np.linalg.norm(b.coords)
    doc = {"schema": "contact", "contact": oriented_contact(a, b, tol),
           "scalar_product": float(a.form(ua, ub)), "tol": tol}
    euclid = [o for o in objs if isinstance(o, (ProperPoint, Sphere, Plane))]
    if len(euclid) == 2:
        doc["euclidean_oracle"] = euclidean_contact(euclid[0], euclid[1], tol)
    _emit(cfg, doc, f"contact={str(doc['contact']).lower()}")


def cmd_pencil(cfg: RunConfig, args):
    doc = _read_input(cfg)
    if isinstance(doc, dict) and doc.get("schema") == "pencil":
        line = io.pencil_from_dict(doc)
    elif isinstance(doc, dict) and "point" in doc and "normal" in doc and "items" not in doc:
        line = PencilLine.from_contact_element(
            ContactElement(np.asarray(doc["point"], float), np.asarray(doc["normal"], float))
        )
    else:
        objs = io.spheres_from_doc(doc)
        if len(objs) != 2:
            raise InputError("pencil needs two spheres in oriented contact or a contact element")
        a, b = (_lie_of(o) for o in objs)
        line = PencilLine(a.coords, b.coords, cfg.tol)
    out = io.pencil_to_dict(line)
    if args.t is not None:
        k = line.sphere_at(args.t)
        out["sphere_at"] = {"t": args.t, "coords": k, "spherical": io.sphere_to_dict(lie_to_spherical(k))}
    _emit(cfg, out)


def cmd_transform(cfg: RunConfig, args):
    doc = io.read(cfg.input) if cfg.input else None
    if args.matrix:
        B = io.transform_from_dict(io.read(args.matrix))
    elif args.random or doc is None:
        n = args.n
        if n is None and doc is not None:
            n = int(doc["n"]) if "n" in doc else None
        if n is None:
            raise InputError("transform --random needs --n or an --input file")
        B = random_lie_transform(cfg.seed if cfg.seed is not None else 0, n, args.magnitude)
    else:
        raise InputError("transform needs --random or --matrix")
    if doc is None:
        _emit(cfg, io.transform_to_dict(B))
        return
    schema = doc.get("schema")
    if schema in ("legendre", "hypersurface"):
        lift = io.load_lift(doc)
        _emit(cfg, io.legendre_to_dict(apply(B, lift)))
    elif schema == "pencil":
        _emit(cfg, io.pencil_to_dict(apply(B, io.pencil_from_dict(doc))))
    elif schema == "sphere":
        out = [io.sphere_to_dict(apply(B, _lie_of(o))) for o in io.spheres_from_doc(doc)]
        _emit(cfg, out[0] if len(out) == 1 else {"schema": "sphere", "items": out})
    elif schema == "transform":
        _emit(cfg, io.transform_to_dict(B @ io.transform_from_dict(doc)))
    else:
        raise InputError(f"cannot transform a {schema!r} document")


def cmd_lift(cfg: RunConfig, args):
    doc = _read_input(cfg)
    if doc.get("schema") != "hypersurface":
        raise InputError("lift expects a hypersurface document")
    lift = io.lift_of(io.hypersurface_from_dict(doc), args.model)
    report = check_pinkall_conditions(lift, cfg.tol or 1e-8)
    if not report.valid:
        raise GeometryError("lift violates the Legendre conditions: " + str(report.summary()))
    _emit(cfg, io.legendre_to_dict(lift))


def cmd_curvature(cfg: RunConfig, args):
    lift = io.load_lift(_read_input(cfg), args.model)
    field_ = curvature_field(lift)
    gs = field_.g.ravel()
    values, counts = np.unique(gs, return_counts=True)
    doc = {"schema": "curvature", "g_counts": {str(int(v)): int(c) for v, c in zip(values, counts)}}
    if args.index is not None:
        cs = curvature_spheres(lift, int(args.index))
        doc["sample"] = {
            "index": int(args.index),
            "kappas": cs.kappas,
            "pairs": cs.pairs,
            "multiplicities": cs.multiplicities,
            "spheres": cs.spheres,
            "lie_curvatures": {",".join(map(str, k)): v for k, v in lie_curvatures(cs).items()},
        }
    _emit(cfg, doc)


def _certify_reports(cfg: RunConfig, lift, kinds):
    field_ = curvature_field(lift)
    reports = {}
    for kind in kinds:
        if kind == "dupin":
            r = certify_dupin(lift, field_, tol=cfg.tol)
            doc = {"schema": "dupin_report", **r.summary(), "g_grid": r.g.ravel(),
                   "drop_locus": r.drop_locus,
                   "leaf_drifts": {str(k): v for k, v in r.leaf_drifts.items()}}
        elif kind == "isoparametric":
            r = isoparametric_criterion(field_, tol=cfg.tol or 1e-6)
            doc = {"schema": "isoparametric_report", **r.summary(), "poles": r.poles,
                   "line": r.line if r.line is not None else None}
        elif kind == "reducible":
            rs = reducibility_all(field_)
            doc = {"schema": "reducibility_report", "families": [x.summary() for x in rs],
                   "labels": [x.label for x in rs],
                   "inconclusive": any(x.inconclusive for x in rs)}
        else:
            r = check_pinkall_conditions(lift, cfg.tol or 1e-8)
            doc = {"schema": "pinkall_conditions_report", **r.summary()}
        reports[kind] = doc
    return reports


def _verdict_line(reports):
    parts = []
    if "dupin" in reports:
        d = reports["dupin"]
        parts += [f"dupin={str(d['dupin']).lower()}", f"proper={str(d['proper']).lower()}", f"g={d['g']}"]
    if "isoparametric" in reports:
        parts.append(f"isoparametric={str(reports['isoparametric']['accepted']).lower()}")
    if "reducible" in reports:
        parts.append("reducible=" + ",".join(reports["reducible"]["labels"]))
    if "pinkall-conditions" in reports:
        parts.append(f"legendre={str(reports['pinkall-conditions']['valid']).lower()}")
    return " ".join(parts)


_REPORT_FILES = {
    "dupin": "dupin_report.json",
    "isoparametric": "isoparametric_report.json",
    "reducible": "reducibility_report.json",
    "pinkall-conditions": "pinkall_conditions_report.json",
}


def cmd_certify(cfg: RunConfig, args):
    if args.all or args.kind is None:
        kinds = list(_REPORT_FILES)
    else:
        kinds = [args.kind]
    lift = io.load_lift(_read_input(cfg), args.model)
    reports = _certify_reports(cfg, lift, kinds)
    line = _verdict_line(reports)
    if cfg.output and not cfg.output.endswith(".json"):
        out = Path(cfg.output)
        out.mkdir(parents=True, exist_ok=True)
        for kind, doc in reports.items():
            io.write(out / _REPORT_FILES[kind], doc)
        print(line)
        if cfg.json:
            sys.stdout.write(io.dumps({"schema": "certify", "reports": reports}))
    else:
        doc = reports[kinds[0]] if len(kinds) == 1 else {"schema": "certify", "reports": reports}
        _emit(cfg, doc, line)
    if "reducible" in reports and reports["reducible"]["inconclusive"]:
        raise InconclusiveError("numerical rank of some curvature-sphere family is borderline")
    iso = reports.get("isoparametric")
    if iso is not None and iso["ambiguous"]:
        raise InconclusiveError("complement rank is ambiguous in the isoparametric test")


def _base(path):
    if not path:
        raise InputError("this construction needs --base")
    doc = io.read(path)
    if doc.get("schema") != "hypersurface":
        raise InputError("--base must be a hypersurface document")
    h = io.hypersurface_from_dict(doc)
    if h.evaluator is None:
        raise InputError("--base must carry a construction recipe")
    return h


def cmd_construct(cfg: RunConfig, args):
    res = cfg.resolution
    v = args.variant
    if v == "psi-profile":
        prof = constructions.constant_psi_profile(args.theta, args.alpha)
        psi_pipeline = cross_ratio(*prof.kappa_pairs)
        doc = {"schema": "psi_profile", "theta": prof.theta, "alpha": prof.alpha, "mu": prof.mu,
               "kappa_pairs": prof.kappa_pairs, "kappas": prof.kappas, "psi": prof.psi,
               "psi_cross_ratio": psi_pipeline}
        _emit(cfg, doc, f"psi={prof.psi:.17g}")
        return
    if v == "product-spheres":
        h = constructions.product_of_spheres(args.p, args.q, args.r, args.s, res)
    elif v == "torus":
        h = constructions.torus(args.R, args.a, args.b, None, None, res)
    elif v == "cylinder":
        h = constructions.cylinder(_base(args.base), args.m, args.extent, res)
    elif v == "revolve":
        h = constructions.revolve(_base(args.base), res)
    elif v == "tube":
        h = constructions.tube(_base(args.base), args.eps, args.m, res)
    elif v == "cone":
        h = constructions.cone(_base(args.base), (args.t0, args.t1), res)
    elif v == "invert":
        center = _parse_floats(args.center, "center")
        h = constructions.sphere_inversion(_base(args.base), center, args.radius)
    elif v == "pinkall":
        mults = [int(x) for x in _parse_floats(args.mults, "mults")]
        h = constructions.pinkall_generator(mults, res)
    elif v == "tube-over-torus":
        h = constructions.tube_over_torus(args.eps, args.R, args.a, res)
    else:  # pragma: no cover - argparse restricts the choices
        raise InputError(f"unknown variant {v!r}")
    _emit(cfg, io.hypersurface_to_dict(h))


# --- parser ------------------------------------------------------------------------------


def _common(p):
    p.add_argument("--input", help="input JSON file")
    p.add_argument("--output", help="output JSON file (standard output when omitted)")
    p.add_argument("--tol", type=float, help="main tolerance of the command")
    p.add_argument("--seed", type=int, help="seed for random transforms")
    p.add_argument("--resolution", help="samples per periodic axis, optionally ',bounded'")
    p.add_argument("--json", action="store_true", help="also print the JSON document")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a tolerance setting")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lieq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert spheres between models")
    _common(p)
    p.add_argument("--to", choices=("lie", "euclidean", "spherical"), required=True)
    p.add_argument("--canonical", action="store_true", help="canonical scaling of Lie output")

    p = sub.add_parser("contact", help="oriented contact of two spheres")
    _common(p)

    p = sub.add_parser("pencil", help="parabolic pencil through two spheres or a contact element")
    _common(p)
    p.add_argument("--t", type=float, help="also report the pencil sphere at parameter t")

    p = sub.add_parser("transform", help="make or apply a Lie sphere transformation")
    _common(p)
    p.add_argument("--random", action="store_true")
    p.add_argument("--matrix", help="transform.json to apply")
    p.add_argument("--n", type=int, help="sphere dimension for a bare random transform")
    p.add_argument("--magnitude", type=float, default=0.5)

    p = sub.add_parser("lift", help="Legendre lift of a hypersurface")
    _common(p)
    p.add_argument("--model", choices=("spherical", "euclidean"))

    p = sub.add_parser("curvature", help="curvature spheres of a lift")
    _common(p)
    p.add_argument("--model", choices=("spherical", "euclidean"))
    p.add_argument("--index", type=int, help="flat sample index for detailed output")

    p = sub.add_parser("certify", help="Dupin, isoparametric, reducibility and Legendre reports")
    _common(p)
    p.add_argument("kind", nargs="?", choices=("dupin", "isoparametric", "reducible", "pinkall-conditions"))
    p.add_argument("--all", action="store_true")
    p.add_argument("--model", choices=("spherical", "euclidean"))

    p = sub.add_parser("construct", help="generate a hypersurface")
    _common(p)
    p.add_argument("variant", choices=("product-spheres", "torus", "cylinder", "revolve", "tube", "cone",
                                       "invert", "pinkall", "tube-over-torus", "psi-profile"))
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--r", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--R", type=float, default=2.0)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float)
    p.add_argument("--base", help="hypersurface.json of the base")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--extent", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--t0", type=float, default=0.5)
    p.add_argument("--t1", type=float, default=1.5)
    p.add_argument("--center", default="0,0,0")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--mults", default="1,1")
    p.add_argument("--theta", type=float, default=np.pi / 4)
    p.add_argument("--alpha", type=float, default=0.0)
    return parser


_COMMANDS = {
    "convert": cmd_convert,
    "contact": cmd_contact,
    "pencil": cmd_pencil,
    "transform": cmd_transform,
    "lift": cmd_lift,
    "curvature": cmd_curvature,
    "certify": cmd_certify,
    "construct": cmd_construct,
}


def run(argv=None) -> int:
    """Run the CLI and return the exit code instead of exiting."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        cfg = RunConfig(
            command=args.command,
            input=args.input,
            output=args.output,
            tol=args.tol,
            seed=args.seed,
            resolution=_parse_resolution(args.resolution),
            tolerances=_parse_set(args.set),
            json=args.json,
        )
        with config_context(**cfg.tolerances):
            _COMMANDS[args.command](cfg, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GeometryError as exc:
        print(f"geometry: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except LieqError as exc:  # pragma: no cover - every subclass is handled above
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

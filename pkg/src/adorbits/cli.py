"""Command-line interface.

Exit codes: 0 success, 1 internal error, 2 invalid input, 3 containment
violations found by ``verify``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction

from . import rational as rq
from .horn import all_horn_triples, compact_polytope
from .oracle import DEFAULT_SCALES, sample_spectra, verify_containment
from .orbitsum import (
    check_admissibility,
    check_recession_law,
    check_vertex_criterion,
    lattice_points_of,
    orbit_image,
    reduced_coordinates,
    sum_spectra,
)
from .polyhedra import canonicalize
from .polyhedra.lattice import UnboundedTruncation
from .rootsys import NotQuasiHermitian, Spectrum, SpectrumError, depth_functional, parse_algebra
from . import serialize as ser

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    algebra: str | None
    lambda_a: tuple[Fraction, ...] | None
    lambda_b: tuple[Fraction, ...] | None
    options: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "algebra": self.algebra,
            "a": None if self.lambda_a is None else ser.qvec(self.lambda_a),
            "b": None if self.lambda_b is None else ser.qvec(self.lambda_b),
            **self.options,
        }


def parse_rationals(text: str, what: str) -> tuple[Fraction, ...]:
    try:
        values = tuple(rq.to_fraction(t) for t in text.split(","))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"invalid {what} {text!r}: {exc}") from exc
    return values


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".adorbits-", suffix=".json")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, out)


def _form_and_spectra(args, need_b: bool = True):
    if not args.algebra:
        raise InputError("--algebra is required")
    try:
        form = parse_algebra(args.algebra)
    except NotQuasiHermitian as exc:
        raise InputError(str(exc)) from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.a is None or (need_b and args.b is None):
        raise InputError("--a and --b are required" if need_b else "--a is required")
    a = parse_rationals(args.a, "--a")
    b = parse_rationals(args.b, "--b") if need_b else None
    for name, v in (("--a", a), ("--b", b)):
        if v is not None and len(v) != form.ambient_dim:
            raise InputError(f"{name} has {len(v)} entries, {form.name} needs {form.ambient_dim}")
    return form, a, b


def _result(args):
    form, a, b = _form_and_spectra(args)
    if form.block_sizes is None:
        sys.stderr.write(f"note: {form.name} has no exact compact polytope; output is sampled\n")
    return sum_spectra(form, Spectrum(a), Spectrum(b), samples=args.samples, seed=args.seed)


def cmd_polytope(args) -> int:
    result = _result(args)
    config = RunConfig("polytope", result.form.name, result.lambda_a.coords, result.lambda_b.coords,
                       {"samples": args.samples, "seed": args.seed})
    exact = result.exact
    report = ser.result_to_json(
        result,
        check_vertex_criterion(result) if exact else None,
        check_recession_law(result) if exact else None,
        check_admissibility(result),
    )
    report["config"] = config.to_json()
    _write(ser.dumps(report), args.out)
    if args.emit_plot_data:
        _write(ser.dumps(_plot_data(result, args)), args.emit_plot_data)
    return EXIT_OK


def _plot_data(result, args) -> dict:
    form = result.form
    data = {
        "schema": ser.schema("plot-data"),
        "algebra": form.name,
        "labels": form.labels()[:-1] if form.trace_functionals else form.labels(),
        "vertices": [[float(c) for c in reduced_coordinates(form, v)] for v in result.vertices.vertices],
        "rays": [[float(c) for c in reduced_coordinates(form, r)] for r in result.vertices.rays],
        "weyl_sums": [[float(c) for c in reduced_coordinates(form, s.coords)] for s in result.weyl_sum_points],
        "samples": [],
    }
    if result.exact and form.block_sizes:
        cloud = sample_spectra(result, args.plot_samples, args.seed, _scales(args))
        data["samples"] = [[round(float(c), 12) for c in row[:-1]] for row in cloud]
    return data


def _scales(args) -> tuple[float, ...]:
    if not args.scales:
        return DEFAULT_SCALES
    try:
        scales = tuple(float(s) for s in args.scales.split(","))
    except ValueError as exc:
        raise InputError(f"invalid --scales {args.scales!r}") from exc
    if not scales or any(s < 0 for s in scales):
        raise InputError("--scales must be nonnegative numbers")
    return scales


def _load_polyhedron(path: str):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("schema") == ser.schema("orbit-sum"):
        data = data["s_ab"]
    try:
        return ser.hpoly_from_json(data)
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"cannot read polyhedron from {path}: {exc}") from exc


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise InputError(f"invalid sample count {args.samples}: need at least 1")
    if args.tol < 0:
        raise InputError(f"invalid tolerance {args.tol}")
    result = _result(args)
    if result.form.block_sizes is None:
        raise InputError(f"verify supports su(p,q) only, not {result.form.name}")
    P = _load_polyhedron(args.polyhedron) if args.polyhedron else None
    if P is not None and P.dim != result.form.ambient_dim:
        raise InputError(f"polyhedron dimension {P.dim} does not match {result.form.name}")
    scales = _scales(args)
    rep = verify_containment(result, args.samples, args.seed, args.tol, scales=scales, polyhedron=P)
    out = {"schema": ser.schema("sample-report"), **rep.to_dict()}
    out["config"] = RunConfig(
        "verify", result.form.name, result.lambda_a.coords, result.lambda_b.coords,
        {"samples": args.samples, "seed": args.seed, "tol": args.tol, "scales": list(scales),
         "polyhedron": args.polyhedron},
    ).to_json()
    _write(ser.dumps(out), args.out)
    return EXIT_OK if rep.all_inside else EXIT_VIOLATION


def cmd_lattice(args) -> int:
    if args.truncate is None:
        raise InputError("--truncate is required")
    bound = parse_rationals(args.truncate, "--truncate")
    if len(bound) != 1:
        raise InputError("--truncate takes a single rational bound")
    result = _result(args)
    form = result.form
    functional = (
        parse_rationals(args.functional, "--functional") if args.functional else depth_functional(form)
    )
    if len(functional) != form.ambient_dim:
        raise InputError(f"--functional needs {form.ambient_dim} entries")
    try:
        points = lattice_points_of(result, bound[0], functional)
    except UnboundedTruncation as exc:
        raise InputError(f"unbounded truncation: {exc}") from exc
    out = {
        "schema": ser.schema("lattice-points"),
        "algebra": form.name,
        "exact": result.exact,
        "functional": ser.qvec(functional),
        "bound": ser.q(bound[0]),
        "count": len(points),
        "points": [list(p) for p in points],
        "points_reduced": [list(reduced_coordinates(form, p)) for p in points],
    }
    out["config"] = RunConfig("lattice", form.name, result.lambda_a.coords, result.lambda_b.coords,
                              {"truncate": ser.q(bound[0]), "functional": ser.qvec(functional)}).to_json()
    _write(ser.dumps(out), args.out)
    return EXIT_OK


def cmd_orbit_image(args) -> int:
    form, a, _ = _form_and_spectra(args, need_b=False)
    P = orbit_image(form, Spectrum(a))
    out = {
        "schema": ser.schema("orbit-image"),
        "algebra": form.name,
        "x": ser.qvec(a),
        "image": ser.hpoly_to_json(P),
        "config": RunConfig("orbit-image", form.name, a, None).to_json(),
    }
    _write(ser.dumps(out), args.out)
    return EXIT_OK


def cmd_horn(args) -> int:
    out: dict = {"schema": ser.schema("horn")}
    if args.n is not None:
        if args.n < 1:
            raise InputError(f"invalid block size {args.n}")
        out["n"] = args.n
        out["triples"] = [ser.triple_to_json(t) for t in all_horn_triples(args.n)]
    if args.algebra:
        form, a, b = _form_and_spectra(args)
        cp = compact_polytope(form, Spectrum(a), Spectrum(b), samples=args.samples, seed=args.seed)
        out["algebra"] = form.name
        out["exact"] = cp.exact
        out["pi"] = ser.hpoly_to_json(cp.hrep)
        out["pi_canonical"] = ser.hpoly_to_json(canonicalize(cp.hrep))
    if len(out) == 1:
        raise InputError("horn needs --n and/or --algebra with --a/--b")
    _write(ser.dumps(out), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adorbits", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, b=True):
        p.add_argument("--algebra", help='real form, e.g. "su(2,1)"')
        p.add_argument("--a", help="first spectrum, comma-separated rationals")
        if b:
            p.add_argument("--b", help="second spectrum, comma-separated rationals")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--samples", type=int, default=20000)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("polytope", help="exact set of spectra of A+B")
    common(p)
    p.add_argument("--emit-plot-data", metavar="PATH", help="write vertices, rays and a sample cloud")
    p.add_argument("--plot-samples", type=int, default=2000)
    p.add_argument("--scales", help="comma-separated Lie algebra scales for the sample cloud")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("verify", help="Monte Carlo containment check")
    common(p)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--scales", help="comma-separated Lie algebra scales")
    p.add_argument("--polyhedron", help="HPolyhedron or orbit-sum JSON to test instead of the computed set")
    p.set_defaults(func=cmd_verify, samples=10000)

    p = sub.add_parser("lattice", help="integer points of the truncated set")
    common(p)
    p.add_argument("--truncate", help="bound for the truncating functional")
    p.add_argument("--functional", help="truncating functional (default: depth into the non-compact cone)")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("orbit-image", help="torus moment image of one orbit")
    common(p, b=False)
    p.set_defaults(func=cmd_orbit_image)

    p = sub.add_parser("horn", help="dump Horn triples and the compact polytope")
    common(p)
    p.add_argument("--n", type=int, help="block size for the triple dump")
    p.set_defaults(func=cmd_horn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SpectrumError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

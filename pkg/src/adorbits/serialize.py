"""Stable JSON encodings.  Rationals are always ``"num/den"`` strings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .horn import HornTriple
from .orbitsum import (
    AdmissibilityReport,
    OrbitSumResult,
    RecessionReport,
    VertexCriterionReport,
    reduced_coordinates,
)
from .polyhedra import HPolyhedron, VPolyhedron
from .rational import format_fraction, parse_fraction
from .rootsys import RealFormData, Spectrum

SCHEMA_PREFIX = "adorbits"


def schema(kind: str) -> str:
    return f"{SCHEMA_PREFIX}/{kind}/v1"


def q(x) -> str:
    return format_fraction(Fraction(x))


def qvec(v) -> list[str]:
    return [q(a) for a in v]


def spectrum_to_json(x: Spectrum) -> list[str]:
    return qvec(x.coords)


def spectrum_from_json(data) -> Spectrum:
    return Spectrum(tuple(parse_fraction(s) for s in data))


def hpoly_to_json(P: HPolyhedron) -> dict[str, Any]:
    return {
        "schema": schema("hpolyhedron"),
        "dim": P.dim,
        "inequalities": [{"normal": qvec(n), "offset": q(b)} for n, b in P.inequalities],
        "equalities": [{"normal": qvec(n), "offset": q(b)} for n, b in P.equalities],
    }


def hpoly_from_json(data: dict) -> HPolyhedron:
    if data.get("schema") != schema("hpolyhedron"):
        raise ValueError(f"expected schema {schema('hpolyhedron')!r}, got {data.get('schema')!r}")
    return HPolyhedron.from_rows(
        int(data["dim"]),
        [(row["normal"], row["offset"]) for row in data["inequalities"]],
        [(row["normal"], row["offset"]) for row in data["equalities"]],
    )


def vpoly_to_json(V: VPolyhedron) -> dict[str, Any]:
    return {
        "schema": schema("vpolyhedron"),
        "dim": V.dim,
        "empty": V.empty,
        "vertices": [qvec(v) for v in V.vertices],
        "rays": [qvec(r) for r in V.rays],
    }


def vpoly_from_json(data: dict) -> VPolyhedron:
    return VPolyhedron(
        int(data["dim"]),
        tuple(tuple(parse_fraction(s) for s in v) for v in data["vertices"]),
        tuple(tuple(parse_fraction(s) for s in r) for r in data["rays"]),
        empty=bool(data.get("empty", False)),
    )


def form_to_json(form: RealFormData) -> dict[str, Any]:
    return {
        "schema": schema("real-form"),
        "algebra": form.name,
        "series": form.diagram.series,
        "rank": form.diagram.rank,
        "painted": form.diagram.painted,
        "ambient_dim": form.ambient_dim,
        "labels": form.labels(),
        "positive_roots": [list(r) for r in form.positive_roots],
        "compact_positive": list(form.compact_positive),
        "noncompact_positive": list(form.noncompact_positive),
        "cmin_generators": [list(g) for g in form.cmin_generators],
        "chamber": [list(c) for c in form.chamber],
        "trace_functionals": [list(t) for t in form.trace_functionals],
        "block_sizes": list(form.block_sizes) if form.block_sizes else None,
    }


def vertex_report_to_json(rep: VertexCriterionReport) -> dict[str, Any]:
    return {
        "passed": rep.passed,
        "vertices": [
            {
                "vertex": qvec(e.vertex),
                "classification": "open-chamber" if e.open_chamber else "wall",
                "weyl_sum": e.weyl_sum,
            }
            for e in rep.entries
        ],
    }


def recession_report_to_json(rep: RecessionReport) -> dict[str, Any]:
    return {
        "passed": rep.passed,
        "observed_rays": [qvec(r) for r in rep.observed_rays],
        "expected_rays": [qvec(r) for r in rep.expected_rays],
    }


def admissibility_report_to_json(rep: AdmissibilityReport) -> dict[str, Any]:
    return {
        "passed": rep.passed,
        "min_pairings": [None if m is None else q(m) for m in rep.margins],
    }


def result_to_json(
    result: OrbitSumResult,
    vertex_report: VertexCriterionReport | None = None,
    recession_report: RecessionReport | None = None,
    admissibility_report: AdmissibilityReport | None = None,
) -> dict[str, Any]:
    form = result.form
    out: dict[str, Any] = {
        "schema": schema("orbit-sum"),
        "algebra": form.name,
        "labels": form.labels(),
        "lambda_a": spectrum_to_json(result.lambda_a),
        "lambda_b": spectrum_to_json(result.lambda_b),
        "exact": result.exact,
        "pi": hpoly_to_json(result.pi.hrep),
        "s_ab": hpoly_to_json(result.s_ab),
        "vertices": vpoly_to_json(result.vertices),
        "vertices_reduced": [qvec(reduced_coordinates(form, v)) for v in result.vertices.vertices],
        "weyl_sums": [spectrum_to_json(s) for s in result.weyl_sum_points],
        "noncompact_roots": [list(r) for r in form.noncompact_roots],
    }
    checks = {}
    if vertex_report is not None:
        checks["vertex_criterion"] = vertex_report_to_json(vertex_report)
    if recession_report is not None:
        checks["recession_law"] = recession_report_to_json(recession_report)
    if admissibility_report is not None:
        checks["admissibility"] = admissibility_report_to_json(admissibility_report)
    if checks:
        out["checks"] = checks
    return out


def triple_to_json(t: HornTriple) -> dict[str, Any]:
    return {"n": t.n, "r": t.r, "I": list(t.I), "J": list(t.J), "K": list(t.K)}


def dumps(data: Any) -> str:
    """Byte-stable encoding: fixed key order as constructed, two-space indent."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"
